#pragma once

#include "torelli/linmatrix.hpp"
#include "torelli/projgeom.hpp"

namespace torelli {

/// Test A certificate: constant vectors with M*v = h_y*w as forms.
struct WitnessA {
    Vec v, w;
};

/// Test B certificate: forms h cutting y and a lifted section g with
/// g(z) proportional to h(z) for every z in Z, g independent of h.
struct WitnessB {
    std::vector<Vec> h;
    std::vector<Vec> g;
};

struct UnstableResult {
    bool unstable = false;
    size_t dim = 0;  // solution-space dimension (multiplicity proxy for test A)
    std::optional<WitnessA> witness_a;
    std::optional<WitnessB> witness_b;
};

/// Deterministic regular sequence of n linear forms cutting exactly y:
/// h_j = y_pi z_j - y_j z_pi for j != pi, pi the first nonzero coordinate.
std::vector<Vec> point_cutting_forms(const ProjPoint& y);

/// Test A: y unstable for the Steiner-shaped matrix M iff M*v = h_y*w has a
/// solution with v != 0; the reported dimension is the solution-space dim.
UnstableResult is_unstable_matrix(const LinMatrix& m, const ProjPoint& y);

/// Test B: sections through the Koszul sheaf; unstable iff the g-solution
/// space has dimension >= 2 (scalar multiples of h are always there).
/// Optionally uses caller-provided forms cutting y.
UnstableResult is_unstable_sections(const Arrangement& z, const ProjPoint& y,
                                    const std::vector<Vec>* h_override = nullptr);

bool verify_witness_a(const LinMatrix& m, const ProjPoint& y, const WitnessA& w);
bool verify_witness_b(const Arrangement& z, const ProjPoint& y, const WitnessB& w);

/// All points of P_n(F_p) in the canonical enumeration order (leading 1
/// first-nonzero representatives, earlier leading index first).
std::vector<ProjPoint> all_projective_points(size_t n, const Field& fp);

struct ScanEntry {
    ProjPoint point;
    size_t dim;
};

/// Runs test A over every point of P_n(F_p); deterministic output order
/// regardless of thread count (0 = hardware concurrency).
std::vector<ScanEntry> scan_unstable(const LinMatrix& m, unsigned threads = 0);

}  // namespace torelli
