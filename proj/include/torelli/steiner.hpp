#pragma once

#include "torelli/linmatrix.hpp"
#include "torelli/projgeom.hpp"

namespace torelli {

/// Presentation matrix of the Steiner sheaf F_Z: an (l-n-1) x (l-1) matrix of
/// linear forms whose column i is beta[.][i] * f_i, where each row of beta
/// extends to a relation sum_i beta_i z_i - z_l = 0.
struct SteinerMatrix {
    LinMatrix mat;        // a x b forms in x_0..x_n
    Arrangement points;   // Z after the (possible) reorder that moves the dropped point last
    std::vector<size_t> order;  // order[i] = position in the original input
    Matrix beta;          // a x (l-1) provenance scalars
    bool zero_rows = false;  // l == n+1: empty relation space

    size_t a() const { return mat.rows(); }
    size_t b() const { return mat.cols(); }
    const ProjPoint& dropped() const { return points[points.size() - 1]; }
};

SteinerMatrix build_steiner(const Arrangement& z);

struct VerifySteinerReport {
    bool column_divisibility = false;
    bool row_relations = false;
    bool generic_rank_ok = false;
    size_t generic_rank = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

VerifySteinerReport verify_steiner(const SteinerMatrix& m);

/// Numerical data of the resolution 0 -> O(-1)^(l-n-1) -> O^(l-1) -> F_Z -> 0.
struct ResolutionData {
    size_t rank;
    long c1;
    Scalar slope;         // c1/rank over Q
    Vec hilbert_coeffs;   // chi(F_Z(t)) coefficients, degree n polynomial in t
    Scalar chi_at(long t) const;
};

ResolutionData hilbert_data(size_t l, size_t n);

struct DegenerateSplit {
    Matrix dual_change;        // z' = G z maps span(Z) to the first k+1 coordinates
    Matrix form_change;        // x' = (G^-1)^T x, the induced change on forms
    Arrangement sub;           // Z as an arrangement in P_k
    SteinerMatrix sub_steiner;
    size_t trivial_summands;   // n - k copies of O(-1)
    LinMatrix ambient;         // the ambient matrix in adapted coordinates
};

DegenerateSplit degenerate_split(const Arrangement& z);

}  // namespace torelli
