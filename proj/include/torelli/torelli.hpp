#pragma once

#include "torelli/decompose.hpp"

namespace torelli {

struct TorelliDiagnostics {
    size_t candidates_tested = 0;
    std::vector<uint64_t> primes_scanned;
    std::vector<uint64_t> clean_primes;
    std::vector<uint64_t> bad_primes;
    size_t lifted_candidates = 0;
    size_t lifted_failures = 0;
};

/// Layered verdict. Torelli via NoQuadric/ConicRank is unconditional exact
/// linear algebra; ExhaustiveScan records the scan-based evidence (>= 2 clean
/// primes) and is labeled as such.
struct Verdict {
    enum class Kind { Torelli, NonTorelli, Unknown };
    enum class Reason { NoQuadric, ConicRank, ExhaustiveScan, Certificate, None };

    Kind kind = Kind::Unknown;
    Reason reason = Reason::None;
    std::optional<ProjPoint> witness;
    std::optional<KWVariety> certificate;
    TorelliDiagnostics diag;
};

struct TorelliOptions {
    std::vector<uint64_t> primes{11, 13, 17, 19, 23, 29};
    size_t candidate_cap = 4000;
    unsigned threads = 0;
};

Verdict decide_torelli(const Arrangement& z, const TorelliOptions& opts = {});

/// Re-verifies a NonTorelli certificate from scratch; fills `why` with the
/// first failure when given.
bool reverify_verdict(const Arrangement& z, const Verdict& v, std::string* why = nullptr);

struct T3Report {
    bool applicable = false;
    std::string detail;
    bool curve_exists = false;  // a smooth rational normal curve of degree n through Z
    Verdict verdict;
    bool consistent = false;
};

/// General-position corollary check: for l >= n+3 points in general linear
/// position, NonTorelli must coincide with lying on a rational normal curve.
T3Report check_t3(const Arrangement& z, const TorelliOptions& opts = {});

/// Test-A scan of an arbitrary Steiner-shaped matrix over F_p.
std::vector<ScanEntry> steiner_unstable_profile(const LinMatrix& m, uint64_t p, unsigned threads = 0);

struct ReconstructReport {
    bool all_observed_unstable = false;
    bool shapes_match = false;
    bool hilbert_match = false;
    bool profiles_match = false;
    std::vector<uint64_t> primes_compared;
    std::vector<size_t> summand_screen_fired;  // indices of observed points
    std::vector<std::string> notes;
};

/// Evidence that a Steiner-shaped matrix with l = b+1 observed unstable
/// points presents F_Z of those points: rebuilt matrix, matching profiles
/// over the primes, and the heuristic direct-summand screen per point.
ReconstructReport reconstruct_from_unstable(const LinMatrix& m, const Arrangement& observed,
                                            const std::vector<uint64_t>& primes = {11, 13});

/// Continued-fraction rational reconstruction with |num|, den <= sqrt(m/2).
std::optional<mpq_class> rational_reconstruct(const mpz_class& residue, const mpz_class& modulus);

}  // namespace torelli
