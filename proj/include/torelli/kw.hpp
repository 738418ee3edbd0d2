#pragma once

#include "torelli/kronecker.hpp"
#include "torelli/unstable.hpp"

namespace torelli {

/// Parametrized smooth rational curve of degree d spanning a P_d:
/// phi(s,t) = sum_k col_k s^k t^(d-k), columns independent.
struct CurveData {
    size_t degree = 0;
    Matrix coeff;  // (n+1) x (degree+1)

    ProjPoint at(const Scalar& s, const Scalar& t) const;
    LinearSubspace span() const;
    /// Parameter of a curve point; nullopt if p is not on the curve.
    std::optional<std::pair<Scalar, Scalar>> parameter_of(const ProjPoint& p) const;
};

struct KWLinearPart {
    LinearSubspace space;
    std::optional<ProjPoint> attachment;  // y_i = span(C) cap L_i when d > 0
    size_t ni = 0;
};

/// Block over an irreducible factor of degree >= 2: the linear parts exist
/// only over the splitting field and are carried implicitly by the rank-1
/// model; component-level checks are skipped for these.
struct KWConjugateBlock {
    BinaryForm factor{Field::rational()};
    size_t size = 0;
    LinearSubspace block_space;
};

struct KWVariety {
    size_t n = 0;
    Field f = Field::rational();
    size_t d = 0;
    std::optional<CurveData> curve;  // present iff d > 0
    std::vector<KWLinearPart> parts;
    std::vector<KWConjugateBlock> conjugate;
    std::optional<ProjPoint> distinguished;  // present iff d = 0
    LinMatrix m;  // 2 x n rank-1 locus model
    std::vector<std::string> warnings;

    /// The n_i list (rational parts then conjugate block sizes).
    std::vector<size_t> type_parts() const;
    size_t s() const { return parts.size() + conjugate.size(); }
};

struct KWInconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// True iff all 2x2 minors of m vanish at p.
bool rank1_contains(const LinMatrix& m, const ProjPoint& p);

/// Builds the KW certificate from the instability witness of (Z, y):
/// pencil of [h; g], exact Kronecker form, component extraction, and the
/// rebuilt rank-1 model. Throws KWInconsistent when the witness violates the
/// structure theory (e.g. d = 0 with a single linear part).
KWVariety kw_from_unstable(const Arrangement& z, const ProjPoint& y);
KWVariety kw_from_witness(const Arrangement& z, const ProjPoint& y, const WitnessB& w);

/// Converse construction: the 2 x n matrix in an adapted basis whose rank-1
/// locus contains Y and whose first row cuts y. Requires y on the curve part
/// away from the attachment points (d > 0) or y = distinguished (d = 0).
LinMatrix matrix_from_kw(const KWVariety& y, const ProjPoint& pt);

struct KWValidation {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> skipped;
};

KWValidation kw_validate(const KWVariety& y);

struct KWMembership {
    bool member = false;
    std::string component;
    std::optional<std::pair<Scalar, Scalar>> curve_param;
};

KWMembership kw_membership(const KWVariety& y, const ProjPoint& p);

/// The unique rational normal curve through d+3 points spanning a P_d, via
/// the frame construction; nullopt when the configuration degenerates.
std::optional<CurveData> rnc_through(const std::vector<ProjPoint>& pts);

/// Assembly from explicit data, for generators and the converse workflows.
KWVariety make_kw_curve(size_t n, const CurveData& c,
                        const std::vector<std::pair<std::pair<Scalar, Scalar>, LinearSubspace>>& parts);
KWVariety make_kw_point(size_t n, const ProjPoint& y, const std::vector<LinearSubspace>& parts);

}  // namespace torelli
