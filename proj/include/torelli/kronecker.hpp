#pragma once

#include "torelli/pencil.hpp"

namespace torelli {

/// Regular part contribution of one irreducible (or unsplit) factor of the
/// determinant. For a certified factor the chains are Jordan sizes r in
/// factor units (block = companion of factor^r); unsplit factors keep their
/// raw chain degrees and set degraded.
struct RegularBlock {
    BinaryForm factor{Field::rational()};  // normalized
    bool certified_irreducible = true;
    std::vector<size_t> chains;  // descending; factor units if certified
    size_t size = 0;             // total rows occupied
    bool degraded = false;
};

struct KroneckerForm {
    Matrix P, Q;
    Pencil canonical;
    std::vector<size_t> right_minimal;  // sizes eps, ascending (blocks eps x (eps+1))
    std::vector<size_t> left_minimal;   // sizes eta, ascending (blocks (eta+1) x eta)
    std::vector<RegularBlock> regular;
    bool degraded = false;
    std::vector<std::string> warnings;

    KroneckerForm() : canonical(Pencil::zero(0, 0, Field::rational())) {}
};

/// Canonical singular block of size eps x (eps+1): xi0 on the diagonal, xi1
/// on the superdiagonal (eps = 0 is a zero column).
Pencil singular_right_block(size_t eps, const Field& f);
/// Transposed convention for left minimal indices.
Pencil singular_left_block(size_t eta, const Field& f);
/// Canonical regular block of a binary form gamma with xi0 not dividing
/// gamma: the companion pencil xi1*I - xi0*C(gamma(1,t)); for gamma = xi0^r
/// the block is xi0*I + xi1*E with E the subdiagonal shift.
Pencil regular_block_for_form(const BinaryForm& gamma);

/// Exact Kronecker-Weierstrass canonical form: P*N(xi)*Q equals the returned
/// canonical pencil identically; blocks ordered right singular (ascending),
/// left singular (ascending), regular part in canonical factor order with
/// descending chains.
KroneckerForm kronecker_form(const Pencil& n);

/// Assembles the canonical pencil from an inventory (used by generators and
/// round-trip tests).
Pencil assemble_canonical(const std::vector<size_t>& right_minimal, const std::vector<size_t>& left_minimal,
                          const std::vector<std::pair<BinaryForm, std::vector<size_t>>>& regular, const Field& f);

}  // namespace torelli
