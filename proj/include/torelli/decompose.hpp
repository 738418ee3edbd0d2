#pragma once

#include "torelli/kw.hpp"
#include "torelli/steiner.hpp"

namespace torelli {

struct DecomposeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DecomposePiece {
    std::string label;
    std::vector<size_t> members;  // indices into Z
    size_t length;                // l_i, or l_0 + s for the curve piece
    ResolutionData data;
    bool direct_summand = false;
};

struct Decomposition {
    std::vector<DecomposePiece> pieces;  // linear parts first, curve piece last
    ResolutionData total;                // F_Z numerics
    bool additivity_ok = false;
    bool slopes_equal = false;
    std::vector<std::string> notes;
};

/// Filtration bookkeeping for Z contained in a KW variety with curve part:
/// one piece per linear part (flagged as a direct summand when its attachment
/// lies in Z) and the curve piece of length l_0 + s.
Decomposition decompose(const Arrangement& z, const KWVariety& y);

}  // namespace torelli
