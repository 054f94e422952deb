// Gabrielov's distinguished basis for P(x) + y^{d+1} from one for P(x).
#pragma once

#include "milnor/lattice.hpp"

namespace milnor {

enum class NegatedSide {
    // <S_{i,j}, S_{i',j+1}> = -<V_i, V_i'> for i < i' (default)
    ascending,
    // <S_{i,j}, S_{i',j-1}> = -<V_i, V_i'> for i < i'
    descending,
};

struct StabilizeOptions {
    int chain_sign = 1;
    NegatedSide negated = NegatedSide::ascending;
};

// Labels "<name>:<j>", ordered by cycle first, then sheet j = 1..d.
DistinguishedBasis gabrielov_stabilize(const DistinguishedBasis &basis, int d,
                                       const StabilizeOptions &opts = {});

// Trivial swaps turning the cycle-major order of a stabilised basis of
// size mu*d into sheet-major order.
std::vector<Step> sheet_major_steps(std::size_t mu, int d);

} // namespace milnor
