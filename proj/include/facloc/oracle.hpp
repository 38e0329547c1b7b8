#ifndef FACLOC_ORACLE_HPP
#define FACLOC_ORACLE_HPP

#include <cstdint>

#include "facloc/core.hpp"
#include "facloc/rational.hpp"

namespace facloc {

struct OptResult {
    std::int64_t value = 0;
    Solution witness;
};

/// Exact optimum by scanning all m(m-1) ordered feasible pairs. The witness is
/// the lexicographically smallest (z1, then z2) minimizer.
OptResult optimal_cost(const LineInstance& instance, ObjectiveKind objective);

/// (n1^2 + n2^2 - [n1 odd] - [n2 odd]) / 4, a lower bound on the optimal
/// social cost when n_j agents approve facility j.
Rational sc_lower_bound(int n1, int n2);

/// q (y - x) / 2: lower bound on the optimal max cost from two agents at
/// x < y that both approve q facilities. Throws std::invalid_argument unless
/// y > x and q is 0, 1 or 2.
Rational mc_lower_bound_pair(int x, int y, int q);

/// ceil((y + z - 2x) / 3): lower bound on the optimal max cost from an agent at
/// x approving both facilities, one at y approving facility 1, and one at z
/// approving facility 2. Throws std::invalid_argument unless x < y < z.
std::int64_t mc_lower_bound_triple(int x, int y, int z);

/// (y^2 + 4xy + 2y + 1) / (x^2 + y^2 - 2). Throws std::invalid_argument when
/// the denominator is not positive.
Rational technical_lemma_value(std::int64_t x, std::int64_t y);

}  // namespace facloc

#endif  // FACLOC_ORACLE_HPP
