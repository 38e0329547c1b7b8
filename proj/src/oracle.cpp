#include "facloc/oracle.hpp"

#include <stdexcept>
#include <string>

namespace facloc {

OptResult optimal_cost(const LineInstance& instance, ObjectiveKind objective) {
    OptResult best{-1, {}};
    const int m = instance.m();
    for (int z1 = 1; z1 <= m; ++z1) {
        for (int z2 = 1; z2 <= m; ++z2) {
            if (z1 == z2) continue;
            const Solution z{z1, z2};
            const std::int64_t value = objective_value(objective, instance, z);
            if (best.value < 0 || value < best.value) {
                best = {value, z};
            }
        }
    }
    return best;
}

Rational sc_lower_bound(int n1, int n2) {
    const std::int64_t a = n1;
    const std::int64_t b = n2;
    return Rational(a * a + b * b - (a % 2) - (b % 2), 4);
}

Rational mc_lower_bound_pair(int x, int y, int q) {
    if (y <= x) {
        throw std::invalid_argument("mc_lower_bound_pair needs y > x (x = " + std::to_string(x) +
                                    ", y = " + std::to_string(y) + ")");
    }
    if (q < 0 || q > 2) {
        throw std::invalid_argument("mc_lower_bound_pair needs q in {0,1,2} (q = " + std::to_string(q) + ")");
    }
    return Rational(static_cast<std::int64_t>(q) * (y - x), 2);
}

std::int64_t mc_lower_bound_triple(int x, int y, int z) {
    if (!(x < y && y < z)) {
        throw std::invalid_argument("mc_lower_bound_triple needs x < y < z");
    }
    return Rational(static_cast<std::int64_t>(y) + z - 2 * static_cast<std::int64_t>(x), 3).ceil();
}

Rational technical_lemma_value(std::int64_t x, std::int64_t y) {
    const std::int64_t den = x * x + y * y - 2;
    if (den <= 0) {
        throw std::invalid_argument("technical lemma value undefined: x^2 + y^2 - 2 = " + std::to_string(den));
    }
    return Rational(y * y + 4 * x * y + 2 * y + 1, den);
}

}  // namespace facloc
