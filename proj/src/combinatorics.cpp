#include "wigmom/combinatorics.hpp"

#include <array>
#include <stdexcept>
#include <string>

namespace wigmom {
namespace {

using uint128 = unsigned __int128;

const std::array<uint128, kMaxMonomialDegree + 1>& factorial_table() {
    static const auto table = [] {
        std::array<uint128, kMaxMonomialDegree + 1> t{};
        t[0] = 1;
        for (int n = 1; n <= kMaxMonomialDegree; ++n) {
            t[n] = t[n - 1] * static_cast<uint128>(n);
        }
        return t;
    }();
    return table;
}

void require_degree(int n, const char* who) {
    if (n < 0 || n > kMaxMonomialDegree) {
        throw std::invalid_argument(std::string(who) + ": argument " + std::to_string(n) +
                                    " outside supported degree range [0, " +
                                    std::to_string(kMaxMonomialDegree) + "]");
    }
}

}  // namespace

double factorial(int n) {
    require_degree(n, "factorial");
    return static_cast<double>(factorial_table()[n]);
}

double falling_factorial(int m, int k) {
    require_degree(m, "falling_factorial");
    if (k < 0 || k > m) {
        throw std::invalid_argument("falling_factorial: need 0 <= k <= m");
    }
    // Exact integer quotient; the division leaves no remainder.
    return static_cast<double>(factorial_table()[m] / factorial_table()[m - k]);
}

double binomial(int n, int k) {
    require_degree(n, "binomial");
    if (k < 0 || k > n) {
        return 0.0;
    }
    return static_cast<double>(factorial_table()[n] /
                               (factorial_table()[k] * factorial_table()[n - k]));
}

}  // namespace wigmom
