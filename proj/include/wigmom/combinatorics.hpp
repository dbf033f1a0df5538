#ifndef WIGMOM_COMBINATORICS_HPP
#define WIGMOM_COMBINATORICS_HPP

namespace wigmom {

// Largest monomial degree the exact integer tables cover. 32! still fits in
// an unsigned 128-bit integer, 34! does not.
inline constexpr int kMaxMonomialDegree = 32;

// n! for 0 <= n <= kMaxMonomialDegree, computed in exact integer arithmetic
// and converted to double on return.
double factorial(int n);

// m! / (m-k)! for 0 <= k <= m <= kMaxMonomialDegree.
double falling_factorial(int m, int k);

// n choose k, 0 <= n <= kMaxMonomialDegree. Returns 0 for k < 0 or k > n.
double binomial(int n, int k);

}  // namespace wigmom

#endif
