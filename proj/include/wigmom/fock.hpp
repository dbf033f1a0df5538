#ifndef WIGMOM_FOCK_HPP
#define WIGMOM_FOCK_HPP

#include <Eigen/Dense>
#include <map>
#include <utility>

#include "wigmom/weyl.hpp"

namespace wigmom {

// Brute-force matrix realization of the symmetrically ordered monomials on a
// truncated number basis. This is the slow, obviously correct reference path:
// T[m,n] is literally the average over every ordering of m position and n
// momentum factors. Truncation corrupts the last rows and columns of any
// product, so comparisons always restrict to the top-left safe corner.

// Smallest truncation dimension considered safe for operators of the given
// total degree: 4 * degree + 10.
int min_safe_dim(int degree) noexcept;

// Lowering operator with <k|a|k+1> = sqrt(k+1).
Eigen::MatrixXcd annihilation_operator(int dim);

// (q, p) = (sqrt(hbar/2) (a + a'), i sqrt(hbar/2) (a' - a)). Requires dim >= 2.
std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> canonical_generators(int dim, double hbar);

// Copy of the matrix with the last `margin` rows and columns dropped.
Eigen::MatrixXcd safe_corner(const Eigen::MatrixXcd& matrix, int margin);

class FockSpace {
  public:
    FockSpace(int dim, double hbar);

    int dim() const noexcept { return dim_; }
    double hbar() const noexcept { return hbar_; }
    const Eigen::MatrixXcd& position() const noexcept { return q_; }
    const Eigen::MatrixXcd& momentum() const noexcept { return p_; }

    // Symmetrized monomial by direct enumeration of orderings (shared
    // prefixes are folded once, every ordering contributes exactly once).
    // Requires dim >= min_safe_dim(m + n). Results are cached.
    const Eigen::MatrixXcd& weyl_operator(int m, int n);

    // Max entrywise deviation, on the safe corner, between the matrix
    // product T[m,n]*T[m',n'] and the weyl_product expansion of the same
    // pair evaluated in this space.
    double product_deviation(int m, int n, int mp, int np);

  private:
    Eigen::MatrixXcd enumerate_symmetrized(int m, int n) const;

    int dim_;
    double hbar_;
    Eigen::MatrixXcd q_;
    Eigen::MatrixXcd p_;
    std::map<MonomialIndex, Eigen::MatrixXcd> cache_;
};

// One-shot helpers wrapping a temporary FockSpace.
Eigen::MatrixXcd weyl_operator(int m, int n, int dim, double hbar);
double oracle_product_check(int m, int n, int mp, int np, int dim, double hbar);

}  // namespace wigmom

#endif
