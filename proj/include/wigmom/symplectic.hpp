#ifndef WIGMOM_SYMPLECTIC_HPP
#define WIGMOM_SYMPLECTIC_HPP

#include <Eigen/Dense>

#include "wigmom/moments.hpp"

namespace wigmom {

/// Linear canonical transformation acting on the column (q, p)^T, i.e.
/// q -> a q + b p and p -> c q + d p for S = [[a, b], [c, d]].
///
/// The determinant must equal 1 within 1e-12. There is no silent fixup:
/// renormalization (dividing by sqrt(det), det > 0) happens only on request.
class SymplecticMap {
  public:
    explicit SymplecticMap(const Eigen::Matrix2d& s, bool renormalize = false);

    const Eigen::Matrix2d& matrix() const noexcept { return s_; }
    double a() const noexcept { return s_(0, 0); }
    double b() const noexcept { return s_(0, 1); }
    double c() const noexcept { return s_(1, 0); }
    double d() const noexcept { return s_(1, 1); }

    static SymplecticMap identity();
    static SymplecticMap rotation(double theta);
    static SymplecticMap squeeze(double lambda);  // diag(lambda, 1/lambda)

    SymplecticMap composed_with(const SymplecticMap& other) const;  // this * other

  private:
    Eigen::Matrix2d s_;
};

/// Matrix of the induced action on the degree-2j monomials, ordered as in
/// the xi basis (q-heavy first): row t holds the expansion of
/// (a q + b p)^(2j-t) (c q + d p)^t over q^(2j-k) p^k.
Eigen::MatrixXd spin_rep(const SymplecticMap& s, int two_j);

/// Block diagonal of spin_rep for two_j = 0..two_J, matching the xi layout.
Eigen::MatrixXd block_rep(const SymplecticMap& s, int two_J);

/// Transformed moment table: each fixed-degree block of moments is mapped by
/// the corresponding spin representation. Normalization and max_order are
/// preserved.
MomentTable transform_moments(const MomentTable& table, const SymplecticMap& s);

}  // namespace wigmom

#endif
