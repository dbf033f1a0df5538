#ifndef WIGMOM_MOMENTS_HPP
#define WIGMOM_MOMENTS_HPP

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "wigmom/weyl.hpp"

namespace wigmom {

/// Complete set of phase-space moments \bar{q^m p^n} for all m+n <= max_order,
/// tied to a fixed hbar. max_order is even and the table is normalized,
/// \bar{1} = 1.
class MomentTable {
  public:
    MomentTable(double hbar, int max_order);

    double hbar() const noexcept { return hbar_; }
    int max_order() const noexcept { return max_order_; }
    const std::map<MonomialIndex, double>& moments() const noexcept { return moments_; }

    void set(int m, int n, double value);
    bool has(int m, int n) const;
    double value(int m, int n) const;  // throws when the entry is absent

    bool complete() const;
    void require_complete() const;

    double mean_q() const { return value(1, 0); }
    double mean_p() const { return value(0, 1); }

    /// Sum of coefficient * moment over the polynomial's terms. Every term
    /// must fit inside the table.
    std::complex<double> expectation(const WeylPolynomial& op) const;

  private:
    double hbar_;
    int max_order_;
    std::map<MonomialIndex, double> moments_;
};

/// Moments of the displaced distribution, \bar{(q+dq)^m (p+dp)^n} expanded
/// binomially from the original table.
MomentTable shift_table(const MomentTable& table, double dq, double dp);

/// Shift that moves the means to zero.
MomentTable recenter_table(const MomentTable& table);

struct GaussianState {
    Eigen::Vector2d mean = Eigen::Vector2d::Zero();
    Eigen::Matrix2d covariance = Eigen::Matrix2d::Identity();

    void validate() const;  // symmetric positive definite covariance
    bool is_quantum(double hbar) const noexcept;  // det V >= hbar^2/4
    static GaussianState vacuum(double hbar);
};

/// Exact Gaussian moments via the two-dimensional Wick recurrence plus
/// binomial mean shifts. max_order must be even and within the degree cap.
MomentTable gaussian_moments(const GaussianState& state, int max_order, double hbar);

/// Density matrix in the truncated number basis. Construction validates
/// hermiticity (1e-12), unit trace (1e-12) and positivity (min eigenvalue
/// >= -1e-10).
class FockDensityMatrix {
  public:
    explicit FockDensityMatrix(Eigen::MatrixXcd rho);

    int dim() const noexcept { return static_cast<int>(rho_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }

    static FockDensityMatrix number_state(int n);

  private:
    Eigen::MatrixXcd rho_;
};

/// Moments tr(rho T[m,n]) through the truncated-Fock realization. The
/// operators are built in a larger workspace (at least min_safe_dim(max_order),
/// and always max_order + 2 levels above the density matrix) so the
/// truncation-corrupted band never touches the state's support. Expectation
/// values must come out real to 1e-10; imaginary parts are then discarded.
MomentTable moments_from_fock_dm(const FockDensityMatrix& rho, int max_order, double hbar);

/// Uniformly sampled Wigner function, values[iq * np + ip] = W(q_iq, p_ip).
struct WignerGrid {
    double q_min = 0.0, q_max = 0.0;
    double p_min = 0.0, p_max = 0.0;
    int nq = 0, np = 0;
    std::vector<double> values;

    void validate() const;
    double at(int iq, int ip) const { return values[static_cast<std::size_t>(iq) * np + ip]; }
};

struct GridExtraction {
    MomentTable table;
    double raw_normalization = 0.0;
    std::vector<std::string> warnings;
};

/// Trapezoid quadrature of q^m p^n against the grid. The raw integral of W
/// must equal 1 within 1e-3; all moments are renormalized by it. Top-degree
/// moments drawing more than 1e-3 of their value (absolute floor 1) from the
/// outermost 10% of the grid are flagged as support-limited; under strict
/// that flag is an error.
GridExtraction moments_from_grid(const WignerGrid& grid, int max_order, double hbar,
                                 bool strict = false);

/// Hankel matrix Gamma_ab = gamma_{a+b} of a one-dimensional moment sequence
/// gamma_0..gamma_2k. The input length must be odd.
Eigen::MatrixXd hankel_matrix(const std::vector<double>& gamma);

struct ValidationItem {
    std::string check;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<ValidationItem> items;
    bool all_pass() const;
};

/// Completeness, normalization, finiteness and positivity of the pure even
/// diagonal moments.
ValidationReport validate_table(const MomentTable& table);

}  // namespace wigmom

#endif
