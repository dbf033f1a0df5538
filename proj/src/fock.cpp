#include "wigmom/fock.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wigmom/combinatorics.hpp"

namespace wigmom {

int min_safe_dim(int degree) noexcept {
    return 4 * degree + 10;
}

Eigen::MatrixXcd annihilation_operator(int dim) {
    if (dim < 2) {
        throw std::invalid_argument("annihilation_operator: dim must be >= 2");
    }
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(dim, dim);
    for (int k = 0; k + 1 < dim; ++k) {
        a(k, k + 1) = std::sqrt(static_cast<double>(k + 1));
    }
    return a;
}

std::pair<Eigen::MatrixXcd, Eigen::MatrixXcd> canonical_generators(int dim, double hbar) {
    if (hbar <= 0.0) {
        throw std::invalid_argument("canonical_generators: hbar must be positive");
    }
    Eigen::MatrixXcd a = annihilation_operator(dim);
    Eigen::MatrixXcd ad = a.adjoint();
    const double root = std::sqrt(hbar / 2.0);
    const std::complex<double> i{0.0, 1.0};
    return {root * (a + ad), i * root * (ad - a)};
}

Eigen::MatrixXcd safe_corner(const Eigen::MatrixXcd& matrix, int margin) {
    if (margin < 0 || margin >= matrix.rows()) {
        throw std::invalid_argument("safe_corner: margin out of range");
    }
    const auto keep = matrix.rows() - margin;
    return matrix.topLeftCorner(keep, keep);
}

FockSpace::FockSpace(int dim, double hbar) : dim_(dim), hbar_(hbar) {
    auto [q, p] = canonical_generators(dim, hbar);
    q_ = std::move(q);
    p_ = std::move(p);
}

namespace {

// Sums the product of every arrangement of m_left q factors and n_left p
// factors appended to `prefix`. Each complete ordering contributes once;
// common prefixes are multiplied out a single time.
Eigen::MatrixXcd ordering_sum(const Eigen::MatrixXcd& q, const Eigen::MatrixXcd& p,
                              int m_left, int n_left, const Eigen::MatrixXcd& prefix) {
    if (m_left == 0 && n_left == 0) {
        return prefix;
    }
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(prefix.rows(), prefix.cols());
    if (m_left > 0) {
        acc += ordering_sum(q, p, m_left - 1, n_left, prefix * q);
    }
    if (n_left > 0) {
        acc += ordering_sum(q, p, m_left, n_left - 1, prefix * p);
    }
    return acc;
}

}  // namespace

Eigen::MatrixXcd FockSpace::enumerate_symmetrized(int m, int n) const {
    Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(dim_, dim_);
    if (m == 0 && n == 0) {
        return identity;
    }
    return ordering_sum(q_, p_, m, n, identity) / binomial(m + n, m);
}

const Eigen::MatrixXcd& FockSpace::weyl_operator(int m, int n) {
    if (m < 0 || n < 0) {
        throw std::invalid_argument("weyl_operator: m, n must be nonnegative");
    }
    if (dim_ < min_safe_dim(m + n)) {
        throw std::invalid_argument("weyl_operator: dim " + std::to_string(dim_) +
                                    " below safe truncation size " +
                                    std::to_string(min_safe_dim(m + n)) + " for degree " +
                                    std::to_string(m + n));
    }
    auto it = cache_.find(MonomialIndex{m, n});
    if (it == cache_.end()) {
        it = cache_.emplace(MonomialIndex{m, n}, enumerate_symmetrized(m, n)).first;
    }
    return it->second;
}

double FockSpace::product_deviation(int m, int n, int mp, int np) {
    const Eigen::MatrixXcd lhs = weyl_operator(m, n) * weyl_operator(mp, np);

    const WeylPolynomial expansion =
        weyl_product(WeylPolynomial::monomial(m, n, 1.0, hbar_),
                     WeylPolynomial::monomial(mp, np, 1.0, hbar_));
    Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const auto& [idx, c] : expansion.terms()) {
        rhs += c * weyl_operator(idx.m, idx.n);
    }

    const int margin = m + n + mp + np;
    return (safe_corner(lhs, margin) - safe_corner(rhs, margin)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd weyl_operator(int m, int n, int dim, double hbar) {
    FockSpace space(dim, hbar);
    return space.weyl_operator(m, n);
}

double oracle_product_check(int m, int n, int mp, int np, int dim, double hbar) {
    FockSpace space(dim, hbar);
    return space.product_deviation(m, n, mp, np);
}

}  // namespace wigmom
