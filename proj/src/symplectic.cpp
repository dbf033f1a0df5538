#include "wigmom/symplectic.hpp"

#include <cmath>
#include <stdexcept>

#include "wigmom/combinatorics.hpp"

namespace wigmom {
namespace {

double integer_power(double base, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= base;
    }
    return out;
}

}  // namespace

SymplecticMap::SymplecticMap(const Eigen::Matrix2d& s, bool renormalize) : s_(s) {
    if (!s_.allFinite()) {
        throw std::invalid_argument("SymplecticMap: nonfinite entries");
    }
    const double det = s_.determinant();
    if (renormalize) {
        if (!(det > 0.0)) {
            throw std::invalid_argument("SymplecticMap: cannot renormalize nonpositive determinant");
        }
        s_ /= std::sqrt(det);
    } else if (std::abs(det - 1.0) > 1e-12) {
        throw std::invalid_argument("SymplecticMap: determinant " + std::to_string(det) +
                                    " is not 1");
    }
}

SymplecticMap SymplecticMap::identity() {
    return SymplecticMap(Eigen::Matrix2d::Identity());
}

SymplecticMap SymplecticMap::rotation(double theta) {
    Eigen::Matrix2d s;
    s << std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta);
    return SymplecticMap(s);
}

SymplecticMap SymplecticMap::squeeze(double lambda) {
    if (!(lambda > 0.0)) {
        throw std::invalid_argument("SymplecticMap::squeeze: lambda must be positive");
    }
    Eigen::Matrix2d s;
    s << lambda, 0.0, 0.0, 1.0 / lambda;
    return SymplecticMap(s);
}

SymplecticMap SymplecticMap::composed_with(const SymplecticMap& other) const {
    return SymplecticMap(s_ * other.s_, true);
}

Eigen::MatrixXd spin_rep(const SymplecticMap& s, int two_j) {
    if (two_j < 0 || two_j > kMaxMonomialDegree) {
        throw std::invalid_argument("spin_rep: two_j outside [0, cap]");
    }
    const double a = s.a(), b = s.b(), c = s.c(), d = s.d();
    const int size = two_j + 1;
    Eigen::MatrixXd k_mat = Eigen::MatrixXd::Zero(size, size);
    for (int t = 0; t < size; ++t) {
        const int big_m = two_j - t;  // power of (a q + b p)
        const int big_n = t;          // power of (c q + d p)
        for (int k = 0; k < size; ++k) {
            double acc = 0.0;
            const int v_lo = std::max(0, k - big_m);
            const int v_hi = std::min(big_n, k);
            for (int v = v_lo; v <= v_hi; ++v) {
                const int u = k - v;
                acc += binomial(big_m, u) * integer_power(a, big_m - u) * integer_power(b, u) *
                       binomial(big_n, v) * integer_power(c, big_n - v) * integer_power(d, v);
            }
            k_mat(t, k) = acc;
        }
    }
    return k_mat;
}

Eigen::MatrixXd block_rep(const SymplecticMap& s, int two_J) {
    if (two_J < 0) {
        throw std::invalid_argument("block_rep: two_J must be nonnegative");
    }
    const int dim = (two_J + 1) * (two_J + 2) / 2;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
    int offset = 0;
    for (int two_j = 0; two_j <= two_J; ++two_j) {
        out.block(offset, offset, two_j + 1, two_j + 1) = spin_rep(s, two_j);
        offset += two_j + 1;
    }
    return out;
}

MomentTable transform_moments(const MomentTable& table, const SymplecticMap& s) {
    table.require_complete();
    MomentTable out(table.hbar(), table.max_order());
    for (int d = 0; d <= table.max_order(); ++d) {
        const Eigen::MatrixXd k_mat = spin_rep(s, d);
        Eigen::VectorXd mu(d + 1);
        for (int t = 0; t <= d; ++t) {
            mu(t) = table.value(d - t, t);
        }
        const Eigen::VectorXd transformed = k_mat * mu;
        for (int t = 0; t <= d; ++t) {
            out.set(d - t, t, transformed(t));
        }
    }
    return out;
}

}  // namespace wigmom
