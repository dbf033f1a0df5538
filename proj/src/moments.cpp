#include "wigmom/moments.hpp"

#include <cmath>
#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "wigmom/combinatorics.hpp"
#include "wigmom/fock.hpp"

namespace wigmom {
namespace {

void require_even_order(int max_order, const char* who) {
    if (max_order < 0 || max_order % 2 != 0) {
        throw std::invalid_argument(std::string(who) + ": max_order must be even and >= 0");
    }
    if (max_order > kMaxMonomialDegree) {
        throw std::invalid_argument(std::string(who) + ": max_order exceeds supported cap " +
                                    std::to_string(kMaxMonomialDegree));
    }
}

std::string moment_name(int m, int n) {
    return "(" + std::to_string(m) + "," + std::to_string(n) + ")";
}

double integer_power(double base, int k) {
    double out = 1.0;
    for (int i = 0; i < k; ++i) {
        out *= base;
    }
    return out;
}

}  // namespace

MomentTable::MomentTable(double hbar, int max_order) : hbar_(hbar), max_order_(max_order) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("MomentTable: hbar must be finite and positive");
    }
    require_even_order(max_order, "MomentTable");
}

void MomentTable::set(int m, int n, double value) {
    if (m < 0 || n < 0 || m + n > max_order_) {
        throw std::invalid_argument("MomentTable::set: index " + moment_name(m, n) +
                                    " outside order " + std::to_string(max_order_));
    }
    moments_[MonomialIndex{m, n}] = value;
}

bool MomentTable::has(int m, int n) const {
    return moments_.count(MonomialIndex{m, n}) > 0;
}

double MomentTable::value(int m, int n) const {
    auto it = moments_.find(MonomialIndex{m, n});
    if (it == moments_.end()) {
        throw std::out_of_range("MomentTable::value: missing moment " + moment_name(m, n));
    }
    return it->second;
}

bool MomentTable::complete() const {
    for (int d = 0; d <= max_order_; ++d) {
        for (int m = 0; m <= d; ++m) {
            if (!has(m, d - m)) {
                return false;
            }
        }
    }
    return true;
}

void MomentTable::require_complete() const {
    if (!complete()) {
        throw std::invalid_argument("MomentTable: incomplete up to order " +
                                    std::to_string(max_order_));
    }
}

std::complex<double> MomentTable::expectation(const WeylPolynomial& op) const {
    if (op.hbar() != hbar_) {
        throw std::invalid_argument("MomentTable::expectation: hbar mismatch");
    }
    std::complex<double> out{0.0};
    for (const auto& [idx, c] : op.terms()) {
        out += c * value(idx.m, idx.n);
    }
    return out;
}

MomentTable shift_table(const MomentTable& table, double dq, double dp) {
    table.require_complete();
    MomentTable out(table.hbar(), table.max_order());
    for (int d = 0; d <= table.max_order(); ++d) {
        for (int m = 0; m <= d; ++m) {
            const int n = d - m;
            double acc = 0.0;
            for (int i = 0; i <= m; ++i) {
                for (int j = 0; j <= n; ++j) {
                    acc += binomial(m, i) * binomial(n, j) * integer_power(dq, m - i) *
                           integer_power(dp, n - j) * table.value(i, j);
                }
            }
            out.set(m, n, acc);
        }
    }
    return out;
}

MomentTable recenter_table(const MomentTable& table) {
    return shift_table(table, -table.mean_q(), -table.mean_p());
}

void GaussianState::validate() const {
    if (!covariance.allFinite() || !mean.allFinite()) {
        throw std::invalid_argument("GaussianState: nonfinite parameters");
    }
    if (std::abs(covariance(0, 1) - covariance(1, 0)) >
        1e-12 * std::max(1.0, covariance.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("GaussianState: covariance must be symmetric");
    }
    if (!(covariance(0, 0) > 0.0) || !(covariance.determinant() > 0.0)) {
        throw std::invalid_argument("GaussianState: covariance must be positive definite");
    }
}

bool GaussianState::is_quantum(double hbar) const noexcept {
    return covariance.determinant() >= hbar * hbar / 4.0;
}

GaussianState GaussianState::vacuum(double hbar) {
    GaussianState g;
    g.mean.setZero();
    g.covariance = (hbar / 2.0) * Eigen::Matrix2d::Identity();
    return g;
}

MomentTable gaussian_moments(const GaussianState& state, int max_order, double hbar) {
    require_even_order(max_order, "gaussian_moments");
    state.validate();
    const double vqq = state.covariance(0, 0);
    const double vqp = 0.5 * (state.covariance(0, 1) + state.covariance(1, 0));
    const double vpp = state.covariance(1, 1);

    // Centered moments by the Wick recurrence
    //   E[q^a p^b] = (a-1) vqq E[q^(a-2) p^b] + b vqp E[q^(a-1) p^(b-1)].
    std::vector<std::vector<double>> centered(max_order + 1,
                                              std::vector<double>(max_order + 1, 0.0));
    auto centered_at = [&](int a, int b) { return (a < 0 || b < 0) ? 0.0 : centered[a][b]; };
    centered[0][0] = 1.0;
    for (int d = 1; d <= max_order; ++d) {
        for (int a = 0; a <= d; ++a) {
            const int b = d - a;
            if (a > 0) {
                centered[a][b] = (a - 1) * vqq * centered_at(a - 2, b) +
                                 b * vqp * centered_at(a - 1, b - 1);
            } else {
                centered[0][b] = (b - 1) * vpp * centered_at(0, b - 2);
            }
        }
    }

    MomentTable out(hbar, max_order);
    const double mq = state.mean(0);
    const double mp_ = state.mean(1);
    for (int d = 0; d <= max_order; ++d) {
        for (int m = 0; m <= d; ++m) {
            const int n = d - m;
            double acc = 0.0;
            for (int i = 0; i <= m; ++i) {
                for (int j = 0; j <= n; ++j) {
                    acc += binomial(m, i) * binomial(n, j) * integer_power(mq, m - i) *
                           integer_power(mp_, n - j) * centered[i][j];
                }
            }
            out.set(m, n, acc);
        }
    }
    return out;
}

FockDensityMatrix::FockDensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() < 1 || rho_.rows() != rho_.cols()) {
        throw std::invalid_argument("FockDensityMatrix: matrix must be square and nonempty");
    }
    if (!rho_.allFinite()) {
        throw std::invalid_argument("FockDensityMatrix: nonfinite entries");
    }
    if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("FockDensityMatrix: not hermitian");
    }
    if (std::abs(rho_.trace().real() - 1.0) > 1e-12 || std::abs(rho_.trace().imag()) > 1e-12) {
        throw std::invalid_argument("FockDensityMatrix: trace must equal 1");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("FockDensityMatrix: negative eigenvalue beyond tolerance");
    }
}

FockDensityMatrix FockDensityMatrix::number_state(int n) {
    if (n < 0) {
        throw std::invalid_argument("FockDensityMatrix::number_state: n must be >= 0");
    }
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n + 1, n + 1);
    rho(n, n) = 1.0;
    return FockDensityMatrix(rho);
}

MomentTable moments_from_fock_dm(const FockDensityMatrix& rho, int max_order, double hbar) {
    require_even_order(max_order, "moments_from_fock_dm");
    // Pad the state so the truncation-corrupted band of every operator sits
    // strictly above its support.
    const int dim_op = std::max(min_safe_dim(max_order), rho.dim() + max_order + 2);
    FockSpace space(dim_op, hbar);
    const int d = rho.dim();

    MomentTable out(hbar, max_order);
    for (int total = 0; total <= max_order; ++total) {
        for (int m = 0; m <= total; ++m) {
            const int n = total - m;
            const Eigen::MatrixXcd& op = space.weyl_operator(m, n);
            // tr(rho T) with rho supported on the leading d levels.
            const std::complex<double> val =
                (rho.matrix().transpose().cwiseProduct(op.topLeftCorner(d, d))).sum();
            if (std::abs(val.imag()) > 1e-10 * std::max(1.0, std::abs(val))) {
                throw std::invalid_argument("moments_from_fock_dm: nonreal expectation for " +
                                            moment_name(m, n));
            }
            out.set(m, n, val.real());
        }
    }
    return out;
}

void WignerGrid::validate() const {
    if (nq < 2 || np < 2) {
        throw std::invalid_argument("WignerGrid: need at least 2 points per axis");
    }
    if (!(q_min < q_max) || !(p_min < p_max)) {
        throw std::invalid_argument("WignerGrid: empty axis range");
    }
    if (values.size() != static_cast<std::size_t>(nq) * static_cast<std::size_t>(np)) {
        throw std::invalid_argument("WignerGrid: values length does not match nq*np");
    }
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("WignerGrid: nonfinite sample");
        }
    }
}

GridExtraction moments_from_grid(const WignerGrid& grid, int max_order, double hbar,
                                 bool strict) {
    require_even_order(max_order, "moments_from_grid");
    grid.validate();

    const double hq = (grid.q_max - grid.q_min) / (grid.nq - 1);
    const double hp = (grid.p_max - grid.p_min) / (grid.np - 1);

    std::vector<double> qs(grid.nq), ps(grid.np), wq(grid.nq), wp(grid.np);
    for (int i = 0; i < grid.nq; ++i) {
        qs[i] = grid.q_min + i * hq;
        wq[i] = (i == 0 || i == grid.nq - 1) ? hq / 2.0 : hq;
    }
    for (int j = 0; j < grid.np; ++j) {
        ps[j] = grid.p_min + j * hp;
        wp[j] = (j == 0 || j == grid.np - 1) ? hp / 2.0 : hp;
    }

    // Powers per axis, qpow[m][i] = qs[i]^m.
    std::vector<std::vector<double>> qpow(max_order + 1, std::vector<double>(grid.nq, 1.0));
    std::vector<std::vector<double>> ppow(max_order + 1, std::vector<double>(grid.np, 1.0));
    for (int m = 1; m <= max_order; ++m) {
        for (int i = 0; i < grid.nq; ++i) {
            qpow[m][i] = qpow[m - 1][i] * qs[i];
        }
        for (int j = 0; j < grid.np; ++j) {
            ppow[m][j] = ppow[m - 1][j] * ps[j];
        }
    }

    const double band_q = 0.1 * (grid.q_max - grid.q_min);
    const double band_p = 0.1 * (grid.p_max - grid.p_min);
    auto in_edge_band = [&](double q, double p) {
        return q <= grid.q_min + band_q || q >= grid.q_max - band_q ||
               p <= grid.p_min + band_p || p >= grid.p_max - band_p;
    };

    double raw_norm = 0.0;
    for (int i = 0; i < grid.nq; ++i) {
        for (int j = 0; j < grid.np; ++j) {
            raw_norm += wq[i] * wp[j] * grid.at(i, j);
        }
    }
    if (std::abs(raw_norm - 1.0) > 1e-3) {
        std::ostringstream os;
        os << "moments_from_grid: quadrature normalization " << raw_norm
           << " deviates from 1 by more than 1e-3";
        throw std::runtime_error(os.str());
    }

    GridExtraction result{MomentTable(hbar, max_order), raw_norm, {}};
    for (int total = 0; total <= max_order; ++total) {
        for (int m = 0; m <= total; ++m) {
            const int n = total - m;
            double integral = 0.0;
            double edge_mass = 0.0;
            for (int i = 0; i < grid.nq; ++i) {
                for (int j = 0; j < grid.np; ++j) {
                    const double contrib = wq[i] * wp[j] * qpow[m][i] * ppow[n][j] * grid.at(i, j);
                    integral += contrib;
                    if (total == max_order && in_edge_band(qs[i], ps[j])) {
                        edge_mass += std::abs(contrib);
                    }
                }
            }
            const double moment = integral / raw_norm;
            result.table.set(m, n, moment);
            if (total == max_order && edge_mass > 1e-3 * std::max(1.0, std::abs(moment))) {
                std::ostringstream os;
                os << "moment " << moment_name(m, n) << " is support-limited: outer-band mass "
                   << edge_mass << " vs value " << moment;
                result.warnings.push_back(os.str());
            }
        }
    }
    if (strict && !result.warnings.empty()) {
        throw std::runtime_error("moments_from_grid: " + result.warnings.front());
    }
    return result;
}

Eigen::MatrixXd hankel_matrix(const std::vector<double>& gamma) {
    if (gamma.empty() || gamma.size() % 2 == 0) {
        throw std::invalid_argument(
            "hankel_matrix: need an odd number of moments gamma_0..gamma_2k");
    }
    const int k = (static_cast<int>(gamma.size()) - 1) / 2;
    Eigen::MatrixXd h(k + 1, k + 1);
    for (int a = 0; a <= k; ++a) {
        for (int b = 0; b <= k; ++b) {
            h(a, b) = gamma[a + b];
        }
    }
    return h;
}

bool ValidationReport::all_pass() const {
    return std::all_of(items.begin(), items.end(), [](const auto& i) { return i.pass; });
}

ValidationReport validate_table(const MomentTable& table) {
    ValidationReport report;

    std::vector<std::string> missing;
    for (int d = 0; d <= table.max_order(); ++d) {
        for (int m = 0; m <= d; ++m) {
            if (!table.has(m, d - m)) {
                missing.push_back(moment_name(m, d - m));
            }
        }
    }
    report.items.push_back({"completeness", missing.empty(),
                            missing.empty() ? "all moments present"
                                            : "missing " + std::to_string(missing.size()) +
                                                  " entries, first " + missing.front()});

    if (table.has(0, 0)) {
        const double unit = table.value(0, 0);
        const bool ok = std::abs(unit - 1.0) <= 1e-9;
        std::ostringstream os;
        os << "moment (0,0) = " << unit;
        report.items.push_back({"normalization", ok, os.str()});
    } else {
        report.items.push_back({"normalization", false, "moment (0,0) absent"});
    }

    bool finite = true;
    double scale = 0.0;
    for (const auto& [idx, v] : table.moments()) {
        finite = finite && std::isfinite(v);
        scale = std::max(scale, std::abs(v));
    }
    report.items.push_back({"finiteness", finite, finite ? "all values finite" : "nonfinite value"});

    bool positive = true;
    std::string offender;
    const double tol = 1e-12 * std::max(1.0, scale);
    for (int k = 1; 2 * k <= table.max_order(); ++k) {
        for (auto [m, n] : {std::pair{2 * k, 0}, std::pair{0, 2 * k}}) {
            if (table.has(m, n) && table.value(m, n) < -tol) {
                positive = false;
                if (offender.empty()) {
                    offender = moment_name(m, n);
                }
            }
        }
    }
    report.items.push_back({"diagonal-positivity", positive,
                            positive ? "even pure moments nonnegative"
                                     : "negative even moment " + offender});
    return report;
}

}  // namespace wigmom
