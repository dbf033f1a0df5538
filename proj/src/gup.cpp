#include "wigmom/gup.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace wigmom {
namespace {

double entry_scale(const Eigen::MatrixXcd& m) {
    return std::max(1.0, m.cwiseAbs().maxCoeff());
}

double min_eig(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

double real_expectation(const MomentTable& table, const WeylPolynomial& op, const char* what) {
    const std::complex<double> e = table.expectation(op);
    if (std::abs(e.imag()) > 1e-9 * std::max(1.0, std::abs(e))) {
        throw std::invalid_argument(std::string("schwartz_residual: expectation of ") + what +
                                    " is not real");
    }
    return e.real();
}

}  // namespace

MomentMatrix build_moment_matrix(const MomentTable& table, int two_J) {
    if (two_J < 0) {
        throw std::invalid_argument("build_moment_matrix: two_J must be nonnegative");
    }
    if (table.max_order() < 2 * two_J) {
        throw std::invalid_argument("build_moment_matrix: requires table order >= 4J = " +
                                    std::to_string(2 * two_J));
    }
    table.require_complete();

    const XiVector xi = xi_vector(two_J);
    const int n = static_cast<int>(xi.entries.size());
    Eigen::MatrixXcd m(n, n);
    for (int u = 0; u < n; ++u) {
        const WeylPolynomial left =
            WeylPolynomial::monomial(xi.entries[u].m, xi.entries[u].n, 1.0, table.hbar());
        for (int v = u; v < n; ++v) {
            const WeylPolynomial right =
                WeylPolynomial::monomial(xi.entries[v].m, xi.entries[v].n, 1.0, table.hbar());
            const std::complex<double> e = table.expectation(weyl_product(left, right));
            if (u == v) {
                // Diagonal products are hermitian, so the entry is real.
                m(u, u) = std::complex<double>(e.real(), 0.0);
            } else {
                m(u, v) = e;
                m(v, u) = std::conj(e);
            }
        }
    }
    return MomentMatrix{two_J, std::move(m)};
}

GupReport check_psd(const MomentMatrix& matrix, double psd_tol) {
    if (matrix.dim() < 1) {
        throw std::invalid_argument("check_psd: empty matrix");
    }
    const double scale = entry_scale(matrix.mat);
    if ((matrix.mat - matrix.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("check_psd: matrix is not hermitian");
    }
    GupReport report;
    report.two_J = matrix.two_J;
    report.scale = scale;
    report.tol = psd_tol;
    report.min_eigenvalue = min_eig(matrix.mat);
    report.pass = report.min_eigenvalue >= -psd_tol * scale;
    return report;
}

SchurChain schur_reduce(const MomentMatrix& matrix, double singular_tol) {
    const double scale = entry_scale(matrix.mat);
    if ((matrix.mat - matrix.mat.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale) {
        throw std::invalid_argument("schur_reduce: matrix is not hermitian");
    }

    SchurChain chain;
    chain.scale = scale;

    // remaining holds blocks two_j = level..two_J after eliminating the
    // lower ones; its leading block is the next pivot candidate.
    Eigen::MatrixXcd remaining = matrix.mat;
    for (int level = 0; level <= matrix.two_J; ++level) {
        const int pivot_size = level + 1;
        Eigen::MatrixXcd pivot = remaining.topLeftCorner(pivot_size, pivot_size);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(pivot);
        if (level > 0) {
            chain.levels.push_back(
                SchurLevel{level, level, pivot, es.eigenvalues().minCoeff()});
        }
        if (level == matrix.two_J) {
            break;  // nothing left below the final block
        }
        if (es.eigenvalues().cwiseAbs().minCoeff() < singular_tol * scale) {
            chain.status = SchurStatus::pivot_singular;
            chain.singular_level = level + 1;
            break;
        }
        const int rest = remaining.rows() - pivot_size;
        const Eigen::MatrixXcd c = remaining.bottomLeftCorner(rest, pivot_size);
        const Eigen::MatrixXcd b = remaining.bottomRightCorner(rest, rest);
        // pivot^-1 C' through the eigendecomposition of the pivot.
        const Eigen::MatrixXcd vc = es.eigenvectors().adjoint() * c.adjoint();
        const Eigen::MatrixXcd inv_c =
            es.eigenvectors() *
            (es.eigenvalues().cast<std::complex<double>>().cwiseInverse().asDiagonal() * vc);
        Eigen::MatrixXcd next = b - c * inv_c;
        remaining = 0.5 * (next + next.adjoint().eval());
    }
    return chain;
}

bool chain_verdict(const SchurChain& chain, double psd_tol) {
    for (const auto& level : chain.levels) {
        if (level.min_eigenvalue < -psd_tol * chain.scale) {
            return false;
        }
    }
    return true;
}

std::optional<int> first_failing_level(const SchurChain& chain, double psd_tol) {
    for (const auto& level : chain.levels) {
        if (level.min_eigenvalue < -psd_tol * chain.scale) {
            return level.level;
        }
    }
    return std::nullopt;
}

double schwartz_residual(const MomentTable& table, const WeylPolynomial& a,
                         const WeylPolynomial& b) {
    if (a.hbar() != b.hbar() || a.hbar() != table.hbar()) {
        throw std::invalid_argument("schwartz_residual: hbar mismatch");
    }
    if (!a.is_hermitian() || !b.is_hermitian()) {
        throw std::invalid_argument("schwartz_residual: operators must be hermitian");
    }
    if (a.degree() + b.degree() > table.max_order()) {
        throw std::invalid_argument("schwartz_residual: table order too small for <AB>");
    }

    const double aa = real_expectation(table, weyl_product(a, a), "A^2");
    const double bb = real_expectation(table, weyl_product(b, b), "B^2");

    const WeylPolynomial ab = weyl_product(a, b);
    const WeylPolynomial ba = weyl_product(b, a);
    const std::complex<double> e_ab = table.expectation(ab);
    const std::complex<double> e_ba = table.expectation(ba);
    const double symmetric = 0.5 * (e_ab + e_ba).real();
    // <(AB - BA)/2i> is the imaginary part of <AB> for hermitian A, B.
    const double antisymmetric = 0.5 * (e_ab - e_ba).imag();

    return aa * bb - symmetric * symmetric - antisymmetric * antisymmetric;
}

CertificationResult max_certified_order(const MomentTable& table, double psd_tol) {
    table.require_complete();
    CertificationResult result;
    const int two_J_cap = table.max_order() / 2;
    for (int two_J = 0; two_J <= two_J_cap; ++two_J) {
        GupReport report = check_psd(build_moment_matrix(table, two_J), psd_tol);
        if (!report.pass) {
            result.failure = report;
            return result;
        }
        result.two_J_star = two_J;
    }
    return result;
}

}  // namespace wigmom
