#ifndef WIGMOM_GUP_HPP
#define WIGMOM_GUP_HPP

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "wigmom/moments.hpp"
#include "wigmom/weyl.hpp"

namespace wigmom {

/// Hermitian matrix of second moments of the xi basis truncated at spin J:
/// entry (u, v) is the expectation of T[xi_u] T[xi_v] evaluated through the
/// product expansion against a moment table. Entry (0, 0) is 1.
struct MomentMatrix {
    int two_J = 0;
    Eigen::MatrixXcd mat;

    int dim() const noexcept { return static_cast<int>(mat.rows()); }
};

/// Requires table.max_order >= 4J; the mirrored lower triangle makes the
/// result hermitian by construction.
MomentMatrix build_moment_matrix(const MomentTable& table, int two_J);

struct GupReport {
    int two_J = 0;
    bool pass = false;
    double min_eigenvalue = 0.0;
    double scale = 1.0;  // max(1, largest |entry|)
    double tol = 1e-9;
};

/// Positive-semidefiniteness verdict by direct eigendecomposition. The
/// verdict is pass iff min_eigenvalue >= -tol * scale. Rejects matrices that
/// are not hermitian within 1e-10 * scale.
GupReport check_psd(const MomentMatrix& matrix, double psd_tol = 1e-9);

/// One recorded stage of the block Schur reduction: the diagonal block for
/// spin two_j / 2 after all lower blocks have been eliminated.
struct SchurLevel {
    int level = 0;
    int two_j = 0;
    Eigen::MatrixXcd residual;
    double min_eigenvalue = 0.0;
};

enum class SchurStatus { completed, pivot_singular };

struct SchurChain {
    SchurStatus status = SchurStatus::completed;
    int singular_level = -1;  // level whose pivot could not be inverted
    double scale = 1.0;
    std::vector<SchurLevel> levels;
};

/// Nested Schur-complement reduction in block order, pivoting first on the
/// constant 1, then on each centered spin block in turn. Level 1 is the
/// centered second-moment block; the reduction stops early when a pivot has
/// an eigenvalue within singular_tol * scale of zero, since the complement
/// against it is no longer meaningful.
SchurChain schur_reduce(const MomentMatrix& matrix, double singular_tol = 1e-10);

/// All recorded levels nonnegative within psd_tol * scale.
bool chain_verdict(const SchurChain& chain, double psd_tol = 1e-9);

std::optional<int> first_failing_level(const SchurChain& chain, double psd_tol = 1e-9);

/// <A^2><B^2> - <(AB+BA)/2>^2 - <(AB-BA)/2i>^2 for hermitian A, B, with all
/// expectations taken through the table. Nonnegative for every valid state.
double schwartz_residual(const MomentTable& table, const WeylPolynomial& a,
                         const WeylPolynomial& b);

struct CertificationResult {
    int two_J_star = 0;  // largest certified spin, doubled
    std::optional<GupReport> failure;
};

/// Largest J with 4J <= max_order such that every level up to J passes
/// check_psd; on failure the first failing report is attached.
CertificationResult max_certified_order(const MomentTable& table, double psd_tol = 1e-9);

}  // namespace wigmom

#endif
