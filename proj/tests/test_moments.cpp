#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

#include "test_support.hpp"
#include "wigmom/moments.hpp"
#include "wigmom/weyl.hpp"

using namespace wigmom;
using testsupport::approx_rel;
using testsupport::fock_moment;

TEST_CASE("moment_table_basics") {
    MomentTable table(1.0, 2);
    CHECK_FALSE(table.complete());
    table.set(0, 0, 1.0);
    table.set(1, 0, 0.1);
    table.set(0, 1, -0.2);
    table.set(2, 0, 0.5);
    table.set(1, 1, 0.0);
    table.set(0, 2, 0.5);
    CHECK(table.complete());
    CHECK(table.mean_q() == 0.1);
    CHECK(table.mean_p() == -0.2);
    CHECK(table.value(2, 0) == 0.5);
    CHECK_FALSE(table.has(3, 0));
    CHECK_THROWS_AS(table.value(3, 0), std::out_of_range);
    CHECK_THROWS_AS(MomentTable(1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(MomentTable(0.0, 2), std::invalid_argument);
}

TEST_CASE("expectation_of_polynomial") {
    MomentTable table(1.0, 2);
    table.set(0, 0, 1.0);
    table.set(1, 0, 0.0);
    table.set(0, 1, 0.0);
    table.set(2, 0, 0.5);
    table.set(1, 1, 0.0);
    table.set(0, 2, 0.5);

    WeylPolynomial energy = WeylPolynomial::monomial(2, 0) + WeylPolynomial::monomial(0, 2);
    CHECK(std::abs(table.expectation(energy) - std::complex<double>(1.0, 0.0)) < 1e-15);

    WeylPolynomial mismatched = WeylPolynomial::monomial(2, 0, 1.0, 0.5);
    CHECK_THROWS_AS(table.expectation(mismatched), std::invalid_argument);
    WeylPolynomial too_big = WeylPolynomial::monomial(3, 0);
    CHECK_THROWS_AS(table.expectation(too_big), std::out_of_range);
}

TEST_CASE("vacuum_gaussian_moments") {
    for (double hbar : {1.0, 0.7}) {
        CAPTURE(hbar);
        MomentTable t = gaussian_moments(GaussianState::vacuum(hbar), 6, hbar);
        CHECK(t.value(0, 0) == 1.0);
        CHECK(approx_rel(t.value(2, 0), hbar / 2.0, 1e-14));
        CHECK(approx_rel(t.value(0, 2), hbar / 2.0, 1e-14));
        CHECK(approx_rel(t.value(4, 0), 3.0 * hbar * hbar / 4.0, 1e-14));
        CHECK(approx_rel(t.value(2, 2), hbar * hbar / 4.0, 1e-14));
        CHECK(t.value(1, 0) == 0.0);
        CHECK(t.value(3, 1) == 0.0);
        CHECK(t.value(1, 1) == 0.0);
        // all odd-exponent entries vanish for a centered state
        for (const auto& [idx, v] : t.moments()) {
            if (idx.m % 2 == 1 || idx.n % 2 == 1) {
                CHECK(std::abs(v) < 1e-15);
            }
        }
    }
}

TEST_CASE("gaussian_moments_with_mean_shift") {
    GaussianState state = GaussianState::vacuum(1.0);
    state.mean << 2.0, -1.0;
    MomentTable t = gaussian_moments(state, 4, 1.0);
    CHECK(approx_rel(t.value(1, 0), 2.0, 1e-14));
    CHECK(approx_rel(t.value(0, 1), -1.0, 1e-14));
    CHECK(approx_rel(t.value(2, 0), 0.5 + 4.0, 1e-14));
    CHECK(approx_rel(t.value(1, 1), -2.0, 1e-14));
    // E[q^2 p] = E[q^2] E[p] for independent components
    CHECK(approx_rel(t.value(2, 1), 4.5 * (-1.0), 1e-14));

    // the same table through explicit recentering of the centered moments
    GaussianState centered = GaussianState::vacuum(1.0);
    MomentTable base = gaussian_moments(centered, 4, 1.0);
    MomentTable shifted = shift_table(base, 2.0, -1.0);
    for (const auto& [idx, v] : t.moments()) {
        CHECK(approx_rel(shifted.value(idx.m, idx.n), v, 1e-13));
    }
}

TEST_CASE("correlated_gaussian_moments") {
    GaussianState state;
    state.mean << 0.0, 0.0;
    state.covariance << 1.0, 0.3, 0.3, 0.8;
    MomentTable t = gaussian_moments(state, 4, 1.0);
    CHECK(approx_rel(t.value(1, 1), 0.3, 1e-14));
    // Isserlis: E[q^2 p^2] = vqq vpp + 2 vqp^2
    CHECK(approx_rel(t.value(2, 2), 1.0 * 0.8 + 2.0 * 0.09, 1e-14));
    // E[q^3 p] = 3 vqq vqp
    CHECK(approx_rel(t.value(3, 1), 3.0 * 1.0 * 0.3, 1e-14));
}

TEST_CASE("gaussian_covariance_validation") {
    GaussianState bad;
    bad.covariance << 1.0, 2.0, 2.0, 1.0;
    CHECK_THROWS_AS(gaussian_moments(bad, 2, 1.0), std::invalid_argument);

    GaussianState asym;
    asym.covariance << 1.0, 0.2, -0.2, 1.0;
    CHECK_THROWS_AS(gaussian_moments(asym, 2, 1.0), std::invalid_argument);

    GaussianState classical;
    classical.covariance << 0.25, 0.0, 0.0, 0.25;
    CHECK_NOTHROW(classical.validate());
    CHECK_FALSE(classical.is_quantum(1.0));
    CHECK(GaussianState::vacuum(1.0).is_quantum(1.0));
    CHECK(GaussianState::vacuum(0.7).is_quantum(0.7));
}

TEST_CASE("number_state_moments_match_closed_form") {
    for (double hbar : {1.0, 0.7}) {
        for (int n = 0; n <= 4; ++n) {
            CAPTURE(hbar);
            CAPTURE(n);
            MomentTable t = moments_from_fock_dm(FockDensityMatrix::number_state(n), 6, hbar);
            for (const auto& [idx, v] : t.moments()) {
                CHECK(approx_rel(v, fock_moment(n, idx.m, idx.n, hbar), 1e-10));
            }
        }
    }
}

TEST_CASE("first_excited_fixed_values") {
    MomentTable t = moments_from_fock_dm(FockDensityMatrix::number_state(1), 4, 1.0);
    CHECK(approx_rel(t.value(2, 0), 1.5, 1e-12));
    CHECK(approx_rel(t.value(0, 2), 1.5, 1e-12));
    CHECK(approx_rel(t.value(4, 0), 3.75, 1e-12));
    CHECK(approx_rel(t.value(2, 2), 1.25, 1e-12));
}

TEST_CASE("vacuum_dm_matches_gaussian_route") {
    MomentTable from_dm = moments_from_fock_dm(FockDensityMatrix::number_state(0), 6, 1.0);
    MomentTable from_gauss = gaussian_moments(GaussianState::vacuum(1.0), 6, 1.0);
    for (const auto& [idx, v] : from_gauss.moments()) {
        CHECK(approx_rel(from_dm.value(idx.m, idx.n), v, 1e-10));
    }
}

TEST_CASE("thermal_dm_matches_gaussian_route") {
    const double hbar = 1.0;
    const double nbar = 0.5;
    const double x = nbar / (1.0 + nbar);
    const int dim = 30;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    double norm = 0.0;
    for (int k = 0; k < dim; ++k) norm += std::pow(x, k);
    for (int k = 0; k < dim; ++k) rho(k, k) = std::pow(x, k) / norm;
    MomentTable from_dm = moments_from_fock_dm(FockDensityMatrix(rho), 4, hbar);

    GaussianState thermal;
    thermal.covariance = hbar * (nbar + 0.5) * Eigen::Matrix2d::Identity();
    MomentTable from_gauss = gaussian_moments(thermal, 4, hbar);
    for (const auto& [idx, v] : from_gauss.moments()) {
        CHECK(approx_rel(from_dm.value(idx.m, idx.n), v, 1e-8));
    }
}

TEST_CASE("coherent_dm_matches_gaussian_route") {
    const double hbar = 1.0;
    const std::complex<double> alpha(0.8, 0.3);
    const int dim = 25;
    Eigen::VectorXcd psi(dim);
    double log_fact = 0.0;
    for (int k = 0; k < dim; ++k) {
        if (k > 0) log_fact += std::log(static_cast<double>(k));
        psi(k) = std::exp(-0.5 * std::norm(alpha)) * std::pow(alpha, k) *
                 std::exp(-0.5 * log_fact);
    }
    Eigen::MatrixXcd rho = psi * psi.adjoint();
    rho /= rho.trace().real();
    MomentTable from_dm = moments_from_fock_dm(FockDensityMatrix(rho), 6, hbar);

    GaussianState coherent;
    coherent.mean << std::sqrt(2.0 * hbar) * alpha.real(), std::sqrt(2.0 * hbar) * alpha.imag();
    coherent.covariance = (hbar / 2.0) * Eigen::Matrix2d::Identity();
    MomentTable from_gauss = gaussian_moments(coherent, 6, hbar);
    for (const auto& [idx, v] : from_gauss.moments()) {
        CHECK(approx_rel(from_dm.value(idx.m, idx.n), v, 1e-8));
    }
}

TEST_CASE("density_matrix_validation") {
    Eigen::MatrixXcd ok = Eigen::MatrixXcd::Zero(2, 2);
    ok(0, 0) = 0.5;
    ok(1, 1) = 0.5;
    CHECK_NOTHROW(FockDensityMatrix{ok});

    Eigen::MatrixXcd nonherm = ok;
    nonherm(0, 1) = 0.3;
    CHECK_THROWS_AS(FockDensityMatrix{nonherm}, std::invalid_argument);

    Eigen::MatrixXcd bad_trace = ok;
    bad_trace(1, 1) = 0.6;
    CHECK_THROWS_AS(FockDensityMatrix{bad_trace}, std::invalid_argument);

    Eigen::MatrixXcd negative = Eigen::MatrixXcd::Zero(2, 2);
    negative(0, 0) = 1.5;
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(FockDensityMatrix{negative}, std::invalid_argument);

    CHECK_THROWS_AS(FockDensityMatrix{Eigen::MatrixXcd::Zero(2, 3)}, std::invalid_argument);
}

TEST_CASE("grid_moments_of_vacuum") {
    auto grid = testsupport::sample_grid(testsupport::vacuum_distribution(1.0),
                                         -6.0, 6.0, 121, -6.0, 6.0, 121);
    GridExtraction ext = moments_from_grid(grid, 4, 1.0);
    CHECK(ext.warnings.empty());
    CHECK(std::abs(ext.raw_normalization - 1.0) < 1e-6);
    CHECK(ext.table.value(0, 0) == 1.0);
    CHECK(approx_rel(ext.table.value(2, 0), 0.5, 1e-6));
    CHECK(approx_rel(ext.table.value(0, 2), 0.5, 1e-6));
    CHECK(approx_rel(ext.table.value(2, 2), 0.25, 1e-6));
    CHECK(std::abs(ext.table.value(1, 0)) < 1e-9);
}

TEST_CASE("grid_moments_of_first_excited") {
    auto grid = testsupport::sample_grid(testsupport::first_excited_distribution(1.0),
                                         -7.0, 7.0, 141, -7.0, 7.0, 141);
    GridExtraction ext = moments_from_grid(grid, 4, 1.0);
    CHECK(ext.warnings.empty());
    for (const auto& [idx, v] : ext.table.moments()) {
        CHECK(approx_rel(v, fock_moment(1, idx.m, idx.n, 1.0), 1e-6));
    }
}

TEST_CASE("grid_normalization_gate") {
    auto grid = testsupport::sample_grid(
        [](double q, double p) {
            return 1.5 * std::exp(-(q * q + p * p)) / M_PI;
        },
        -6.0, 6.0, 81, -6.0, 6.0, 81);
    CHECK_THROWS_AS(moments_from_grid(grid, 2, 1.0), std::runtime_error);
}

TEST_CASE("grid_support_warning_and_strict_mode") {
    // A window wide enough to keep the total mass but tight enough that the
    // outer band still carries a visible share of the order-6 moments.
    auto grid = testsupport::sample_grid(testsupport::vacuum_distribution(1.0),
                                         -3.5, 3.5, 71, -3.5, 3.5, 71);
    GridExtraction ext = moments_from_grid(grid, 6, 1.0);
    CHECK_FALSE(ext.warnings.empty());
    CHECK_THROWS_AS(moments_from_grid(grid, 6, 1.0, true), std::runtime_error);
    // the well-supported low moments are still fine
    CHECK(approx_rel(ext.table.value(2, 0), 0.5, 1e-4));
}

TEST_CASE("grid_quadrature_convergence") {
    auto coarse = testsupport::sample_grid(testsupport::vacuum_distribution(1.0),
                                           -6.0, 6.0, 13, -6.0, 6.0, 13);
    auto fine = testsupport::sample_grid(testsupport::vacuum_distribution(1.0),
                                         -6.0, 6.0, 25, -6.0, 6.0, 25);
    double err_coarse = std::abs(moments_from_grid(coarse, 2, 1.0).table.value(2, 0) - 0.5);
    double err_fine = std::abs(moments_from_grid(fine, 2, 1.0).table.value(2, 0) - 0.5);
    REQUIRE(err_coarse > 1e-12);  // coarse step is outside the noise floor
    CHECK(err_fine < err_coarse / 4.0);
}

TEST_CASE("grid_validation_rejections") {
    WignerGrid grid;
    grid.q_min = 0.0;
    grid.q_max = 1.0;
    grid.p_min = 0.0;
    grid.p_max = 1.0;
    grid.nq = 2;
    grid.np = 2;
    grid.values = {1.0, 1.0, 1.0};  // wrong length
    CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
    grid.values = {1.0, 1.0, 1.0, 1.0};
    CHECK_NOTHROW(grid.validate());
    grid.q_max = 0.0;
    CHECK_THROWS_AS(grid.validate(), std::invalid_argument);
}

TEST_CASE("hankel_matrix_fixtures") {
    Eigen::MatrixXd h = hankel_matrix({1.0, 0.0, 1.0, 0.0, 3.0});
    REQUIRE(h.rows() == 3);
    CHECK(h(0, 0) == 1.0);
    CHECK(h(0, 2) == 1.0);
    CHECK(h(1, 1) == 1.0);
    CHECK(h(2, 2) == 3.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    Eigen::MatrixXd bad = hankel_matrix({1.0, 0.0, -1.0});
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_bad(bad);
    CHECK(es_bad.eigenvalues().minCoeff() < 0.0);

    CHECK_THROWS_AS(hankel_matrix({1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("standard_normal_hankel_order_eight") {
    std::vector<double> gamma = {1.0, 0.0, 1.0, 0.0, 3.0, 0.0, 15.0, 0.0, 105.0};
    Eigen::MatrixXd h = hankel_matrix(gamma);
    REQUIRE(h.rows() == 5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    CHECK(es.eigenvalues().minCoeff() > 0.0);

    std::vector<double> tampered = gamma;
    tampered[2] = -1.0;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_bad(hankel_matrix(tampered));
    CHECK(es_bad.eigenvalues().minCoeff() < 0.0);
}

TEST_CASE("table_validation_report") {
    MomentTable good = gaussian_moments(GaussianState::vacuum(1.0), 4, 1.0);
    ValidationReport rep = validate_table(good);
    CHECK(rep.all_pass());

    MomentTable off_norm = good;
    off_norm.set(0, 0, 0.9);
    ValidationReport rep2 = validate_table(off_norm);
    CHECK_FALSE(rep2.all_pass());

    MomentTable incomplete(1.0, 2);
    incomplete.set(0, 0, 1.0);
    ValidationReport rep3 = validate_table(incomplete);
    CHECK_FALSE(rep3.all_pass());

    MomentTable negative = good;
    negative.set(2, 0, -0.5);
    ValidationReport rep4 = validate_table(negative);
    CHECK_FALSE(rep4.all_pass());
}

TEST_CASE("shift_and_recenter_round_trip") {
    GaussianState state;
    state.mean << 1.2, -0.4;
    state.covariance << 0.9, 0.2, 0.2, 1.1;
    MomentTable t = gaussian_moments(state, 6, 1.0);
    CHECK(approx_rel(t.mean_q(), 1.2, 1e-14));
    MomentTable centered = recenter_table(t);
    CHECK(std::abs(centered.mean_q()) < 1e-12);
    CHECK(std::abs(centered.mean_p()) < 1e-12);
    MomentTable back = shift_table(centered, 1.2, -0.4);
    for (const auto& [idx, v] : t.moments()) {
        CHECK(approx_rel(back.value(idx.m, idx.n), v, 1e-12));
    }
    // recentered moments are the moments of the centered state
    GaussianState centered_state = state;
    centered_state.mean.setZero();
    MomentTable direct = gaussian_moments(centered_state, 6, 1.0);
    for (const auto& [idx, v] : direct.moments()) {
        CHECK(approx_rel(centered.value(idx.m, idx.n), v, 1e-12));
    }
}
