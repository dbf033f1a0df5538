#include "wigmom/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "wigmom/fock.hpp"
#include "wigmom/gup.hpp"
#include "wigmom/halfint.hpp"
#include "wigmom/json_io.hpp"
#include "wigmom/moments.hpp"
#include "wigmom/symplectic.hpp"

namespace wigmom::cli {
namespace {

struct GlobalOptions {
    double hbar = 1.0;
    bool hbar_given = false;
    double tol = 1e-9;
    bool strict = false;
    std::string output;
};

[[noreturn]] void usage_error(const std::string& message) {
    throw std::invalid_argument(message);
}

std::vector<double> parse_csv_doubles(const std::string& text, std::size_t expected,
                                      const std::string& what) {
    std::vector<double> values;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        try {
            std::size_t used = 0;
            values.push_back(std::stod(piece, &used));
            if (used != piece.size()) {
                usage_error(what + ": cannot parse number \"" + piece + "\"");
            }
        } catch (const std::invalid_argument&) {
            usage_error(what + ": cannot parse number \"" + piece + "\"");
        } catch (const std::out_of_range&) {
            usage_error(what + ": number out of range \"" + piece + "\"");
        }
    }
    if (values.size() != expected) {
        usage_error(what + ": expected " + std::to_string(expected) + " comma-separated values");
    }
    return values;
}

MomentTable build_state_moments(const std::string& state, int order, const GlobalOptions& g,
                                std::ostream& err) {
    if (order < 0 || order % 2 != 0) {
        usage_error("--order must be a nonnegative even integer");
    }
    const auto colon = state.find(':');
    const std::string kind = state.substr(0, colon == std::string::npos ? state.size() : colon);
    const std::string rest = colon == std::string::npos ? "" : state.substr(colon + 1);

    if (kind == "vacuum") {
        return gaussian_moments(GaussianState::vacuum(g.hbar), order, g.hbar);
    }
    if (kind == "fock") {
        int n = -1;
        if (!rest.empty() && rest.size() <= 4) {
            n = 0;
            for (char c : rest) {
                if (c < '0' || c > '9') {
                    n = -1;
                    break;
                }
                n = n * 10 + (c - '0');
            }
        }
        if (n < 0) {
            usage_error("fock:<n> needs a nonnegative integer occupation");
        }
        return moments_from_fock_dm(FockDensityMatrix::number_state(n), order, g.hbar);
    }
    if (kind == "gaussian") {
        const auto v = parse_csv_doubles(rest, 5, "gaussian:<muq,mup,vqq,vqp,vpp>");
        GaussianState gauss;
        gauss.mean << v[0], v[1];
        gauss.covariance << v[2], v[3], v[3], v[4];
        return gaussian_moments(gauss, order, g.hbar);
    }
    if (kind == "dm") {
        const FockDensityMatrix rho = dm_from_json(load_json_file(rest), g.hbar);
        return moments_from_fock_dm(rho, order, g.hbar);
    }
    if (kind == "grid") {
        const WignerGrid grid = grid_from_json(load_json_file(rest), g.hbar);
        GridExtraction extraction = moments_from_grid(grid, order, g.hbar, g.strict);
        for (const auto& warning : extraction.warnings) {
            err << "warning: " << warning << "\n";
        }
        return extraction.table;
    }
    usage_error("unknown state \"" + state +
                "\"; expected vacuum, fock:<n>, gaussian:<5 floats>, dm:<file> or grid:<file>");
}

MomentTable load_table(const std::string& path, const GlobalOptions& g) {
    MomentTable table = table_from_json(load_json_file(path));
    if (g.hbar_given &&
        std::abs(table.hbar() - g.hbar) > 1e-12 * std::max(1.0, std::abs(g.hbar))) {
        usage_error("table hbar " + std::to_string(table.hbar()) +
                    " conflicts with --hbar " + std::to_string(g.hbar));
    }
    return table;
}

std::pair<int, int> parse_monomial_pair(const std::string& text, const std::string& flag) {
    const auto v = parse_csv_doubles(text, 2, flag);
    const int m = static_cast<int>(v[0]);
    const int n = static_cast<int>(v[1]);
    if (m < 0 || n < 0 || m != v[0] || n != v[1]) {
        usage_error(flag + ": expected nonnegative integers m,n");
    }
    return {m, n};
}

void emit(const std::string& text, const GlobalOptions& g, std::ostream& out) {
    if (g.output.empty()) {
        out << text << "\n";
        return;
    }
    std::ofstream file(g.output);
    if (!file) {
        usage_error("cannot open output file: " + g.output);
    }
    file << text << "\n";
}

int run_parsed(CLI::App& app, const GlobalOptions& g, std::ostream& out, std::ostream& err,
               const std::string& moments_state, int moments_order,
               const std::string& check_table, const std::string& check_J, bool check_schur,
               const std::string& transform_table, const std::vector<double>& transform_entries,
               const std::string& product_left, const std::string& product_right,
               const std::vector<double>& hankel_gamma) {
    if (app.got_subcommand("moments")) {
        const MomentTable table = build_state_moments(moments_state, moments_order, g, err);
        emit(table_to_json(table).dump(2), g, out);
        return 0;
    }

    if (app.got_subcommand("check")) {
        const MomentTable table = load_table(check_table, g);
        const auto two_J = parse_half_integer(check_J);
        if (!two_J) {
            usage_error("--J must be a nonnegative integer or half-integer like 3/2");
        }
        if (table.max_order() < 2 * *two_J) {
            usage_error("table order " + std::to_string(table.max_order()) +
                        " is below 4J = " + std::to_string(2 * *two_J));
        }
        if (g.strict) {
            const ValidationReport validation = validate_table(table);
            if (!validation.all_pass()) {
                for (const auto& item : validation.items) {
                    if (!item.pass) {
                        err << "validation failed: " << item.check << " (" << item.detail
                            << ")\n";
                    }
                }
                return 1;
            }
        }
        const MomentMatrix matrix = build_moment_matrix(table, *two_J);
        const GupReport report = check_psd(matrix, g.tol);
        if (check_schur) {
            const SchurChain chain = schur_reduce(matrix);
            emit(report_to_json(report, &chain).dump(2), g, out);
        } else {
            emit(report_to_json(report).dump(2), g, out);
        }
        return report.pass ? 0 : 2;
    }

    if (app.got_subcommand("transform")) {
        const MomentTable table = load_table(transform_table, g);
        Eigen::Matrix2d s;
        s << transform_entries[0], transform_entries[1], transform_entries[2],
            transform_entries[3];
        const MomentTable transformed = transform_moments(table, SymplecticMap(s));
        emit(table_to_json(transformed).dump(2), g, out);
        return 0;
    }

    if (app.got_subcommand("product")) {
        const auto [lm, ln] = parse_monomial_pair(product_left, "--left");
        const auto [rm, rn] = parse_monomial_pair(product_right, "--right");
        const WeylPolynomial result =
            weyl_product(WeylPolynomial::monomial(lm, ln, 1.0, g.hbar),
                         WeylPolynomial::monomial(rm, rn, 1.0, g.hbar));
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [idx, c] : result.terms()) {
            terms.push_back(
                {{"m", idx.m}, {"n", idx.n}, {"re", c.real()}, {"im", c.imag()}});
        }
        emit(nlohmann::json{{"hbar", g.hbar}, {"text", result.to_string()}, {"terms", terms}}
                 .dump(2),
             g, out);
        return 0;
    }

    if (app.got_subcommand("hankel")) {
        const Eigen::MatrixXd h = hankel_matrix(hankel_gamma);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h, Eigen::EigenvaluesOnly);
        const double min_eig = es.eigenvalues().minCoeff();
        const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
        emit(nlohmann::json{{"size", h.rows()},
                            {"min_eigenvalue", min_eig},
                            {"psd", min_eig >= -g.tol * scale}}
                 .dump(2),
             g, out);
        return 0;
    }

    err << app.help();
    return 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Phase-space moment tables and uncertainty certification"};
    app.name("wigmom");
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--hbar", g.hbar, "Planck constant, default 1")->check(CLI::PositiveNumber);
    app.add_option("--tol", g.tol, "Relative PSD tolerance, default 1e-9")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--strict", g.strict, "Promote warnings to errors");
    app.add_option("--output", g.output, "Write the JSON result to a file instead of stdout");

    std::string moments_state;
    int moments_order = 4;
    auto* moments_cmd = app.add_subcommand(
        "moments", "Compute a moment table for a built-in or file-backed state");
    moments_cmd->add_option("--state", moments_state,
                            "vacuum | fock:<n> | gaussian:<muq,mup,vqq,vqp,vpp> | dm:<file> | "
                            "grid:<file>")
        ->required();
    moments_cmd->add_option("--order", moments_order, "Even max moment order, default 4");

    std::string check_table, check_J;
    bool check_schur = false;
    auto* check_cmd =
        app.add_subcommand("check", "Check the moment-matrix positivity condition at level J");
    check_cmd->add_option("--table", check_table, "Moment-table JSON file")->required();
    check_cmd->add_option("--J", check_J, "Half-integer level, e.g. 1 or 3/2")->required();
    check_cmd->add_flag("--schur", check_schur, "Also report the Schur reduction chain");

    std::string transform_table;
    std::vector<double> transform_entries;
    auto* transform_cmd =
        app.add_subcommand("transform", "Apply a linear canonical transformation to a table");
    transform_cmd->add_option("--table", transform_table, "Moment-table JSON file")->required();
    transform_cmd
        ->add_option("--matrix", transform_entries, "Row-major entries a b c d of the map")
        ->expected(4)
        ->required();

    std::string product_left, product_right;
    auto* product_cmd =
        app.add_subcommand("product", "Expand a product of symmetrically ordered monomials");
    product_cmd->add_option("--left", product_left, "Left monomial as m,n")->required();
    product_cmd->add_option("--right", product_right, "Right monomial as m,n")->required();

    std::vector<double> hankel_gamma;
    auto* hankel_cmd =
        app.add_subcommand("hankel", "Classical Hankel positivity check of a moment sequence");
    hankel_cmd
        ->add_option("--gamma", hankel_gamma, "Moment sequence gamma_0 .. gamma_2k (odd count)")
        ->expected(-1)
        ->required();

    app.require_subcommand(0, 1);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("wigmom");
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        g.hbar_given = app.count("--hbar") > 0;
        return run_parsed(app, g, out, err, moments_state, moments_order, check_table, check_J,
                          check_schur, transform_table, transform_entries, product_left,
                          product_right, hankel_gamma);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace wigmom::cli
