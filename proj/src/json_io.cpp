#include "wigmom/json_io.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "wigmom/halfint.hpp"

namespace wigmom {
namespace {

[[noreturn]] void fail(const std::string& message) {
    throw std::invalid_argument(message);
}

double number_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number()) {
        fail(std::string("missing or non-numeric field \"") + key + "\"");
    }
    return j[key].get<double>();
}

int int_field(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        fail(std::string("missing or non-integer field \"") + key + "\"");
    }
    return j[key].get<int>();
}

void check_optional_hbar(const nlohmann::json& j, std::optional<double> expected,
                         const char* what) {
    if (!expected || !j.contains("hbar")) {
        return;
    }
    const double stored = number_field(j, "hbar");
    if (std::abs(stored - *expected) > 1e-12 * std::max(1.0, std::abs(*expected))) {
        fail(std::string(what) + ": file hbar " + std::to_string(stored) +
             " conflicts with requested hbar " + std::to_string(*expected));
    }
}

int parse_small_nonneg(const std::string& text) {
    if (text.empty() || text.size() > 4) {
        return -1;
    }
    int value = 0;
    for (char c : text) {
        if (c < '0' || c > '9') {
            return -1;
        }
        value = value * 10 + (c - '0');
    }
    return value;
}

std::pair<int, int> parse_moment_key(const std::string& key) {
    const auto comma = key.find(',');
    if (comma != std::string::npos) {
        const int m = parse_small_nonneg(key.substr(0, comma));
        const int n = parse_small_nonneg(key.substr(comma + 1));
        if (m >= 0 && n >= 0) {
            return {m, n};
        }
    }
    fail("moment key \"" + key + "\" is not of the form \"m,n\"");
}

}  // namespace

nlohmann::json table_to_json(const MomentTable& table) {
    nlohmann::json moments = nlohmann::json::object();
    for (const auto& [idx, value] : table.moments()) {
        moments[std::to_string(idx.m) + "," + std::to_string(idx.n)] = value;
    }
    return nlohmann::json{
        {"hbar", table.hbar()}, {"max_order", table.max_order()}, {"moments", moments}};
}

MomentTable table_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        fail("moment table: expected a JSON object");
    }
    const double hbar = number_field(j, "hbar");
    const int max_order = int_field(j, "max_order");
    if (!j.contains("moments") || !j["moments"].is_object()) {
        fail("moment table: missing \"moments\" object");
    }
    MomentTable table(hbar, max_order);
    for (const auto& [key, value] : j["moments"].items()) {
        if (!value.is_number()) {
            fail("moment table: value for \"" + key + "\" is not numeric");
        }
        const auto [m, n] = parse_moment_key(key);
        table.set(m, n, value.get<double>());
    }
    table.require_complete();
    if (std::abs(table.value(0, 0) - 1.0) > 1e-9) {
        fail("moment table: moment (0,0) must equal 1");
    }
    return table;
}

FockDensityMatrix dm_from_json(const nlohmann::json& j, std::optional<double> expected_hbar) {
    if (!j.is_object()) {
        fail("density matrix: expected a JSON object");
    }
    check_optional_hbar(j, expected_hbar, "density matrix");
    const int dim = int_field(j, "dim");
    if (dim < 1) {
        fail("density matrix: dim must be >= 1");
    }
    for (const char* key : {"re", "im"}) {
        if (!j.contains(key) || !j[key].is_array() ||
            j[key].size() != static_cast<std::size_t>(dim)) {
            fail(std::string("density matrix: field \"") + key + "\" must be a dim x dim array");
        }
    }
    Eigen::MatrixXcd rho(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const auto& re_row = j["re"][r];
        const auto& im_row = j["im"][r];
        if (!re_row.is_array() || !im_row.is_array() ||
            re_row.size() != static_cast<std::size_t>(dim) ||
            im_row.size() != static_cast<std::size_t>(dim)) {
            fail("density matrix: row " + std::to_string(r) + " has the wrong length");
        }
        for (int c = 0; c < dim; ++c) {
            if (!re_row[c].is_number() || !im_row[c].is_number()) {
                fail("density matrix: non-numeric entry");
            }
            rho(r, c) = {re_row[c].get<double>(), im_row[c].get<double>()};
        }
    }
    return FockDensityMatrix(rho);
}

WignerGrid grid_from_json(const nlohmann::json& j, std::optional<double> expected_hbar) {
    if (!j.is_object()) {
        fail("Wigner grid: expected a JSON object");
    }
    check_optional_hbar(j, expected_hbar, "Wigner grid");
    WignerGrid grid;
    grid.q_min = number_field(j, "q_min");
    grid.q_max = number_field(j, "q_max");
    grid.p_min = number_field(j, "p_min");
    grid.p_max = number_field(j, "p_max");
    grid.nq = int_field(j, "nq");
    grid.np = int_field(j, "np");
    if (!j.contains("values") || !j["values"].is_array()) {
        fail("Wigner grid: missing \"values\" array");
    }
    grid.values.reserve(j["values"].size());
    for (const auto& v : j["values"]) {
        if (!v.is_number()) {
            fail("Wigner grid: non-numeric sample");
        }
        grid.values.push_back(v.get<double>());
    }
    grid.validate();
    return grid;
}

nlohmann::json report_to_json(const GupReport& report, const SchurChain* chain) {
    nlohmann::json j{{"J", format_half_integer(report.two_J)},
                     {"verdict", report.pass ? "pass" : "fail"},
                     {"min_eigenvalue", report.min_eigenvalue},
                     {"conditions", nlohmann::json::array()}};
    if (chain != nullptr) {
        for (const auto& level : chain->levels) {
            j["conditions"].push_back(
                {{"level", level.level}, {"min_eig", level.min_eigenvalue}});
        }
        j["schur_status"] =
            chain->status == SchurStatus::completed ? "completed" : "pivot-singular";
        if (chain->status == SchurStatus::pivot_singular) {
            j["singular_level"] = chain->singular_level;
        }
    }
    return j;
}

nlohmann::json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open file: " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail("cannot parse " + path + ": " + e.what());
    }
}

}  // namespace wigmom
