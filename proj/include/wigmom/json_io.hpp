#ifndef WIGMOM_JSON_IO_HPP
#define WIGMOM_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "wigmom/gup.hpp"
#include "wigmom/moments.hpp"

namespace wigmom {

// File formats:
//   moment table  {"hbar": h, "max_order": N, "moments": {"m,n": value, ...}}
//   density matrix {"dim": N, "re": [[...]], "im": [[...]]}
//   Wigner grid   {"q_min", "q_max", "p_min", "p_max", "nq", "np",
//                  "values": [row-major nq*np]}
// Density-matrix and grid files may carry an optional "hbar" key; loading
// checks it against the requested value so mixed conventions fail loudly.

nlohmann::json table_to_json(const MomentTable& table);
MomentTable table_from_json(const nlohmann::json& j);

FockDensityMatrix dm_from_json(const nlohmann::json& j,
                               std::optional<double> expected_hbar = std::nullopt);

WignerGrid grid_from_json(const nlohmann::json& j,
                          std::optional<double> expected_hbar = std::nullopt);

nlohmann::json report_to_json(const GupReport& report, const SchurChain* chain = nullptr);

nlohmann::json load_json_file(const std::string& path);

}  // namespace wigmom

#endif
