#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fraclab/dimension.hpp"
#include "fraclab/ifs.hpp"
#include "fraclab/maps.hpp"

namespace fraclab {

/// Exact numeric parsing for spec files: JSON numbers, decimal strings, and
/// rational "p/q" strings are accepted.
double parse_real(const nlohmann::json& j);

/// IFS document: fields `dim`, `maps` (list of {ratio, translation}),
/// optional `weights`, optional `name`.
Ifs ifs_from_json(const nlohmann::json& j);
nlohmann::json ifs_to_json(const Ifs& ifs);
Ifs load_ifs(const std::string& path);

/// Map descriptors: {"kind":"product3"}, {"kind":"distance","pin":[...]},
/// {"kind":"linear","n":[...]}, {"kind":"poly","coeffs":[{"c":..,"e":[..]}]}.
SmoothMap smooth_map_from_json(const nlohmann::json& j);
nlohmann::json smooth_map_to_json(const SmoothMap& map);

/// Shortest-round-trip style formatting used for all CSV/dat output.
std::string format_g(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// FNV-1a 64-bit hex digest, used to fingerprint configs in reports.
std::string fnv1a_hex(std::string_view data);

/// CSV with one header row; all cells preformatted.
void write_csv(const std::string& path,
               const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

/// Two-column gnuplot data (log10(1/scale), log10(count)) plus a comment
/// header carrying the fitted slope.
void write_loglog_dat(const std::string& path, const BoxCountResult& r);

}  // namespace fraclab
