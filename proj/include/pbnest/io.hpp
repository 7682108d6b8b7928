#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"
#include "pbnest/comparison.hpp"

namespace pbnest {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// Shortest decimal that reads back to the same double; "inf" / "-inf" for infinities.
std::string format_double(double x);
double parse_double(const std::string& s);
/// Rounds to a multiple of `step` before formatting, for stable drawing coordinates.
std::string format_rounded(double x, double step = 1e-3);

std::string read_text_file(const fs::path& path);
void write_text_file(const fs::path& path, const std::string& text);

std::string points_to_csv(const PointCloud& cloud);
PointCloud points_from_csv(const std::string& text);
PointCloud read_points_csv(const fs::path& path);
void write_points_csv(const fs::path& path, const PointCloud& cloud);

/// {"radius", "offset", "tau", "points"}; the points path is resolved against the JSON's directory.
BallCover read_cover_json(const fs::path& path);
/// Writes the cover JSON and its point CSV (named `points_name`, next to the JSON).
void write_cover_json(const fs::path& path, const BallCover& cover, const std::string& points_name);

FilteringFunction function_from_json(const json& j);
json function_to_json(const FilteringFunction& f);

AdmissiblePair pair_from_json(const json& j);
json pair_to_json(const AdmissiblePair& p);

std::string diagram_to_csv(const PersistenceDiagram& D);
PersistenceDiagram diagram_from_csv(const std::string& text);

json complex_to_json(const SimplicialComplex& K);
SimplicialComplex complex_from_json(const json& j);

json density_to_json(const DensityReport& r);
json segment_to_json(const Segment& s);
json strips_to_json(const BlindStripSet& s);
json query_to_json(const PBNValue& q);
json sandwich_to_json(const SandwichBound& s);
json certificate_to_json(const BoundCertificate& c);

/// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

}  // namespace pbnest
