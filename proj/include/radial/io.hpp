// JSON problem/measure/glue specs and solution reports.  One structured-text
// format, schema-tagged and strictly validated (unknown keys rejected); the
// same pipeline and inputs always reproduce byte-identical reports.
#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "radial/extremal.hpp"
#include "radial/glue.hpp"
#include "radial/reconstruct.hpp"

namespace radial::io {

using json = nlohmann::ordered_json;

// Validation failures (schema, malformed values) that the CLI maps to exit 2.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

constexpr const char* kToolVersion = "0.1.0";

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_tag(const std::string& bytes);

json profile_to_json(const RadialProfile& p);
RadialProfile profile_from_json(const json& j);

json measure_to_json(const RadialMeasure& m);
RadialMeasure measure_from_json(const json& j);

json weight_to_json(const RadialWeight& w);
json set_to_json(const RadialSet& k);

struct OutputPaths {
  std::optional<std::string> report;
  std::optional<std::string> profile_csv;
  std::optional<std::string> cdf_csv;
  int csv_points = 2000;
};

struct ProblemSpec {
  Problem problem;
  GridSpec grid;
  OutputPaths output;
};

// Parses and validates a problem spec document (throws SpecError).
ProblemSpec problem_from_spec(const json& j);
json problem_spec_to_json(const Problem& prob, const GridSpec& grid);

struct MeasureSpec {
  RadialMeasure measure;
  double u0 = 0.0;
  int series_depth = 0;      // 0 = plain measure, >0 = truncated series
  double weight_sum = 1.0;   // sum of mixture weights actually applied
};

// `truncation` caps the depth of an optional "series" block (weights 2^-i).
MeasureSpec measure_from_spec(const json& j, int truncation);

struct ProfileSpec {
  int n = 1;
  RadialProfile profile;
};
ProfileSpec profile_from_spec(const json& j);

struct GlueSpec {
  bool disc = false;
  int n = 1;
  double interface_radius = 1.0;
  std::optional<RadialWeight> inner;
  std::optional<RadialWeight> outer;
  HarmonicExpansion h;
  long samples = 100000;
  double rho_min = 1e-3;
  double rho_max = 0.05;
};
GlueSpec glue_from_spec(const json& j);

json solution_report(const Problem& prob, const GridSpec& grid, const Solution& sol,
                     const std::string& spec_hash, std::uint64_t seed);

// CSV tables with radius as abscissa, 15-digit scientific rendering.
std::string profile_csv(const RadialProfile& p, double r_max, int points);
std::string cdf_csv(const RadialMeasure& m, double r_max, int points);

std::string read_file(const std::string& path);  // throws SpecError when missing
void write_file(const std::string& path, const std::string& content);

}  // namespace radial::io
