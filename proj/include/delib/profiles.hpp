#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "delib/engine.hpp"
#include "delib/rules.hpp"

namespace delib {

/// Uniform random profile generator; euclidean coordinates are drawn from `box`.
struct GeneratorSpec {
  SpaceSpec space;
  int n = 1;
  std::uint64_t seed = 0;
  /// Per-dimension [low, high]; empty means [-10, 10] in every dimension.
  std::vector<std::pair<double, double>> box;

  void validate() const;
};

Profile generate(const GeneratorSpec& g);

// Point literals: real vectors are number arrays (a bare number when T = 1), binary ballots
// are 0/1 strings with index 0 leftmost, rankings are candidate-index arrays best to worst.
// Rankings may also name candidates when the space lists them, or use single letters a, b, ...
nlohmann::json point_to_json(const Point& p);
Point point_from_json(const SpaceSpec& space, const nlohmann::json& j,
                      const std::vector<std::string>& names = {});

nlohmann::json space_to_json(const SpaceSpec& s);
SpaceSpec space_from_json(const nlohmann::json& j);
/// Candidate names listed in a space object, if any.
std::vector<std::string> candidate_names(const nlohmann::json& space_json);

nlohmann::json profile_to_json(const Profile& p);
/// Expects {"space": {...}, "points": [...]}; validates every point.
Profile profile_from_json(const nlohmann::json& j);

/// Parses JSON text, reporting malformed input as ParseError with line and column.
nlohmann::json parse_json(const std::string& text, const std::string& origin);
nlohmann::json read_json_file(const std::filesystem::path& path);

Profile load_profile(const std::filesystem::path& path);
void save_profile(const Profile& profile, const std::filesystem::path& path);

/// A script is an array of per-iteration profiles, each an array of point literals
/// (or an object with a "points" field).
std::vector<std::vector<Point>> script_from_json(const SpaceSpec& space, const nlohmann::json& j);
nlohmann::json script_to_json(const std::vector<std::vector<Point>>& script);
std::vector<std::vector<Point>> load_script(const SpaceSpec& space,
                                            const std::filesystem::path& path);
void save_script(const std::vector<std::vector<Point>>& script, const std::filesystem::path& path);

nlohmann::json record_to_json(const IterationRecord& rec);
/// One IterationRecord per line.
void write_trace_jsonl(std::ostream& os, const RunReport& report);

struct SummaryRow {
  std::string space;
  std::string rule;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  RunReport const* report = nullptr;
};

std::string summary_csv_header();
std::string summary_csv_row(const SummaryRow& row);

}  // namespace delib
