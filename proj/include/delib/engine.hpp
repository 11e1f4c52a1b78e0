#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "delib/policies.hpp"
#include "delib/rules.hpp"

namespace delib {

struct EngineConfig {
  SpaceSpec space;
  RuleSpec rule;
  PolicySpec policy;
  double epsilon = 1.0;
  /// Cap on moving iterations; default_max_iters() when unset.
  std::optional<long> max_iters;
  /// Full-profile repetition check; discrete spaces only.
  bool cycle_detection = true;
  int growth_window = 50;
  bool keep_trace = true;

  /// Throws ConfigError on incompatible space/rule/policy or a bad epsilon.
  void validate() const;
};

/// State V^j, its winner w^j, and how each agent moved in response.
struct IterationRecord {
  long index = 0;
  std::vector<Point> profile;
  Point winner;
  std::vector<double> distances;
  std::vector<char> moved;
  /// Empty string when the agent's move passed the configured constraint check.
  std::vector<std::string> violations;

  bool any_moved() const;
};

enum class Outcome { Converged, Cycle, CapReached };

std::string_view to_string(Outcome o);

struct RunReport {
  Outcome outcome = Outcome::CapReached;
  /// Consensus point when converged.
  std::optional<Point> point;
  /// Steps in which at least one agent moved.
  long iterations = 0;
  /// Distinct states visited, counting the initial one; the narrative count of worked examples.
  long states = 0;
  long cycle_period = 0;
  long cycle_first_index = 0;
  bool growth_detected = false;
  Profile final_profile;
  std::vector<IterationRecord> trace;
  double wall_seconds = 0.0;
};

/// Computes w = rule(V) and moves every agent against that same w.
///
/// Throws ConstraintViolation when a move fails the configured check.
std::pair<Profile, IterationRecord> step(const Profile& profile, const EngineConfig& config,
                                         long iteration = 0);

RunReport run(const Profile& initial, const EngineConfig& config);

bool is_consensus(const Profile& profile);

/// 10 * ceil(max_i d(v_i, w) / eps), at least 1; 10000 when no finite distance exists.
long default_max_iters(const Profile& initial, const EngineConfig& config);

}  // namespace delib
