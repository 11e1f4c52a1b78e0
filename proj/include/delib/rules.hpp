#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "delib/spaces.hpp"

namespace delib {

/// Ordered list of agent positions sharing one space.
struct Profile {
  SpaceSpec space;
  std::vector<Point> points;

  std::size_t size() const noexcept { return points.size(); }
  /// Throws ConfigError on an empty profile and InvalidPoint on the first bad point.
  void validate() const;

  friend bool operator==(const Profile&, const Profile&) = default;
};

enum class Rule {
  Mean,
  FloorMean,
  Median,
  MajorityVnw,
  TopkMajorityMw,
  Kemeny,
  Plurality,
  Borda,
  Copeland,
  Stv,
};

std::string_view to_string(Rule r);
Rule parse_rule(std::string_view name);

/// Voting rule plus its fixed tie-break order (earlier = preferred).
struct RuleSpec {
  Rule rule = Rule::Median;
  std::optional<std::vector<int>> tiebreak;

  /// Checks family compatibility and that the tie-break order, when required, is a permutation.
  void validate(const SpaceSpec& space) const;

  friend bool operator==(const RuleSpec&, const RuleSpec&) = default;
};

/// Largest candidate count the exact Kemeny search accepts.
inline constexpr int kKemenyMaxCandidates = 8;

Point mean_elementwise(const Profile& profile, bool floor_result = false);
/// Per-dimension median; even counts take the larger middle value.
Point median_elementwise(const Profile& profile);
/// Bitwise median; an even split resolves to 1.
Point majority_vnw(const Profile& profile);
/// The k most-approved candidates, ties to the earlier candidate in `order`.
Point topk_majority_mw(const Profile& profile, std::span<const int> order);
/// Ranking minimizing total swap distance, found by exhaustive search.
///
/// Among minimizers the lexicographically smallest ranking wins, where
/// candidates compare by their position in `order` (or by index when no
/// order is given).
Point kemeny(const Profile& profile, std::optional<std::span<const int>> order = std::nullopt);

enum class ScoreKind { Plurality, Borda, Copeland };

std::vector<double> candidate_scores(const Profile& profile, ScoreKind kind);
/// Candidates sorted by score descending, ties by position in `order`.
Point scoring_winner(const Profile& profile, ScoreKind kind, std::span<const int> order);

struct StvOutcome {
  Point winner;
  /// Candidates in the order they were eliminated (last place first).
  std::vector<int> eliminated;
  /// Per candidate: first-place count in the reduced profile at its elimination round.
  std::vector<int> score_at_elimination;
};

StvOutcome stv(const Profile& profile, std::span<const int> order);
Point stv_winner(const Profile& profile, std::span<const int> order);

/// Applies `spec` to `profile`.
Point winner(const RuleSpec& spec, const Profile& profile);

/// Inverse of a tie-break order: position[c] is c's index in `order`.
std::vector<int> order_positions(std::span<const int> order);

}  // namespace delib
