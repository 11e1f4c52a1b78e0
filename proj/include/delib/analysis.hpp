#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "delib/engine.hpp"
#include "delib/rules.hpp"

namespace delib {

/// Per-candidate potential entry: (rule score, tie-break score, Borda score).
struct Triplet {
  double rule_score = 0.0;
  int order_score = 0;
  int borda_score = 0;

  friend bool operator==(const Triplet&, const Triplet&) = default;
};

using PotentialVector = std::vector<Triplet>;

/// Triplets in winner order. The tie-break score is m-1 minus the O-position.
PotentialVector potential_scoring(const Profile& profile, ScoreKind kind,
                                  std::span<const int> order);
/// Triplets from the STV winner's last place to its first; the rule score is the
/// first-place count in the reduced profile at the candidate's elimination.
PotentialVector potential_stv(const Profile& profile, std::span<const int> order);

std::vector<double> flatten(const PotentialVector& p);

enum class LexOrder { Less, Equal, Greater };

/// Lexicographic comparison of the flattened triplets; throws on length mismatch.
LexOrder lex_compare(const PotentialVector& p, const PotentialVector& q);

struct IterationBound {
  enum class Kind { Exact, Cap, None };
  Kind kind = Kind::None;
  long value = 0;
  std::string basis;
};

std::string_view to_string(IterationBound::Kind k);

/// Multiplier applied to ceil(D/eps) for mean rules, where no constant is known.
inline constexpr long kMeanCapMultiplier = 10;

/// Predicted number of moving iterations to consensus for a configuration.
IterationBound iteration_bound(const SpaceSpec& space, const RuleSpec& rule,
                               const Profile& initial, double eps);

/// max_i ceil(d(v_i, w) / eps), the exact count for winner-stable settings.
long ceil_reach(const Profile& profile, const Point& w, double eps);

bool winner_stability(std::span<const IterationRecord> trace);

/// Largest candidate count the brute-force oracle accepts.
inline constexpr int kBruteForceMaxCandidates = 6;

/// Independent exhaustive Kemeny oracle with the same tie rule as kemeny().
Point kemeny_bruteforce(const Profile& profile,
                        std::optional<std::span<const int>> order = std::nullopt);

struct Ball {
  std::vector<double> center;
  double diameter = 0.0;
  double radius() const noexcept { return diameter / 2.0; }
};

/// Exact smallest enclosing l2 ball (randomized incremental), T <= 3.
Ball enclosing_ball_l2(std::span<const Point> points, std::uint64_t shuffle_seed = 0);

/// Whether `final_point` lies in the smallest enclosing ball of the initial profile.
bool ball_containment(const Profile& initial, const Point& final_point);
/// Whether `final_point` lies in the axis-aligned bounding box of the initial profile.
bool bounding_box_containment(const Profile& initial, const Point& final_point);

double sum_distance_to_winner(const Profile& profile, const Point& w);

}  // namespace delib
