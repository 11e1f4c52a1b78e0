#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "delib/spaces.hpp"

namespace delib {

enum class PolicyKind { Default, SeededRandom, Scripted };
enum class L1Mode { CoordOrder, Proportional };
/// Strict checks both movement constraints; C1Only checks the distance-to-winner law alone.
enum class ConstraintMode { Strict, C1Only };

std::string_view to_string(PolicyKind k);
std::string_view to_string(L1Mode m);
std::string_view to_string(ConstraintMode m);
PolicyKind parse_policy_kind(std::string_view name);
L1Mode parse_l1_mode(std::string_view name);
ConstraintMode parse_constraint_mode(std::string_view name);

/// How agents pick among feasible moves.
///
/// A scripted policy replays `script[j]` as the positions after iteration j.
struct PolicySpec {
  PolicyKind kind = PolicyKind::Default;
  std::optional<std::uint64_t> seed;
  std::vector<std::vector<Point>> script;
  L1Mode l1_mode = L1Mode::CoordOrder;
  ConstraintMode constraint_mode = ConstraintMode::Strict;

  void validate() const;
};

using Rng = std::mt19937_64;

/// Generator for one agent's move in one iteration; independent of evaluation order.
Rng move_rng(std::uint64_t seed, long iteration, std::size_t agent);

Point move_l2(const Point& v, const Point& w, double eps);
Point move_l1(const Point& v, const Point& w, double eps, L1Mode mode);
/// Spends the budget over coordinates in a random order.
Point move_l1_random(const Point& v, const Point& w, double eps, Rng& rng);
/// Straight-line step whose sup-norm length is min(eps, d(v, w)).
Point move_linf(const Point& v, const Point& w, double eps);
/// Coordinates at maximal distance step exactly eps toward w; the rest move uniformly within
/// the region that keeps both constraints.
Point move_linf_random(const Point& v, const Point& w, double eps, Rng& rng);
/// Flips eps disagreeing bits (or eps/2 exchanges for committees). `rng` null means lowest index.
Point move_hamming(const SpaceSpec& spec, const Point& v, const Point& w, int eps,
                   Rng* rng = nullptr);
/// eps adjacent transpositions of pairs ordered opposite to w. `rng` null means leftmost pair.
Point move_swap(const Point& v, const Point& w, int eps, Rng* rng = nullptr);
/// Copies w's trailing entries so the distance to w drops to the target level.
Point move_first_changed(const SpaceSpec& spec, const Point& v, const Point& w, int eps);

/// Whether some point of the space lies at first-changed distance exactly `level` from w.
bool first_changed_level_exists(const SpaceSpec& spec, const Point& w, int level);
/// The distance to w that a first-changed move must reach: the largest existing level not
/// above max(0, d - eps).
int first_changed_target(const SpaceSpec& spec, const Point& w, int current, int eps);

/// One agent's next position under the default or seeded-random policy.
Point next_position(const SpaceSpec& spec, const PolicySpec& policy, const Point& v,
                    const Point& w, double eps, long iteration, std::size_t agent);

struct Violation {
  int constraint = 0;       // 1 or 2
  double observed = 0.0;
  double expected = 0.0;
  std::string message;
};

/// Checks the move v -> moved against winner w; reports the first violated constraint.
std::optional<Violation> check_constraints(const SpaceSpec& spec, const Point& v,
                                           const Point& moved, const Point& w, double eps,
                                           ConstraintMode mode);

}  // namespace delib
