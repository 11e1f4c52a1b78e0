#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace delib {

// Absolute tolerance for real-valued equality and constraint checks.
inline constexpr double kTolerance = 1e-9;

enum class Family { Euclidean, Binary, Ranking };

enum class Distance { L1, L2, LInf, Hamming, FirstChanged, Swap };

std::string_view to_string(Family f);
std::string_view to_string(Distance d);
Family parse_family(std::string_view name);
Distance parse_distance(std::string_view name);

/// Configured metric space: which points are admissible and how they are compared.
///
/// Euclidean spaces use `dimension`; binary and ranking spaces use
/// `num_candidates`. A binary space with `committee_size` set is restricted
/// to ballots approving exactly that many candidates.
struct SpaceSpec {
  Family family = Family::Euclidean;
  Distance distance = Distance::L2;
  int dimension = 0;
  int num_candidates = 0;
  std::optional<int> committee_size;
  bool integer_lattice = false;

  static SpaceSpec euclidean(int dimension, Distance distance, bool integer_lattice = false);
  static SpaceSpec binary(int num_candidates, Distance distance,
                          std::optional<int> committee_size = std::nullopt);
  static SpaceSpec ranking(int num_candidates, Distance distance);

  /// Throws ConfigError when the distance does not belong to the family or sizes are invalid.
  void validate() const;

  bool discrete() const noexcept { return family != Family::Euclidean; }
  bool committee() const noexcept { return committee_size.has_value(); }
  std::size_t point_size() const noexcept;
  /// Short human-readable label, e.g. "euclidean-l2-T3" or "binary-hamming-m5-k2".
  std::string label() const;

  friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// A position in one of the three point families.
///
/// Binary ballots and rankings share integer storage: bits hold 0/1 per
/// candidate index, rankings hold candidate indices from best to worst.
class Point {
 public:
  Point() = default;

  static Point real(std::vector<double> coords);
  static Point bits(std::vector<int> bits);
  static Point ranking(std::vector<int> order);

  Family family() const noexcept { return family_; }
  std::size_t size() const noexcept;

  /// Coordinates of a Euclidean point. Throws InvalidPoint for other families.
  std::span<const double> coords() const;
  /// Bits or ranking entries. Throws InvalidPoint for Euclidean points.
  std::span<const int> entries() const;

  friend bool operator==(const Point&, const Point&) = default;

 private:
  Family family_ = Family::Euclidean;
  std::vector<double> coords_;
  std::vector<int> entries_;
};

std::string to_string(const Point& p);

/// Returns a description of the first invariant `x` violates in `spec`, if any.
std::optional<std::string> validate_point(const SpaceSpec& spec, const Point& x);

/// Throws InvalidPoint carrying validate_point's message.
void require_valid(const SpaceSpec& spec, const Point& x);

double dist_lp(const SpaceSpec& spec, const Point& x, const Point& y);
int dist_hamming(const SpaceSpec& spec, const Point& x, const Point& y);
/// Zero on equality, otherwise one plus the largest index at which x and y differ.
int dist_first_changed(const SpaceSpec& spec, const Point& x, const Point& y);
/// Kendall tau distance: number of candidate pairs ordered differently.
int dist_swap(const SpaceSpec& spec, const Point& x, const Point& y);

/// Dispatches on spec.distance.
double distance(const SpaceSpec& spec, const Point& x, const Point& y);

/// Exact equality for discrete points, kTolerance per coordinate for reals.
bool same_point(const SpaceSpec& spec, const Point& x, const Point& y);

}  // namespace delib
