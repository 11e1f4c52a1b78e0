#include "delib/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "delib/errors.hpp"

namespace delib {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Euclidean: return "euclidean";
    case Family::Binary: return "binary";
    case Family::Ranking: return "ranking";
  }
  return "?";
}

std::string_view to_string(Distance d) {
  switch (d) {
    case Distance::L1: return "l1";
    case Distance::L2: return "l2";
    case Distance::LInf: return "linf";
    case Distance::Hamming: return "hamming";
    case Distance::FirstChanged: return "first-changed";
    case Distance::Swap: return "swap";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "euclidean") return Family::Euclidean;
  if (name == "binary") return Family::Binary;
  if (name == "ranking") return Family::Ranking;
  throw ConfigError("unknown space family '" + std::string(name) + "'");
}

Distance parse_distance(std::string_view name) {
  if (name == "l1") return Distance::L1;
  if (name == "l2") return Distance::L2;
  if (name == "linf") return Distance::LInf;
  if (name == "hamming") return Distance::Hamming;
  if (name == "first-changed" || name == "first_changed") return Distance::FirstChanged;
  if (name == "swap") return Distance::Swap;
  throw ConfigError("unknown distance '" + std::string(name) + "'");
}

SpaceSpec SpaceSpec::euclidean(int dimension, Distance distance, bool integer_lattice) {
  SpaceSpec s;
  s.family = Family::Euclidean;
  s.distance = distance;
  s.dimension = dimension;
  s.integer_lattice = integer_lattice;
  return s;
}

SpaceSpec SpaceSpec::binary(int num_candidates, Distance distance,
                            std::optional<int> committee_size) {
  SpaceSpec s;
  s.family = Family::Binary;
  s.distance = distance;
  s.num_candidates = num_candidates;
  s.committee_size = committee_size;
  return s;
}

SpaceSpec SpaceSpec::ranking(int num_candidates, Distance distance) {
  SpaceSpec s;
  s.family = Family::Ranking;
  s.distance = distance;
  s.num_candidates = num_candidates;
  return s;
}

void SpaceSpec::validate() const {
  const auto fail = [this](const std::string& why) {
    throw ConfigError("space " + label() + ": " + why);
  };
  switch (family) {
    case Family::Euclidean:
      if (distance != Distance::L1 && distance != Distance::L2 && distance != Distance::LInf)
        fail("euclidean spaces take l1, l2 or linf");
      if (dimension < 1) fail("dimension must be positive");
      if (committee_size) fail("committee size applies to binary spaces only");
      break;
    case Family::Binary:
      if (distance != Distance::Hamming && distance != Distance::FirstChanged)
        fail("binary spaces take hamming or first-changed");
      if (num_candidates < 1) fail("number of candidates must be positive");
      if (committee_size && (*committee_size < 1 || *committee_size > num_candidates))
        fail("committee size must lie in [1, m]");
      if (integer_lattice) fail("integer lattice applies to euclidean spaces only");
      break;
    case Family::Ranking:
      if (distance != Distance::Swap && distance != Distance::FirstChanged)
        fail("ranking spaces take swap or first-changed");
      if (num_candidates < 1) fail("number of candidates must be positive");
      if (committee_size) fail("committee size applies to binary spaces only");
      if (integer_lattice) fail("integer lattice applies to euclidean spaces only");
      break;
  }
}

std::size_t SpaceSpec::point_size() const noexcept {
  return static_cast<std::size_t>(family == Family::Euclidean ? dimension : num_candidates);
}

std::string SpaceSpec::label() const {
  std::string out(to_string(family));
  out += '-';
  out += to_string(distance);
  if (family == Family::Euclidean) {
    out += "-T" + std::to_string(dimension);
    if (integer_lattice) out += "-Z";
  } else {
    out += "-m" + std::to_string(num_candidates);
    if (committee_size) out += "-k" + std::to_string(*committee_size);
  }
  return out;
}

Point Point::real(std::vector<double> coords) {
  Point p;
  p.family_ = Family::Euclidean;
  p.coords_ = std::move(coords);
  return p;
}

Point Point::bits(std::vector<int> bits) {
  Point p;
  p.family_ = Family::Binary;
  p.entries_ = std::move(bits);
  return p;
}

Point Point::ranking(std::vector<int> order) {
  Point p;
  p.family_ = Family::Ranking;
  p.entries_ = std::move(order);
  return p;
}

std::size_t Point::size() const noexcept {
  return family_ == Family::Euclidean ? coords_.size() : entries_.size();
}

std::span<const double> Point::coords() const {
  if (family_ != Family::Euclidean) throw InvalidPoint("point is not a real vector");
  return coords_;
}

std::span<const int> Point::entries() const {
  if (family_ == Family::Euclidean) throw InvalidPoint("point is not a discrete ballot");
  return entries_;
}

std::string to_string(const Point& p) {
  std::ostringstream os;
  switch (p.family()) {
    case Family::Euclidean: {
      os << '(';
      bool first = true;
      for (double c : p.coords()) {
        if (!first) os << ',';
        os << c;
        first = false;
      }
      os << ')';
      break;
    }
    case Family::Binary:
      for (int b : p.entries()) os << b;
      break;
    case Family::Ranking: {
      os << '[';
      bool first = true;
      for (int c : p.entries()) {
        if (!first) os << ',';
        os << c;
        first = false;
      }
      os << ']';
      break;
    }
  }
  return os.str();
}

std::optional<std::string> validate_point(const SpaceSpec& spec, const Point& x) {
  if (x.family() != spec.family) {
    return "family mismatch: expected " + std::string(to_string(spec.family)) + ", got " +
           std::string(to_string(x.family()));
  }
  if (x.size() != spec.point_size()) {
    return "dimension mismatch: expected " + std::to_string(spec.point_size()) + ", got " +
           std::to_string(x.size());
  }
  switch (spec.family) {
    case Family::Euclidean:
      for (double c : x.coords()) {
        if (!std::isfinite(c)) return "coordinate is not finite";
        if (spec.integer_lattice && c != std::floor(c))
          return "integer lattice: coordinate " + std::to_string(c) + " is not an integer";
      }
      break;
    case Family::Binary: {
      int ones = 0;
      for (int b : x.entries()) {
        if (b != 0 && b != 1) return "bit alphabet: entry " + std::to_string(b) + " is not 0/1";
        ones += b;
      }
      if (spec.committee_size && ones != *spec.committee_size) {
        return "committee size: " + std::to_string(ones) + " approvals, expected " +
               std::to_string(*spec.committee_size);
      }
      break;
    }
    case Family::Ranking: {
      std::vector<char> seen(spec.point_size(), 0);
      for (int c : x.entries()) {
        if (c < 0 || static_cast<std::size_t>(c) >= seen.size() || seen[c])
          return "not a permutation of 0.." + std::to_string(seen.size() - 1);
        seen[c] = 1;
      }
      break;
    }
  }
  return std::nullopt;
}

void require_valid(const SpaceSpec& spec, const Point& x) {
  if (auto why = validate_point(spec, x)) throw InvalidPoint(to_string(x) + ": " + *why);
}

namespace {

void require_family(const SpaceSpec& spec, const Point& x, const Point& y,
                    std::initializer_list<Family> allowed, const char* op) {
  if (std::find(allowed.begin(), allowed.end(), spec.family) == allowed.end())
    throw InvalidPoint(std::string(op) + " is undefined on " + spec.label());
  for (const Point* p : {&x, &y}) {
    if (p->family() != spec.family || p->size() != spec.point_size())
      throw InvalidPoint(std::string(op) + ": " + to_string(*p) + " does not fit " + spec.label());
  }
}

// Inversions of `seq` by merge sort; `seq` is consumed.
long count_inversions(std::vector<int>& seq, std::vector<int>& scratch, std::size_t lo,
                      std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  long inv = count_inversions(seq, scratch, lo, mid) + count_inversions(seq, scratch, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (seq[j] < seq[i]) {
      inv += static_cast<long>(mid - i);
      scratch[k++] = seq[j++];
    } else {
      scratch[k++] = seq[i++];
    }
  }
  while (i < mid) scratch[k++] = seq[i++];
  while (j < hi) scratch[k++] = seq[j++];
  std::copy(scratch.begin() + lo, scratch.begin() + hi, seq.begin() + lo);
  return inv;
}

}  // namespace

double dist_lp(const SpaceSpec& spec, const Point& x, const Point& y) {
  require_family(spec, x, y, {Family::Euclidean}, "lp distance");
  const auto a = x.coords();
  const auto b = y.coords();
  double acc = 0.0;
  switch (spec.distance) {
    case Distance::L1:
      for (std::size_t t = 0; t < a.size(); ++t) acc += std::abs(a[t] - b[t]);
      return acc;
    case Distance::L2:
      for (std::size_t t = 0; t < a.size(); ++t) acc += (a[t] - b[t]) * (a[t] - b[t]);
      return std::sqrt(acc);
    case Distance::LInf:
      for (std::size_t t = 0; t < a.size(); ++t) acc = std::max(acc, std::abs(a[t] - b[t]));
      return acc;
    default:
      throw InvalidPoint("lp distance requested with " + std::string(to_string(spec.distance)));
  }
}

int dist_hamming(const SpaceSpec& spec, const Point& x, const Point& y) {
  require_family(spec, x, y, {Family::Binary}, "hamming distance");
  const auto a = x.entries();
  const auto b = y.entries();
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
  return d;
}

int dist_first_changed(const SpaceSpec& spec, const Point& x, const Point& y) {
  require_family(spec, x, y, {Family::Binary, Family::Ranking}, "first-changed distance");
  const auto a = x.entries();
  const auto b = y.entries();
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return static_cast<int>(i) + 1;
  }
  return 0;
}

int dist_swap(const SpaceSpec& spec, const Point& x, const Point& y) {
  require_family(spec, x, y, {Family::Ranking}, "swap distance");
  require_valid(spec, x);
  require_valid(spec, y);
  const auto a = x.entries();
  const auto b = y.entries();
  std::vector<int> pos_in_b(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) pos_in_b[b[i]] = static_cast<int>(i);
  std::vector<int> seq(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) seq[i] = pos_in_b[a[i]];
  std::vector<int> scratch(seq.size());
  return static_cast<int>(count_inversions(seq, scratch, 0, seq.size()));
}

double distance(const SpaceSpec& spec, const Point& x, const Point& y) {
  switch (spec.distance) {
    case Distance::L1:
    case Distance::L2:
    case Distance::LInf: return dist_lp(spec, x, y);
    case Distance::Hamming: return dist_hamming(spec, x, y);
    case Distance::FirstChanged: return dist_first_changed(spec, x, y);
    case Distance::Swap: return dist_swap(spec, x, y);
  }
  throw InvalidPoint("unknown distance");
}

bool same_point(const SpaceSpec& spec, const Point& x, const Point& y) {
  if (spec.family != Family::Euclidean) return x == y;
  const auto a = x.coords();
  const auto b = y.coords();
  if (a.size() != b.size()) return false;
  for (std::size_t t = 0; t < a.size(); ++t) {
    if (std::abs(a[t] - b[t]) > kTolerance) return false;
  }
  return true;
}

}  // namespace delib
