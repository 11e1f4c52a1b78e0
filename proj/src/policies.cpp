#include "delib/policies.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "delib/errors.hpp"

namespace delib {

std::string_view to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::Default: return "default";
    case PolicyKind::SeededRandom: return "seeded-random";
    case PolicyKind::Scripted: return "scripted";
  }
  return "?";
}

std::string_view to_string(L1Mode m) {
  return m == L1Mode::CoordOrder ? "coord-order" : "proportional";
}

std::string_view to_string(ConstraintMode m) {
  return m == ConstraintMode::Strict ? "strict" : "c1-only";
}

PolicyKind parse_policy_kind(std::string_view name) {
  if (name == "default") return PolicyKind::Default;
  if (name == "seeded-random" || name == "seeded_random" || name == "random")
    return PolicyKind::SeededRandom;
  if (name == "scripted") return PolicyKind::Scripted;
  throw ConfigError("unknown policy '" + std::string(name) + "'");
}

L1Mode parse_l1_mode(std::string_view name) {
  if (name == "coord-order" || name == "coord_order") return L1Mode::CoordOrder;
  if (name == "proportional") return L1Mode::Proportional;
  throw ConfigError("unknown l1 mode '" + std::string(name) + "'");
}

ConstraintMode parse_constraint_mode(std::string_view name) {
  if (name == "strict") return ConstraintMode::Strict;
  if (name == "c1-only" || name == "c1_only") return ConstraintMode::C1Only;
  throw ConfigError("unknown constraint mode '" + std::string(name) + "'");
}

void PolicySpec::validate() const {
  if (kind == PolicyKind::Scripted && script.empty())
    throw ConfigError("scripted policy requires a script");
  if (kind == PolicyKind::SeededRandom && !seed)
    throw ConfigError("seeded-random policy requires a seed");
}

Rng move_rng(std::uint64_t seed, long iteration, std::size_t agent) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(iteration), static_cast<std::uint32_t>(agent)};
  return Rng(seq);
}

namespace {

double l2_norm_diff(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) acc += (a[t] - b[t]) * (a[t] - b[t]);
  return std::sqrt(acc);
}

std::vector<double> to_vec(std::span<const double> s) { return {s.begin(), s.end()}; }
std::vector<int> to_vec(std::span<const int> s) { return {s.begin(), s.end()}; }

int integral_eps(double eps) {
  const double r = std::round(eps);
  if (r < 1.0 || std::abs(eps - r) > kTolerance)
    throw ConfigError("discrete spaces need a positive integer epsilon, got " + std::to_string(eps));
  return static_cast<int>(r);
}

}  // namespace

Point move_l2(const Point& v, const Point& w, double eps) {
  const auto a = v.coords();
  const auto b = w.coords();
  const double d = l2_norm_diff(a, b);
  if (d <= eps + kTolerance) return w;
  std::vector<double> out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = a[t] + eps * (b[t] - a[t]) / d;
  return Point::real(std::move(out));
}

Point move_l1(const Point& v, const Point& w, double eps, L1Mode mode) {
  const auto a = v.coords();
  const auto b = w.coords();
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) d += std::abs(a[t] - b[t]);
  if (d <= eps + kTolerance) return w;
  auto out = to_vec(a);
  if (mode == L1Mode::Proportional) {
    for (std::size_t t = 0; t < a.size(); ++t) out[t] += eps * (b[t] - a[t]) / d;
    return Point::real(std::move(out));
  }
  double budget = eps;
  for (std::size_t t = 0; t < a.size() && budget > 0.0; ++t) {
    const double gap = std::abs(b[t] - a[t]);
    if (gap <= budget) {
      out[t] = b[t];
      budget -= gap;
    } else {
      out[t] += std::copysign(budget, b[t] - a[t]);
      budget = 0.0;
    }
  }
  return Point::real(std::move(out));
}

Point move_l1_random(const Point& v, const Point& w, double eps, Rng& rng) {
  const auto a = v.coords();
  const auto b = w.coords();
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) d += std::abs(a[t] - b[t]);
  if (d <= eps + kTolerance) return w;
  std::vector<std::size_t> coords(a.size());
  std::iota(coords.begin(), coords.end(), 0);
  std::shuffle(coords.begin(), coords.end(), rng);
  auto out = to_vec(a);
  double budget = eps;
  for (std::size_t t : coords) {
    if (budget <= 0.0) break;
    const double gap = std::abs(b[t] - a[t]);
    if (gap <= budget) {
      out[t] = b[t];
      budget -= gap;
    } else {
      out[t] += std::copysign(budget, b[t] - a[t]);
      budget = 0.0;
    }
  }
  return Point::real(std::move(out));
}

Point move_linf(const Point& v, const Point& w, double eps) {
  const auto a = v.coords();
  const auto b = w.coords();
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) d = std::max(d, std::abs(a[t] - b[t]));
  if (d <= eps + kTolerance) return w;
  std::vector<double> out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) out[t] = a[t] + eps * (b[t] - a[t]) / d;
  return Point::real(std::move(out));
}

Point move_linf_random(const Point& v, const Point& w, double eps, Rng& rng) {
  const auto a = v.coords();
  const auto b = w.coords();
  double d = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) d = std::max(d, std::abs(a[t] - b[t]));
  if (d <= eps + kTolerance) return w;
  const double reach = d - eps;
  std::vector<double> out(a.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    const double gap = a[t] - b[t];
    if (std::abs(gap) >= d - kTolerance) {
      out[t] = b[t] + std::copysign(reach, gap);
      continue;
    }
    const double lo = std::max(b[t] - reach, a[t] - eps);
    const double hi = std::min(b[t] + reach, a[t] + eps);
    out[t] = lo < hi ? std::uniform_real_distribution<double>(lo, hi)(rng) : lo;
  }
  return Point::real(std::move(out));
}

Point move_hamming(const SpaceSpec& spec, const Point& v, const Point& w, int eps, Rng* rng) {
  const auto a = v.entries();
  const auto b = w.entries();
  if (spec.committee() && eps % 2 != 0) {
    throw InfeasibleStep("committee hamming distances are even; epsilon " + std::to_string(eps) +
                         " cannot be met");
  }
  std::vector<std::size_t> drop;  // 1 in v, 0 in w
  std::vector<std::size_t> add;   // 0 in v, 1 in w
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 1 && b[i] == 0) drop.push_back(i);
    if (a[i] == 0 && b[i] == 1) add.push_back(i);
  }
  if (static_cast<int>(drop.size() + add.size()) <= eps) return w;
  auto out = to_vec(a);
  if (!spec.committee()) {
    std::vector<std::size_t> diff;
    std::merge(drop.begin(), drop.end(), add.begin(), add.end(), std::back_inserter(diff));
    if (rng) std::shuffle(diff.begin(), diff.end(), *rng);
    for (int i = 0; i < eps; ++i) out[diff[i]] ^= 1;
    return Point::bits(std::move(out));
  }
  if (rng) {
    std::shuffle(drop.begin(), drop.end(), *rng);
    std::shuffle(add.begin(), add.end(), *rng);
  }
  for (int i = 0; i < eps / 2; ++i) {
    out[drop[i]] = 0;
    out[add[i]] = 1;
  }
  return Point::bits(std::move(out));
}

Point move_swap(const Point& v, const Point& w, int eps, Rng* rng) {
  const auto target = w.entries();
  std::vector<int> pos_w(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) pos_w[target[i]] = static_cast<int>(i);
  auto out = to_vec(v.entries());
  std::vector<std::size_t> eligible;
  for (int step = 0; step < eps; ++step) {
    eligible.clear();
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      if (pos_w[out[i]] > pos_w[out[i + 1]]) eligible.push_back(i);
    }
    if (eligible.empty()) break;  // already at w
    std::size_t pick = eligible.front();
    if (rng) {
      pick = eligible[std::uniform_int_distribution<std::size_t>(0, eligible.size() - 1)(*rng)];
    }
    std::swap(out[pick], out[pick + 1]);
  }
  return Point::ranking(std::move(out));
}

bool first_changed_level_exists(const SpaceSpec& spec, const Point& w, int level) {
  const int m = spec.num_candidates;
  if (level < 0 || level > m) return false;
  if (level == 0) return true;
  if (spec.family == Family::Ranking) return level != 1;
  if (!spec.committee()) return true;
  // A committee at this level copies w from `level` on, differs at level-1, and must place
  // the remaining approvals in the free prefix [0, level-1).
  const auto b = w.entries();
  int suffix_ones = 0;
  for (int i = level; i < m; ++i) suffix_ones += b[i];
  const int needed = *spec.committee_size - suffix_ones - (1 - b[level - 1]);
  return needed >= 0 && needed <= level - 1;
}

int first_changed_target(const SpaceSpec& spec, const Point& w, int current, int eps) {
  for (int level = std::max(0, current - eps); level > 0; --level) {
    if (first_changed_level_exists(spec, w, level)) return level;
  }
  return 0;
}

Point move_first_changed(const SpaceSpec& spec, const Point& v, const Point& w, int eps) {
  const int d = dist_first_changed(spec, v, w);
  const int level = first_changed_target(spec, w, d, eps);
  if (level == 0) return w;
  const auto a = v.entries();
  const auto b = w.entries();
  const auto m = a.size();
  const auto lvl = static_cast<std::size_t>(level);

  if (spec.family == Family::Ranking) {
    std::vector<char> in_suffix(m, 0);
    for (std::size_t i = lvl; i < m; ++i) in_suffix[b[i]] = 1;
    std::vector<int> out;
    out.reserve(m);
    for (int c : a) {
      if (!in_suffix[c]) out.push_back(c);
    }
    for (std::size_t i = lvl; i < m; ++i) out.push_back(b[i]);
    if (out[lvl - 1] == b[lvl - 1]) std::swap(out[lvl - 2], out[lvl - 1]);
    return Point::ranking(std::move(out));
  }

  auto out = to_vec(a);
  for (std::size_t i = lvl; i < m; ++i) out[i] = b[i];
  out[lvl - 1] = 1 - b[lvl - 1];
  if (spec.committee()) {
    int ones = 0;
    for (int x : out) ones += x;
    const int k = *spec.committee_size;
    // Repair in the free prefix, preferring flips toward w.
    for (int pass = 0; pass < 2 && ones != k; ++pass) {
      for (std::size_t i = 0; i + 1 < lvl && ones != k; ++i) {
        const bool toward_w = out[i] != b[i];
        if ((pass == 0) != toward_w) continue;
        if (ones > k && out[i] == 1) {
          out[i] = 0;
          --ones;
        } else if (ones < k && out[i] == 0) {
          out[i] = 1;
          ++ones;
        }
      }
    }
    if (ones != k) {
      throw InfeasibleStep("first-changed committee move cannot restore size " +
                           std::to_string(k) + " at level " + std::to_string(level));
    }
  }
  return Point::bits(std::move(out));
}

Point next_position(const SpaceSpec& spec, const PolicySpec& policy, const Point& v,
                    const Point& w, double eps, long iteration, std::size_t agent) {
  std::optional<Rng> rng;
  if (policy.kind == PolicyKind::SeededRandom) {
    if (!policy.seed) throw ConfigError("seeded-random policy requires a seed");
    rng.emplace(move_rng(*policy.seed, iteration, agent));
  } else if (policy.kind == PolicyKind::Scripted) {
    throw ConfigError("scripted moves are replayed by the engine");
  }
  Rng* r = rng ? &*rng : nullptr;
  switch (spec.distance) {
    case Distance::L2: return move_l2(v, w, eps);
    case Distance::L1: return r ? move_l1_random(v, w, eps, *r) : move_l1(v, w, eps, policy.l1_mode);
    case Distance::LInf: return r ? move_linf_random(v, w, eps, *r) : move_linf(v, w, eps);
    case Distance::Hamming: return move_hamming(spec, v, w, integral_eps(eps), r);
    case Distance::Swap: return move_swap(v, w, integral_eps(eps), r);
    case Distance::FirstChanged: return move_first_changed(spec, v, w, integral_eps(eps));
  }
  throw ConfigError("unknown distance");
}

std::optional<Violation> check_constraints(const SpaceSpec& spec, const Point& v,
                                           const Point& moved, const Point& w, double eps,
                                           ConstraintMode mode) {
  const double before = distance(spec, v, w);
  const double after = distance(spec, moved, w);
  double expected = std::max(0.0, before - eps);
  if (spec.distance == Distance::FirstChanged) {
    expected = first_changed_target(spec, w, static_cast<int>(std::lround(before)),
                                    static_cast<int>(std::lround(eps)));
  }
  if (std::abs(after - expected) > kTolerance) {
    std::ostringstream os;
    os << "constraint 1: distance to winner " << after << ", expected " << expected
       << " (was " << before << ", discrepancy " << after - expected << ")";
    return Violation{1, after, expected, os.str()};
  }
  if (mode == ConstraintMode::C1Only) return std::nullopt;
  const double step = distance(spec, v, moved);
  const bool reached = after <= kTolerance;
  if ((reached && step > eps + kTolerance) || (!reached && std::abs(step - eps) > kTolerance)) {
    std::ostringstream os;
    os << "constraint 2: displacement " << step << ", expected " << (reached ? "<= " : "")
       << eps << " (discrepancy " << step - eps << ")";
    return Violation{2, step, eps, os.str()};
  }
  return std::nullopt;
}

}  // namespace delib
