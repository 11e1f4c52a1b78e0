#include "delib/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "delib/errors.hpp"

namespace delib {

PotentialVector potential_scoring(const Profile& profile, ScoreKind kind,
                                  std::span<const int> order) {
  const auto scores = candidate_scores(profile, kind);
  const auto borda = candidate_scores(profile, ScoreKind::Borda);
  const auto pos = order_positions(order);
  const int m = profile.space.num_candidates;
  const Point w = scoring_winner(profile, kind, order);
  PotentialVector out;
  out.reserve(static_cast<std::size_t>(m));
  for (int c : w.entries()) {
    out.push_back({scores[c], m - 1 - pos[c], static_cast<int>(borda[c])});
  }
  return out;
}

PotentialVector potential_stv(const Profile& profile, std::span<const int> order) {
  const auto outcome = stv(profile, order);
  const auto borda = candidate_scores(profile, ScoreKind::Borda);
  const auto pos = order_positions(order);
  const int m = profile.space.num_candidates;
  const auto w = outcome.winner.entries();
  PotentialVector out;
  out.reserve(w.size());
  for (std::size_t i = w.size(); i-- > 0;) {
    const int c = w[i];
    out.push_back({static_cast<double>(outcome.score_at_elimination[c]), m - 1 - pos[c],
                   static_cast<int>(borda[c])});
  }
  return out;
}

std::vector<double> flatten(const PotentialVector& p) {
  std::vector<double> out;
  out.reserve(3 * p.size());
  for (const auto& t : p) {
    out.push_back(t.rule_score);
    out.push_back(t.order_score);
    out.push_back(t.borda_score);
  }
  return out;
}

LexOrder lex_compare(const PotentialVector& p, const PotentialVector& q) {
  if (p.size() != q.size())
    throw InvalidPoint("potential vectors differ in length: " + std::to_string(p.size()) +
                       " vs " + std::to_string(q.size()));
  const auto a = flatten(p);
  const auto b = flatten(q);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return LexOrder::Less;
    if (a[i] > b[i]) return LexOrder::Greater;
  }
  return LexOrder::Equal;
}

std::string_view to_string(IterationBound::Kind k) {
  switch (k) {
    case IterationBound::Kind::Exact: return "EXACT";
    case IterationBound::Kind::Cap: return "CAP";
    case IterationBound::Kind::None: return "NONE";
  }
  return "?";
}

long ceil_reach(const Profile& profile, const Point& w, double eps) {
  double reach = 0.0;
  for (const auto& v : profile.points) reach = std::max(reach, distance(profile.space, v, w));
  return static_cast<long>(std::ceil(reach / eps - kTolerance));
}

namespace {

double pairwise_diameter(const Profile& profile) {
  double d = 0.0;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    for (std::size_t j = i + 1; j < profile.size(); ++j)
      d = std::max(d, distance(profile.space, profile.points[i], profile.points[j]));
  }
  return d;
}

bool monotonic_for_first_changed(Rule r) {
  return r == Rule::MajorityVnw || r == Rule::TopkMajorityMw || r == Rule::Kemeny ||
         r == Rule::Plurality || r == Rule::Borda || r == Rule::Copeland;
}

}  // namespace

IterationBound iteration_bound(const SpaceSpec& space, const RuleSpec& rule,
                               const Profile& initial, double eps) {
  using K = IterationBound::Kind;
  const auto exact_reach = [&](std::string basis) {
    return IterationBound{K::Exact, ceil_reach(initial, winner(rule, initial), eps),
                          std::move(basis)};
  };
  const int m = space.num_candidates;
  const long ceil_m = static_cast<long>(std::ceil(static_cast<double>(m) / eps - kTolerance));

  switch (space.family) {
    case Family::Euclidean:
      if (space.distance == Distance::LInf) return {K::None, 0, "linf: convergence not guaranteed"};
      switch (rule.rule) {
        case Rule::Median: return exact_reach("median winner is stable: max ceil(d/eps)");
        case Rule::FloorMean:
          return exact_reach("floor-mean: max ceil(d/eps), valid while the winner stays fixed");
        case Rule::Mean: {
          const double diameter = space.distance == Distance::L2
                                      ? enclosing_ball_l2(initial.points).diameter
                                      : pairwise_diameter(initial);
          const long phases = static_cast<long>(std::ceil(diameter / eps - kTolerance));
          return {K::Cap, kMeanCapMultiplier * std::max(1L, phases),
                  "mean: O(D/eps) with D the enclosing diameter, constant unknown"};
        }
        default: break;
      }
      break;
    case Family::Binary:
      if (space.distance == Distance::Hamming &&
          (rule.rule == Rule::MajorityVnw || rule.rule == Rule::TopkMajorityMw))
        return exact_reach("monotonic hamming rule: max ceil(d/eps)");
      if (space.distance == Distance::FirstChanged && monotonic_for_first_changed(rule.rule))
        return {K::Exact, ceil_m, "first-changed with a monotonic rule: ceil(m/eps)"};
      break;
    case Family::Ranking:
      if (space.distance == Distance::FirstChanged && monotonic_for_first_changed(rule.rule))
        return {K::Exact, ceil_m, "first-changed with a monotonic rule: ceil(m/eps)"};
      if (rule.rule == Rule::Kemeny) return exact_reach("kemeny winner is stable: max ceil(d/eps)");
      if (space.distance == Distance::Swap) return {K::None, 0, "converges; no known bound"};
      break;
  }
  return {K::None, 0, "no result for this configuration"};
}

bool winner_stability(std::span<const IterationRecord> trace) {
  for (const auto& rec : trace) {
    if (!(rec.winner == trace.front().winner)) return false;
  }
  return true;
}

namespace {

// Pairs (a, b) that `x` orders a-before-b while `v` orders b-before-a.
long pairwise_disagreements(std::span<const int> x, std::span<const int> v) {
  long count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const auto it_a = std::find(v.begin(), v.end(), x[i]);
      const auto it_b = std::find(v.begin(), v.end(), x[j]);
      if (it_b < it_a) ++count;
    }
  }
  return count;
}

void enumerate(std::vector<int>& prefix, std::vector<char>& used, std::span<const int> base,
               std::vector<std::vector<int>>& out) {
  if (prefix.size() == base.size()) {
    out.push_back(prefix);
    return;
  }
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (used[i]) continue;
    used[i] = 1;
    prefix.push_back(base[i]);
    enumerate(prefix, used, base, out);
    prefix.pop_back();
    used[i] = 0;
  }
}

}  // namespace

Point kemeny_bruteforce(const Profile& profile, std::optional<std::span<const int>> order) {
  if (profile.space.family != Family::Ranking) throw ConfigError("kemeny oracle needs rankings");
  if (profile.points.empty()) throw ConfigError("kemeny oracle: empty profile");
  const int m = profile.space.num_candidates;
  if (m > kBruteForceMaxCandidates)
    throw UnsupportedSize("kemeny oracle supports at most " +
                          std::to_string(kBruteForceMaxCandidates) + " candidates");
  std::vector<int> base(m);
  if (order) {
    base.assign(order->begin(), order->end());
  } else {
    std::iota(base.begin(), base.end(), 0);
  }
  std::vector<int> rank_of(m);
  for (int i = 0; i < m; ++i) rank_of[base[i]] = i;

  std::vector<std::vector<int>> all;
  std::vector<int> prefix;
  std::vector<char> used(m, 0);
  enumerate(prefix, used, base, all);

  const auto tie_less = [&](const std::vector<int>& a, const std::vector<int>& b) {
    for (int i = 0; i < m; ++i) {
      if (rank_of[a[i]] != rank_of[b[i]]) return rank_of[a[i]] < rank_of[b[i]];
    }
    return false;
  };
  const std::vector<int>* best = nullptr;
  long best_total = std::numeric_limits<long>::max();
  for (const auto& x : all) {
    long total = 0;
    for (const auto& v : profile.points) total += pairwise_disagreements(x, v.entries());
    if (total < best_total || (total == best_total && tie_less(x, *best))) {
      best_total = total;
      best = &x;
    }
  }
  return Point::ranking(*best);
}

namespace {

using Vec = std::vector<double>;

double sq_dist(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) acc += (a[t] - b[t]) * (a[t] - b[t]);
  return acc;
}

struct RawBall {
  Vec center;
  double sq_radius = -1.0;  // negative: empty ball

  bool contains(const Vec& p) const {
    if (sq_radius < 0.0) return false;
    const double r = std::sqrt(sq_radius);
    return std::sqrt(sq_dist(p, center)) <= r + 1e-10 * (1.0 + r);
  }
};

// Solves a small dense system in place by Gaussian elimination with partial pivoting.
bool solve_linear(std::vector<Vec>& a, Vec& b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    }
    if (std::abs(a[piv][col]) < 1e-14) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  for (std::size_t col = n; col-- > 0;) {
    for (std::size_t c = col + 1; c < n; ++c) b[col] -= a[col][c] * b[c];
    b[col] /= a[col][col];
  }
  return true;
}

// Smallest ball with every support point on its boundary, centered in their affine hull.
RawBall ball_on(const std::vector<Vec>& support) {
  if (support.empty()) return {};
  const Vec& p0 = support.front();
  if (support.size() == 1) return {p0, 0.0};
  const std::size_t k = support.size() - 1;
  const std::size_t dim = p0.size();
  std::vector<Vec> diff(k, Vec(dim));
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t t = 0; t < dim; ++t) diff[j][t] = support[j + 1][t] - p0[t];
  }
  std::vector<Vec> a(k, Vec(k));
  Vec rhs(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l < k; ++l) {
      a[j][l] = 2.0 * std::inner_product(diff[j].begin(), diff[j].end(), diff[l].begin(), 0.0);
    }
    rhs[j] = std::inner_product(diff[j].begin(), diff[j].end(), diff[j].begin(), 0.0);
  }
  Vec center = p0;
  if (solve_linear(a, rhs)) {
    for (std::size_t j = 0; j < k; ++j) {
      for (std::size_t t = 0; t < dim; ++t) center[t] += rhs[j] * diff[j][t];
    }
  } else {
    // Degenerate support: center on the farthest pair and cover the rest.
    std::size_t bi = 0, bj = 0;
    double far = -1.0;
    for (std::size_t i = 0; i < support.size(); ++i) {
      for (std::size_t j = i + 1; j < support.size(); ++j) {
        const double d = sq_dist(support[i], support[j]);
        if (d > far) far = d, bi = i, bj = j;
      }
    }
    for (std::size_t t = 0; t < dim; ++t) center[t] = 0.5 * (support[bi][t] + support[bj][t]);
  }
  double r2 = 0.0;
  for (const auto& p : support) r2 = std::max(r2, sq_dist(p, center));
  return {center, r2};
}

RawBall welzl(const std::vector<Vec>& pts, std::size_t count, std::vector<Vec>& support) {
  RawBall ball = ball_on(support);
  if (!pts.empty() && support.size() == pts.front().size() + 1) return ball;
  for (std::size_t i = 0; i < count; ++i) {
    if (ball.contains(pts[i])) continue;
    support.push_back(pts[i]);
    ball = welzl(pts, i, support);
    support.pop_back();
  }
  return ball;
}

}  // namespace

Ball enclosing_ball_l2(std::span<const Point> points, std::uint64_t shuffle_seed) {
  if (points.empty()) return {};
  std::vector<Vec> pts;
  pts.reserve(points.size());
  for (const auto& p : points) pts.emplace_back(p.coords().begin(), p.coords().end());
  std::mt19937_64 rng(shuffle_seed);
  std::shuffle(pts.begin(), pts.end(), rng);
  std::vector<Vec> support;
  const RawBall raw = welzl(pts, pts.size(), support);
  return {raw.center, 2.0 * std::sqrt(std::max(0.0, raw.sq_radius))};
}

bool ball_containment(const Profile& initial, const Point& final_point) {
  const Ball ball = enclosing_ball_l2(initial.points);
  const auto c = final_point.coords();
  double acc = 0.0;
  for (std::size_t t = 0; t < c.size(); ++t) acc += (c[t] - ball.center[t]) * (c[t] - ball.center[t]);
  return std::sqrt(acc) <= ball.radius() + kTolerance;
}

bool bounding_box_containment(const Profile& initial, const Point& final_point) {
  const auto c = final_point.coords();
  for (std::size_t t = 0; t < c.size(); ++t) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& p : initial.points) {
      lo = std::min(lo, p.coords()[t]);
      hi = std::max(hi, p.coords()[t]);
    }
    if (c[t] < lo - kTolerance || c[t] > hi + kTolerance) return false;
  }
  return true;
}

double sum_distance_to_winner(const Profile& profile, const Point& w) {
  double total = 0.0;
  for (const auto& v : profile.points) total += distance(profile.space, v, w);
  return total;
}

}  // namespace delib
