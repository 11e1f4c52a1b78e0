// Acceptance run: one PASS/FAIL line per criterion. `acceptance --only N` runs a single one.
//
// Reference quantities (distances, reach counts, step laws) are recomputed here from first
// principles instead of being read back from the library's own analysis helpers.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <array>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "delib/analysis.hpp"
#include "delib/cli.hpp"
#include "delib/errors.hpp"
#include "delib/profiles.hpp"

using namespace delib;

namespace {

constexpr double kTol = 1e-9;

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << why;
    pass = false;
  }
};

Point p3(double a, double b, double c) { return Point::real({a, b, c}); }

std::vector<int> identity(int m) {
  std::vector<int> o(static_cast<std::size_t>(m));
  std::iota(o.begin(), o.end(), 0);
  return o;
}

// Distances written out directly from their definitions.
double ref_distance(const SpaceSpec& s, const Point& a, const Point& b) {
  switch (s.distance) {
    case Distance::L1:
    case Distance::L2:
    case Distance::LInf: {
      double sum = 0, sq = 0, mx = 0;
      for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = std::abs(a.coords()[i] - b.coords()[i]);
        sum += d;
        sq += d * d;
        mx = std::max(mx, d);
      }
      return s.distance == Distance::L1 ? sum : s.distance == Distance::L2 ? std::sqrt(sq) : mx;
    }
    case Distance::Hamming: {
      int d = 0;
      for (std::size_t i = 0; i < a.size(); ++i) d += a.entries()[i] != b.entries()[i];
      return d;
    }
    case Distance::Swap: {
      // Pairs ordered one way by a and the other way by b.
      const auto x = a.entries(), y = b.entries();
      std::vector<int> pos(x.size());
      for (std::size_t i = 0; i < y.size(); ++i) pos[static_cast<std::size_t>(y[i])] = static_cast<int>(i);
      int d = 0;
      for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j)
          d += pos[static_cast<std::size_t>(x[i])] > pos[static_cast<std::size_t>(x[j])];
      return d;
    }
    case Distance::FirstChanged: {
      int last = -1;
      for (std::size_t i = 0; i < a.size(); ++i)
        if (a.entries()[i] != b.entries()[i]) last = static_cast<int>(i);
      return last + 1;
    }
  }
  return 0;
}

long reach(const SpaceSpec& s, const std::vector<Point>& v, const Point& w, double eps) {
  long best = 0;
  for (const auto& p : v)
    best = std::max(best, static_cast<long>(std::ceil(ref_distance(s, p, w) / eps - kTol)));
  return best;
}

double sum_to(const SpaceSpec& s, const std::vector<Point>& v, const Point& w) {
  double t = 0;
  for (const auto& p : v) t += ref_distance(s, p, w);
  return t;
}

// Both movement laws for one agent, from the definitions.
std::string strict_step_error(const SpaceSpec& s, const Point& v, const Point& moved, const Point& w,
                              double eps) {
  const double before = ref_distance(s, v, w);
  const double after = ref_distance(s, moved, w);
  const double shift = ref_distance(s, v, moved);
  std::ostringstream os;
  if (std::abs(after - std::max(0.0, before - eps)) > kTol)
    os << "distance to winner " << after << " instead of " << std::max(0.0, before - eps);
  else if (std::abs(shift - std::min(eps, before)) > kTol)
    os << "displacement " << shift << " instead of " << std::min(eps, before);
  return os.str();
}

// ---------------------------------------------------------------------------------------------

Verdict criterion1() {
  Verdict v;
  EngineConfig e;
  e.space = example1_profile().space;
  e.rule.rule = Rule::FloorMean;
  e.epsilon = 1;
  const RunReport r = run(example1_profile(), e);
  const std::vector<std::vector<double>> want = {{3, 5, 8}, {4, 5, 7}, {5, 5, 6}, {5, 5, 5}};
  if (r.trace.size() != want.size()) v.fail(std::to_string(r.trace.size()) + " states");
  for (std::size_t j = 0; v.pass && j < want.size(); ++j) {
    for (std::size_t i = 0; i < 3; ++i)
      if (r.trace[j].profile[i].coords()[0] != want[j][i]) v.fail("state " + std::to_string(j) + " differs");
    if (r.trace[j].winner.coords()[0] != 5) v.fail("winner at state " + std::to_string(j) + " is not 5");
  }
  if (r.outcome != Outcome::Converged) v.fail("outcome " + std::string(to_string(r.outcome)));
  v.detail << (v.pass ? "(3,5,8)->(4,5,7)->(5,5,6)->(5,5,5), winner 5 throughout" : "");
  return v;
}

// Scripted divergence: replays a script under STRICT checks and verifies winners and steps.
RunReport divergence(const Profile& v0, Rule rule, std::vector<std::vector<Point>> script, long iters,
                     Verdict& v) {
  EngineConfig e;
  e.space = v0.space;
  e.rule.rule = rule;
  e.epsilon = 1;
  e.max_iters = iters;
  e.policy.kind = PolicyKind::Scripted;
  e.policy.constraint_mode = ConstraintMode::Strict;
  e.policy.script = std::move(script);
  RunReport r;
  try {
    r = run(v0, e);
  } catch (const ConstraintViolation& ex) {
    v.fail(std::string("engine rejected the script: ") + ex.what());
    return r;
  }
  for (std::size_t j = 0; v.pass && j + 1 < r.trace.size(); ++j) {
    const auto& rec = r.trace[j];
    const auto& next = r.trace[j + 1].profile;
    for (std::size_t i = 0; v.pass && i < next.size(); ++i) {
      const std::string err = strict_step_error(v0.space, rec.profile[i], next[i], rec.winner, 1);
      if (!err.empty()) v.fail("iteration " + std::to_string(j) + " agent " + std::to_string(i) + ": " + err);
    }
  }
  if (r.outcome != Outcome::CapReached) v.fail("outcome " + std::string(to_string(r.outcome)));
  if (!r.growth_detected) v.fail("growth not detected");
  return r;
}

Verdict criterion2() {
  Verdict v;
  constexpr long kIters = 500;
  const RunReport r = divergence(example3_profile(), Rule::Mean, example3_script(kIters), kIters, v);
  for (std::size_t j = 0; v.pass && j < r.trace.size(); ++j) {
    const auto d = static_cast<double>(j);
    if (!(r.trace[j].winner == p3(d, d, d))) v.fail("winner at iteration " + std::to_string(j) + " is " +
                                                     to_string(r.trace[j].winner));
  }
  if (v.pass) v.detail << kIters << " STRICT iterations, w^j = (j,j,j), CAP_REACHED with growth";
  return v;
}

Verdict criterion3() {
  Verdict v;
  constexpr long kIters = 500;
  const RunReport r = divergence(example4_profile(), Rule::Median, example4_script(kIters), kIters, v);
  for (std::size_t j = 1; v.pass && j + 1 < r.trace.size(); ++j) {
    for (std::size_t t = 0; t < 3; ++t) {
      const double step = r.trace[j + 1].winner.coords()[t] - r.trace[j].winner.coords()[t];
      if (step != 1) v.fail("median step " + std::to_string(step) + " at iteration " + std::to_string(j));
    }
  }
  if (v.pass)
    v.detail << kIters << " iterations pass the checks, median +1 per iteration, final "
             << to_string(r.trace.back().winner);
  return v;
}

Verdict criterion4() {
  Verdict v;
  const std::vector<std::string> confs = {"median-l1", "median-l2", "majority-vnw", "topk-mw", "kemeny"};
  std::mt19937_64 rng(2024);
  auto in = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  long runs = 0, max_iters = 0;
  for (const auto& conf : confs) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      EngineConfig e;
      int n = in(1, 15);
      if (conf == "median-l1" || conf == "median-l2") {
        e.space = SpaceSpec::euclidean(in(1, 3), conf == "median-l1" ? Distance::L1 : Distance::L2);
        e.rule.rule = Rule::Median;
        e.epsilon = std::array{0.5, 1.0, 1.5, 3.0}[static_cast<std::size_t>(in(0, 3))];
      } else if (conf == "majority-vnw") {
        e.space = SpaceSpec::binary(in(2, 8), Distance::Hamming);
        e.rule.rule = Rule::MajorityVnw;
        e.epsilon = in(1, 3);
      } else if (conf == "topk-mw") {
        const int m = in(3, 8);
        e.space = SpaceSpec::binary(m, Distance::Hamming, in(1, m - 1));
        e.rule = {Rule::TopkMajorityMw, identity(m)};
        e.epsilon = 2 * in(1, 2);
      } else {
        const int m = in(2, 5);
        e.space = SpaceSpec::ranking(m, Distance::Swap);
        e.rule = {Rule::Kemeny, identity(m)};
        e.epsilon = in(1, 3);
        n = in(1, 7);
      }
      const Profile v0 = generate({e.space, n, seed, {}});
      const RunReport r = run(v0, e);
      ++runs;
      const Point w0 = r.trace.front().winner;
      const long want = reach(e.space, v0.points, w0, e.epsilon);
      const std::string where = conf + " seed " + std::to_string(seed) + ": ";
      if (r.outcome != Outcome::Converged) v.fail(where + std::string(to_string(r.outcome)));
      for (const auto& rec : r.trace)
        if (!(rec.winner == w0)) v.fail(where + "winner moved to " + to_string(rec.winner));
      if (r.iterations != want)
        v.fail(where + std::to_string(r.iterations) + " iterations, expected " + std::to_string(want));
      max_iters = std::max(max_iters, r.iterations);
    }
  }
  if (v.pass) v.detail << runs << " runs converge with a fixed winner in exactly max ceil(d/eps) iterations"
                       << " (largest " << max_iters << ")";
  return v;
}

Verdict criterion5() {
  Verdict v;
  std::mt19937_64 rng(55);
  auto in = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  double worst_ratio = 0;
  long runs = 0;
  for (const Distance dist : {Distance::L1, Distance::L2}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      EngineConfig e;
      e.space = SpaceSpec::euclidean(in(1, 3), dist);
      e.rule.rule = Rule::Mean;
      e.epsilon = std::array{0.5, 1.0, 2.0}[static_cast<std::size_t>(in(0, 2))];
      const Profile v0 = generate({e.space, in(1, 20), seed, {}});
      const Point w0 = winner(e.rule, v0);
      const long cap = 10 * std::max(1L, reach(e.space, v0.points, w0, 1.0 * e.epsilon));
      e.max_iters = cap;
      const RunReport r = run(v0, e);
      ++runs;
      const std::string where = std::string(to_string(dist)) + " seed " + std::to_string(seed) + ": ";
      if (r.outcome != Outcome::Converged) {
        v.fail(where + std::string(to_string(r.outcome)) + " after " + std::to_string(r.iterations));
        continue;
      }
      for (std::size_t j = 0; j + 1 < r.trace.size(); ++j) {
        const double a = sum_to(e.space, r.trace[j].profile, r.trace[j].winner);
        const double b = sum_to(e.space, r.trace[j + 1].profile, r.trace[j + 1].winner);
        if (a > 0 && !(b < a)) v.fail(where + "sum of distances did not decrease at iteration " + std::to_string(j));
      }
      if (dist == Distance::L2 && !ball_containment(v0, *r.point)) v.fail(where + "consensus outside the ball");
      worst_ratio = std::max(worst_ratio, static_cast<double>(r.iterations) / static_cast<double>(cap / 10));
    }
  }
  if (v.pass)
    v.detail << runs << " runs converge within 10*ceil(D/eps); largest iterations/ceil(D/eps) = " << worst_ratio;
  return v;
}

PotentialVector potential_of(Rule rule, const Profile& p, const std::vector<int>& order) {
  switch (rule) {
    case Rule::Plurality: return potential_scoring(p, ScoreKind::Plurality, order);
    case Rule::Borda: return potential_scoring(p, ScoreKind::Borda, order);
    case Rule::Copeland: return potential_scoring(p, ScoreKind::Copeland, order);
    default: return potential_stv(p, order);
  }
}

Verdict criterion6() {
  Verdict v;
  const Profile worked{SpaceSpec::ranking(3, Distance::Swap),
                      {Point::ranking({0, 1, 2}), Point::ranking({0, 1, 2}), Point::ranking({2, 0, 1})}};
  const std::vector<int> abc = {0, 1, 2};
  if (flatten(potential_scoring(worked, ScoreKind::Plurality, abc)) != std::vector<double>{2, 2, 5, 1, 0, 2, 0, 1, 2})
    v.fail("scoring vector differs");
  if (flatten(potential_stv(worked, abc)) != std::vector<double>{0, 1, 2, 1, 0, 2, 3, 2, 5})
    v.fail("STV vector differs");

  std::mt19937_64 rng(66);
  auto in = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  long steps = 0;
  for (const Rule rule : {Rule::Plurality, Rule::Borda, Rule::Copeland, Rule::Stv}) {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      const int m = in(2, 5);
      EngineConfig e;
      e.space = SpaceSpec::ranking(m, Distance::Swap);
      std::vector<int> order = identity(m);
      std::shuffle(order.begin(), order.end(), rng);
      e.rule = {rule, order};
      e.epsilon = in(1, 2);
      if (seed % 2) e.policy = {PolicyKind::SeededRandom, seed, {}, L1Mode::CoordOrder, ConstraintMode::Strict};
      const Profile v0 = generate({e.space, in(1, 7), seed, {}});
      const RunReport r = run(v0, e);
      const std::string where = std::string(to_string(rule)) + " seed " + std::to_string(seed) + ": ";
      if (r.outcome != Outcome::Converged) v.fail(where + std::string(to_string(r.outcome)));
      const LexOrder want = rule == Rule::Stv ? LexOrder::Less : LexOrder::Greater;
      for (std::size_t j = 0; j + 1 < r.trace.size(); ++j) {
        const Profile a{e.space, r.trace[j].profile}, b{e.space, r.trace[j + 1].profile};
        if (is_consensus(a)) continue;
        ++steps;
        if (lex_compare(potential_of(rule, b, order), potential_of(rule, a, order)) != want)
          v.fail(where + "potential not strictly monotone at iteration " + std::to_string(j));
      }
    }
  }
  if (v.pass) v.detail << "both printed vectors match; " << steps << " steps strictly monotone over 400 runs";
  return v;
}

Verdict criterion7() {
  Verdict v;
  std::mt19937_64 rng(77);
  auto in = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  int vnw_ok = 0, swf_ok = 0, swf_unexplained = 0;
  std::string first_swf_miss;
  const std::array swf_rules = {Rule::Kemeny, Rule::Borda, Rule::Copeland};
  for (int half = 0; half < 2; ++half) {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
      const int m = in(3, 6);
      EngineConfig e;
      if (half == 0) {
        e.space = SpaceSpec::binary(m, Distance::FirstChanged);
        e.rule.rule = Rule::MajorityVnw;
      } else {
        e.space = SpaceSpec::ranking(m, Distance::FirstChanged);
        e.rule = {swf_rules[seed % swf_rules.size()], identity(m)};
      }
      e.policy.constraint_mode = ConstraintMode::C1Only;
      e.epsilon = in(1, 3);
      // Nine agents: with very few agents nobody may start at distance m from the winner, and
      // the run then finishes early for a reason unrelated to the timing claim.
      const Profile v0 = generate({e.space, 9, seed, {}});
      const RunReport r = run(v0, e);
      const long want = static_cast<long>(std::ceil(m / e.epsilon - kTol));
      const bool ok = r.outcome == Outcome::Converged && r.iterations == want;
      if (half == 0) {
        vnw_ok += ok;
        if (!ok) v.fail("VNW seed " + std::to_string(seed) + ": " + std::to_string(r.iterations) + " vs " +
                        std::to_string(want) + "; ");
      } else {
        swf_ok += ok;
        if (!ok && first_swf_miss.empty())
          first_swf_miss = "m=" + std::to_string(m) + " eps=" + std::to_string(static_cast<int>(e.epsilon)) + ": " +
                           std::to_string(r.iterations) + " vs " + std::to_string(want);
        // Rankings have no distance-1 level, so eps | (m-1) runs finish one step sooner.
        if (!ok && (m - 1) % static_cast<int>(e.epsilon) != 0) ++swf_unexplained;
        if (!ok) v.pass = false;
      }
    }
  }
  v.detail << "VNW " << vnw_ok << "/50, SWF " << swf_ok << "/50 exactly ceil(m/eps)";
  if (!first_swf_miss.empty())
    v.detail << " (first SWF miss " << first_swf_miss << "; misses where eps does not divide m-1: "
             << swf_unexplained << ")";
  return v;
}

Verdict criterion8() {
  Verdict v;
  std::mt19937_64 rng(88);
  auto in = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  for (std::uint64_t seed = 1; seed <= 200; ++seed) {
    const int m = in(1, 5);
    const Profile p = generate({SpaceSpec::ranking(m, Distance::Swap), in(1, 7), seed, {}});
    const Point got = kemeny(p), want = kemeny_bruteforce(p);
    if (!(got == want)) v.fail("seed " + std::to_string(seed) + ": " + to_string(got) + " vs " + to_string(want));
  }
  if (v.pass) v.detail << "200 profiles agree exactly";
  return v;
}

Point random_point(const SpaceSpec& s, std::mt19937_64& rng) {
  const auto n = s.point_size();
  if (s.family == Family::Euclidean) {
    std::vector<double> c(n);
    for (auto& x : c) x = std::uniform_int_distribution<int>(-6, 6)(rng) * 0.5;
    return Point::real(c);
  }
  if (s.family == Family::Binary) {
    std::vector<int> b(n, 0);
    if (s.committee()) {
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      for (int j = 0; j < *s.committee_size; ++j) b[idx[static_cast<std::size_t>(j)]] = 1;
    } else {
      for (auto& x : b) x = std::bernoulli_distribution(0.5)(rng);
    }
    return Point::bits(b);
  }
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  std::shuffle(r.begin(), r.end(), rng);
  return Point::ranking(r);
}

Verdict criterion9() {
  Verdict v;
  std::mt19937_64 rng(99);
  const std::vector<SpaceSpec> metric_spaces = {
      SpaceSpec::euclidean(3, Distance::L1),      SpaceSpec::euclidean(3, Distance::L2),
      SpaceSpec::euclidean(3, Distance::LInf),    SpaceSpec::binary(6, Distance::Hamming),
      SpaceSpec::ranking(5, Distance::Swap),      SpaceSpec::binary(5, Distance::FirstChanged),
      SpaceSpec::ranking(5, Distance::FirstChanged)};
  for (const auto& s : metric_spaces) {
    for (int t = 0; t < 1000; ++t) {
      const Point x = random_point(s, rng), y = random_point(s, rng), z = random_point(s, rng);
      const double xy = distance(s, x, y), yz = distance(s, y, z), xz = distance(s, x, z);
      const std::string where = s.label() + ": ";
      if (std::abs(xy - ref_distance(s, x, y)) > kTol) v.fail(where + "disagrees with the definition");
      if (xy != distance(s, y, x)) v.fail(where + "asymmetric");
      if ((xy == 0) != (x == y)) v.fail(where + "identity of indiscernibles");
      if (xz > xy + yz + kTol) v.fail(where + "triangle inequality");
      if (s.distance == Distance::FirstChanged && xz > std::max(xy, yz)) v.fail(where + "ultrametric inequality");
    }
  }

  const std::vector<SpaceSpec> move_spaces = {
      SpaceSpec::euclidean(3, Distance::L1),          SpaceSpec::euclidean(3, Distance::L2),
      SpaceSpec::euclidean(3, Distance::LInf),        SpaceSpec::binary(6, Distance::Hamming),
      SpaceSpec::binary(6, Distance::Hamming, 3),     SpaceSpec::binary(5, Distance::FirstChanged),
      SpaceSpec::binary(6, Distance::FirstChanged, 2), SpaceSpec::ranking(5, Distance::FirstChanged),
      SpaceSpec::ranking(5, Distance::Swap)};
  long moves = 0;
  for (const auto& s : move_spaces) {
    const auto mode = s.distance == Distance::FirstChanged ? ConstraintMode::C1Only : ConstraintMode::Strict;
    for (int t = 0; t < 1000; ++t) {
      const Point a = random_point(s, rng), w = random_point(s, rng);
      double eps = s.discrete() ? 1 + t % 3 : std::uniform_real_distribution<double>(0.05, 6)(rng);
      if (s.committee()) eps = 2.0 * (1 + t % 2);
      PolicySpec p{t % 2 ? PolicyKind::SeededRandom : PolicyKind::Default, static_cast<std::uint64_t>(t), {},
                   t % 4 < 2 ? L1Mode::CoordOrder : L1Mode::Proportional, mode};
      try {
        const Point out = next_position(s, p, a, w, eps, t, 0);
        ++moves;
        if (auto bad = validate_point(s, out)) v.fail(s.label() + ": invalid move " + *bad);
        if (auto bad = check_constraints(s, a, out, w, eps, mode)) v.fail(s.label() + ": " + bad->message);
        if (mode == ConstraintMode::Strict) {
          const std::string err = strict_step_error(s, a, out, w, eps);
          if (!err.empty()) v.fail(s.label() + ": " + err);
        }
      } catch (const Error& e) {
        v.fail(s.label() + ": " + e.what());
      }
    }
  }

  // Straight-line l2 step is the only feasible point: perturb it at several scales. With both
  // laws checked to within kTol, the tolerated set around the true step is a lens whose radius
  // is at most sqrt(2 kTol eps) + 2 kTol (the two circles touch there); only points outside that
  // lens count as alternatives.
  const auto l2 = SpaceSpec::euclidean(2, Distance::L2);
  int alternatives = 0, inside_lens = 0;
  for (int t = 0; t < 10000; ++t) {
    const Point a = random_point(l2, rng), w = random_point(l2, rng);
    const double eps = std::uniform_real_distribution<double>(0.1, 3)(rng);
    const Point best = next_position(l2, PolicySpec{}, a, w, eps, 0, 0);
    const double scale = std::pow(10.0, -std::uniform_int_distribution<int>(1, 7)(rng));
    std::normal_distribution<double> g(0, scale);
    const Point q = Point::real({best.coords()[0] + g(rng), best.coords()[1] + g(rng)});
    if (ref_distance(l2, q, best) <= kTol) continue;
    if (check_constraints(l2, a, q, w, eps, ConstraintMode::Strict)) continue;
    const double lens = std::sqrt(2 * kTol * eps) + 2 * kTol;
    (ref_distance(l2, q, best) > lens ? alternatives : inside_lens)++;
  }
  if (alternatives) v.fail(std::to_string(alternatives) + " alternative feasible l2 points");

  if (v.pass)
    v.detail << metric_spaces.size() << " distances x 1000 triples, " << moves
             << " fuzzed moves, no feasible l2 alternative in 10000 perturbations (" << inside_lens
             << " within the tolerance lens)";
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--only N]\n";
      return 2;
    }
  }
  const std::vector<std::function<Verdict()>> criteria = {criterion1, criterion2, criterion3,
                                                          criterion4, criterion5, criterion6,
                                                          criterion7, criterion8, criterion9};
  if (only < 0 || only > static_cast<int>(criteria.size())) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only && static_cast<int>(i) + 1 != only) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i]();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "criterion " << i + 1 << ": " << (v.pass ? "PASS" : "FAIL") << "  " << v.detail.str() << "  ["
              << std::fixed << std::setprecision(2) << secs << "s]" << std::endl;
    std::cout.unsetf(std::ios::fixed);
    failed += !v.pass;
  }
  return failed ? 1 : 0;
}
