// Seeded check matrix: every row is (check, configuration, seed, pass, observed, predicted).
#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "delib/analysis.hpp"
#include "delib/cli.hpp"
#include "delib/errors.hpp"
#include "delib/profiles.hpp"
#include "parallel.hpp"

namespace delib {

namespace {

// Configuration sizes are drawn from the seed so a row can be re-run from its seed alone.
struct Draw {
  std::mt19937_64 rng;
  explicit Draw(std::uint64_t seed) : rng(seed * 0x9E3779B97F4A7C15ULL + 17) {}
  int in(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
  template <class T>
  T pick(std::initializer_list<T> xs) {
    return *(xs.begin() + in(0, static_cast<int>(xs.size()) - 1));
  }
};

std::vector<int> identity(int m) {
  std::vector<int> o(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) o[static_cast<std::size_t>(i)] = i;
  return o;
}

struct Job {
  std::string check;
  std::string configuration;
  std::uint64_t seed;
};

using Setup = std::pair<EngineConfig, Profile>;

// Winner-stable settings whose iteration count is predicted exactly.
Setup stable_setup(const std::string& conf, std::uint64_t seed) {
  Draw d(seed);
  EngineConfig e;
  GeneratorSpec g;
  g.seed = seed;
  if (conf == "median-l1" || conf == "median-l2") {
    g.space = SpaceSpec::euclidean(d.in(1, 3), conf == "median-l1" ? Distance::L1 : Distance::L2);
    g.n = d.in(1, 15);
    e.rule.rule = Rule::Median;
    e.epsilon = d.pick({0.5, 1.0, 1.5, 3.0});
  } else if (conf == "majority-vnw") {
    g.space = SpaceSpec::binary(d.in(2, 8), Distance::Hamming);
    g.n = d.in(1, 15);
    e.rule.rule = Rule::MajorityVnw;
    e.epsilon = d.in(1, 3);
  } else if (conf == "topk-mw") {
    const int m = d.in(3, 8);
    g.space = SpaceSpec::binary(m, Distance::Hamming, d.in(1, m - 1));
    g.n = d.in(1, 15);
    e.rule = {Rule::TopkMajorityMw, identity(m)};
    e.epsilon = d.pick({2, 4});
  } else if (conf == "kemeny") {
    g.space = SpaceSpec::ranking(d.in(3, 5), Distance::Swap);
    g.n = d.in(1, 7);
    e.rule = {Rule::Kemeny, identity(g.space.num_candidates)};
    e.epsilon = d.in(1, 3);
  } else {
    throw ConfigError("unknown configuration " + conf);
  }
  e.space = g.space;
  return {e, generate(g)};
}

VerifyRow stability_row(const Job& j) {
  auto [e, v0] = stable_setup(j.configuration, j.seed);
  const RunReport r = run(v0, e);
  const bool stable = winner_stability(r.trace);
  return {j.check, j.configuration, j.seed, r.outcome == Outcome::Converged && stable,
          stable ? "stable" : "winner changed", "stable"};
}

VerifyRow exact_row(const Job& j) {
  auto [e, v0] = stable_setup(j.configuration, j.seed);
  const IterationBound b = iteration_bound(e.space, e.rule, v0, e.epsilon);
  const RunReport r = run(v0, e);
  const bool ok = r.outcome == Outcome::Converged && b.kind == IterationBound::Kind::Exact &&
                  r.iterations == b.value;
  return {j.check, j.configuration, j.seed, ok, std::to_string(r.iterations), std::to_string(b.value)};
}

VerifyRow mean_row(const Job& j) {
  Draw d(j.seed);
  EngineConfig e;
  const bool l2 = j.configuration == "mean-l2";
  e.space = SpaceSpec::euclidean(d.in(1, 3), l2 ? Distance::L2 : Distance::L1);
  e.rule.rule = Rule::Mean;
  e.epsilon = d.pick({0.5, 1.0, 2.0});
  GeneratorSpec g{e.space, d.in(1, 20), j.seed, {}};
  const Profile v0 = generate(g);
  const IterationBound b = iteration_bound(e.space, e.rule, v0, e.epsilon);
  e.max_iters = b.value;
  const RunReport r = run(v0, e);

  bool decreasing = true;
  for (std::size_t k = 1; k < r.trace.size(); ++k) {
    const auto& prev = r.trace[k - 1];
    const auto& cur = r.trace[k];
    const Profile pp{e.space, prev.profile}, cp{e.space, cur.profile};
    if (!(sum_distance_to_winner(cp, cur.winner) < sum_distance_to_winner(pp, prev.winner))) decreasing = false;
  }
  bool contained = false;
  if (r.point) contained = l2 ? ball_containment(v0, *r.point) : bounding_box_containment(v0, *r.point);
  const bool ok = r.outcome == Outcome::Converged && decreasing && contained;
  std::string observed = std::to_string(r.iterations);
  if (!decreasing) observed += " sum not decreasing";
  if (r.point && !contained) observed += l2 ? " outside ball" : " outside box";
  return {j.check, j.configuration, j.seed, ok, observed, "<= " + std::to_string(b.value)};
}

VerifyRow potential_row(const Job& j) {
  Draw d(j.seed);
  const int m = d.in(3, 5);
  EngineConfig e;
  e.space = SpaceSpec::ranking(m, Distance::Swap);
  const auto& c = j.configuration;
  const Rule rule = c == "plurality" ? Rule::Plurality
                    : c == "borda"   ? Rule::Borda
                    : c == "copeland" ? Rule::Copeland
                                      : Rule::Stv;
  std::vector<int> order = identity(m);
  std::shuffle(order.begin(), order.end(), d.rng);
  e.rule = {rule, order};
  e.epsilon = d.in(1, 2);
  if (j.seed % 2) {
    e.policy.kind = PolicyKind::SeededRandom;
    e.policy.seed = j.seed;
  }
  const Profile v0 = generate({e.space, d.in(1, 7), j.seed, {}});
  const RunReport r = run(v0, e);

  auto potential = [&](const std::vector<Point>& pts) {
    const Profile p{e.space, pts};
    if (rule == Rule::Stv) return potential_stv(p, order);
    const ScoreKind k = rule == Rule::Plurality ? ScoreKind::Plurality
                        : rule == Rule::Borda   ? ScoreKind::Borda
                                                : ScoreKind::Copeland;
    return potential_scoring(p, k, order);
  };
  const LexOrder want = rule == Rule::Stv ? LexOrder::Less : LexOrder::Greater;
  long bad = 0;
  std::vector<std::vector<Point>> states;
  for (const auto& rec : r.trace) states.push_back(rec.profile);
  states.push_back(r.final_profile.points);
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    if (is_consensus({e.space, states[k]})) continue;
    if (lex_compare(potential(states[k + 1]), potential(states[k])) != want) ++bad;
  }
  const bool ok = r.outcome == Outcome::Converged && bad == 0;
  return {j.check, c, j.seed, ok, std::to_string(bad) + " non-monotone steps",
          rule == Rule::Stv ? "strictly decreasing" : "strictly increasing"};
}

VerifyRow first_changed_row(const Job& j) {
  Draw d(j.seed);
  EngineConfig e;
  const int m = d.in(3, 6);
  if (j.configuration == "vnw") {
    e.space = SpaceSpec::binary(m, Distance::FirstChanged);
    e.rule.rule = Rule::MajorityVnw;
  } else {
    e.space = SpaceSpec::ranking(m, Distance::FirstChanged);
    e.rule = {parse_rule(j.configuration.substr(4)), identity(m)};
  }
  e.policy.constraint_mode = ConstraintMode::C1Only;
  e.epsilon = d.in(1, 3);
  const Profile v0 = generate({e.space, d.in(1, 9), j.seed, {}});
  const IterationBound b = iteration_bound(e.space, e.rule, v0, e.epsilon);
  const RunReport r = run(v0, e);
  // The closed form is the worst case over profiles; a given run may finish sooner.
  const bool ok = r.outcome == Outcome::Converged && r.iterations <= b.value;
  return {j.check, j.configuration, j.seed, ok,
          std::to_string(r.iterations), "<= " + std::to_string(b.value)};
}

VerifyRow kemeny_row(const Job& j, bool corrupt) {
  Draw d(j.seed);
  const int m = d.in(2, 5);
  const Profile v = generate({SpaceSpec::ranking(m, Distance::Swap), d.in(1, 7), j.seed, {}});
  Point got = kemeny(v);
  if (corrupt) {
    auto e = got.entries();
    got = Point::ranking(std::vector<int>(e.rbegin(), e.rend()));
  }
  const Point want = kemeny_bruteforce(v);
  return {j.check, "m" + std::to_string(m) + "-n" + std::to_string(v.size()), j.seed, got == want,
          to_string(got), to_string(want)};
}

VerifyRow example_row(const Job& j) {
  const ReproduceResult r = reproduce(j.configuration);
  std::string observed = r.ok ? "match" : r.mismatches.front();
  return {j.check, j.configuration, 0, r.ok, observed, "printed values"};
}

std::vector<Job> jobs_for(const std::string& check, int seeds) {
  std::vector<std::string> confs;
  if (check == "winner-stability" || check == "exact-bound") {
    confs = {"median-l1", "median-l2", "majority-vnw", "topk-mw", "kemeny"};
  } else if (check == "mean-convergence") {
    confs = {"mean-l1", "mean-l2"};
  } else if (check == "potential") {
    confs = {"plurality", "borda", "copeland", "stv"};
  } else if (check == "first-changed") {
    confs = {"vnw", "swf-kemeny", "swf-borda", "swf-copeland", "swf-plurality"};
  } else if (check == "kemeny-oracle") {
    confs = {"random"};
  } else if (check == "examples") {
    std::vector<Job> out;
    for (const auto& n : reproduce_names()) out.push_back({check, n, 0});
    return out;
  } else {
    throw ConfigError("unknown check '" + check + "'");
  }
  std::vector<Job> out;
  for (const auto& c : confs) {
    for (int s = 1; s <= seeds; ++s) out.push_back({check, c, static_cast<std::uint64_t>(s)});
  }
  return out;
}

}  // namespace

std::vector<VerifyRow> verify(const VerifyOptions& options) {
  if (options.seeds < 1) throw ConfigError("verify needs at least one seed per configuration");
  const auto& checks = options.checks.empty() ? verify_check_names() : options.checks;
  std::vector<Job> jobs;
  for (const auto& c : checks) {
    auto more = jobs_for(c, options.seeds);
    jobs.insert(jobs.end(), more.begin(), more.end());
  }
  return detail::parallel_map<VerifyRow>(jobs.size(), [&](std::size_t i) -> VerifyRow {
    const Job& j = jobs[i];
    try {
      if (j.check == "winner-stability") return stability_row(j);
      if (j.check == "exact-bound") return exact_row(j);
      if (j.check == "mean-convergence") return mean_row(j);
      if (j.check == "potential") return potential_row(j);
      if (j.check == "first-changed") return first_changed_row(j);
      if (j.check == "kemeny-oracle") return kemeny_row(j, options.corrupt_rule);
      return example_row(j);
    } catch (const Error& e) {
      return {j.check, j.configuration, j.seed, false, std::string("error: ") + e.what(), ""};
    }
  });
}

std::string verify_csv(const std::vector<VerifyRow>& rows) {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + '"';
  };
  std::ostringstream os;
  os << "check,configuration,seed,pass,observed,predicted\n";
  for (const auto& r : rows) {
    os << r.check << ',' << quote(r.configuration) << ',' << r.seed << ',' << (r.pass ? "pass" : "fail")
       << ',' << quote(r.observed) << ',' << quote(r.predicted) << '\n';
  }
  return os.str();
}

}  // namespace delib
