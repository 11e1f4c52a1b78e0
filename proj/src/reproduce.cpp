// Worked examples replayed with built-in inputs and checked against their printed values.
#include <sstream>

#include "delib/analysis.hpp"
#include "delib/cli.hpp"
#include "delib/errors.hpp"

namespace delib {

namespace {

SpaceSpec linf3() { return SpaceSpec::euclidean(3, Distance::LInf); }

Point p3(double x, double y, double z) { return Point::real({x, y, z}); }

std::string points_str(const std::vector<Point>& pts) {
  std::string s;
  for (std::size_t i = 0; i < pts.size(); ++i) s += (i ? " " : "") + to_string(pts[i]);
  return s;
}

std::string vec_str(const std::vector<double>& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

std::string ranking_str(const Point& p) {
  std::string s = "(";
  for (int c : p.entries()) s += static_cast<char>('a' + c);
  return s + ")";
}

// Step table of a trace; long traces show the head and the tail.
std::string step_table(const RunReport& r, std::size_t head = 6) {
  std::ostringstream os;
  os << "j\twinner\tprofile\n";
  const auto& t = r.trace;
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (t.size() > head + 2 && j == head) os << "...\n";
    if (t.size() > head + 2 && j >= head && j + 1 < t.size()) continue;
    os << t[j].index << '\t' << to_string(t[j].winner) << '\t' << points_str(t[j].profile) << '\n';
  }
  os << "outcome " << to_string(r.outcome) << ", moving iterations " << r.iterations
     << ", states shown " << r.states;
  if (r.outcome == Outcome::CapReached) os << ", growth_detected " << (r.growth_detected ? "true" : "false");
  if (r.point) os << ", consensus " << to_string(*r.point);
  os << '\n';
  return os.str();
}

struct Checker {
  ReproduceResult& res;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      res.ok = false;
      res.mismatches.push_back(what);
    }
  }
};

ReproduceResult reproduce_example1() {
  ReproduceResult res;
  Checker ck{res};
  EngineConfig cfg;
  cfg.space = example1_profile().space;
  cfg.rule.rule = Rule::FloorMean;
  cfg.epsilon = 1;
  const RunReport r = run(example1_profile(), cfg);

  const std::vector<std::vector<double>> golden = {{3, 5, 8}, {4, 5, 7}, {5, 5, 6}, {5, 5, 5}};
  std::vector<std::vector<double>> seen;
  for (const auto& rec : r.trace) {
    std::vector<double> row;
    for (const auto& p : rec.profile) row.push_back(p.coords()[0]);
    seen.push_back(row);
    ck.expect(rec.winner == Point::real({5}), "iteration " + std::to_string(rec.index) +
                                                  ": winner " + to_string(rec.winner) + ", expected (5)");
  }

  if (seen.size() != golden.size()) {
    ck.expect(false, "expected 4 states, got " + std::to_string(seen.size()));
  } else {
    for (std::size_t j = 0; j < golden.size(); ++j)
      ck.expect(seen[j] == golden[j], "state " + std::to_string(j) + ": got " + vec_str(seen[j]) +
                                          ", expected " + vec_str(golden[j]));
  }
  ck.expect(r.outcome == Outcome::Converged && r.point == Point::real({5}),
            "expected CONVERGED at (5), got " + std::string(to_string(r.outcome)));
  ck.expect(r.states == 4, "expected 4 displayed states, got " + std::to_string(r.states));

  res.table = step_table(r);
  return res;
}

// Runs a scripted divergence example and checks positions and winners against closed forms.
template <class Closed>
ReproduceResult reproduce_divergence(const Profile& initial, std::vector<std::vector<Point>> script,
                                     Rule rule, long iters, Closed closed) {
  ReproduceResult res;
  Checker ck{res};
  EngineConfig cfg;
  cfg.space = initial.space;
  cfg.rule.rule = rule;
  cfg.policy.kind = PolicyKind::Scripted;
  cfg.policy.script = std::move(script);
  cfg.epsilon = 1;
  cfg.max_iters = iters;
  RunReport r;
  try {
    r = run(initial, cfg);
  } catch (const Error& e) {
    ck.expect(false, e.what());
    return res;
  }
  for (const auto& rec : r.trace) {
    const auto j = static_cast<double>(rec.index);
    const auto [positions, w] = closed(rec.index);
    if (rec.profile != positions) {
      ck.expect(false, "iteration " + std::to_string(rec.index) + ": profile " + points_str(rec.profile));
    }
    ck.expect(rec.winner == p3(j, j, j), "iteration " + std::to_string(rec.index) + ": winner " +
                                             to_string(rec.winner) + ", expected " + to_string(w));
    for (std::size_t i = 0; i < rec.violations.size(); ++i) {
      if (!rec.violations[i].empty())
        ck.expect(false, "iteration " + std::to_string(rec.index) + ", agent " + std::to_string(i) +
                             ": " + rec.violations[i]);
    }
  }
  ck.expect(r.outcome == Outcome::CapReached && r.growth_detected,
            "expected CAP_REACHED with growth, got " + std::string(to_string(r.outcome)));
  ck.expect(static_cast<long>(r.trace.size()) == iters, "trace has " + std::to_string(r.trace.size()) + " records");
  res.table = step_table(r);
  return res;
}

ReproduceResult reproduce_scoring_vector() {
  ReproduceResult res;
  Checker ck{res};
  const auto V = Profile{SpaceSpec::ranking(3, Distance::Swap),
                         {Point::ranking({0, 1, 2}), Point::ranking({0, 1, 2}), Point::ranking({2, 0, 1})}};
  const std::vector<int> O = {0, 1, 2};
  const Point w = scoring_winner(V, ScoreKind::Plurality, O);
  const auto flat = flatten(potential_scoring(V, ScoreKind::Plurality, O));
  const std::vector<double> golden = {2, 2, 5, 1, 0, 2, 0, 1, 2};
  ck.expect(w == Point::ranking({0, 2, 1}), "plurality winner " + ranking_str(w) + ", expected (acb)");
  ck.expect(flat == golden, "vector " + vec_str(flat) + ", expected " + vec_str(golden));
  res.table = "profile (abc) (abc) (cab), O = (abc), Plurality\nwinner " + ranking_str(w) +
              "\nvector " + vec_str(flat) + '\n';
  return res;
}

ReproduceResult reproduce_stv_vector() {
  ReproduceResult res;
  Checker ck{res};
  const auto V = Profile{SpaceSpec::ranking(3, Distance::Swap),
                         {Point::ranking({0, 1, 2}), Point::ranking({0, 1, 2}), Point::ranking({2, 0, 1})}};
  const std::vector<int> O = {0, 1, 2};
  const StvOutcome s = stv(V, O);
  const auto flat = flatten(potential_stv(V, O));
  const std::vector<double> golden = {0, 1, 2, 1, 0, 2, 3, 2, 5};
  ck.expect(s.winner == Point::ranking({0, 2, 1}), "STV winner " + ranking_str(s.winner) + ", expected (acb)");
  ck.expect(s.eliminated == std::vector<int>{1, 2, 0}, "elimination order should be b, c, a");
  ck.expect(flat == golden, "vector " + vec_str(flat) + ", expected " + vec_str(golden));
  std::string order;
  for (int c : s.eliminated) order += static_cast<char>('a' + c);
  res.table = "profile (abc) (abc) (cab), O = (abc), STV\neliminated " + order + "\nwinner " +
              ranking_str(s.winner) + "\nvector " + vec_str(flat) + '\n';
  return res;
}

}  // namespace

Profile example1_profile() {
  return {SpaceSpec::euclidean(1, Distance::L1, true), {Point::real({3}), Point::real({5}), Point::real({8})}};
}

Profile example3_profile() {
  return {linf3(), {p3(-4, 2, 2), p3(2, -4, 2), p3(2, 2, -4)}};
}

Profile example4_profile() {
  return {linf3(), {p3(0, 0, 0), p3(-2, 0, 0), p3(0, -2, 0), p3(0, 0, -2)}};
}

// script[j] holds V^{j+1}.
std::vector<std::vector<Point>> example3_script(long iterations) {
  std::vector<std::vector<Point>> out;
  for (long j = 1; j <= iterations; ++j) {
    const auto d = static_cast<double>(j);
    out.push_back({p3(-4 + d, 2 + d, 2 + d), p3(2 + d, -4 + d, 2 + d), p3(2 + d, 2 + d, -4 + d)});
  }
  return out;
}

std::vector<std::vector<Point>> example4_script(long iterations) {
  std::vector<std::vector<Point>> out;
  for (long j = 0; j < iterations; ++j) {
    const auto d = static_cast<double>(j);
    out.push_back({p3(d, d, d), p3(-1 + d, 1 + d, 1 + d), p3(1 + d, -1 + d, 1 + d), p3(1 + d, 1 + d, -1 + d)});
  }
  return out;
}

ReproduceResult reproduce(const std::string& name) {
  constexpr long kIters = 1000;
  if (name == "example1") return reproduce_example1();
  if (name == "example3") {
    return reproduce_divergence(example3_profile(), example3_script(kIters), Rule::Mean, kIters, [](long j) {
      const auto d = static_cast<double>(j);
      return std::pair{std::vector<Point>{p3(-4 + d, 2 + d, 2 + d), p3(2 + d, -4 + d, 2 + d), p3(2 + d, 2 + d, -4 + d)},
                       p3(d, d, d)};
    });
  }
  if (name == "example4") {
    return reproduce_divergence(example4_profile(), example4_script(kIters), Rule::Median, kIters, [](long j) {
      if (j == 0) return std::pair{example4_profile().points, p3(0, 0, 0)};
      const auto d = static_cast<double>(j - 1);
      return std::pair{std::vector<Point>{p3(d, d, d), p3(-1 + d, 1 + d, 1 + d), p3(1 + d, -1 + d, 1 + d),
                                          p3(1 + d, 1 + d, -1 + d)},
                       p3(d + 1, d + 1, d + 1)};
    });
  }
  if (name == "scoring-vector") return reproduce_scoring_vector();
  if (name == "stv-vector") return reproduce_stv_vector();
  throw ConfigError("unknown example '" + name + "'");
}

}  // namespace delib
