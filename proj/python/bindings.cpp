// Python bindings. Points cross the boundary as plain lists: floats for euclidean
// points, 0/1 ints for ballots, candidate indices for rankings.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "delib/analysis.hpp"
#include "delib/cli.hpp"
#include "delib/engine.hpp"
#include "delib/errors.hpp"

namespace py = pybind11;
using namespace delib;

namespace {

Point to_point(const SpaceSpec& s, const py::sequence& seq) {
  Point p;
  if (s.family == Family::Euclidean) {
    p = Point::real(seq.cast<std::vector<double>>());
  } else if (s.family == Family::Binary) {
    p = Point::bits(seq.cast<std::vector<int>>());
  } else {
    p = Point::ranking(seq.cast<std::vector<int>>());
  }
  require_valid(s, p);
  return p;
}

py::list from_point(const Point& p) {
  py::list out;
  if (p.family() == Family::Euclidean) {
    for (double x : p.coords()) out.append(x);
  } else {
    for (int x : p.entries()) out.append(x);
  }
  return out;
}

Profile to_profile(const SpaceSpec& s, const py::sequence& pts) {
  Profile p{s, {}};
  for (const auto& x : pts) p.points.push_back(to_point(s, x.cast<py::sequence>()));
  p.validate();
  return p;
}

py::list from_points(const std::vector<Point>& pts) {
  py::list out;
  for (const auto& p : pts) out.append(from_point(p));
  return out;
}

RuleSpec rule_spec(const std::string& rule, std::optional<std::vector<int>> tiebreak, const SpaceSpec& s) {
  RuleSpec r{parse_rule(rule), std::move(tiebreak)};
  const bool needs_order = r.rule == Rule::TopkMajorityMw || r.rule == Rule::Plurality ||
                           r.rule == Rule::Borda || r.rule == Rule::Copeland || r.rule == Rule::Stv;
  if (!r.tiebreak && needs_order) {
    std::vector<int> identity(static_cast<std::size_t>(s.num_candidates));
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i);
    r.tiebreak = std::move(identity);
  }
  r.validate(s);
  return r;
}

py::list potential_list(const PotentialVector& v) {
  py::list out;
  for (const auto& t : v) out.append(py::make_tuple(t.rule_score, t.order_score, t.borda_score));
  return out;
}

ScoreKind score_kind(const std::string& name) {
  if (name == "plurality") return ScoreKind::Plurality;
  if (name == "borda") return ScoreKind::Borda;
  if (name == "copeland") return ScoreKind::Copeland;
  throw ConfigError("unknown scoring rule '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Iterative deliberation over metric spaces with voting rules";

  py::register_exception<Error>(m, "DeliberationError", PyExc_ValueError);

  py::class_<SpaceSpec>(m, "Space")
      .def_static("euclidean",
                  [](int dim, const std::string& distance, bool lattice) {
                    auto s = SpaceSpec::euclidean(dim, parse_distance(distance), lattice);
                    s.validate();
                    return s;
                  },
                  py::arg("dimension"), py::arg("distance") = "l2", py::arg("integer_lattice") = false)
      .def_static("binary",
                  [](int m, const std::string& distance, std::optional<int> k) {
                    auto s = SpaceSpec::binary(m, parse_distance(distance), k);
                    s.validate();
                    return s;
                  },
                  py::arg("num_candidates"), py::arg("distance") = "hamming", py::arg("committee_size") = py::none())
      .def_static("ranking",
                  [](int m, const std::string& distance) {
                    auto s = SpaceSpec::ranking(m, parse_distance(distance));
                    s.validate();
                    return s;
                  },
                  py::arg("num_candidates"), py::arg("distance") = "swap")
      .def_property_readonly("family", [](const SpaceSpec& s) { return std::string(to_string(s.family)); })
      .def_property_readonly("distance", [](const SpaceSpec& s) { return std::string(to_string(s.distance)); })
      .def_readonly("dimension", &SpaceSpec::dimension)
      .def_readonly("num_candidates", &SpaceSpec::num_candidates)
      .def_readonly("committee_size", &SpaceSpec::committee_size)
      .def_readonly("integer_lattice", &SpaceSpec::integer_lattice)
      .def_property_readonly("label", &SpaceSpec::label)
      .def("__repr__", [](const SpaceSpec& s) { return "<Space " + s.label() + ">"; });

  m.def("distance",
        [](const SpaceSpec& s, const py::sequence& x, const py::sequence& y) {
          return delib::distance(s, to_point(s, x), to_point(s, y));
        },
        py::arg("space"), py::arg("x"), py::arg("y"));

  m.def("winner",
        [](const SpaceSpec& s, const std::string& rule, const py::sequence& points,
           std::optional<std::vector<int>> tiebreak) {
          return from_point(delib::winner(rule_spec(rule, std::move(tiebreak), s), to_profile(s, points)));
        },
        py::arg("space"), py::arg("rule"), py::arg("points"), py::arg("tiebreak") = py::none());

  m.def("move",
        [](const SpaceSpec& s, const py::sequence& v, const py::sequence& w, double eps,
           const std::string& policy, std::optional<std::uint64_t> seed, long iteration, std::size_t agent) {
          PolicySpec p;
          p.kind = parse_policy_kind(policy);
          p.seed = seed;
          if (s.distance == Distance::FirstChanged) p.constraint_mode = ConstraintMode::C1Only;
          p.validate();
          return from_point(next_position(s, p, to_point(s, v), to_point(s, w), eps, iteration, agent));
        },
        "One agent's next position toward w.", py::arg("space"), py::arg("v"), py::arg("w"),
        py::arg("epsilon"), py::arg("policy") = "default", py::arg("seed") = py::none(),
        py::arg("iteration") = 0, py::arg("agent") = 0);

  m.def("check_constraints",
        [](const SpaceSpec& s, const py::sequence& v, const py::sequence& moved, const py::sequence& w,
           double eps, const std::string& mode) -> std::optional<std::string> {
          const auto bad = delib::check_constraints(s, to_point(s, v), to_point(s, moved), to_point(s, w), eps,
                                                    parse_constraint_mode(mode));
          if (!bad) return std::nullopt;
          return bad->message;
        },
        "None when the move is feasible, otherwise the violation message.", py::arg("space"), py::arg("v"),
        py::arg("moved"), py::arg("w"), py::arg("epsilon"), py::arg("mode") = "strict");

  m.def("run",
        [](const SpaceSpec& s, const std::string& rule, const py::sequence& points, double eps,
           std::optional<std::vector<int>> tiebreak, const std::string& policy, std::optional<std::uint64_t> seed,
           std::optional<long> max_iters, std::optional<std::vector<py::sequence>> script) {
          EngineConfig e;
          e.space = s;
          e.rule = rule_spec(rule, std::move(tiebreak), s);
          e.policy.kind = parse_policy_kind(policy);
          e.policy.seed = seed;
          if (s.distance == Distance::FirstChanged) e.policy.constraint_mode = ConstraintMode::C1Only;
          if (script) {
            for (const auto& entry : *script) e.policy.script.push_back(to_profile(s, entry).points);
          }
          e.epsilon = eps;
          e.max_iters = max_iters;
          const Profile v0 = to_profile(s, points);
          RunReport r;
          {
            py::gil_scoped_release release;
            r = delib::run(v0, e);
          }
          py::dict out;
          out["outcome"] = std::string(to_string(r.outcome));
          out["point"] = r.point ? py::object(from_point(*r.point)) : py::object(py::none());
          out["iterations"] = r.iterations;
          out["states"] = r.states;
          out["growth_detected"] = r.growth_detected;
          out["cycle_period"] = r.cycle_period;
          out["cycle_first_index"] = r.cycle_first_index;
          out["final_profile"] = from_points(r.final_profile.points);
          py::list profiles, winners;
          for (const auto& rec : r.trace) {
            profiles.append(from_points(rec.profile));
            winners.append(from_point(rec.winner));
          }
          out["profiles"] = profiles;
          out["winners"] = winners;
          return out;
        },
        py::arg("space"), py::arg("rule"), py::arg("points"), py::arg("epsilon") = 1.0,
        py::arg("tiebreak") = py::none(), py::arg("policy") = "default", py::arg("seed") = py::none(),
        py::arg("max_iters") = py::none(), py::arg("script") = py::none());

  m.def("iteration_bound",
        [](const SpaceSpec& s, const std::string& rule, const py::sequence& points, double eps,
           std::optional<std::vector<int>> tiebreak) {
          const auto b = delib::iteration_bound(s, rule_spec(rule, std::move(tiebreak), s), to_profile(s, points), eps);
          return py::make_tuple(std::string(to_string(b.kind)), b.value, b.basis);
        },
        "(kind, value, basis) with kind EXACT, CAP or NONE.", py::arg("space"), py::arg("rule"),
        py::arg("points"), py::arg("epsilon") = 1.0, py::arg("tiebreak") = py::none());

  m.def("potential_scoring",
        [](const py::sequence& rankings, const std::string& rule, const std::vector<int>& order) {
          const auto s = SpaceSpec::ranking(static_cast<int>(order.size()), Distance::Swap);
          return potential_list(delib::potential_scoring(to_profile(s, rankings), score_kind(rule), order));
        },
        py::arg("rankings"), py::arg("rule"), py::arg("order"));

  m.def("potential_stv",
        [](const py::sequence& rankings, const std::vector<int>& order) {
          const auto s = SpaceSpec::ranking(static_cast<int>(order.size()), Distance::Swap);
          return potential_list(delib::potential_stv(to_profile(s, rankings), order));
        },
        py::arg("rankings"), py::arg("order"));

  m.def("kemeny_bruteforce",
        [](const py::sequence& rankings, int m) {
          const auto s = SpaceSpec::ranking(m, Distance::Swap);
          return from_point(delib::kemeny_bruteforce(to_profile(s, rankings)));
        },
        py::arg("rankings"), py::arg("num_candidates"));

  m.def("reproduce",
        [](const std::string& name) {
          const auto r = delib::reproduce(name);
          return py::make_tuple(r.ok, r.table, r.mismatches);
        },
        "(ok, step table, mismatches) for a built-in worked example.", py::arg("name"));
  m.attr("EXAMPLES") = reproduce_names();

  m.def("verify",
        [](std::vector<std::string> checks, int seeds) {
          VerifyOptions o{std::move(checks), seeds, false};
          std::vector<VerifyRow> rows;
          {
            py::gil_scoped_release release;
            rows = delib::verify(o);
          }
          py::list out;
          for (const auto& r : rows) {
            py::dict d;
            d["check"] = r.check;
            d["configuration"] = r.configuration;
            d["seed"] = r.seed;
            d["pass"] = r.pass;
            d["observed"] = r.observed;
            d["predicted"] = r.predicted;
            out.append(d);
          }
          return out;
        },
        py::arg("checks") = std::vector<std::string>{}, py::arg("seeds") = 20);
}
