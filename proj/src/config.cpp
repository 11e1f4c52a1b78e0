#include <algorithm>
#include <numeric>
#include <sstream>

#include "delib/cli.hpp"
#include "delib/errors.hpp"
#include "delib/profiles.hpp"

namespace delib {

using nlohmann::json;

namespace {

Distance default_distance(Family f) {
  switch (f) {
    case Family::Euclidean: return Distance::L2;
    case Family::Binary: return Distance::Hamming;
    case Family::Ranking: return Distance::Swap;
  }
  return Distance::L2;
}

Rule default_rule(const SpaceSpec& s) {
  switch (s.family) {
    case Family::Euclidean: return Rule::Median;
    case Family::Binary: return s.committee() ? Rule::TopkMajorityMw : Rule::MajorityVnw;
    case Family::Ranking: return Rule::Kemeny;
  }
  return Rule::Median;
}

bool rule_needs_order(Rule r) {
  return r == Rule::TopkMajorityMw || r == Rule::Plurality || r == Rule::Borda ||
         r == Rule::Copeland || r == Rule::Stv;
}

std::filesystem::path resolve_path(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base.empty()) return base / path;
  return path;
}

SpaceSpec resolve_space(const json& c, const CliConfig& o) {
  const json* sj = c.contains("space") ? &c.at("space") : nullptr;
  SpaceSpec s;
  if (o.space) {
    s.family = parse_family(*o.space);
  } else if (sj && sj->contains("family")) {
    s.family = parse_family(sj->at("family").get<std::string>());
  } else {
    throw ConfigError("no space given: use --space or a config file with a 'space' object");
  }
  if (o.distance) {
    s.distance = parse_distance(*o.distance);
  } else if (sj && sj->contains("distance")) {
    s.distance = parse_distance(sj->at("distance").get<std::string>());
  } else {
    s.distance = default_distance(s.family);
  }
  if (s.family == Family::Euclidean) {
    s.dimension = o.dim.value_or(sj ? sj->value("dimension", 2) : 2);
    s.integer_lattice = sj ? sj->value("integer_lattice", false) : false;
  } else {
    int m = 4;
    if (sj && sj->contains("num_candidates")) m = sj->at("num_candidates").get<int>();
    else if (sj && sj->contains("candidates")) m = static_cast<int>(sj->at("candidates").size());
    s.num_candidates = o.m.value_or(m);
    if (o.k) {
      s.committee_size = *o.k;
    } else if (sj && sj->contains("committee_size") && !sj->at("committee_size").is_null()) {
      s.committee_size = sj->at("committee_size").get<int>();
    }
  }
  s.validate();
  return s;
}

}  // namespace

RunSetup resolve_run(const json& config, const CliConfig& o, const std::filesystem::path& base_dir) {
  const json c = config.is_object() ? config : json::object();
  RunSetup setup;
  EngineConfig& e = setup.engine;

  try {
    // Initial profile and its space.
    std::optional<Profile> loaded;
    if (o.profile) {
      loaded = load_profile(*o.profile);
    } else if (c.contains("profile") && c.at("profile").is_string()) {
      loaded = load_profile(resolve_path(base_dir, c.at("profile").get<std::string>()));
    }
    if (loaded) {
      e.space = loaded->space;
      if (o.distance) e.space.distance = parse_distance(*o.distance);
      e.space.validate();
      loaded->space = e.space;
    } else {
      e.space = resolve_space(c, o);
    }

    const json gen = c.value("generator", json::object());
    setup.seed = o.seed.value_or(gen.value("seed", std::uint64_t{0}));
    if (loaded) {
      setup.initial = std::move(*loaded);
    } else if (c.contains("profile")) {
      const json& pj = c.at("profile");
      const json& pts = pj.is_object() ? pj.at("points") : pj;
      const auto names = c.contains("space") ? candidate_names(c.at("space")) : std::vector<std::string>{};
      if (!pts.is_array() || pts.empty()) throw ParseError("inline profile needs a non-empty points array");
      setup.initial.space = e.space;
      for (const auto& x : pts) setup.initial.points.push_back(point_from_json(e.space, x, names));
    } else {
      GeneratorSpec g;
      g.space = e.space;
      g.n = o.n.value_or(gen.value("n", 5));
      g.seed = setup.seed;
      if (gen.contains("box")) {
        for (const auto& b : gen.at("box")) g.box.emplace_back(b.at(0).get<double>(), b.at(1).get<double>());
      }
      setup.initial = generate(g);
    }

    // Rule.
    const json rj = c.value("rule", json());
    if (o.rule) {
      e.rule.rule = parse_rule(*o.rule);
    } else if (rj.is_string()) {
      e.rule.rule = parse_rule(rj.get<std::string>());
    } else if (rj.is_object() && rj.contains("rule")) {
      e.rule.rule = parse_rule(rj.at("rule").get<std::string>());
    } else {
      e.rule.rule = default_rule(e.space);
    }
    if (rj.is_object() && rj.contains("tiebreak")) {
      e.rule.tiebreak = rj.at("tiebreak").get<std::vector<int>>();
    } else if (c.contains("tiebreak")) {
      e.rule.tiebreak = c.at("tiebreak").get<std::vector<int>>();
    } else if (rule_needs_order(e.rule.rule)) {
      std::vector<int> identity(static_cast<std::size_t>(e.space.num_candidates));
      std::iota(identity.begin(), identity.end(), 0);
      e.rule.tiebreak = std::move(identity);
    }

    // Policy.
    const json pj = c.value("policy", json());
    const json pobj = pj.is_object() ? pj : json::object();
    if (o.policy) {
      e.policy.kind = parse_policy_kind(*o.policy);
    } else if (pj.is_string()) {
      e.policy.kind = parse_policy_kind(pj.get<std::string>());
    } else if (pobj.contains("kind")) {
      e.policy.kind = parse_policy_kind(pobj.at("kind").get<std::string>());
    }
    if (pobj.contains("seed")) e.policy.seed = pobj.at("seed").get<std::uint64_t>();
    if (o.seed || !e.policy.seed) e.policy.seed = setup.seed;
    if (pobj.contains("l1_mode")) e.policy.l1_mode = parse_l1_mode(pobj.at("l1_mode").get<std::string>());
    if (pobj.contains("constraint_mode")) {
      e.policy.constraint_mode = parse_constraint_mode(pobj.at("constraint_mode").get<std::string>());
    } else if (e.space.distance == Distance::FirstChanged) {
      e.policy.constraint_mode = ConstraintMode::C1Only;
    }
    if (pobj.contains("script")) {
      const json& sj = pobj.at("script");
      e.policy.script = sj.is_string()
                            ? load_script(e.space, resolve_path(base_dir, sj.get<std::string>()))
                            : script_from_json(e.space, sj);
    }

    e.epsilon = o.epsilon.value_or(c.value("epsilon", 1.0));
    if (o.max_iters) {
      e.max_iters = *o.max_iters;
    } else if (c.contains("max_iters")) {
      e.max_iters = c.at("max_iters").get<long>();
    }
    e.cycle_detection = c.value("cycle_detection", true);
    e.growth_window = c.value("growth_window", 50);
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("configuration: ") + ex.what());
  }

  e.validate();
  setup.initial.validate();
  return setup;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item.empty()) continue;
    try {
      const auto dots = item.find("..");
      if (dots == std::string::npos) {
        out.push_back(std::stoull(item));
        continue;
      }
      const auto lo = std::stoull(item.substr(0, dots));
      const auto hi = std::stoull(item.substr(dots + 2));
      if (hi < lo) throw ConfigError("seed range " + item + " is empty");
      for (auto s = lo; s <= hi; ++s) out.push_back(s);
    } catch (const std::logic_error&) {
      throw ConfigError("bad seed list entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace delib
