#include "delib/engine.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <stdexcept>

#include "delib/errors.hpp"

namespace delib {

void EngineConfig::validate() const {
  space.validate();
  rule.validate(space);
  policy.validate();
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    throw ConfigError("epsilon must be positive, got " + std::to_string(epsilon));
  if (space.discrete() && std::abs(epsilon - std::round(epsilon)) > kTolerance)
    throw ConfigError("discrete spaces need an integer epsilon, got " + std::to_string(epsilon));
  if (space.family == Family::Euclidean && space.integer_lattice &&
      std::abs(epsilon - std::round(epsilon)) > kTolerance)
    throw ConfigError("the integer lattice needs an integer epsilon");
  if (space.distance == Distance::FirstChanged && policy.constraint_mode != ConstraintMode::C1Only)
    throw ConfigError("first-changed moves only satisfy constraint 1; use c1-only mode");
  if (max_iters && *max_iters < 1) throw ConfigError("max_iters must be at least 1");
  if (growth_window < 1) throw ConfigError("growth_window must be at least 1");
}

bool IterationRecord::any_moved() const {
  for (char m : moved) {
    if (m) return true;
  }
  return false;
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Converged: return "CONVERGED";
    case Outcome::Cycle: return "CYCLE";
    case Outcome::CapReached: return "CAP_REACHED";
  }
  return "?";
}

bool is_consensus(const Profile& profile) {
  for (std::size_t i = 1; i < profile.size(); ++i) {
    if (!same_point(profile.space, profile.points[0], profile.points[i])) return false;
  }
  return true;
}

long default_max_iters(const Profile& initial, const EngineConfig& config) {
  const Point w = winner(config.rule, initial);
  double reach = 0.0;
  for (const auto& v : initial.points) reach = std::max(reach, distance(config.space, v, w));
  if (!std::isfinite(reach)) return 10000;
  const double phases = std::ceil(reach / config.epsilon - kTolerance);
  return std::max(1L, 10 * static_cast<long>(phases));
}

std::pair<Profile, IterationRecord> step(const Profile& profile, const EngineConfig& config,
                                         long iteration) {
  const SpaceSpec& space = config.space;
  IterationRecord rec;
  rec.index = iteration;
  rec.profile = profile.points;
  rec.winner = winner(config.rule, profile);
  require_valid(space, rec.winner);

  const std::vector<Point>* scripted = nullptr;
  if (config.policy.kind == PolicyKind::Scripted) {
    const auto& script = config.policy.script;
    if (iteration < 0 || static_cast<std::size_t>(iteration) >= script.size())
      throw ConfigError("script has no entry for iteration " + std::to_string(iteration));
    scripted = &script[static_cast<std::size_t>(iteration)];
    if (scripted->size() != profile.size())
      throw ConfigError("script entry " + std::to_string(iteration) + " has " +
                        std::to_string(scripted->size()) + " agents, profile has " +
                        std::to_string(profile.size()));
  }

  Profile next{space, {}};
  next.points.reserve(profile.size());
  const std::size_t n = profile.size();
  rec.distances.resize(n);
  rec.moved.resize(n);
  rec.violations.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Point& v = profile.points[i];
    rec.distances[i] = distance(space, v, rec.winner);
    Point moved = scripted ? (*scripted)[i]
                           : next_position(space, config.policy, v, rec.winner, config.epsilon,
                                           iteration, i);
    if (auto why = validate_point(space, moved)) {
      if (scripted) throw ConstraintViolation(iteration, i, "scripted point " + to_string(moved) + ": " + *why);
      throw InfeasibleStep("iteration " + std::to_string(iteration) + ", agent " +
                           std::to_string(i) + ": move leaves the space (" + *why + ")");
    }
    if (auto bad = check_constraints(space, v, moved, rec.winner, config.epsilon,
                                     config.policy.constraint_mode)) {
      throw ConstraintViolation(iteration, i, bad->message);
    }
    rec.moved[i] = same_point(space, v, moved) ? 0 : 1;
    next.points.push_back(std::move(moved));
  }
  return {std::move(next), std::move(rec)};
}

namespace {

std::vector<int> state_key(const Profile& profile) {
  std::vector<int> key;
  key.reserve(profile.size() * profile.space.point_size());
  for (const auto& p : profile.points) {
    const auto e = p.entries();
    key.insert(key.end(), e.begin(), e.end());
  }
  return key;
}

bool monotone_growth(const SpaceSpec& space, const std::vector<Point>& winners, int window) {
  if (winners.size() < static_cast<std::size_t>(window) + 1) return false;
  const Point& origin = winners.front();
  const std::size_t start = winners.size() - static_cast<std::size_t>(window) - 1;
  double prev = distance(space, winners[start], origin);
  for (std::size_t j = start + 1; j < winners.size(); ++j) {
    const double cur = distance(space, winners[j], origin);
    if (!(cur > prev + kTolerance)) return false;
    prev = cur;
  }
  return true;
}

}  // namespace

RunReport run(const Profile& initial, const EngineConfig& config) {
  const auto started = std::chrono::steady_clock::now();
  config.validate();
  initial.validate();
  if (!(initial.space == config.space))
    throw ConfigError("profile space " + initial.space.label() + " differs from configured " +
                      config.space.label());
  const long cap = config.max_iters.value_or(default_max_iters(initial, config));
  const bool detect_cycles = config.cycle_detection && config.space.discrete();

  RunReport report;
  std::map<std::vector<int>, long> seen;
  if (detect_cycles) seen.emplace(state_key(initial), 0);
  std::vector<Point> winners;

  Profile current = initial;
  for (long j = 0;; ++j) {
    // A consensus profile is a fixpoint, so only a non-consensus state can exhaust the cap.
    if (j == cap && !is_consensus(current)) {
      report.outcome = Outcome::CapReached;
      report.iterations = j;
      report.states = j + 1;
      report.growth_detected = monotone_growth(config.space, winners, config.growth_window);
      break;
    }
    auto [next, rec] = step(current, config, j);
    const bool moved = rec.any_moved();
    if (!moved) {
      if (!is_consensus(current))
        throw std::logic_error("fixpoint reached without consensus at iteration " + std::to_string(j));
      report.outcome = Outcome::Converged;
      report.point = rec.winner;
      report.iterations = j;
      report.states = j + 1;
      if (config.keep_trace) report.trace.push_back(std::move(rec));
      break;
    }
    winners.push_back(rec.winner);
    if (config.keep_trace) report.trace.push_back(std::move(rec));
    current = std::move(next);
    if (detect_cycles) {
      auto [it, fresh] = seen.emplace(state_key(current), j + 1);
      if (!fresh) {
        report.outcome = Outcome::Cycle;
        report.cycle_first_index = it->second;
        report.cycle_period = j + 1 - it->second;
        report.iterations = j + 1;
        report.states = j + 2;
        break;
      }
    }
  }
  report.final_profile = std::move(current);
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

}  // namespace delib
