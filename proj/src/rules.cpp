#include "delib/rules.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "delib/errors.hpp"

namespace delib {

void Profile::validate() const {
  space.validate();
  if (points.empty()) throw ConfigError("profile is empty");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (auto why = validate_point(space, points[i]))
      throw InvalidPoint("agent " + std::to_string(i) + " " + to_string(points[i]) + ": " + *why);
  }
}

std::string_view to_string(Rule r) {
  switch (r) {
    case Rule::Mean: return "mean";
    case Rule::FloorMean: return "floor-mean";
    case Rule::Median: return "median";
    case Rule::MajorityVnw: return "majority-vnw";
    case Rule::TopkMajorityMw: return "topk-majority-mw";
    case Rule::Kemeny: return "kemeny";
    case Rule::Plurality: return "plurality";
    case Rule::Borda: return "borda";
    case Rule::Copeland: return "copeland";
    case Rule::Stv: return "stv";
  }
  return "?";
}

Rule parse_rule(std::string_view name) {
  for (Rule r : {Rule::Mean, Rule::FloorMean, Rule::Median, Rule::MajorityVnw,
                 Rule::TopkMajorityMw, Rule::Kemeny, Rule::Plurality, Rule::Borda,
                 Rule::Copeland, Rule::Stv}) {
    if (name == to_string(r)) return r;
  }
  if (name == "majority") return Rule::MajorityVnw;
  if (name == "topk-majority" || name == "topk") return Rule::TopkMajorityMw;
  throw ConfigError("unknown rule '" + std::string(name) + "'");
}

std::vector<int> order_positions(std::span<const int> order) {
  std::vector<int> pos(order.size(), -1);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const int c = order[i];
    if (c < 0 || static_cast<std::size_t>(c) >= order.size() || pos[c] != -1)
      throw ConfigError("tie-break order is not a permutation of the candidates");
    pos[c] = static_cast<int>(i);
  }
  return pos;
}

void RuleSpec::validate(const SpaceSpec& space) const {
  const auto fail = [&](const std::string& why) {
    throw ConfigError("rule " + std::string(to_string(rule)) + " on " + space.label() + ": " + why);
  };
  switch (rule) {
    case Rule::Mean:
    case Rule::FloorMean:
    case Rule::Median:
      if (space.family != Family::Euclidean) fail("requires a euclidean space");
      if (rule == Rule::Mean && space.integer_lattice)
        fail("the mean leaves the integer lattice; use floor-mean");
      break;
    case Rule::MajorityVnw:
      if (space.family != Family::Binary || space.committee())
        fail("requires a binary space without committee size");
      break;
    case Rule::TopkMajorityMw:
      if (space.family != Family::Binary || !space.committee())
        fail("requires a binary space with committee size");
      break;
    case Rule::Kemeny:
    case Rule::Plurality:
    case Rule::Borda:
    case Rule::Copeland:
    case Rule::Stv:
      if (space.family != Family::Ranking) fail("requires a ranking space");
      break;
  }
  const bool needs_order = rule == Rule::TopkMajorityMw || rule == Rule::Plurality ||
                           rule == Rule::Borda || rule == Rule::Copeland || rule == Rule::Stv;
  if (needs_order && !tiebreak) fail("requires a tie-break order");
  if (tiebreak) {
    if (tiebreak->size() != static_cast<std::size_t>(space.num_candidates))
      fail("tie-break order must list all " + std::to_string(space.num_candidates) +
           " candidates");
    order_positions(*tiebreak);
  }
}

namespace {

void require_family(const Profile& profile, Family family, const char* rule) {
  if (profile.points.empty()) throw ConfigError(std::string(rule) + ": empty profile");
  if (profile.space.family != family)
    throw ConfigError(std::string(rule) + " is undefined on " + profile.space.label());
}

void require_order(const Profile& profile, std::span<const int> order) {
  if (order.size() != static_cast<std::size_t>(profile.space.num_candidates))
    throw ConfigError("tie-break order must list all candidates");
}

// Candidate -> 0-based position in each ballot.
std::vector<std::vector<int>> ballot_positions(const Profile& profile) {
  const auto m = static_cast<std::size_t>(profile.space.num_candidates);
  std::vector<std::vector<int>> pos(profile.size(), std::vector<int>(m));
  for (std::size_t v = 0; v < profile.size(); ++v) {
    const auto ballot = profile.points[v].entries();
    for (std::size_t i = 0; i < m; ++i) pos[v][ballot[i]] = static_cast<int>(i);
  }
  return pos;
}

}  // namespace

Point mean_elementwise(const Profile& profile, bool floor_result) {
  require_family(profile, Family::Euclidean, "mean");
  const auto dims = static_cast<std::size_t>(profile.space.dimension);
  std::vector<double> sum(dims, 0.0);
  for (const auto& p : profile.points) {
    const auto c = p.coords();
    for (std::size_t t = 0; t < dims; ++t) sum[t] += c[t];
  }
  const auto n = static_cast<double>(profile.size());
  for (double& s : sum) s = floor_result ? std::floor(s / n) : s / n;
  return Point::real(std::move(sum));
}

Point median_elementwise(const Profile& profile) {
  require_family(profile, Family::Euclidean, "median");
  const auto dims = static_cast<std::size_t>(profile.space.dimension);
  const std::size_t n = profile.size();
  std::vector<double> out(dims);
  std::vector<double> column(n);
  for (std::size_t t = 0; t < dims; ++t) {
    for (std::size_t i = 0; i < n; ++i) column[i] = profile.points[i].coords()[t];
    // Index n/2 is the middle element for odd n and the larger middle for even n.
    auto mid = column.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(column.begin(), mid, column.end());
    out[t] = *mid;
  }
  return Point::real(std::move(out));
}

Point majority_vnw(const Profile& profile) {
  require_family(profile, Family::Binary, "majority-vnw");
  const auto m = static_cast<std::size_t>(profile.space.num_candidates);
  std::vector<int> ones(m, 0);
  for (const auto& p : profile.points) {
    const auto b = p.entries();
    for (std::size_t c = 0; c < m; ++c) ones[c] += b[c];
  }
  const auto n = static_cast<int>(profile.size());
  std::vector<int> out(m);
  for (std::size_t c = 0; c < m; ++c) out[c] = 2 * ones[c] >= n ? 1 : 0;
  return Point::bits(std::move(out));
}

Point topk_majority_mw(const Profile& profile, std::span<const int> order) {
  require_family(profile, Family::Binary, "topk-majority-mw");
  require_order(profile, order);
  if (!profile.space.committee_size)
    throw ConfigError("topk-majority-mw requires a committee size");
  const auto m = static_cast<std::size_t>(profile.space.num_candidates);
  const auto pos = order_positions(order);
  std::vector<int> approvals(m, 0);
  for (const auto& p : profile.points) {
    const auto b = p.entries();
    for (std::size_t c = 0; c < m; ++c) approvals[c] += b[c];
  }
  std::vector<int> cands(m);
  std::iota(cands.begin(), cands.end(), 0);
  std::sort(cands.begin(), cands.end(), [&](int a, int b) {
    if (approvals[a] != approvals[b]) return approvals[a] > approvals[b];
    return pos[a] < pos[b];
  });
  std::vector<int> out(m, 0);
  for (int i = 0; i < *profile.space.committee_size; ++i) out[cands[i]] = 1;
  return Point::bits(std::move(out));
}

Point kemeny(const Profile& profile, std::optional<std::span<const int>> order) {
  require_family(profile, Family::Ranking, "kemeny");
  const int m = profile.space.num_candidates;
  if (m > kKemenyMaxCandidates) {
    throw UnsupportedSize("kemeny: exhaustive search supports at most " +
                          std::to_string(kKemenyMaxCandidates) + " candidates, got " +
                          std::to_string(m));
  }
  std::vector<int> base(m);
  if (order) {
    require_order(profile, *order);
    order_positions(*order);
    base.assign(order->begin(), order->end());
  } else {
    std::iota(base.begin(), base.end(), 0);
  }
  // Permuting O-positions in lexicographic order visits rankings in tie-break order,
  // so the first strict minimum is the tie-break winner.
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best;
  long best_total = std::numeric_limits<long>::max();
  std::vector<int> candidate(m);
  do {
    for (int i = 0; i < m; ++i) candidate[i] = base[perm[i]];
    const Point x = Point::ranking(candidate);
    long total = 0;
    for (const auto& v : profile.points) {
      total += dist_swap(profile.space, v, x);
      if (total >= best_total) break;
    }
    if (total < best_total) {
      best_total = total;
      best = candidate;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return Point::ranking(std::move(best));
}

std::vector<double> candidate_scores(const Profile& profile, ScoreKind kind) {
  require_family(profile, Family::Ranking, "candidate scores");
  const auto m = static_cast<std::size_t>(profile.space.num_candidates);
  std::vector<double> score(m, 0.0);
  switch (kind) {
    case ScoreKind::Plurality:
      for (const auto& v : profile.points) score[v.entries()[0]] += 1.0;
      break;
    case ScoreKind::Borda:
      for (const auto& v : profile.points) {
        const auto ballot = v.entries();
        // 1-based position p is worth m - p.
        for (std::size_t i = 0; i < m; ++i) score[ballot[i]] += static_cast<double>(m - 1 - i);
      }
      break;
    case ScoreKind::Copeland: {
      const auto pos = ballot_positions(profile);
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          if (a == b) continue;
          int prefer_a = 0;
          for (const auto& p : pos) prefer_a += p[a] < p[b];
          const int prefer_b = static_cast<int>(profile.size()) - prefer_a;
          if (prefer_a > prefer_b) score[a] += 1.0;
        }
      }
      break;
    }
  }
  return score;
}

Point scoring_winner(const Profile& profile, ScoreKind kind, std::span<const int> order) {
  require_order(profile, order);
  const auto scores = candidate_scores(profile, kind);
  const auto pos = order_positions(order);
  std::vector<int> out(scores.size());
  std::iota(out.begin(), out.end(), 0);
  std::sort(out.begin(), out.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return pos[a] < pos[b];
  });
  return Point::ranking(std::move(out));
}

StvOutcome stv(const Profile& profile, std::span<const int> order) {
  require_family(profile, Family::Ranking, "stv");
  require_order(profile, order);
  const auto m = static_cast<std::size_t>(profile.space.num_candidates);
  const auto pos = order_positions(order);
  std::vector<char> removed(m, 0);
  std::vector<int> w(m, -1);
  StvOutcome out;
  out.score_at_elimination.assign(m, 0);
  for (std::size_t round = 0; round < m; ++round) {
    std::vector<int> firsts(m, 0);
    for (const auto& v : profile.points) {
      for (int c : v.entries()) {
        if (!removed[c]) {
          ++firsts[c];
          break;
        }
      }
    }
    int loser = -1;
    for (std::size_t c = 0; c < m; ++c) {
      if (removed[c]) continue;
      const int ci = static_cast<int>(c);
      if (loser < 0 || firsts[c] < firsts[loser] ||
          (firsts[c] == firsts[loser] && pos[c] > pos[loser])) {
        loser = ci;
      }
    }
    removed[loser] = 1;
    w[m - 1 - round] = loser;
    out.eliminated.push_back(loser);
    out.score_at_elimination[loser] = firsts[loser];
  }
  out.winner = Point::ranking(std::move(w));
  return out;
}

Point stv_winner(const Profile& profile, std::span<const int> order) {
  return stv(profile, order).winner;
}

Point winner(const RuleSpec& spec, const Profile& profile) {
  const auto order = [&]() -> std::span<const int> {
    if (!spec.tiebreak) throw ConfigError(std::string(to_string(spec.rule)) + " requires a tie-break order");
    return *spec.tiebreak;
  };
  switch (spec.rule) {
    case Rule::Mean: return mean_elementwise(profile, false);
    case Rule::FloorMean: return mean_elementwise(profile, true);
    case Rule::Median: return median_elementwise(profile);
    case Rule::MajorityVnw: return majority_vnw(profile);
    case Rule::TopkMajorityMw: return topk_majority_mw(profile, order());
    case Rule::Kemeny:
      if (spec.tiebreak) return kemeny(profile, std::span<const int>(*spec.tiebreak));
      return kemeny(profile);
    case Rule::Plurality: return scoring_winner(profile, ScoreKind::Plurality, order());
    case Rule::Borda: return scoring_winner(profile, ScoreKind::Borda, order());
    case Rule::Copeland: return scoring_winner(profile, ScoreKind::Copeland, order());
    case Rule::Stv: return stv_winner(profile, order());
  }
  throw ConfigError("unknown rule");
}

}  // namespace delib
