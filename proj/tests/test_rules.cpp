#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "delib/errors.hpp"
#include "delib/profiles.hpp"
#include "delib/rules.hpp"
#include "support.hpp"

using namespace delib;
using namespace delib::test;

namespace {

const std::vector<int> kABC = {0, 1, 2};

Profile reals(int T, std::vector<std::vector<double>> pts, bool lattice = false) {
  Profile p{SpaceSpec::euclidean(T, Distance::L2, lattice), {}};
  for (auto& x : pts) p.points.push_back(P(std::move(x)));
  return p;
}

Profile ballots(std::vector<std::string> bs, std::optional<int> k = std::nullopt) {
  Profile p{SpaceSpec::binary(static_cast<int>(bs.front().size()), Distance::Hamming, k), {}};
  for (const auto& b : bs) p.points.push_back(bits(b));
  return p;
}

// The three-voter profile used in the potential-function discussion.
Profile abc_abc_cab() { return rankings(3, {"abc", "abc", "cab"}); }

}  // namespace

TEST(Mean, FloorOnLattice) {
  EXPECT_EQ(mean_elementwise(reals(1, {{3}, {5}, {8}}, true), true), P({5}));
}

TEST(Mean, DivergenceStart) {
  EXPECT_EQ(mean_elementwise(reals(3, {{-4, 2, 2}, {2, -4, 2}, {2, 2, -4}})), P({0, 0, 0}));
}

TEST(Mean, Unanimous) {
  EXPECT_EQ(mean_elementwise(reals(2, {{1.5, -2}, {1.5, -2}})), P({1.5, -2}));
}

TEST(Median, EvenTakesLargerMiddle) {
  EXPECT_EQ(median_elementwise(reals(1, {{0}, {-2}, {0}, {0}})), P({0}));
  for (double j : {0.0, 3.0, 17.0})
    EXPECT_EQ(median_elementwise(reals(1, {{-1 + j}, {j}, {1 + j}, {1 + j}})), P({1 + j}));
  EXPECT_EQ(median_elementwise(reals(1, {{1}, {2}})), P({2}));
}

TEST(Median, Odd) { EXPECT_EQ(median_elementwise(reals(1, {{8}, {3}, {5}})), P({5})); }

TEST(MajorityVnw, Basic) {
  EXPECT_EQ(majority_vnw(ballots({"110", "100", "101"})), bits("100"));
  EXPECT_EQ(majority_vnw(ballots({"0110", "0110"})), bits("0110"));
  EXPECT_EQ(majority_vnw(ballots({"10", "01"})), bits("11"));
}

TEST(TopkMw, TieBreakByOrder) {
  EXPECT_EQ(topk_majority_mw(ballots({"110", "101", "100"}, 2), kABC), bits("110"));
  // Counts 2,2,1,0 with O = (3,2,1,0): candidate 1 is earliest in O among the tied pair.
  const std::vector<int> O = {3, 2, 1, 0};
  EXPECT_EQ(topk_majority_mw(ballots({"1000", "0100", "1000", "0100", "0010"}, 1), O), bits("0100"));
  EXPECT_EQ(topk_majority_mw(ballots({"011", "011"}, 2), kABC), bits("011"));
}

TEST(Kemeny, Examples) {
  EXPECT_EQ(kemeny(abc_abc_cab()), rank("abc"));
  EXPECT_EQ(kemeny(rankings(4, {"dcab", "dcab"})), rank("dcab"));
  EXPECT_EQ(kemeny(rankings(3, {"bca"})), rank("bca"));
  // Two opposite voters tie; index order prefers (a,b), O = (b,a) prefers (b,a).
  EXPECT_EQ(kemeny(rankings(2, {"ab", "ba"})), rank("ab"));
  const std::vector<int> ba = {1, 0};
  EXPECT_EQ(kemeny(rankings(2, {"ab", "ba"}), ba), rank("ba"));
}

TEST(Kemeny, RefusesLargeM) {
  Profile p{SpaceSpec::ranking(9, Distance::Swap), {Point::ranking({0, 1, 2, 3, 4, 5, 6, 7, 8})}};
  EXPECT_THROW(kemeny(p), UnsupportedSize);
}

TEST(Scores, WorkedProfile) {
  const auto V = abc_abc_cab();
  EXPECT_EQ(candidate_scores(V, ScoreKind::Plurality), (std::vector<double>{2, 0, 1}));
  EXPECT_EQ(candidate_scores(V, ScoreKind::Borda), (std::vector<double>{5, 2, 2}));
  EXPECT_EQ(candidate_scores(V, ScoreKind::Copeland), (std::vector<double>{2, 1, 0}));
}

TEST(Scores, CopelandTieScoresZero) {
  EXPECT_EQ(candidate_scores(rankings(2, {"ab", "ba"}), ScoreKind::Copeland), (std::vector<double>{0, 0}));
}

TEST(ScoringWinner, WorkedProfile) {
  const auto V = abc_abc_cab();
  EXPECT_EQ(scoring_winner(V, ScoreKind::Plurality, kABC), rank("acb"));
  EXPECT_EQ(scoring_winner(V, ScoreKind::Borda, kABC), rank("abc"));
}

TEST(ScoringWinner, ConsensusTop) {
  const auto V = rankings(4, {"cadb", "cadb", "cadb"});
  EXPECT_EQ(scoring_winner(V, ScoreKind::Borda, std::vector<int>{0, 1, 2, 3}), rank("cadb"));
  EXPECT_EQ(scoring_winner(V, ScoreKind::Plurality, std::vector<int>{0, 1, 2, 3}).entries()[0], 2);
}

TEST(Stv, WorkedProfile) {
  const auto s = stv(abc_abc_cab(), kABC);
  EXPECT_EQ(s.winner, rank("acb"));
  EXPECT_EQ(s.eliminated, (std::vector<int>{1, 2, 0}));
  EXPECT_EQ(s.score_at_elimination, (std::vector<int>{3, 0, 1}));
}

TEST(Stv, SingleBallotAndConsensus) {
  // The ranking is built from eliminations, so only the top follows the ballots; the
  // zero-score tail leaves in reverse O order.
  EXPECT_EQ(stv_winner(rankings(4, {"dbca"}), std::vector<int>{0, 1, 2, 3}), rank("dabc"));
  EXPECT_EQ(stv_winner(rankings(3, {"cab", "cab"}), kABC), rank("cab"));
  EXPECT_EQ(stv_winner(rankings(3, {"acb", "acb"}), kABC), rank("abc"));
}

TEST(Stv, LoserTieEliminatesLaterInOrder) {
  // b and c both have zero first places; c is later in O and goes first.
  const auto s = stv(rankings(3, {"abc"}), kABC);
  EXPECT_EQ(s.eliminated.front(), 2);
}

TEST(RuleSpec, Validation) {
  const auto R = SpaceSpec::ranking(3, Distance::Swap);
  EXPECT_THROW((RuleSpec{Rule::Mean, {}}).validate(R), ConfigError);
  EXPECT_THROW((RuleSpec{Rule::Plurality, {}}).validate(R), ConfigError);
  EXPECT_THROW((RuleSpec{Rule::Borda, std::vector<int>{0, 0, 1}}).validate(R), ConfigError);
  EXPECT_NO_THROW((RuleSpec{Rule::Kemeny, {}}).validate(R));
  EXPECT_THROW((RuleSpec{Rule::Mean, {}}).validate(SpaceSpec::euclidean(1, Distance::L1, true)), ConfigError);
  EXPECT_NO_THROW((RuleSpec{Rule::FloorMean, {}}).validate(SpaceSpec::euclidean(1, Distance::L1, true)));
  EXPECT_THROW((RuleSpec{Rule::TopkMajorityMw, kABC}).validate(SpaceSpec::binary(3, Distance::Hamming)),
               ConfigError);
}

TEST(RuleNames, RoundTrip) {
  for (auto r : {Rule::Mean, Rule::FloorMean, Rule::Median, Rule::MajorityVnw, Rule::TopkMajorityMw,
                 Rule::Kemeny, Rule::Plurality, Rule::Borda, Rule::Copeland, Rule::Stv})
    EXPECT_EQ(parse_rule(to_string(r)), r);
  EXPECT_EQ(parse_rule("majority"), Rule::MajorityVnw);
  EXPECT_THROW(parse_rule("approval"), ConfigError);
}

// Properties over seeded random profiles.

TEST(RuleProperties, Unanimity) {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    const int m = 3 + t % 3;
    std::vector<int> O(static_cast<std::size_t>(m));
    std::iota(O.begin(), O.end(), 0);
    const Profile one = generate({SpaceSpec::ranking(m, Distance::Swap), 1, rng(), {}});
    const Profile V{one.space, std::vector<Point>(4, one.points[0])};
    const Point x = one.points[0];
    EXPECT_EQ(kemeny(V), x);
    EXPECT_EQ(scoring_winner(V, ScoreKind::Borda, O), x);
    EXPECT_EQ(scoring_winner(V, ScoreKind::Copeland, O), x);
    EXPECT_EQ(stv_winner(V, O).entries()[0], x.entries()[0]);

    const Profile b = generate({SpaceSpec::binary(m, Distance::Hamming, 2), 1, rng(), {}});
    EXPECT_EQ(topk_majority_mw({b.space, std::vector<Point>(3, b.points[0])}, O), b.points[0]);
    const Profile e = generate({SpaceSpec::euclidean(2, Distance::L2), 1, rng(), {}});
    EXPECT_EQ(median_elementwise({e.space, std::vector<Point>(3, e.points[0])}), e.points[0]);
  }
}

TEST(RuleProperties, BinaryMonotonicity) {
  // Flipping a 1 outside w to 0, or a 0 inside w to 1, never changes w.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 500; ++t) {
    const int m = 3 + t % 5;
    std::vector<int> O(static_cast<std::size_t>(m));
    std::iota(O.begin(), O.end(), 0);
    const bool mw = t % 2;
    const std::optional<int> k = mw ? std::optional<int>(1 + t % (m - 1)) : std::nullopt;
    Profile V = generate({SpaceSpec::binary(m, Distance::Hamming, k), 1 + t % 7, rng(), {}});
    const Point w = mw ? topk_majority_mw(V, O) : majority_vnw(V);
    const std::size_t who = rng() % V.size();
    auto agent = V.points[who].entries();
    std::vector<int> e(agent.begin(), agent.end());
    const auto wb = w.entries();
    std::vector<std::size_t> up, down;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0 && wb[i] == 1) up.push_back(i);
      if (e[i] == 1 && wb[i] == 0) down.push_back(i);
    }
    if (mw) {
      if (up.empty() || down.empty()) continue;
      e[up[rng() % up.size()]] = 1;
      e[down[rng() % down.size()]] = 0;
    } else {
      auto& pool = (rng() % 2 && !up.empty()) || down.empty() ? up : down;
      if (pool.empty()) continue;
      const auto i = pool[rng() % pool.size()];
      e[i] = 1 - e[i];
    }
    V.points[who] = Point::bits(e);
    EXPECT_EQ(mw ? topk_majority_mw(V, O) : majority_vnw(V), w);
  }
}

TEST(RuleProperties, MonotonicScoring) {
  // Raising candidate c by one adjacent swap in one ballot never lowers its score.
  std::mt19937_64 rng(13);
  for (int t = 0; t < 500; ++t) {
    const int m = 3 + t % 3;
    Profile V = generate({SpaceSpec::ranking(m, Distance::Swap), 1 + t % 7, rng(), {}});
    Profile W = V;
    const auto agent = rng() % V.size();
    auto e = V.points[agent].entries();
    std::vector<int> r(e.begin(), e.end());
    const auto pos = 1 + rng() % static_cast<std::size_t>(m - 1);
    const int c = r[pos];
    std::swap(r[pos], r[pos - 1]);
    W.points[agent] = Point::ranking(r);
    for (auto kind : {ScoreKind::Plurality, ScoreKind::Borda, ScoreKind::Copeland}) {
      EXPECT_GE(candidate_scores(W, kind)[static_cast<std::size_t>(c)],
                candidate_scores(V, kind)[static_cast<std::size_t>(c)]);
    }
  }
}

TEST(RuleProperties, Deterministic) {
  const auto V = generate({SpaceSpec::ranking(5, Distance::Swap), 7, 99, {}});
  const std::vector<int> O = {4, 3, 2, 1, 0};
  for (auto r : {Rule::Kemeny, Rule::Plurality, Rule::Borda, Rule::Copeland, Rule::Stv}) {
    const RuleSpec spec{r, O};
    EXPECT_EQ(winner(spec, V), winner(spec, V));
  }
}
