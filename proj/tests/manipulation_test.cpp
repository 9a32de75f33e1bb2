#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "gslab/errors.hpp"
#include "gslab/manipulation.hpp"

using namespace gslab;

namespace {

std::vector<Profile> all_profiles(int q, std::size_t n) {
  std::vector<Profile> out;
  for (const auto& x : enumerate_profiles(q, n, kDefaultCap)) out.push_back(x);
  return out;
}

std::vector<Ranking> all_rankings(int q) {
  std::vector<Ranking> out;
  for (const auto& r : enumerate_rankings(q)) out.push_back(r);
  return out;
}

// Plurality with leftmost tie-break, written independently of the library.
Alternative plurality_oracle(const Profile& x) {
  std::vector<int> score(static_cast<std::size_t>(x.alternatives()) + 1, 0);
  for (const auto& r : x) ++score[static_cast<std::size_t>(r.top())];
  int best = *std::max_element(score.begin(), score.end());
  for (const auto& r : x)
    if (score[static_cast<std::size_t>(r.top())] == best) return r.top();
  return 0;
}

// x is an r-manipulation point iff some single-coordinate change confined to
// a window of at most r consecutive positions manipulates.
bool oracle_r_manipulable(const SocialChoiceFn& f, const Profile& x, int r) {
  const int q = f.alternatives();
  const Alternative fx = f(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (const auto& s : all_rankings(q)) {
      int lo = 0;
      int hi = -1;
      for (int p = 1; p <= q; ++p) {
        if (s.at(p) == x[i].at(p)) continue;
        if (lo == 0) lo = p;
        hi = p;
      }
      if (lo == 0 || hi - lo + 1 > r) continue;
      if (x[i].rank_of(f(x.with(i, s))) < x[i].rank_of(fx)) return true;
    }
  }
  return false;
}

void expect_valid_witness(const SocialChoiceFn& f, const ManipulationWitness& w) {
  auto diff = differing_coordinates(w.x, w.y);
  ASSERT_EQ(diff.size(), 1u);
  EXPECT_EQ(diff.front(), w.voter);
  EXPECT_LT(w.x[w.voter].rank_of(f(w.y)), w.x[w.voter].rank_of(f(w.x)));
}

}  // namespace

TEST(ManipulationPair, NeverForConstantOrDictator) {
  auto c = constant(3, 2, 2);
  auto d = dictator_top(3, 2, 0);
  auto profiles = all_profiles(3, 2);
  for (const auto& x : profiles) {
    for (const auto& y : profiles) {
      EXPECT_FALSE(is_manipulation_pair(c, x, y));
      EXPECT_FALSE(is_manipulation_pair(d, x, y));
    }
  }
}

TEST(ManipulationPair, PluralityMatchesOracle) {
  auto f = plurality_leftmost(3, 3);
  auto x = parse_profile("1>2>3|2>1>3|3>2>1");
  auto y = parse_profile("1>2>3|2>1>3|2>3>1");
  bool expected = x[2].rank_of(plurality_oracle(y)) < x[2].rank_of(plurality_oracle(x));
  EXPECT_EQ(is_manipulation_pair(f, x, y), expected);
  EXPECT_TRUE(expected);

  auto profiles = all_profiles(3, 3);
  for (const auto& p : profiles) {
    ASSERT_EQ(f(p), plurality_oracle(p));
    for (std::size_t i = 0; i < 3; ++i) {
      for (const auto& s : all_rankings(3)) {
        auto q = p.with(i, s);
        bool oracle = s != p[i] && p[i].rank_of(plurality_oracle(q)) < p[i].rank_of(plurality_oracle(p));
        EXPECT_EQ(is_manipulation_pair(f, p, q), oracle);
      }
    }
  }
}

TEST(ManipulationPair, DimensionMismatchThrows) {
  auto f = plurality_leftmost(3, 2);
  EXPECT_THROW(is_manipulation_pair(f, parse_profile("1>2>3"), parse_profile("1>2>3")), DomainError);
}

TEST(WindowNeighbors, SizesAndContent) {
  auto x = parse_ranking("1>2>3>4");
  EXPECT_EQ(window_neighbors(x, 2).size(), 3u);
  EXPECT_EQ(window_neighbors(x, 4).size(), 23u);
  // Windows of length 3: 2 starts * 5 non-identity permutations, minus the
  // adjacent swap shared by both windows.
  EXPECT_EQ(window_neighbors(x, 3).size(), 9u);
  for (int r = 2; r <= 4; ++r) {
    for (const auto& y : window_neighbors(x, r)) {
      EXPECT_NE(y, x);
      EXPECT_LE(block_span(x, y), r);
    }
  }
  EXPECT_EQ(window_neighbors(x, 9).size(), 23u);
  EXPECT_THROW(window_neighbors(x, 1), DomainError);
}

TEST(RManipulation, ConstantHasNone) {
  auto f = constant(3, 2, 1);
  for (const auto& x : all_profiles(3, 2))
    for (int r = 2; r <= 3; ++r) EXPECT_FALSE(is_r_manipulation_point(f, x, r));
}

TEST(RManipulation, MatchesOracleOnRandomTables) {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 20; ++k) {
    auto f = random_tabular(rng, 3, 2);
    ManipulationIndex index(f);
    for (const auto& x : all_profiles(3, 2)) {
      for (int r = 2; r <= 3; ++r) {
        auto w = is_r_manipulation_point(f, x, r);
        bool oracle = oracle_r_manipulable(f, x, r);
        EXPECT_EQ(w.has_value(), oracle);
        EXPECT_EQ(index.r_manipulable(index.space().encode(x), r), oracle);
        if (w) {
          expect_valid_witness(f, *w);
          EXPECT_LE(*w->r, r);
        }
      }
    }
  }
}

TEST(RManipulation, MatchesOracleAtQ4) {
  std::mt19937_64 rng(77);
  auto f = random_tabular(rng, 4, 2);
  ManipulationIndex index(f);
  for (const auto& x : all_profiles(4, 2)) {
    for (int r = 2; r <= 4; ++r)
      EXPECT_EQ(index.r_manipulable(index.space().encode(x), r), oracle_r_manipulable(f, x, r));
  }
}

TEST(RManipulation, FullWindowFindsEveryManipulation) {
  auto f = plurality_leftmost(3, 3);
  for (const auto& x : all_profiles(3, 3)) {
    bool any = false;
    for (std::size_t i = 0; i < 3 && !any; ++i)
      for (const auto& s : all_rankings(3))
        if (is_manipulation_pair(f, x, x.with(i, s))) any = true;
    auto w = find_manipulation(f, x);
    EXPECT_EQ(w.has_value(), any);
    if (w) expect_valid_witness(f, *w);
  }
}

TEST(RManipulation, WitnessFollowsScanOrder) {
  // Voter 0 cannot improve on its top; voter 1 can by lifting 2 over 3.
  auto f = plurality_leftmost(3, 3);
  auto x = parse_profile("1>2>3|3>2>1|2>3>1");
  auto w = is_r_manipulation_point(f, x, 2);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->voter, 1u);
  EXPECT_EQ(to_string(w->y[1]), "2>3>1");
  EXPECT_EQ(*w->r, 2);
}

TEST(Census, DictatorIsZeroAndPasses) {
  auto c = census(dictator_top(4, 2, 1), Exact{});
  EXPECT_EQ(c.manipulable, 0u);
  EXPECT_EQ(*c.epsilon, 0);
  EXPECT_EQ(*c.bound_thm13, 0);
  EXPECT_EQ(*c.bound_thm16, 0);
  EXPECT_TRUE(*c.pass_thm13);
  EXPECT_TRUE(*c.pass_thm16);
}

TEST(Census, BoundEvaluators) {
  const Rational eps(1, 2);
  BigInt q30 = 1;
  for (int k = 0; k < 30; ++k) q30 *= 4;
  EXPECT_EQ(bound_four_manipulable(eps, 3, 4), Rational(1, 4) / Rational(BigInt(10000) * 27 * q30));
  EXPECT_EQ(bound_manipulable(eps, 3, 4), Rational(1, 4) / Rational(BigInt(2) * 27 * 4096 * 576));
  EXPECT_EQ(bound_reset_pair(eps, 3, 4), Rational(1, 4) / Rational(BigInt(2) * 81 * 4096 * 24 * 24 * 24));
  BigInt q34 = q30 * 256;
  EXPECT_EQ(bound_block4_pair(eps, 3, 4), Rational(1, 4) / Rational(BigInt(1000000000) * 81 * q34));
}

TEST(Census, ChainIsMonotone) {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 5; ++k) {
    auto c = census(random_tabular(rng, 4, 2), Exact{});
    EXPECT_EQ(c.total, 576u);
    EXPECT_LE(c.r_manipulable[0], c.r_manipulable[1]);
    EXPECT_LE(c.r_manipulable[1], c.r_manipulable[2]);
    EXPECT_LE(c.r_manipulable[2], c.manipulable);
    // r = q reaches every ranking.
    EXPECT_EQ(c.r_manipulable[2], c.manipulable);
  }
}

TEST(Census, BordaQ4N3SatisfiesBothBounds) {
  auto c = census(borda_voter1_tiebreak(4, 3), Exact{});
  EXPECT_EQ(c.total, 13824u);
  EXPECT_TRUE(c.neutral);
  EXPECT_TRUE(c.applicable);
  EXPECT_GT(*c.epsilon, 0);
  EXPECT_TRUE(*c.pass_thm13);
  EXPECT_TRUE(*c.pass_thm16);
  EXPECT_GE(c.fraction_manipulable(), c.fraction_r(4));
}

TEST(Census, SampledIsIndependentOfWorkers) {
  auto f = plurality_leftmost(4, 3);
  auto a = census(f, Sampled{10000, 42, 1});
  auto b = census(f, Sampled{10000, 42, 3});
  EXPECT_EQ(a.manipulable, b.manipulable);
  EXPECT_EQ(a.r_manipulable, b.r_manipulable);
  EXPECT_FALSE(a.pass_thm13);
  auto exact = census(f, Exact{});
  EXPECT_NEAR(a.estimate_manipulable().value, to_double(exact.fraction_manipulable()),
              4 * a.estimate_manipulable().stderr_);
}

TEST(Census, NeutralConjugationInvariance) {
  auto f = plurality_leftmost(3, 2);
  ASSERT_TRUE(is_neutral(f, Exact{}).neutral);
  ManipulationIndex index(f);
  for (const auto& y : all_rankings(3)) {
    for (const auto& x : all_profiles(3, 2))
      EXPECT_EQ(index.manipulable(x), index.manipulable(compose(y, x)));
  }
}

namespace {

// P((X, Y) is a manipulation pair), enumerating (x, i, Y_i) directly.
Rational pair_law_oracle(const SocialChoiceFn& f, PairFlavor flavor) {
  const int q = f.alternatives();
  const std::size_t n = f.voters();
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& x : all_profiles(q, n)) {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Ranking> ys;
      if (flavor == PairFlavor::ResetCoordinate) {
        ys = all_rankings(q);
      } else {
        for (int s = 0; s + 4 <= q; ++s) {
          auto order = x[i].order();
          auto block = std::vector<Alternative>(order.begin() + s, order.begin() + s + 4);
          std::sort(block.begin(), block.end());
          do {
            auto next = order;
            std::copy(block.begin(), block.end(), next.begin() + s);
            ys.push_back(Ranking::from_order(next));
          } while (std::next_permutation(block.begin(), block.end()));
        }
      }
      for (const auto& s : ys) {
        ++total;
        if (is_manipulation_pair(f, x, x.with(i, s))) ++hits;
      }
    }
  }
  return make_rational(hits, total);
}

}  // namespace

TEST(PairProbability, TrivialCases) {
  EXPECT_EQ(estimate_pair_probability(constant(4, 2, 1), PairFlavor::ResetCoordinate, Sampled{5000, 1, 1}).value, 0);
  EXPECT_EQ(estimate_pair_probability(constant(4, 2, 1), PairFlavor::AdjacentBlock4, Sampled{5000, 1, 1}).value, 0);
  EXPECT_EQ(estimate_pair_probability(dictator_top(4, 2, 0), PairFlavor::ResetCoordinate, Sampled{5000, 1, 1}).value, 0);
  EXPECT_THROW(estimate_pair_probability(constant(3, 2, 1), PairFlavor::AdjacentBlock4, Sampled{10, 1, 1}), DomainError);
}

TEST(PairProbability, BordaExactLawAndMonteCarlo) {
  auto f = borda_voter1_tiebreak(4, 2);
  for (auto flavor : {PairFlavor::ResetCoordinate, PairFlavor::AdjacentBlock4}) {
    Rational exact = pair_law_oracle(f, flavor);
    EXPECT_EQ(pair_probability(f, flavor), exact);
    auto est = estimate_pair_probability(f, flavor, Sampled{100000, 2718, 2});
    EXPECT_NEAR(est.value, to_double(exact), 4 * est.stderr_);
    auto again = estimate_pair_probability(f, flavor, Sampled{100000, 2718, 1});
    EXPECT_EQ(est.value, again.value);
  }
}

TEST(GsWitness, NotApplicableCases) {
  auto c = gs_witness(constant(3, 2, 1));
  EXPECT_FALSE(c.applicable);
  EXPECT_FALSE(c.witness);
  auto d = gs_witness(dictator_top(3, 2, 1));
  EXPECT_FALSE(d.applicable);
}

TEST(GsWitness, RandomTablesAllYieldWitnesses) {
  std::mt19937_64 rng(1000);
  int applicable = 0;
  for (int k = 0; k < 1000; ++k) {
    auto f = random_tabular(rng, 3, 2);
    auto out = gs_witness(f);
    if (!out.applicable) continue;
    ++applicable;
    ASSERT_TRUE(out.witness);
    expect_valid_witness(f, *out.witness);
  }
  EXPECT_GT(applicable, 900);
}

TEST(Scaling, SingleVoterIsADictator) {
  auto rows = plurality_scaling_experiment(3, {1}, Sampled{2000, 5, 1});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].manipulable.value, 0);
}

TEST(Scaling, BoundedByNearTies) {
  auto rows = plurality_scaling_experiment(3, {3, 5, 11, 21}, Sampled{20000, 31337, 2});
  for (const auto& r : rows) {
    EXPECT_GE(r.manipulable.value, 0);
    EXPECT_LE(r.manipulable.value, r.near_tie.value);
  }
}

TEST(Scaling, SmallNAgreesWithExhaustiveCount) {
  auto exact = census(plurality_leftmost(3, 5), Exact{});
  // 1656 of 7776 profiles, counted by a separate brute-force script.
  EXPECT_EQ(exact.fraction_manipulable(), Rational(1656, 7776));
  auto row = plurality_scaling_experiment(3, {5}, Sampled{100000, 31337, 1}).front();
  EXPECT_NEAR(row.manipulable.value, to_double(exact.fraction_manipulable()), 4 * row.manipulable.stderr_);
}

TEST(Scaling, DecreasesOnceNIsLarge) {
  auto rows = plurality_scaling_experiment(3, {11, 41, 81}, Sampled{20000, 31337, 2});
  for (std::size_t k = 1; k < rows.size(); ++k) {
    const auto& prev = rows[k - 1].manipulable;
    const auto& cur = rows[k].manipulable;
    EXPECT_LT(cur.value + 2 * cur.stderr_, prev.value - 2 * prev.stderr_) << rows[k].n;
  }
}
