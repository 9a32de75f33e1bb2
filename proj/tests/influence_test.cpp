#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "gslab/errors.hpp"
#include "gslab/influence.hpp"
#include "gslab/manipulation.hpp"

using namespace gslab;

namespace {

std::vector<Profile> all_profiles(int q, std::size_t n) {
  std::vector<Profile> out;
  for (const auto& x : enumerate_profiles(q, n, kDefaultCap)) out.push_back(x);
  return out;
}

// P(f(X) = a, f(X') = b) by walking every (x, sigma), no counting tricks.
Rational pair_oracle(const SocialChoiceFn& f, std::size_t i, Alternative a, Alternative b) {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& x : all_profiles(f.alternatives(), f.voters())) {
    for (const auto& s : enumerate_rankings(f.alternatives())) {
      ++total;
      if (f(x) == a && f(x.with(i, s)) == b) ++hits;
    }
  }
  return make_rational(hits, total);
}

// (1/2) P(f(X) = a, f(zX) = b), walking every x.
Rational refined_oracle(const SocialChoiceFn& f, std::size_t i, Alternative a, Alternative b,
                        const AdjTransposition& z) {
  std::uint64_t hits = 0;
  std::uint64_t total = 0;
  for (const auto& x : all_profiles(f.alternatives(), f.voters())) {
    ++total;
    if (f(x) == a && f(apply_adjacent(z, i, x)) == b) ++hits;
  }
  return make_rational(hits, 2 * total);
}

std::vector<SocialChoiceFn> random_tables(std::uint64_t seed, int count, int q, std::size_t n) {
  std::mt19937_64 rng(seed);
  std::vector<SocialChoiceFn> out;
  for (int k = 0; k < count; ++k) out.push_back(random_tabular(rng, q, n));
  return out;
}

}  // namespace

TEST(Influence, DictatorExamples) {
  auto d = dictator_top(3, 2, 0);
  EXPECT_EQ(influence(d, 1, TotalInfluence{}), 0);
  EXPECT_EQ(influence(d, 0, TotalInfluence{}), Rational(2, 3));
}

TEST(Influence, MatchesDirectEnumeration) {
  for (const auto& f : random_tables(4, 5, 3, 2)) {
    for (std::size_t i = 0; i < 2; ++i) {
      for (Alternative a = 1; a <= 3; ++a) {
        for (Alternative b = 1; b <= 3; ++b) {
          if (a == b) continue;
          EXPECT_EQ(influence(f, i, PairInfluence{a, b}), pair_oracle(f, i, a, b));
          for (const auto& z : all_transpositions(3))
            EXPECT_EQ(influence(f, i, PairRefinedInfluence{a, b, z}), refined_oracle(f, i, a, b, z));
        }
      }
    }
  }
}

TEST(Influence, InvalidKindsThrow) {
  auto f = plurality_leftmost(3, 2);
  EXPECT_THROW(influence(f, 0, PairInfluence{1, 1}), DomainError);
  EXPECT_THROW(influence(f, 0, SingleInfluence{4}), DomainError);
  EXPECT_THROW(influence(f, 2, TotalInfluence{}), DomainError);
  EXPECT_THROW(influence(f, 0, PairRefinedInfluence{1, 2, AdjTransposition(1, 4)}), DomainError);
  EXPECT_THROW(influence(f, 0, TotalInfluence{}, Sampled{0, 1, 1}), DomainError);
}

TEST(Influence, TotalDecomposesOverValuesAndPairs) {
  for (const auto& f : random_tables(22, 50, 3, 2)) {
    auto table = tabulate(f);
    for (std::size_t i = 0; i < 2; ++i) {
      CoordinateInfluence c(*table, i);
      Rational by_value = 0;
      Rational by_pair = 0;
      for (Alternative a = 1; a <= 3; ++a) {
        by_value += c.value(SingleInfluence{a});
        for (Alternative b = 1; b <= 3; ++b)
          if (a != b) by_pair += c.value(PairInfluence{a, b});
      }
      EXPECT_EQ(c.value(TotalInfluence{}), by_value);
      EXPECT_EQ(c.value(TotalInfluence{}), by_pair);
    }
  }
}

TEST(Variance, Examples) {
  EXPECT_EQ(variance_indicator(constant(3, 2, 2), 2), 0);
  EXPECT_EQ(variance_indicator(dictator_top(4, 1, 0), 3), Rational(3, 16));
  auto s = variance_indicator(dictator_top(4, 1, 0), 3, Sampled{40000, 9, 1});
  EXPECT_NEAR(s.value, 3.0 / 16, 4 * s.stderr_ + 1e-9);
}

TEST(Variance, TotalInfluenceBoundsVariance) {
  for (const auto& f : random_tables(23, 100, 3, 2)) {
    for (Alternative a = 1; a <= 3; ++a) {
      Rational sum = influence(f, 0, SingleInfluence{a}) + influence(f, 1, SingleInfluence{a});
      EXPECT_GE(sum, variance_indicator(f, a));
    }
  }
}

TEST(Variance, ConstantDistanceBound) {
  for (const auto& f : random_tables(24, 100, 3, 2)) {
    Rational var = 0;
    for (Alternative a = 1; a <= 3; ++a) var += variance_indicator(f, a);
    EXPECT_LE(dist_to_const(f), Rational(3, 2) * var);
  }
}

TEST(Influence, RefinedSumBoundsSingle) {
  for (const auto& f : random_tables(25, 30, 3, 2)) {
    auto table = tabulate(f);
    for (std::size_t i = 0; i < 2; ++i) {
      CoordinateInfluence c(*table, i);
      for (Alternative a = 1; a <= 3; ++a) {
        Rational refined = 0;
        for (const auto& z : all_transpositions(3)) refined += c.value(SingleRefinedInfluence{a, z});
        EXPECT_GE(refined, c.value(SingleInfluence{a}) / 9);
      }
    }
  }
}

TEST(Influence, PairsAreSymmetric) {
  for (const auto& f : random_tables(26, 10, 3, 2)) {
    auto table = tabulate(f);
    CoordinateInfluence c(*table, 1);
    for (Alternative a = 1; a <= 3; ++a)
      for (Alternative b = 1; b <= 3; ++b) {
        if (a == b) continue;
        EXPECT_EQ(c.value(PairInfluence{a, b}), c.value(PairInfluence{b, a}));
        EXPECT_EQ(c.value(PairRefinedTotalInfluence{a, b}), c.value(PairRefinedTotalInfluence{b, a}));
      }
  }
}

TEST(Influence, NeutralPairInfluenceIsConstant) {
  for (const auto& f : {plurality_leftmost(3, 3), borda_voter1_tiebreak(4, 2)}) {
    ASSERT_TRUE(is_neutral(f, Exact{}).neutral);
    std::set<Rational> values;
    for (Alternative a = 1; a <= f.alternatives(); ++a)
      for (Alternative b = 1; b <= f.alternatives(); ++b)
        if (a != b) values.insert(influence(f, 0, PairInfluence{a, b}));
    EXPECT_EQ(values.size(), 1u) << f.name();
  }
}

TEST(Influence, SampledWithinFourSigma) {
  auto f = borda_voter1_tiebreak(4, 2);
  std::vector<InfluenceKind> kinds{TotalInfluence{}, SingleInfluence{2}, PairInfluence{1, 3},
                                   PairRefinedInfluence{1, 2, AdjTransposition(1, 2)},
                                   SingleRefinedInfluence{4, AdjTransposition(3, 4)},
                                   PairRefinedTotalInfluence{2, 3}};
  for (const auto& kind : kinds) {
    Rational exact = influence(f, 1, kind);
    Estimate est = influence(f, 1, kind, Sampled{60000, 123, 2});
    EXPECT_NEAR(est.value, to_double(exact), 4 * est.stderr_ + 1e-12);
    EXPECT_EQ(est.value, influence(f, 1, kind, Sampled{60000, 123, 1}).value);
  }
}

TEST(Boundary, ConstantIsEmpty) {
  auto f = constant(3, 2, 1);
  EXPECT_TRUE(boundary_edges(f, 0, 1, 2).empty());
  EXPECT_TRUE(boundary_edges(f, 1, 2, 3, AllTranspositions{}).empty());
}

TEST(Boundary, DictatorTopsOneAndTwo) {
  auto f = dictator_top(3, 1, 0);
  std::set<std::pair<Ranking, Ranking>> expected;
  for (const auto& x : enumerate_rankings(3))
    for (const auto& y : enumerate_rankings(3))
      if (x != y && x.top() == 1 && y.top() == 2) expected.insert({x, y});
  std::set<std::pair<Ranking, Ranking>> got;
  for (const auto& e : boundary_edges(f, 0, 1, 2)) {
    EXPECT_EQ(e.coordinate, 0u);
    got.insert({e.x[0], e.y[0]});
  }
  EXPECT_EQ(got, expected);
  EXPECT_EQ(got.size(), 4u);
}

TEST(Boundary, RefinedCardinalityMatchesInfluence) {
  for (const auto& f : random_tables(27, 20, 3, 2)) {
    const BigInt size(36);
    for (std::size_t i = 0; i < 2; ++i) {
      for (Alternative a = 1; a <= 3; ++a) {
        for (Alternative b = 1; b <= 3; ++b) {
          if (a == b) continue;
          Rational total = 0;
          for (const auto& z : all_transpositions(3)) {
            auto edges = boundary_edges(f, i, a, b, z);
            for (const auto& e : edges) {
              EXPECT_EQ(differing_coordinates(e.x, e.y), std::vector<std::size_t>{i});
              EXPECT_EQ(e.y[i], apply_adjacent(z, e.x[i]));
            }
            Rational inf = influence(f, i, PairRefinedInfluence{a, b, z});
            EXPECT_EQ(Rational(edges.size()) / Rational(size), 2 * inf);
            total += inf;
          }
          auto all = boundary_edges(f, i, a, b, AllTranspositions{});
          EXPECT_EQ(Rational(all.size()) / Rational(size), 2 * total);
          EXPECT_EQ(Rational(boundary_edges(f, i, a, b).size()) / Rational(size * 6),
                    influence(f, i, PairInfluence{a, b}));
        }
      }
    }
  }
}

namespace {

void check_pairs(const LargeBoundaryResult& r, bool neutral) {
  ASSERT_TRUE(r.pairs);
  const auto& [p, s] = *r.pairs;
  EXPECT_NE(p.i, s.i);
  EXPECT_NE(p.a, p.b);
  EXPECT_NE(s.a, s.b);
  EXPECT_NE(s.a, p.a);
  EXPECT_NE(s.a, p.b);
  if (neutral) {
    EXPECT_NE(s.b, p.a);
    EXPECT_NE(s.b, p.b);
  }
  EXPECT_GE(p.influence, r.pair_threshold);
  EXPECT_GE(s.influence, r.pair_threshold);
}

}  // namespace

TEST(LargeBoundary, PluralityMeetsPlainThreshold) {
  auto f = plurality_leftmost(4, 3);
  auto r = find_large_boundary_pair(f, BoundaryLemma::Plain);
  EXPECT_EQ(r.epsilon, dist_to_nonmanip(f));
  EXPECT_EQ(r.pair_threshold, 2 * r.epsilon / Rational(3 * 16 * 3));
  check_pairs(r, false);
  const auto& [p, s] = *r.pairs;
  EXPECT_EQ(p.influence, influence(f, p.i, PairInfluence{p.a, p.b}));
  EXPECT_EQ(s.influence, influence(f, s.i, PairInfluence{s.a, s.b}));
}

TEST(LargeBoundary, ConstantIsTrivial) {
  auto r = find_large_boundary_pair(constant(3, 2, 1), BoundaryLemma::Plain);
  EXPECT_EQ(r.epsilon, 0);
  EXPECT_EQ(r.pair_threshold, 0);
  check_pairs(r, false);
}

TEST(LargeBoundary, BordaNeutralGivesFourDistinct) {
  auto f = borda_voter1_tiebreak(4, 2);
  auto r = find_large_boundary_pair(f, BoundaryLemma::PlainNeutral);
  EXPECT_EQ(r.epsilon, dist_to_dict(f));
  check_pairs(r, true);
}

TEST(LargeBoundary, RefinedVariants) {
  for (auto lemma : {BoundaryLemma::Refined, BoundaryLemma::RefinedNeutral}) {
    for (const auto& f : {borda_voter1_tiebreak(4, 2), plurality_leftmost(4, 3)}) {
      auto r = find_large_boundary_pair(f, lemma);
      ASSERT_TRUE(r.manipulation_threshold && r.two_manipulable_fraction);
      if (r.pairs) {
        check_pairs(r, lemma == BoundaryLemma::RefinedNeutral);
        const auto& [p, s] = *r.pairs;
        EXPECT_EQ(p.influence, influence(f, p.i, PairRefinedInfluence{p.a, p.b, AdjTransposition(p.a, p.b)}));
      } else {
        EXPECT_GE(*r.two_manipulable_fraction, *r.manipulation_threshold);
        for (const auto& x : r.two_manipulation_points) EXPECT_TRUE(is_r_manipulation_point(f, x, 2));
      }
    }
  }
}

TEST(LargeBoundary, HypothesisChecks) {
  EXPECT_THROW(find_large_boundary_pair(plurality_leftmost(3, 1), BoundaryLemma::Plain), DomainError);
  EXPECT_THROW(find_large_boundary_pair(plurality_leftmost(3, 2), BoundaryLemma::PlainNeutral), DomainError);
  EXPECT_THROW(find_large_boundary_pair(constant(4, 2, 1), BoundaryLemma::PlainNeutral), DomainError);
  EXPECT_THROW(find_large_boundary_pair(plurality_leftmost(3, 2), BoundaryLemma::Plain, Rational(1)),
               DomainError);
}

TEST(InfluenceCsv, HeaderAndRowCount) {
  std::ostringstream out;
  write_influence_csv(out, plurality_leftmost(3, 2));
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "i,a,b,z,value_num,value_den");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 2 * 6 * 4);
}
