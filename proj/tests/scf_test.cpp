#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "gslab/errors.hpp"
#include "gslab/scf.hpp"

using namespace gslab;

namespace {

Profile P(const char* text) { return parse_profile(text); }

std::vector<Profile> all_profiles(int q, std::size_t n) {
  std::vector<Profile> out;
  for (const auto& x : enumerate_profiles(q, n, kDefaultCap)) out.push_back(x);
  return out;
}

// Minimum over i and over every map g : L_q -> [q] of P(f(X) != g(X_i)).
Rational brute_force_dist_to_dict(const SocialChoiceFn& f) {
  const int q = f.alternatives();
  const auto profiles = all_profiles(q, f.voters());
  const std::uint64_t qf = factorial(q);
  std::uint64_t tables = 1;
  for (std::uint64_t k = 0; k < qf; ++k) tables *= static_cast<std::uint64_t>(q);
  std::uint64_t best = profiles.size();
  for (std::size_t i = 0; i < f.voters(); ++i) {
    for (std::uint64_t t = 0; t < tables; ++t) {
      std::vector<Alternative> g(qf);
      std::uint64_t rest = t;
      for (auto& v : g) {
        v = static_cast<Alternative>(rest % static_cast<std::uint64_t>(q)) + 1;
        rest /= static_cast<std::uint64_t>(q);
      }
      std::uint64_t disagree = 0;
      for (const auto& x : profiles)
        if (f(x) != g[encode(x[i])]) ++disagree;
      best = std::min(best, disagree);
    }
  }
  return make_rational(best, profiles.size());
}

}  // namespace

TEST(Rules, Examples) {
  EXPECT_EQ(dictator_top(3, 2, 0)(P("2>3>1|1>2>3")), 2);
  EXPECT_EQ(constant(3, 2, 3)(P("2>3>1|1>2>3")), 3);
  EXPECT_EQ(plurality_leftmost(3, 3)(P("1>2>3|2>1>3|3>2>1")), 1);
  EXPECT_EQ(plurality_leftmost(3, 3)(P("2>1>3|2>3>1|2>1>3")), 2);
  EXPECT_EQ(plurality_leftmost(3, 3)(P("3>1>2|2>1>3|2>3>1")), 2);
  EXPECT_EQ(borda_voter1_tiebreak(3, 2)(P("1>2>3|1>2>3")), 1);
  EXPECT_EQ(borda_voter1_tiebreak(3, 2)(P("1>2>3|2>1>3")), 1);
  EXPECT_EQ(borda_voter1_tiebreak(3, 2)(P("2>1>3|1>2>3")), 2);
}

TEST(Rules, PluralityTieGoesToLeftmostTiedTop) {
  // Scores 1:1 2:2 3:2; voter 2 is the first whose top is tied.
  EXPECT_EQ(plurality_leftmost(3, 5)(P("1>2>3|3>1>2|2>1>3|2>3>1|3>2>1")), 3);
}

TEST(Rules, DimensionMismatchThrows) {
  EXPECT_THROW(dictator_top(3, 2, 0)(P("1>2>3")), DomainError);
  EXPECT_THROW(dictator_top(3, 2, 0)(P("1>2>3>4|1>2>3>4")), DomainError);
  EXPECT_THROW(dictator_top(3, 2, 2), DomainError);
}

TEST(Neutrality, KnownVerdicts) {
  auto c = is_neutral(constant(3, 2, 1), Exact{});
  EXPECT_FALSE(c.neutral);
  ASSERT_TRUE(c.relabeling && c.profile);
  EXPECT_NE(c.relabeling->at(1), 1);
  EXPECT_TRUE(is_neutral(dictator_top(3, 2, 0), Exact{}).neutral);
  auto pl = is_neutral(plurality_leftmost(3, 3), Exact{});
  EXPECT_TRUE(pl.neutral);
  EXPECT_EQ(pl.pairs_checked, 6u * 216u);
  EXPECT_TRUE(is_neutral(plurality_leftmost(3, 3), Sampled{2000, 3, 1}).neutral);
  EXPECT_FALSE(is_neutral(constant(3, 3, 2), Sampled{2000, 3, 1}).neutral);
}

TEST(Neutrality, WitnessViolatesDefinition) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 20; ++k) {
    auto f = random_tabular(rng, 3, 2);
    auto v = is_neutral(f, Exact{});
    if (v.neutral) continue;
    const Ranking& y = *v.relabeling;
    EXPECT_NE(y(f(*v.profile)), f(compose(y, *v.profile)));
  }
}

TEST(Distribution, Examples) {
  auto mu = distribution(constant(3, 2, 2)).mu;
  EXPECT_EQ(mu, (std::vector<Rational>{0, 1, 0}));
  auto d = distribution(dictator_top(3, 2, 0)).mu;
  for (const auto& m : d) EXPECT_EQ(m, Rational(1, 3));
  for (const auto& m : distribution(plurality_leftmost(3, 3)).mu) EXPECT_EQ(m, Rational(1, 3));
  auto s = distribution(dictator_top(3, 2, 0), Sampled{20000, 11, 2}).mu;
  double total = 0;
  for (const auto& e : s) {
    total += e.value;
    EXPECT_NEAR(e.value, 1.0 / 3, 4 * e.stderr_);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Distance, TrivialCases) {
  auto pl = plurality_leftmost(3, 2);
  EXPECT_EQ(dist(pl, pl), 0);
  EXPECT_EQ(dist_to_const(constant(4, 2, 3)), 0);
  EXPECT_EQ(dist_to_dict(dictator_top(3, 3, 1)), 0);
  EXPECT_EQ(dist_to_dict_coordinate(dictator_top(3, 3, 1), 1), 0);
  EXPECT_EQ(dist_to_const(dictator_top(3, 2, 0)), Rational(2, 3));
}

TEST(Distance, DictMatchesBruteForceOnPlurality) {
  auto f = plurality_leftmost(3, 3);
  EXPECT_EQ(dist_to_dict(f), brute_force_dist_to_dict(f));
}

TEST(Distance, DictMatchesBruteForceOnRandomTables) {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 3; ++k) {
    auto f = random_tabular(rng, 3, 2);
    EXPECT_EQ(dist_to_dict(f), brute_force_dist_to_dict(f));
  }
}

TEST(Distance, OrderingAndNeutralTwoValued) {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 30; ++k) {
    auto f = random_tabular(rng, 3, 2);
    auto nm = dist_to_nonmanip(f);
    EXPECT_GE(nm, 0);
    EXPECT_LE(nm, dist_to_two_valued(f));
    EXPECT_LE(nm, dist_to_dict(f));
  }
  for (const auto& f : {plurality_leftmost(3, 3), borda_voter1_tiebreak(3, 2), plurality_leftmost(4, 2)}) {
    if (!is_neutral(f, Exact{}).neutral) continue;
    const int q = f.alternatives();
    EXPECT_EQ(dist_to_two_valued(f), 1 - Rational(2, q)) << f.name();
  }
}

TEST(Restrict, Examples) {
  auto sigma = parse_ranking("2>3>1");
  auto r = restrict_coordinates(dictator_top(3, 2, 0), {{0, sigma}});
  EXPECT_EQ(r.voters(), 1u);
  for (const auto& x : all_profiles(3, 1)) EXPECT_EQ(r(x), 2);
  auto c = restrict_coordinates(constant(3, 3, 3), {{1, sigma}});
  for (const auto& x : all_profiles(3, 2)) EXPECT_EQ(c(x), 3);
  EXPECT_THROW(restrict_coordinates(constant(3, 1, 1), {{0, sigma}}), DomainError);
}

TEST(Restrict, PluralityAgreesWithDirectEvaluation) {
  auto f = plurality_leftmost(3, 3);
  for (const auto& fixed : enumerate_rankings(3)) {
    auto r = restrict_coordinates(f, {{2, fixed}});
    auto rest = all_profiles(3, 2);
    ASSERT_EQ(rest.size(), 36u);
    for (const auto& x : rest) {
      Profile full({x[0], x[1], fixed});
      EXPECT_EQ(r(x), f(full));
    }
  }
}

TEST(Tabular, RoundTripAgreesWithRule) {
  auto f = borda_voter1_tiebreak(3, 2);
  auto t = tabulate(f);
  auto g = tabular(t);
  for (const auto& x : all_profiles(3, 2)) EXPECT_EQ(f(x), g(x));
}

TEST(Tabular, FileFormatsAreBitExact) {
  std::mt19937_64 rng(3);
  auto f = random_tabular(rng, 3, 2);
  const auto& table = *f.table();
  std::stringstream text;
  write_tabular_text(text, table);
  const std::string first = text.str();
  auto back = read_tabular_text(text);
  EXPECT_EQ(back, table);
  std::stringstream again;
  write_tabular_text(again, back);
  EXPECT_EQ(again.str(), first);
  EXPECT_EQ(tabular_from_json(tabular_to_json(table)), table);

  auto dir = std::filesystem::temp_directory_path();
  auto text_path = (dir / "gslab_scf_test.txt").string();
  auto json_path = (dir / "gslab_scf_test.json").string();
  save_tabular_file(text_path, table, false);
  save_tabular_file(json_path, table, true);
  EXPECT_EQ(load_tabular_file(text_path), table);
  EXPECT_EQ(load_tabular_file(json_path), table);
  std::filesystem::remove(text_path);
  std::filesystem::remove(json_path);
}

TEST(Tabular, RejectsMalformedInput) {
  std::stringstream wrong_length("q=3 n=1\n1\n2\n");
  EXPECT_THROW(read_tabular_text(wrong_length), DomainError);
  std::stringstream out_of_range("q=2 n=1\n1\n3\n");
  EXPECT_THROW(read_tabular_text(out_of_range), DomainError);
}
