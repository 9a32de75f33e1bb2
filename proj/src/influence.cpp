#include "gslab/influence.hpp"

#include <algorithm>
#include <ostream>

#include "gslab/errors.hpp"
#include "gslab/manipulation.hpp"

namespace gslab {

namespace {

void check_alternative(int q, Alternative a) {
  if (a < 1 || a > q) throw DomainError("alternative out of range");
}

void check_pair(int q, Alternative a, Alternative b) {
  check_alternative(q, a);
  check_alternative(q, b);
  if (a == b) throw DomainError("pair influences need a != b");
}

void check_transposition(int q, const AdjTransposition& z) {
  if (z.high() > q) throw DomainError("transposition out of range");
}

std::size_t idx(int q, Alternative a, Alternative b) {
  return static_cast<std::size_t>((a - 1) * q + (b - 1));
}

}  // namespace

CoordinateInfluence::CoordinateInfluence(const TabularScf& f, std::size_t i, unsigned workers)
    : q_(f.alternatives()), i_(i), profiles_(f.space().size()),
      transpositions_(all_transpositions(f.alternatives())) {
  if (i >= f.voters()) throw DomainError("coordinate out of range");
  const ProfileSpace& space = f.space();
  const std::uint64_t radix = space.rankings_count();
  const std::uint64_t weight = space.weight(i);
  const std::uint64_t rests = profiles_ / radix;
  const std::size_t qq = static_cast<std::size_t>(q_ * q_);
  const std::size_t tz = transpositions_.size();

  RankingTable rankings(q_);
  std::vector<std::uint64_t> zmap(tz * radix);
  for (std::size_t z = 0; z < tz; ++z)
    for (std::uint64_t c = 0; c < radix; ++c)
      zmap[z * radix + c] = encode(apply_adjacent(transpositions_[z], rankings[c]));

  const std::uint64_t block = 1 << 12;
  const std::size_t blocks = static_cast<std::size_t>((rests + block - 1) / block);
  std::vector<std::vector<std::uint64_t>> pair_parts(blocks);
  std::vector<std::vector<std::uint64_t>> refined_parts(blocks);
  parallel_ranges(rests, block, workers, [&](std::size_t b, std::uint64_t begin, std::uint64_t end) {
    std::vector<std::uint64_t> pair(qq, 0);
    std::vector<std::uint64_t> refined(tz * qq, 0);
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(q_));
    for (std::uint64_t r = begin; r < end; ++r) {
      const std::uint64_t base = (r / weight) * weight * radix + r % weight;
      std::fill(counts.begin(), counts.end(), 0);
      for (std::uint64_t d = 0; d < radix; ++d) {
        Alternative fx = f.at(base + d * weight);
        ++counts[static_cast<std::size_t>(fx - 1)];
        for (std::size_t z = 0; z < tz; ++z) {
          Alternative fz = f.at(base + zmap[z * radix + d] * weight);
          ++refined[z * qq + idx(q_, fx, fz)];
        }
      }
      for (int a = 1; a <= q_; ++a)
        for (int c = 1; c <= q_; ++c)
          pair[idx(q_, a, c)] += counts[static_cast<std::size_t>(a - 1)] * counts[static_cast<std::size_t>(c - 1)];
    }
    pair_parts[b] = std::move(pair);
    refined_parts[b] = std::move(refined);
  });
  pair_.assign(qq, 0);
  refined_.assign(tz * qq, 0);
  for (std::size_t b = 0; b < blocks; ++b) {
    for (std::size_t k = 0; k < qq; ++k) pair_[k] += pair_parts[b][k];
    for (std::size_t k = 0; k < tz * qq; ++k) refined_[k] += refined_parts[b][k];
  }
}

std::size_t CoordinateInfluence::zindex(const AdjTransposition& z) const {
  check_transposition(q_, z);
  auto it = std::find(transpositions_.begin(), transpositions_.end(), z);
  return static_cast<std::size_t>(it - transpositions_.begin());
}

std::uint64_t CoordinateInfluence::pair_count(Alternative a, Alternative b) const {
  check_alternative(q_, a);
  check_alternative(q_, b);
  return pair_[idx(q_, a, b)];
}

std::uint64_t CoordinateInfluence::refined_count(Alternative a, Alternative b,
                                                 const AdjTransposition& z) const {
  check_alternative(q_, a);
  check_alternative(q_, b);
  return refined_[zindex(z) * static_cast<std::size_t>(q_ * q_) + idx(q_, a, b)];
}

Rational CoordinateInfluence::value(const InfluenceKind& kind) const {
  const BigInt plain_den = BigInt(profiles_) * BigInt(factorial(q_));
  const BigInt refined_den = 2 * BigInt(profiles_);
  return std::visit(
      [&](const auto& k) -> Rational {
        using K = std::decay_t<decltype(k)>;
        BigInt num = 0;
        if constexpr (std::is_same_v<K, TotalInfluence>) {
          for (int a = 1; a <= q_; ++a)
            for (int b = 1; b <= q_; ++b)
              if (a != b) num += pair_count(a, b);
          return make_rational(num, plain_den);
        } else if constexpr (std::is_same_v<K, SingleInfluence>) {
          check_alternative(q_, k.a);
          for (int b = 1; b <= q_; ++b)
            if (b != k.a) num += pair_count(k.a, b);
          return make_rational(num, plain_den);
        } else if constexpr (std::is_same_v<K, PairInfluence>) {
          check_pair(q_, k.a, k.b);
          return make_rational(pair_count(k.a, k.b), plain_den);
        } else if constexpr (std::is_same_v<K, PairRefinedInfluence>) {
          check_pair(q_, k.a, k.b);
          return make_rational(refined_count(k.a, k.b, k.z), refined_den);
        } else if constexpr (std::is_same_v<K, SingleRefinedInfluence>) {
          check_alternative(q_, k.a);
          for (int b = 1; b <= q_; ++b)
            if (b != k.a) num += refined_count(k.a, b, k.z);
          return make_rational(num, refined_den);
        } else {
          check_pair(q_, k.a, k.b);
          for (const auto& z : transpositions_) num += refined_count(k.a, k.b, z);
          return make_rational(num, refined_den);
        }
      },
      kind);
}

Rational influence(const SocialChoiceFn& f, std::size_t i, const InfluenceKind& kind,
                   const Exact& mode) {
  auto table = tabulate(f, mode);
  return CoordinateInfluence(*table, i, mode.workers).value(kind);
}

namespace {

void validate_kind(int q, const InfluenceKind& kind) {
  std::visit(
      [q](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, SingleInfluence>) {
          check_alternative(q, k.a);
        } else if constexpr (std::is_same_v<K, PairInfluence> ||
                             std::is_same_v<K, PairRefinedTotalInfluence>) {
          check_pair(q, k.a, k.b);
        } else if constexpr (std::is_same_v<K, PairRefinedInfluence>) {
          check_pair(q, k.a, k.b);
          check_transposition(q, k.z);
        } else if constexpr (std::is_same_v<K, SingleRefinedInfluence>) {
          check_alternative(q, k.a);
          check_transposition(q, k.z);
        }
      },
      kind);
}

}  // namespace

Estimate influence(const SocialChoiceFn& f, std::size_t i, const InfluenceKind& kind,
                   const Sampled& mode) {
  const int q = f.alternatives();
  const std::size_t n = f.voters();
  if (i >= n) throw DomainError("coordinate out of range");
  if (mode.samples == 0) throw DomainError("at least one sample is required");
  validate_kind(q, kind);
  const auto transpositions = all_transpositions(q);
  const bool total_over_t = std::holds_alternative<PairRefinedTotalInfluence>(kind);

  const std::size_t blocks = (mode.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_blocks(blocks, mode.workers, [&](std::size_t b) {
    auto rng = block_rng(mode.seed, b);
    std::uint64_t len = std::min<std::uint64_t>(kSampleBlock, mode.samples - b * kSampleBlock);
    std::bernoulli_distribution coin(0.5);
    std::uniform_int_distribution<std::size_t> pick(0, transpositions.size() - 1);
    for (std::uint64_t s = 0; s < len; ++s) {
      Profile x = random_profile(rng, q, n);
      Alternative fx = f.evaluate_unchecked(x);
      Profile y = x;
      std::visit(
          [&](const auto& k) {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, PairRefinedInfluence> ||
                          std::is_same_v<K, SingleRefinedInfluence>) {
              if (coin(rng)) y.set(i, apply_adjacent(k.z, x[i]));
            } else if constexpr (std::is_same_v<K, PairRefinedTotalInfluence>) {
              const auto& z = transpositions[pick(rng)];
              if (coin(rng)) y.set(i, apply_adjacent(z, x[i]));
            } else {
              y.set(i, random_ranking(rng, q));
            }
          },
          kind);
      Alternative fy = f.evaluate_unchecked(y);
      bool hit = std::visit(
          [&](const auto& k) -> bool {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, TotalInfluence>) {
              return fx != fy;
            } else if constexpr (std::is_same_v<K, SingleInfluence> ||
                                 std::is_same_v<K, SingleRefinedInfluence>) {
              return fx == k.a && fy != k.a;
            } else {
              return fx == k.a && fy == k.b;
            }
          },
          kind);
      if (hit) ++hits[b];
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  Estimate e = bernoulli_estimate(total, mode.samples, mode.seed);
  if (total_over_t) {
    double scale = static_cast<double>(transpositions.size());
    e.value *= scale;
    e.stderr_ *= scale;
  }
  return e;
}

Rational variance_indicator(const SocialChoiceFn& f, Alternative a, const Exact& mode) {
  check_alternative(f.alternatives(), a);
  Rational mu = distribution(f, mode).mu[static_cast<std::size_t>(a - 1)];
  return mu * (1 - mu);
}

Estimate variance_indicator(const SocialChoiceFn& f, Alternative a, const Sampled& mode) {
  check_alternative(f.alternatives(), a);
  Estimate mu = distribution(f, mode).mu[static_cast<std::size_t>(a - 1)];
  Estimate out = mu;
  out.value = mu.value * (1 - mu.value);
  out.stderr_ = std::abs(1 - 2 * mu.value) * mu.stderr_;
  return out;
}

std::vector<BoundaryEdge> boundary_edges(const SocialChoiceFn& f, std::size_t i, Alternative a,
                                         Alternative b, const BoundaryScope& scope,
                                         const Exact& mode) {
  const int q = f.alternatives();
  check_pair(q, a, b);
  if (i >= f.voters()) throw DomainError("coordinate out of range");
  if (const auto* z = std::get_if<AdjTransposition>(&scope)) check_transposition(q, *z);
  auto table = tabulate(f, mode);
  const ProfileSpace& space = table->space();
  const auto radix = space.rankings_count();
  RankingTable rankings(q);
  const auto transpositions = all_transpositions(q);

  std::vector<BoundaryEdge> edges;
  for (std::uint64_t code = 0; code < space.size(); ++code) {
    if (table->at(code) != a) continue;
    const auto d = space.digit(code, i);
    auto add = [&](std::uint64_t e, std::optional<AdjTransposition> z) {
      auto ycode = space.with_digit(code, i, e);
      if (ycode == code || table->at(ycode) != b) return;
      edges.push_back({space.decode(code), space.decode(ycode), i, z});
    };
    if (std::holds_alternative<std::monostate>(scope)) {
      for (std::uint64_t e = 0; e < radix; ++e) add(e, std::nullopt);
    } else if (const auto* z = std::get_if<AdjTransposition>(&scope)) {
      add(encode(apply_adjacent(*z, rankings[d])), *z);
    } else {
      for (const auto& z : transpositions) add(encode(apply_adjacent(z, rankings[d])), z);
    }
  }
  return edges;
}

const char* to_string(BoundaryLemma lemma) {
  switch (lemma) {
    case BoundaryLemma::Plain: return "plain";
    case BoundaryLemma::PlainNeutral: return "plain_neutral";
    case BoundaryLemma::Refined: return "refined";
    case BoundaryLemma::RefinedNeutral: return "refined_neutral";
  }
  return "?";
}

Rational boundary_pair_threshold(BoundaryLemma lemma, const Rational& epsilon, std::size_t n, int q) {
  const BigInt bn(n);
  switch (lemma) {
    case BoundaryLemma::Plain:
      return 2 * epsilon / Rational(bn * q * q * (q - 1));
    case BoundaryLemma::PlainNeutral:
      return epsilon / Rational(bn * q * q * (q - 1));
    case BoundaryLemma::Refined:
      return 2 * epsilon / Rational(bn * pow_int(q, 7));
    case BoundaryLemma::RefinedNeutral:
      return epsilon / Rational(bn * pow_int(q, 7));
  }
  return 0;
}

LargeBoundaryResult find_large_boundary_pair(const SocialChoiceFn& f, BoundaryLemma lemma,
                                             std::optional<Rational> epsilon, const Exact& mode) {
  const int q = f.alternatives();
  const std::size_t n = f.voters();
  const bool neutral_variant =
      lemma == BoundaryLemma::PlainNeutral || lemma == BoundaryLemma::RefinedNeutral;
  const bool refined = lemma == BoundaryLemma::Refined || lemma == BoundaryLemma::RefinedNeutral;
  if (n < 2) throw DomainError("two distinct coordinates are needed");
  if (q < (neutral_variant ? 4 : 3)) throw DomainError("too few alternatives for this lemma");

  auto table = tabulate(f, mode);
  SocialChoiceFn g = SocialChoiceFn::from_table(table, f.name());
  if (neutral_variant && !is_neutral(g, mode).neutral)
    throw DomainError("the neutral variants need a neutral function");
  Rational actual = neutral_variant ? dist_to_dict(g, mode) : dist_to_nonmanip(g, mode);
  if (epsilon && *epsilon > actual)
    throw DomainError("epsilon exceeds the distance the lemma assumes");

  LargeBoundaryResult out;
  out.lemma = lemma;
  out.epsilon = epsilon.value_or(actual);
  out.pair_threshold = boundary_pair_threshold(lemma, out.epsilon, n, q);

  std::vector<CoordinateInfluence> coords;
  coords.reserve(n);
  for (std::size_t i = 0; i < n; ++i) coords.emplace_back(*table, i, mode.workers);
  auto value = [&](std::size_t i, Alternative a, Alternative b) {
    if (refined) return coords[i].value(PairRefinedInfluence{a, b, AdjTransposition(a, b)});
    return coords[i].value(PairInfluence{a, b});
  };

  for (std::size_t i = 0; i < n && !out.pairs; ++i) {
    for (Alternative a = 1; a <= q && !out.pairs; ++a) {
      for (Alternative b = 1; b <= q && !out.pairs; ++b) {
        if (a == b) continue;
        Rational first = value(i, a, b);
        if (first < out.pair_threshold) continue;
        for (std::size_t j = 0; j < n && !out.pairs; ++j) {
          if (j == i) continue;
          for (Alternative c = 1; c <= q && !out.pairs; ++c) {
            if (c == a || c == b) continue;
            for (Alternative d = 1; d <= q; ++d) {
              if (d == c || (neutral_variant && (d == a || d == b))) continue;
              Rational second = value(j, c, d);
              if (second < out.pair_threshold) continue;
              out.pairs = {BoundaryPair{i, a, b, first}, BoundaryPair{j, c, d, second}};
              break;
            }
          }
        }
      }
    }
  }
  if (!refined) {
    if (!out.pairs) throw TheoremViolation("no pair of large boundaries in distinct coordinates");
    return out;
  }

  const BigInt bn(n);
  out.manipulation_threshold =
      (lemma == BoundaryLemma::Refined ? 4 : 2) * out.epsilon / Rational(bn * pow_int(q, 7));
  ManipulationIndex index(g, mode);
  out.two_manipulable_fraction = make_rational(index.count_r_manipulable(2), index.space().size());
  if (out.pairs) return out;
  if (*out.two_manipulable_fraction < *out.manipulation_threshold)
    throw TheoremViolation("neither large refined boundaries nor enough 2-manipulation points");
  for (std::uint64_t code = 0; code < index.space().size(); ++code)
    if (index.r_manipulable(code, 2)) out.two_manipulation_points.push_back(index.space().decode(code));
  return out;
}

void write_influence_csv(std::ostream& out, const SocialChoiceFn& f, const Exact& mode) {
  auto table = tabulate(f, mode);
  const int q = f.alternatives();
  const auto transpositions = all_transpositions(q);
  out << "i,a,b,z,value_num,value_den\n";
  auto row = [&](std::size_t i, Alternative a, Alternative b, const std::string& z, const Rational& v) {
    out << i + 1 << ',' << a << ',' << b << ',' << z << ',' << numerator_string(v) << ','
        << denominator_string(v) << '\n';
  };
  for (std::size_t i = 0; i < f.voters(); ++i) {
    CoordinateInfluence c(*table, i, mode.workers);
    for (Alternative a = 1; a <= q; ++a) {
      for (Alternative b = 1; b <= q; ++b) {
        if (a == b) continue;
        row(i, a, b, "", c.value(PairInfluence{a, b}));
        for (const auto& z : transpositions) row(i, a, b, to_string(z), c.value(PairRefinedInfluence{a, b, z}));
      }
    }
  }
}

}  // namespace gslab
