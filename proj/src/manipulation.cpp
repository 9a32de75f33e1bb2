#include "gslab/manipulation.hpp"

#include <algorithm>
#include <set>

#include "gslab/errors.hpp"

namespace gslab {

namespace {

struct Leveled {
  std::uint64_t code;
  int level;
};

// Every other ranking with the smallest window size that reaches it.
std::vector<Leveled> leveled_neighbors(const Ranking& x) {
  std::vector<Leveled> out;
  std::set<std::uint64_t> seen;
  for (int w = 2; w <= x.size(); ++w) {
    for (const Ranking& y : window_neighbors(x, w)) {
      auto code = encode(y);
      if (seen.insert(code).second) out.push_back({code, w});
    }
  }
  return out;
}

constexpr int kNeighborCacheMaxQ = 6;

class NeighborLevels {
 public:
  explicit NeighborLevels(int q) : q_(q) {
    if (q > kNeighborCacheMaxQ) return;
    auto count = factorial(q);
    cache_.reserve(count);
    for (std::uint64_t c = 0; c < count; ++c) cache_.push_back(leveled_neighbors(decode(c, q)));
  }

  const std::vector<Leveled>& get(std::uint64_t code, std::vector<Leveled>& scratch) const {
    if (!cache_.empty()) return cache_[code];
    scratch = leveled_neighbors(decode(code, q_));
    return scratch;
  }

 private:
  int q_;
  std::vector<std::vector<Leveled>> cache_;
};

// Smallest manipulating window size at x, or 0.
int min_block_at(const SocialChoiceFn& f, const NeighborLevels& levels, Profile& x) {
  Alternative fx = f.evaluate_unchecked(x);
  int best = 0;
  std::vector<Leveled> scratch;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Ranking xi = x[i];
    int current = xi.rank_of(fx);
    if (current == 1) continue;
    for (const Leveled& nb : levels.get(encode(xi), scratch)) {
      if (best != 0 && nb.level >= best) continue;
      x.set(i, decode(nb.code, xi.size()));
      if (xi.rank_of(f.evaluate_unchecked(x)) < current) best = nb.level;
    }
    x.set(i, xi);
    if (best == 2) break;
  }
  return best;
}

void check_dimensions(const SocialChoiceFn& f, const Profile& x) {
  if (x.size() != f.voters() || x.alternatives() != f.alternatives())
    throw DomainError("profile dimensions do not match the function");
}

Rational bound_with(const Rational& epsilon, const BigInt& denominator) {
  return epsilon * epsilon / Rational(denominator);
}

}  // namespace

int block_span(const Ranking& x, const Ranking& y) {
  if (x.size() != y.size()) throw DomainError("rankings of different sizes");
  int first = 0;
  int last = 0;
  for (int p = 1; p <= x.size(); ++p) {
    if (x.at(p) != y.at(p)) {
      if (first == 0) first = p;
      last = p;
    }
  }
  return first == 0 ? 0 : last - first + 1;
}

bool is_manipulation_pair(const SocialChoiceFn& f, const Profile& x, const Profile& y) {
  check_dimensions(f, x);
  check_dimensions(f, y);
  auto diff = differing_coordinates(x, y);
  if (diff.size() != 1) return false;
  const Ranking& xi = x[diff.front()];
  return xi.rank_of(f(y)) < xi.rank_of(f(x));
}

std::vector<Ranking> window_neighbors(const Ranking& x, int r) {
  const int q = x.size();
  if (r < 2) throw DomainError("window size must be at least 2");
  const int w = std::min(r, q);
  std::vector<Ranking> out;
  std::set<Ranking> seen{x};
  const auto perms = factorial(w);
  std::vector<Alternative> order = x.order();
  std::vector<Alternative> next(order.size());
  for (int start = 1; start + w - 1 <= q; ++start) {
    for (std::uint64_t c = 1; c < perms; ++c) {
      Ranking pi = decode(c, w);
      next = order;
      for (int k = 1; k <= w; ++k)
        next[static_cast<std::size_t>(start + k - 2)] =
            order[static_cast<std::size_t>(start + pi.at(k) - 2)];
      Ranking y = Ranking::from_order(next);
      if (seen.insert(y).second) out.push_back(y);
    }
  }
  return out;
}

std::optional<ManipulationWitness> is_r_manipulation_point(const SocialChoiceFn& f,
                                                           const Profile& x, int r) {
  check_dimensions(f, x);
  if (r < 2 || r > f.alternatives()) throw DomainError("r must lie in [2, q]");
  Alternative fx = f(x);
  for (std::size_t i = 0; i < x.size(); ++i) {
    int current = x[i].rank_of(fx);
    if (current == 1) continue;
    for (const Ranking& yi : window_neighbors(x[i], r)) {
      Profile y = x.with(i, yi);
      if (x[i].rank_of(f(y)) < current) return ManipulationWitness{x, y, i, block_span(x[i], yi)};
    }
  }
  return std::nullopt;
}

std::optional<ManipulationWitness> find_manipulation(const SocialChoiceFn& f, const Profile& x) {
  if (f.alternatives() < 2) return std::nullopt;
  return is_r_manipulation_point(f, x, f.alternatives());
}

ManipulationIndex::ManipulationIndex(const SocialChoiceFn& f, const Exact& mode)
    : f_(f), table_(tabulate(f, mode)) {
  f_ = SocialChoiceFn::from_table(table_, f.name());
  const ProfileSpace& space = table_->space();
  const int q = space.alternatives();
  const std::size_t n = space.voters();
  levels_.assign(space.size(), 0);
  if (q < 2) return;
  RankingTable rankings(q);
  std::vector<std::vector<Leveled>> neighbors;
  neighbors.reserve(rankings.size());
  for (std::uint64_t c = 0; c < rankings.size(); ++c) neighbors.push_back(leveled_neighbors(rankings[c]));

  const TabularScf& t = *table_;
  parallel_ranges(space.size(), 1 << 14, mode.workers,
                  [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t code = begin; code < end; ++code) {
                      Alternative fx = t.at(code);
                      int best = 0;
                      for (std::size_t i = 0; i < n && best != 2; ++i) {
                        auto d = space.digit(code, i);
                        int current = rankings.rank_of(d, fx);
                        if (current == 1) continue;
                        for (const Leveled& nb : neighbors[d]) {
                          if (best != 0 && nb.level >= best) continue;
                          auto y = space.with_digit(code, i, nb.code);
                          if (rankings.rank_of(d, t.at(y)) < current) best = nb.level;
                        }
                      }
                      levels_[code] = static_cast<std::uint8_t>(best);
                    }
                  });
}

std::uint64_t ManipulationIndex::count_manipulable() const {
  return static_cast<std::uint64_t>(
      std::count_if(levels_.begin(), levels_.end(), [](std::uint8_t l) { return l != 0; }));
}

std::uint64_t ManipulationIndex::count_r_manipulable(int r) const {
  return static_cast<std::uint64_t>(std::count_if(
      levels_.begin(), levels_.end(), [r](std::uint8_t l) { return l != 0 && l <= r; }));
}

Rational bound_manipulable(const Rational& epsilon, std::size_t n, int q) {
  BigInt qf(factorial(q));
  return bound_with(epsilon, 2 * pow_int(static_cast<std::int64_t>(n), 3) * pow_int(q, 6) * qf * qf);
}

Rational bound_reset_pair(const Rational& epsilon, std::size_t n, int q) {
  BigInt qf(factorial(q));
  return bound_with(epsilon,
                    2 * pow_int(static_cast<std::int64_t>(n), 4) * pow_int(q, 6) * qf * qf * qf);
}

Rational bound_four_manipulable(const Rational& epsilon, std::size_t n, int q) {
  return bound_with(epsilon,
                    pow_int(10, 4) * pow_int(static_cast<std::int64_t>(n), 3) * pow_int(q, 30));
}

Rational bound_block4_pair(const Rational& epsilon, std::size_t n, int q) {
  return bound_with(epsilon,
                    pow_int(10, 9) * pow_int(static_cast<std::int64_t>(n), 4) * pow_int(q, 34));
}

Estimate ManipulationCensus::estimate_manipulable() const {
  return bernoulli_estimate(manipulable, total, seed.value_or(0));
}

Estimate ManipulationCensus::estimate_r(int r) const {
  return bernoulli_estimate(r_manipulable[static_cast<std::size_t>(r - 2)], total, seed.value_or(0));
}

namespace {

void fill_theorem_inputs(ManipulationCensus& c) {
  c.applicable = c.q >= 4 && c.neutral;
  if (!c.epsilon) return;
  c.bound_thm13 = bound_manipulable(*c.epsilon, c.n, c.q);
  c.bound_thm16 = bound_four_manipulable(*c.epsilon, c.n, c.q);
}

}  // namespace

ManipulationCensus census(const SocialChoiceFn& f, const Exact& mode) {
  ManipulationIndex index(f, mode);
  ManipulationCensus c;
  c.rule = f.name();
  c.q = f.alternatives();
  c.n = f.voters();
  c.exact = true;
  c.total = index.space().size();
  c.manipulable = index.count_manipulable();
  for (int r = 2; r <= 4; ++r) c.r_manipulable[static_cast<std::size_t>(r - 2)] = index.count_r_manipulable(r);
  c.epsilon = dist_to_dict(index.function(), mode);
  c.neutral = is_neutral(index.function(), mode).neutral;
  fill_theorem_inputs(c);
  c.pass_thm13 = c.fraction_manipulable() >= *c.bound_thm13;
  c.pass_thm16 = c.fraction_r(4) >= *c.bound_thm16;
  return c;
}

ManipulationCensus census(const SocialChoiceFn& f, const Sampled& mode, std::uint64_t exact_cap) {
  const int q = f.alternatives();
  const std::size_t n = f.voters();
  ManipulationCensus c;
  c.rule = f.name();
  c.q = q;
  c.n = n;
  c.exact = false;
  c.total = mode.samples;
  c.seed = mode.seed;

  NeighborLevels levels(q);
  const std::size_t blocks = (mode.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::array<std::uint64_t, 4>> counts(blocks);
  parallel_blocks(blocks, mode.workers, [&](std::size_t b) {
    auto rng = block_rng(mode.seed, b);
    std::uint64_t len = std::min<std::uint64_t>(kSampleBlock, mode.samples - b * kSampleBlock);
    std::array<std::uint64_t, 4> local{};
    for (std::uint64_t s = 0; s < len; ++s) {
      Profile x = random_profile(rng, q, n);
      int level = q < 2 ? 0 : min_block_at(f, levels, x);
      if (level == 0) continue;
      ++local[0];
      for (int r = 2; r <= 4; ++r)
        if (level <= r) ++local[static_cast<std::size_t>(r - 1)];
    }
    counts[b] = local;
  });
  for (const auto& local : counts) {
    c.manipulable += local[0];
    for (std::size_t r = 0; r < 3; ++r) c.r_manipulable[r] += local[r + 1];
  }

  auto count = profile_count(q, n);
  if (count && *count <= exact_cap) {
    Exact exact{exact_cap, mode.workers};
    auto table = SocialChoiceFn::from_table(tabulate(f, exact), f.name());
    c.epsilon = dist_to_dict(table, exact);
    // the exhaustive neutrality check visits every profile once per relabeling
    const bool exact_neutrality = *count <= exact_cap / factorial(q);
    c.neutral = exact_neutrality ? is_neutral(table, exact).neutral : is_neutral(table, mode).neutral;
  } else {
    c.neutral = is_neutral(f, mode).neutral;
  }
  fill_theorem_inputs(c);
  return c;
}

Estimate estimate_pair_probability(const SocialChoiceFn& f, PairFlavor flavor, const Sampled& mode) {
  const int q = f.alternatives();
  const std::size_t n = f.voters();
  if (flavor == PairFlavor::AdjacentBlock4 && q < 4)
    throw DomainError("adjacent block flavor needs q >= 4");
  if (mode.samples == 0) throw DomainError("at least one sample is required");
  const std::size_t blocks = (mode.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::uint64_t> hits(blocks, 0);
  parallel_blocks(blocks, mode.workers, [&](std::size_t b) {
    auto rng = block_rng(mode.seed, b);
    std::uint64_t len = std::min<std::uint64_t>(kSampleBlock, mode.samples - b * kSampleBlock);
    std::uniform_int_distribution<std::size_t> voter(0, n - 1);
    std::uniform_int_distribution<int> start(1, q - 3 > 0 ? q - 3 : 1);
    std::uniform_int_distribution<std::uint64_t> perm(0, 23);
    for (std::uint64_t s = 0; s < len; ++s) {
      Profile x = random_profile(rng, q, n);
      std::size_t i = voter(rng);
      Ranking yi;
      if (flavor == PairFlavor::ResetCoordinate) {
        yi = random_ranking(rng, q);
      } else {
        int st = start(rng);
        Ranking pi = decode(perm(rng), 4);
        auto order = x[i].order();
        auto next = order;
        for (int k = 1; k <= 4; ++k)
          next[static_cast<std::size_t>(st + k - 2)] = order[static_cast<std::size_t>(st + pi.at(k) - 2)];
        yi = Ranking::from_order(next);
      }
      if (yi == x[i]) continue;
      Profile y = x.with(i, yi);
      if (x[i].rank_of(f.evaluate_unchecked(y)) < x[i].rank_of(f.evaluate_unchecked(x))) ++hits[b];
    }
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return bernoulli_estimate(total, mode.samples, mode.seed);
}

Rational pair_probability(const SocialChoiceFn& f, PairFlavor flavor, const Exact& mode) {
  const int q = f.alternatives();
  const std::size_t n = f.voters();
  if (flavor == PairFlavor::AdjacentBlock4 && q < 4)
    throw DomainError("adjacent block flavor needs q >= 4");
  auto table = tabulate(f, mode);
  const ProfileSpace& space = table->space();
  RankingTable rankings(q);
  const auto qf = rankings.size();

  // For each ranking code: the list of Y_i codes with their multiplicity.
  std::vector<std::vector<std::uint64_t>> moves(qf);
  for (std::uint64_t c = 0; c < qf; ++c) {
    if (flavor == PairFlavor::ResetCoordinate) {
      for (std::uint64_t d = 0; d < qf; ++d) moves[c].push_back(d);
    } else {
      auto order = rankings[c].order();
      for (int st = 1; st <= q - 3; ++st) {
        for (std::uint64_t p = 0; p < 24; ++p) {
          Ranking pi = decode(p, 4);
          auto next = order;
          for (int k = 1; k <= 4; ++k)
            next[static_cast<std::size_t>(st + k - 2)] = order[static_cast<std::size_t>(st + pi.at(k) - 2)];
          moves[c].push_back(encode(Ranking::from_order(next)));
        }
      }
    }
  }

  std::vector<std::uint64_t> partial((space.size() + (1 << 14) - 1) >> 14, 0);
  parallel_ranges(space.size(), 1 << 14, mode.workers,
                  [&](std::size_t b, std::uint64_t begin, std::uint64_t end) {
                    std::uint64_t hits = 0;
                    for (std::uint64_t code = begin; code < end; ++code) {
                      Alternative fx = table->at(code);
                      for (std::size_t i = 0; i < n; ++i) {
                        auto d = space.digit(code, i);
                        int current = rankings.rank_of(d, fx);
                        for (auto e : moves[d])
                          if (rankings.rank_of(d, table->at(space.with_digit(code, i, e))) < current) ++hits;
                      }
                    }
                    partial[b] = hits;
                  });
  BigInt hits = 0;
  for (auto h : partial) hits += h;
  BigInt den = BigInt(space.size()) * BigInt(n) * BigInt(moves.front().size());
  return make_rational(hits, den);
}

std::optional<ManipulationWitness> first_manipulation_point(const SocialChoiceFn& f, const Exact& mode) {
  ManipulationIndex index(f, mode);
  for (std::uint64_t code = 0; code < index.space().size(); ++code) {
    if (index.manipulable(code)) return find_manipulation(index.function(), index.space().decode(code));
  }
  return std::nullopt;
}

GsOutcome gs_witness(const SocialChoiceFn& f, const Exact& mode) {
  auto table = SocialChoiceFn::from_table(tabulate(f, mode), f.name());
  GsOutcome out;
  auto values = image(table, mode);
  if (values.size() < 3) {
    out.reason = "takes " + std::to_string(values.size()) + " value(s)";
    return out;
  }
  if (dist_to_dict(table, mode) == 0) {
    out.reason = "is a dictator";
    return out;
  }
  out.applicable = true;
  out.witness = first_manipulation_point(table, mode);
  if (!out.witness)
    throw TheoremViolation("function with at least three values that is not a dictator has no manipulation point");
  return out;
}

namespace {

bool near_tie(const Profile& x, int q) {
  std::array<int, kMaxAlternatives + 1> score{};
  for (const Ranking& r : x) ++score[static_cast<std::size_t>(r.top())];
  std::sort(score.begin() + 1, score.begin() + q + 1, std::greater<>());
  return q < 2 || score[1] - score[2] <= 1;
}

}  // namespace

std::vector<ScalingRow> plurality_scaling_experiment(int q, const std::vector<std::size_t>& ns,
                                                     const Sampled& mode) {
  if (mode.samples == 0) throw DomainError("at least one sample is required");
  NeighborLevels levels(q);
  std::vector<ScalingRow> rows;
  for (std::size_t n : ns) {
    SocialChoiceFn f = plurality_leftmost(q, n);
    const std::size_t blocks = (mode.samples + kSampleBlock - 1) / kSampleBlock;
    std::vector<std::array<std::uint64_t, 2>> counts(blocks);
    parallel_blocks(blocks, mode.workers, [&](std::size_t b) {
      auto rng = block_rng(mode.seed, b);
      std::uint64_t len = std::min<std::uint64_t>(kSampleBlock, mode.samples - b * kSampleBlock);
      std::array<std::uint64_t, 2> local{};
      for (std::uint64_t s = 0; s < len; ++s) {
        Profile x = random_profile(rng, q, n);
        if (near_tie(x, q)) ++local[1];
        if (q >= 2 && min_block_at(f, levels, x) != 0) ++local[0];
      }
      counts[b] = local;
    });
    std::uint64_t manip = 0;
    std::uint64_t ties = 0;
    for (const auto& local : counts) {
      manip += local[0];
      ties += local[1];
    }
    rows.push_back({n, bernoulli_estimate(manip, mode.samples, mode.seed),
                    bernoulli_estimate(ties, mode.samples, mode.seed)});
  }
  return rows;
}

}  // namespace gslab
