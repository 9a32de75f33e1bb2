#include "gslab/scf.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "gslab/errors.hpp"

namespace gslab {

TabularScf::TabularScf(int q, std::size_t n, std::vector<std::uint8_t> winners)
    : space_(q, n), winners_(std::move(winners)) {
  if (winners_.size() != space_.size())
    throw DomainError("tabular SCF: table length must be (q!)^n");
  for (auto w : winners_)
    if (w < 1 || w > q) throw DomainError("tabular SCF: winner out of range");
}

SocialChoiceFn::SocialChoiceFn(int q, std::size_t n, std::string name, Evaluator evaluator)
    : q_(q), n_(n), name_(std::move(name)), evaluator_(std::move(evaluator)) {
  if (q < 1 || q > kMaxAlternatives) throw DomainError("SCF: q out of range");
  if (n == 0) throw DomainError("SCF: needs at least one voter");
}

SocialChoiceFn SocialChoiceFn::from_table(std::shared_ptr<const TabularScf> table, std::string name) {
  const TabularScf* raw = table.get();
  SocialChoiceFn f(raw->alternatives(), raw->voters(), std::move(name),
                   [raw](const Profile& x) { return (*raw)(x); });
  f.table_ = std::move(table);
  return f;
}

Alternative SocialChoiceFn::operator()(const Profile& x) const {
  if (x.size() != n_ || x.alternatives() != q_)
    throw DomainError("SCF " + name_ + ": profile has the wrong dimensions");
  const Alternative w = evaluator_(x);
  if (w < 1 || w > q_) throw DomainError("SCF " + name_ + ": winner out of range");
  return w;
}

Alternative evaluate(const SocialChoiceFn& f, const Profile& x) { return f(x); }

SocialChoiceFn constant(int q, std::size_t n, Alternative a) {
  if (a < 1 || a > q) throw DomainError("constant: alternative out of range");
  return SocialChoiceFn(q, n, "constant:" + std::to_string(a), [a](const Profile&) { return a; });
}

SocialChoiceFn dictator_top(int q, std::size_t n, std::size_t voter) {
  if (voter >= n) throw DomainError("dictator_top: voter out of range");
  return SocialChoiceFn(q, n, "dictator:" + std::to_string(voter + 1),
                        [voter](const Profile& x) { return x[voter].top(); });
}

namespace {

// First alternative in `order` that belongs to `tied`.
Alternative first_tied(const Ranking& order, const std::array<bool, kMaxAlternatives + 1>& tied) {
  for (int k = 1; k <= order.size(); ++k)
    if (tied[static_cast<std::size_t>(order.at(k))]) return order.at(k);
  return order.top();
}

}  // namespace

SocialChoiceFn plurality_leftmost(int q, std::size_t n) {
  return SocialChoiceFn(q, n, "plurality", [q](const Profile& x) {
    std::array<int, kMaxAlternatives + 1> score{};
    for (const auto& r : x) ++score[static_cast<std::size_t>(r.top())];
    const int best = *std::max_element(score.begin() + 1, score.begin() + q + 1);
    std::array<bool, kMaxAlternatives + 1> tied{};
    int ties = 0;
    Alternative only = 1;
    for (Alternative a = 1; a <= q; ++a)
      if (score[static_cast<std::size_t>(a)] == best) {
        tied[static_cast<std::size_t>(a)] = true;
        ++ties;
        only = a;
      }
    if (ties == 1) return only;
    for (const auto& r : x)
      if (tied[static_cast<std::size_t>(r.top())]) return r.top();
    return first_tied(x[0], tied);
  });
}

SocialChoiceFn borda_voter1_tiebreak(int q, std::size_t n) {
  return SocialChoiceFn(q, n, "borda", [q](const Profile& x) {
    std::array<int, kMaxAlternatives + 1> score{};
    for (const auto& r : x)
      for (int k = 1; k <= q; ++k) score[static_cast<std::size_t>(r.at(k))] += q - k;
    const int best = *std::max_element(score.begin() + 1, score.begin() + q + 1);
    std::array<bool, kMaxAlternatives + 1> tied{};
    for (Alternative a = 1; a <= q; ++a) tied[static_cast<std::size_t>(a)] = score[static_cast<std::size_t>(a)] == best;
    return first_tied(x[0], tied);
  });
}

SocialChoiceFn tabular(std::shared_ptr<const TabularScf> table) {
  return SocialChoiceFn::from_table(std::move(table));
}

SocialChoiceFn random_tabular(std::mt19937_64& rng, int q, std::size_t n) {
  ProfileSpace space(q, n);
  std::uniform_int_distribution<int> dist(1, q);
  std::vector<std::uint8_t> winners(space.size());
  for (auto& w : winners) w = static_cast<std::uint8_t>(dist(rng));
  return tabular(std::make_shared<const TabularScf>(q, n, std::move(winners)));
}

std::shared_ptr<const TabularScf> tabulate(const SocialChoiceFn& f, const Exact& mode) {
  if (f.table()) return f.table();
  require_within_cap(profile_count(f.alternatives(), f.voters()), mode.cap, "tabulate");
  ProfileSpace space(f.alternatives(), f.voters());
  std::vector<std::uint8_t> winners(space.size());
  parallel_ranges(space.size(), 1u << 14, mode.workers,
                  [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
                    for (std::uint64_t c = begin; c < end; ++c)
                      winners[c] = static_cast<std::uint8_t>(f(space.decode(c)));
                  });
  return std::make_shared<const TabularScf>(f.alternatives(), f.voters(), std::move(winners));
}

SocialChoiceFn restrict_coordinates(const SocialChoiceFn& f,
                                    const std::map<std::size_t, Ranking>& fixed) {
  const std::size_t n = f.voters();
  for (const auto& [i, r] : fixed) {
    if (i >= n) throw DomainError("restrict: coordinate out of range");
    if (r.size() != f.alternatives()) throw DomainError("restrict: ranking has the wrong q");
  }
  if (fixed.size() >= n) throw DomainError("restrict: no free coordinates would remain");
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < n; ++i)
    if (!fixed.contains(i)) free.push_back(i);
  std::vector<Ranking> base(n, Ranking::identity(f.alternatives()));
  for (const auto& [i, r] : fixed) base[i] = r;
  const Profile pinned(base);
  return SocialChoiceFn(f.alternatives(), free.size(), f.name() + "|restricted",
                        [f, free, pinned](const Profile& x) {
                          Profile full = pinned;
                          for (std::size_t k = 0; k < free.size(); ++k) full.set(free[k], x[k]);
                          return f.evaluate_unchecked(full);
                        });
}

// ---------------------------------------------------------------------------
// Neutrality

namespace {

bool neutral_at(const SocialChoiceFn& f, const Ranking& y, const Profile& x) {
  return y(f.evaluate_unchecked(x)) == f.evaluate_unchecked(compose(y, x));
}

}  // namespace

NeutralityVerdict is_neutral(const SocialChoiceFn& f, const Exact& mode) {
  const int q = f.alternatives();
  const auto profiles = profile_count(q, f.voters());
  std::optional<std::uint64_t> pairs;
  if (profiles && *profiles <= UINT64_MAX / factorial(q)) pairs = *profiles * factorial(q);
  require_within_cap(pairs, mode.cap, "exhaustive neutrality check");

  const auto table = tabulate(f, mode);
  const ProfileSpace& space = table->space();
  const RankingTable rankings(q);
  NeutralityVerdict verdict;
  for (std::uint64_t yc = 0; yc < rankings.size(); ++yc) {
    const Ranking& y = rankings[yc];
    // Relabeling acts digit-wise; precompute the digit map.
    std::vector<std::uint64_t> relabel(rankings.size());
    for (std::uint64_t r = 0; r < rankings.size(); ++r) relabel[r] = encode(compose(y, rankings[r]));
    for (std::uint64_t c = 0; c < space.size(); ++c) {
      std::uint64_t image = 0;
      for (std::size_t i = 0; i < space.voters(); ++i)
        image = image * space.rankings_count() + relabel[space.digit(c, i)];
      ++verdict.pairs_checked;
      if (y(table->at(c)) != table->at(image)) {
        verdict.neutral = false;
        verdict.relabeling = y;
        verdict.profile = space.decode(c);
        return verdict;
      }
    }
  }
  return verdict;
}

NeutralityVerdict is_neutral(const SocialChoiceFn& f, const Sampled& mode) {
  const std::uint64_t blocks = (mode.samples + kSampleBlock - 1) / kSampleBlock;
  std::vector<std::optional<std::pair<Ranking, Profile>>> found(blocks);
  std::vector<std::uint64_t> checked(blocks, 0);
  parallel_blocks(blocks, mode.workers, [&](std::size_t b) {
    auto rng = block_rng(mode.seed, b);
    const std::uint64_t count = std::min(kSampleBlock, mode.samples - b * kSampleBlock);
    for (std::uint64_t s = 0; s < count; ++s) {
      const Ranking y = random_ranking(rng, f.alternatives());
      const Profile x = random_profile(rng, f.alternatives(), f.voters());
      ++checked[b];
      if (!neutral_at(f, y, x)) {
        found[b] = std::make_pair(y, x);
        return;
      }
    }
  });
  NeutralityVerdict verdict;
  for (std::uint64_t b = 0; b < blocks; ++b) {
    verdict.pairs_checked += checked[b];
    if (found[b]) {
      verdict.neutral = false;
      verdict.relabeling = found[b]->first;
      verdict.profile = found[b]->second;
      break;
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Distributions and distances

namespace {

std::vector<std::uint64_t> value_counts(const TabularScf& t) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(t.alternatives()), 0);
  for (auto w : t.winners()) ++counts[static_cast<std::size_t>(w - 1)];
  return counts;
}

}  // namespace

Distribution distribution(const SocialChoiceFn& f, const Exact& mode) {
  const auto table = tabulate(f, mode);
  const auto counts = value_counts(*table);
  Distribution d;
  for (auto c : counts) d.mu.push_back(make_rational(c, table->space().size()));
  return d;
}

SampledDistribution distribution(const SocialChoiceFn& f, const Sampled& mode) {
  const std::uint64_t blocks = (mode.samples + kSampleBlock - 1) / kSampleBlock;
  const auto q = static_cast<std::size_t>(f.alternatives());
  std::vector<std::vector<std::uint64_t>> hits(blocks, std::vector<std::uint64_t>(q, 0));
  parallel_blocks(blocks, mode.workers, [&](std::size_t b) {
    auto rng = block_rng(mode.seed, b);
    const std::uint64_t count = std::min(kSampleBlock, mode.samples - b * kSampleBlock);
    for (std::uint64_t s = 0; s < count; ++s)
      ++hits[b][static_cast<std::size_t>(f(random_profile(rng, f.alternatives(), f.voters())) - 1)];
  });
  SampledDistribution d;
  for (std::size_t a = 0; a < q; ++a) {
    std::uint64_t total = 0;
    for (const auto& h : hits) total += h[a];
    d.mu.push_back(bernoulli_estimate(total, mode.samples, mode.seed));
  }
  return d;
}

std::vector<Alternative> image(const SocialChoiceFn& f, const Exact& mode) {
  const auto counts = value_counts(*tabulate(f, mode));
  std::vector<Alternative> out;
  for (std::size_t a = 0; a < counts.size(); ++a)
    if (counts[a] > 0) out.push_back(static_cast<Alternative>(a + 1));
  return out;
}

Rational dist(const SocialChoiceFn& f, const SocialChoiceFn& g, const Exact& mode) {
  if (f.alternatives() != g.alternatives() || f.voters() != g.voters())
    throw DomainError("dist: functions have different dimensions");
  const auto tf = tabulate(f, mode);
  const auto tg = tabulate(g, mode);
  std::uint64_t differ = 0;
  for (std::uint64_t c = 0; c < tf->space().size(); ++c) differ += tf->at(c) != tg->at(c);
  return make_rational(differ, tf->space().size());
}

Rational dist_to_const(const SocialChoiceFn& f, const Exact& mode) {
  const auto table = tabulate(f, mode);
  const auto counts = value_counts(*table);
  const auto best = *std::max_element(counts.begin(), counts.end());
  return make_rational(table->space().size() - best, table->space().size());
}

Rational dist_to_two_valued(const SocialChoiceFn& f, const Exact& mode) {
  const auto table = tabulate(f, mode);
  auto counts = value_counts(*table);
  std::sort(counts.begin(), counts.end(), std::greater<>());
  std::uint64_t kept = counts[0] + (counts.size() > 1 ? counts[1] : 0);
  return make_rational(table->space().size() - kept, table->space().size());
}

Rational dist_to_dict_coordinate(const SocialChoiceFn& f, std::size_t i, const Exact& mode) {
  if (i >= f.voters()) throw DomainError("dist_to_dict: coordinate out of range");
  const auto table = tabulate(f, mode);
  const ProfileSpace& space = table->space();
  const auto q = static_cast<std::size_t>(f.alternatives());
  std::vector<std::uint64_t> joint(space.rankings_count() * q, 0);
  for (std::uint64_t c = 0; c < space.size(); ++c)
    ++joint[space.digit(c, i) * q + static_cast<std::size_t>(table->at(c) - 1)];
  std::uint64_t agree = 0;
  for (std::uint64_t s = 0; s < space.rankings_count(); ++s)
    agree += *std::max_element(joint.begin() + static_cast<std::ptrdiff_t>(s * q),
                               joint.begin() + static_cast<std::ptrdiff_t>((s + 1) * q));
  return make_rational(space.size() - agree, space.size());
}

Rational dist_to_dict(const SocialChoiceFn& f, const Exact& mode) {
  const auto table = tabulate(f, mode);
  const SocialChoiceFn g = SocialChoiceFn::from_table(table, f.name());
  Rational best = 1;
  for (std::size_t i = 0; i < f.voters(); ++i) best = std::min(best, dist_to_dict_coordinate(g, i, mode));
  return best;
}

Rational dist_to_nonmanip(const SocialChoiceFn& f, const Exact& mode) {
  const auto table = tabulate(f, mode);
  const SocialChoiceFn g = SocialChoiceFn::from_table(table, f.name());
  return std::min(dist_to_dict(g, mode), dist_to_two_valued(g, mode));
}

// ---------------------------------------------------------------------------
// File formats

void write_tabular_text(std::ostream& out, const TabularScf& table) {
  out << "q=" << table.alternatives() << " n=" << table.voters() << '\n';
  for (auto w : table.winners()) out << static_cast<int>(w) << '\n';
}

TabularScf read_tabular_text(std::istream& in) {
  std::string header;
  if (!std::getline(in, header)) throw DomainError("tabular file: missing header");
  int q = 0;
  std::size_t n = 0;
  char tail = 0;
  if (std::sscanf(header.c_str(), "q=%d n=%zu%c", &q, &n, &tail) != 2)
    throw DomainError("tabular file: header must be 'q=<q> n=<n>'");
  if (q < 1 || q > kMaxAlternatives || n == 0) throw DomainError("tabular file: bad dimensions");
  const auto total = profile_count(q, n);
  if (!total) throw DomainError("tabular file: dimensions too large");
  std::vector<std::uint8_t> winners;
  winners.reserve(*total);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    int w = 0;
    std::size_t used = 0;
    try {
      w = std::stoi(line, &used);
    } catch (const std::exception&) {
      throw DomainError("tabular file: bad winner line '" + line + "'");
    }
    if (used != line.size() || w < 1 || w > q) throw DomainError("tabular file: bad winner line '" + line + "'");
    winners.push_back(static_cast<std::uint8_t>(w));
  }
  return TabularScf(q, n, std::move(winners));
}

nlohmann::json tabular_to_json(const TabularScf& table) {
  nlohmann::json j;
  j["q"] = table.alternatives();
  j["n"] = table.voters();
  auto& arr = j["table"] = nlohmann::json::array();
  for (auto w : table.winners()) arr.push_back(static_cast<int>(w));
  return j;
}

TabularScf tabular_from_json(const nlohmann::json& j) {
  try {
    const int q = j.at("q").get<int>();
    const auto n = j.at("n").get<std::size_t>();
    std::vector<std::uint8_t> winners;
    for (const auto& w : j.at("table")) {
      const int v = w.get<int>();
      if (v < 1 || v > 255) throw DomainError("tabular JSON: winner out of range");
      winners.push_back(static_cast<std::uint8_t>(v));
    }
    return TabularScf(q, n, std::move(winners));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("tabular JSON: ") + e.what());
  }
}

TabularScf load_tabular_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open tabular file " + path);
  in >> std::ws;
  if (in.peek() == '{') {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw DomainError(std::string("tabular JSON: ") + e.what());
    }
    return tabular_from_json(j);
  }
  return read_tabular_text(in);
}

void save_tabular_file(const std::string& path, const TabularScf& table, bool json) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write tabular file " + path);
  if (json)
    out << tabular_to_json(table).dump() << '\n';
  else
    write_tabular_text(out, table);
}

}  // namespace gslab
