#include "gslab/ranking.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "gslab/errors.hpp"

namespace gslab {

std::uint64_t factorial(int q) {
  if (q < 0 || q > 20) throw DomainError("factorial: q out of range");
  std::uint64_t f = 1;
  for (int k = 2; k <= q; ++k) f *= static_cast<std::uint64_t>(k);
  return f;
}

std::optional<std::uint64_t> profile_count(int q, std::size_t n) {
  const std::uint64_t radix = factorial(q);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (radix != 0 && total > UINT64_MAX / radix) return std::nullopt;
    total *= radix;
  }
  return total;
}

void require_within_cap(std::optional<std::uint64_t> count, std::uint64_t cap,
                        std::string_view what) {
  if (!count || *count > cap) {
    std::ostringstream os;
    os << std::string(what) << ": ";
    if (count)
      os << *count;
    else
      os << "more than 2^64";
    os << " items exceed the cap of " << cap;
    throw CapExceeded(os.str());
  }
}

// ---------------------------------------------------------------------------
// Ranking

Ranking Ranking::identity(int q) {
  if (q < 1 || q > kMaxAlternatives) throw DomainError("ranking: q out of range");
  Ranking r;
  r.q_ = static_cast<std::uint8_t>(q);
  for (int k = 0; k < q; ++k) r.order_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(k + 1);
  return r;
}

Ranking Ranking::from_order(std::span<const Alternative> order) {
  const auto q = static_cast<int>(order.size());
  if (q < 1 || q > kMaxAlternatives) throw DomainError("ranking: q out of range");
  std::array<bool, kMaxAlternatives + 1> seen{};
  Ranking r;
  r.q_ = static_cast<std::uint8_t>(q);
  for (int k = 0; k < q; ++k) {
    const Alternative a = order[static_cast<std::size_t>(k)];
    if (a < 1 || a > q || seen[static_cast<std::size_t>(a)])
      throw DomainError("ranking: not a permutation of 1..q");
    seen[static_cast<std::size_t>(a)] = true;
    r.order_[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(a);
  }
  return r;
}

Ranking Ranking::from_order(std::initializer_list<Alternative> order) {
  return from_order(std::span<const Alternative>(order.begin(), order.size()));
}

int Ranking::rank_of(Alternative a) const {
  for (int k = 0; k < q_; ++k)
    if (order_[static_cast<std::size_t>(k)] == a) return k + 1;
  throw DomainError("rank_of: alternative out of range");
}

std::vector<Alternative> Ranking::order() const {
  return std::vector<Alternative>(order_.begin(), order_.begin() + q_);
}

Ranking Ranking::inverse() const {
  Ranking r = *this;
  for (int k = 1; k <= q_; ++k) r.order_[static_cast<std::size_t>(at(k) - 1)] = static_cast<std::uint8_t>(k);
  return r;
}

Ranking Ranking::with_swapped_positions(int p1, int p2) const {
  Ranking r = *this;
  std::swap(r.order_[static_cast<std::size_t>(p1 - 1)], r.order_[static_cast<std::size_t>(p2 - 1)]);
  return r;
}

Ranking Ranking::with_swapped_alternatives(Alternative a, Alternative b) const {
  return with_swapped_positions(rank_of(a), rank_of(b));
}

Ranking Ranking::with_moved(int from, int to) const {
  Ranking r = *this;
  auto first = r.order_.begin();
  if (from < to)
    std::rotate(first + (from - 1), first + from, first + to);
  else if (from > to)
    std::rotate(first + (to - 1), first + (from - 1), first + from);
  return r;
}

Ranking compose(const Ranking& y, const Ranking& x) {
  if (x.size() != y.size()) throw DomainError("compose: mismatched q");
  std::vector<Alternative> out(static_cast<std::size_t>(x.size()));
  for (int k = 1; k <= x.size(); ++k) out[static_cast<std::size_t>(k - 1)] = y(x(k));
  return Ranking::from_order(out);
}

// ---------------------------------------------------------------------------
// Adjacent transpositions

AdjTransposition::AdjTransposition(Alternative a, Alternative b)
    : low_(std::min(a, b)), high_(std::max(a, b)) {
  if (a == b) throw DomainError("transposition needs two distinct alternatives");
  if (low_ < 1) throw DomainError("transposition: alternative out of range");
}

bool AdjTransposition::same_pair(Alternative a, Alternative b) const {
  return std::min(a, b) == low_ && std::max(a, b) == high_;
}

std::string to_string(const AdjTransposition& t) {
  return "[" + std::to_string(t.low()) + ":" + std::to_string(t.high()) + "]";
}

bool are_adjacent(const Ranking& x, Alternative a, Alternative b) {
  return std::abs(x.rank_of(a) - x.rank_of(b)) == 1;
}

Ranking apply_adjacent(const AdjTransposition& t, const Ranking& x) {
  if (t.high() > x.size()) throw DomainError("apply_adjacent: alternative out of range");
  const int pa = x.rank_of(t.low());
  const int pb = x.rank_of(t.high());
  if (std::abs(pa - pb) != 1) return x;
  return x.with_swapped_positions(pa, pb);
}

std::vector<AdjTransposition> all_transpositions(int q) {
  std::vector<AdjTransposition> out;
  out.reserve(static_cast<std::size_t>(q * (q - 1) / 2));
  for (Alternative a = 1; a <= q; ++a)
    for (Alternative b = a + 1; b <= q; ++b) out.emplace_back(a, b);
  return out;
}

std::optional<AdjTransposition> adjacent_swap_between(const Ranking& x, const Ranking& y) {
  if (x.size() != y.size()) throw DomainError("adjacent_swap_between: mismatched q");
  int first = 0;
  int count = 0;
  for (int k = 1; k <= x.size(); ++k) {
    if (x.at(k) != y.at(k)) {
      if (count == 0) first = k;
      ++count;
    }
  }
  if (count != 2) return std::nullopt;
  if (first + 1 > x.size() || x.at(first) != y.at(first + 1) || x.at(first + 1) != y.at(first))
    return std::nullopt;
  return AdjTransposition(x.at(first), x.at(first + 1));
}

std::vector<Ranking> bubble_path(const Ranking& x, Alternative a, int target_pos) {
  if (target_pos < 1 || target_pos > x.size()) throw DomainError("bubble_path: target out of range");
  std::vector<Ranking> path{x};
  Ranking cur = x;
  int pos = cur.rank_of(a);
  while (pos != target_pos) {
    const int next = pos > target_pos ? pos - 1 : pos + 1;
    cur = cur.with_swapped_positions(pos, next);
    path.push_back(cur);
    pos = next;
  }
  return path;
}

// ---------------------------------------------------------------------------
// Lehmer codes

std::uint64_t encode(const Ranking& x) {
  const int q = x.size();
  std::uint64_t code = 0;
  for (int k = 1; k <= q; ++k) {
    std::uint64_t smaller_after = 0;
    for (int m = k + 1; m <= q; ++m)
      if (x.at(m) < x.at(k)) ++smaller_after;
    code = code * static_cast<std::uint64_t>(q - k + 1) + smaller_after;
  }
  return code;
}

Ranking decode(std::uint64_t code, int q) {
  const std::uint64_t total = factorial(q);
  if (code >= total) throw DomainError("decode: index out of range");
  std::vector<Alternative> pool(static_cast<std::size_t>(q));
  std::iota(pool.begin(), pool.end(), 1);
  std::vector<Alternative> out;
  out.reserve(static_cast<std::size_t>(q));
  std::uint64_t weight = total;
  for (int k = q; k >= 1; --k) {
    weight /= static_cast<std::uint64_t>(k);
    const auto idx = static_cast<std::size_t>(code / weight);
    code %= weight;
    out.push_back(pool[idx]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
  }
  return Ranking::from_order(out);
}

Ranking random_ranking(std::mt19937_64& rng, int q) {
  std::uniform_int_distribution<std::uint64_t> dist(0, factorial(q) - 1);
  return decode(dist(rng), q);
}

std::string to_string(const Ranking& x) {
  std::string s;
  for (int k = 1; k <= x.size(); ++k) {
    if (k > 1) s += '>';
    s += std::to_string(x.at(k));
  }
  return s;
}

Ranking parse_ranking(std::string_view text) {
  std::vector<Alternative> order;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find('>', pos), text.size());
    const std::string_view token = text.substr(pos, end - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
      throw DomainError("malformed ranking: '" + std::string(text) + "'");
    order.push_back(value);
    if (end == text.size()) break;
    pos = end + 1;
  }
  return Ranking::from_order(order);
}

// ---------------------------------------------------------------------------
// Profiles

Profile::Profile(std::vector<Ranking> voters) : voters_(std::move(voters)) {
  if (voters_.empty()) throw DomainError("profile needs at least one voter");
  for (const auto& r : voters_)
    if (r.size() != voters_.front().size()) throw DomainError("profile: voters disagree on q");
}

void Profile::set(std::size_t i, const Ranking& r) {
  if (r.size() != alternatives()) throw DomainError("profile: ranking has the wrong q");
  voters_.at(i) = r;
}

Profile Profile::with(std::size_t i, const Ranking& r) const {
  Profile p = *this;
  p.set(i, r);
  return p;
}

Profile compose(const Ranking& y, const Profile& x) {
  std::vector<Ranking> out;
  out.reserve(x.size());
  for (const auto& r : x) out.push_back(compose(y, r));
  return Profile(std::move(out));
}

Profile apply_adjacent(const AdjTransposition& t, std::size_t i, const Profile& x) {
  return x.with(i, apply_adjacent(t, x[i]));
}

Profile random_profile(std::mt19937_64& rng, int q, std::size_t n) {
  std::vector<Ranking> voters;
  voters.reserve(n);
  for (std::size_t i = 0; i < n; ++i) voters.push_back(random_ranking(rng, q));
  return Profile(std::move(voters));
}

std::string to_string(const Profile& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i > 0) s += '|';
    s += to_string(x[i]);
  }
  return s;
}

Profile parse_profile(std::string_view text) {
  std::vector<Ranking> voters;
  std::size_t pos = 0;
  while (true) {
    const std::size_t end = std::min(text.find('|', pos), text.size());
    voters.push_back(parse_ranking(text.substr(pos, end - pos)));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return Profile(std::move(voters));
}

std::vector<std::size_t> differing_coordinates(const Profile& x, const Profile& y) {
  if (x.size() != y.size()) throw DomainError("profiles have different numbers of voters");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) out.push_back(i);
  return out;
}

ProfileSpace::ProfileSpace(int q, std::size_t n) : q_(q), n_(n), radix_(factorial(q)) {
  if (n == 0) throw DomainError("profile space needs at least one voter");
  const auto total = profile_count(q, n);
  if (!total) throw CapExceeded("profile space does not fit in 64 bits");
  size_ = *total;
  weights_.assign(n, 1);
  for (std::size_t i = n - 1; i-- > 0;) weights_[i] = weights_[i + 1] * radix_;
}

std::uint64_t ProfileSpace::encode(const Profile& x) const {
  if (x.size() != n_ || x.alternatives() != q_) throw DomainError("profile does not match the space");
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < n_; ++i) code = code * radix_ + gslab::encode(x[i]);
  return code;
}

Profile ProfileSpace::decode(std::uint64_t code) const {
  if (code >= size_) throw DomainError("profile index out of range");
  std::vector<Ranking> voters;
  voters.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) voters.push_back(gslab::decode(digit(code, i), q_));
  return Profile(std::move(voters));
}

RankingTable::RankingTable(int q) : q_(q) {
  const std::uint64_t total = factorial(q);
  rankings_.reserve(total);
  ranks_.resize(total * static_cast<std::uint64_t>(q));
  for (std::uint64_t c = 0; c < total; ++c) {
    rankings_.push_back(gslab::decode(c, q));
    for (int k = 1; k <= q; ++k)
      ranks_[c * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(rankings_.back().at(k) - 1)] =
          static_cast<std::uint8_t>(k);
  }
}

}  // namespace gslab
