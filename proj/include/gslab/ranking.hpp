#pragma once

// Rankings (elements of L_q), profiles (elements of L_q^n), adjacent
// transpositions, bubbling, Lehmer indexing and enumeration.
//
// Conventions used throughout the library:
//   - alternatives are the integers 1..q;
//   - positions within a ranking are 1-based, position 1 is the top;
//   - voters (profile coordinates) are 0-based indices.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <ranges>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gslab {

using Alternative = int;

inline constexpr int kMaxAlternatives = 16;

std::uint64_t factorial(int q);

// (q!)^n, or nullopt if it does not fit in 64 bits.
std::optional<std::uint64_t> profile_count(int q, std::size_t n);

// Throws CapExceeded if `count` exceeds `cap`; `what` names the enumeration.
void require_within_cap(std::optional<std::uint64_t> count, std::uint64_t cap,
                        std::string_view what);

class Ranking {
 public:
  Ranking() = default;

  static Ranking identity(int q);
  // order[k] is the alternative at position k+1. Throws DomainError unless
  // order is a permutation of 1..q.
  static Ranking from_order(std::span<const Alternative> order);
  static Ranking from_order(std::initializer_list<Alternative> order);

  int size() const { return q_; }
  // Alternative ranked at 1-based position `pos`.
  Alternative at(int pos) const { return order_[static_cast<std::size_t>(pos - 1)]; }
  // As a permutation of [q]: y(k) = y.at(k).
  Alternative operator()(int k) const { return at(k); }
  // 1-based position of alternative a.
  int rank_of(Alternative a) const;
  bool prefers(Alternative a, Alternative b) const { return rank_of(a) < rank_of(b); }
  Alternative top() const { return at(1); }

  std::vector<Alternative> order() const;
  Ranking inverse() const;
  // Exchange the entries at two positions.
  Ranking with_swapped_positions(int p1, int p2) const;
  // Exchange two alternatives wherever they are.
  Ranking with_swapped_alternatives(Alternative a, Alternative b) const;
  // Move the alternative at position `from` to position `to`, shifting the rest.
  Ranking with_moved(int from, int to) const;

  friend bool operator==(const Ranking&, const Ranking&) = default;
  friend auto operator<=>(const Ranking&, const Ranking&) = default;

 private:
  std::uint8_t q_ = 0;
  std::array<std::uint8_t, kMaxAlternatives> order_{};
};

// (y x)(k) = y(x(k)): relabel the alternatives of x through y.
Ranking compose(const Ranking& y, const Ranking& x);

// The operator [a:b]: swaps a and b if they are adjacent, identity otherwise.
class AdjTransposition {
 public:
  AdjTransposition(Alternative a, Alternative b);
  Alternative low() const { return low_; }
  Alternative high() const { return high_; }
  bool involves(Alternative a) const { return a == low_ || a == high_; }
  bool same_pair(Alternative a, Alternative b) const;

  friend bool operator==(const AdjTransposition&, const AdjTransposition&) = default;
  friend auto operator<=>(const AdjTransposition&, const AdjTransposition&) = default;

 private:
  Alternative low_;
  Alternative high_;
};

std::string to_string(const AdjTransposition& t);

Ranking apply_adjacent(const AdjTransposition& t, const Ranking& x);
bool are_adjacent(const Ranking& x, Alternative a, Alternative b);

// All q(q-1)/2 transpositions, ordered lexicographically by (low, high).
std::vector<AdjTransposition> all_transpositions(int q);

// t with apply_adjacent(t, x) == y and x != y, if any.
std::optional<AdjTransposition> adjacent_swap_between(const Ranking& x, const Ranking& y);

// Moves a one adjacent transposition at a time until it sits at target_pos.
// Returns every intermediate ranking, starting with x.
std::vector<Ranking> bubble_path(const Ranking& x, Alternative a, int target_pos);

// Lehmer code: identity -> 0, reverse -> q!-1, lexicographic in the order.
std::uint64_t encode(const Ranking& x);
Ranking decode(std::uint64_t code, int q);

Ranking random_ranking(std::mt19937_64& rng, int q);

// View over L_q in encode order.
inline auto enumerate_rankings(int q) {
  return std::views::iota(std::uint64_t{0}, factorial(q)) |
         std::views::transform([q](std::uint64_t c) { return decode(c, q); });
}

std::string to_string(const Ranking& x);
// Parses "3>1>2". Throws DomainError on malformed input.
Ranking parse_ranking(std::string_view text);

class Profile {
 public:
  Profile() = default;
  // Throws DomainError if empty or the rankings disagree on q.
  explicit Profile(std::vector<Ranking> voters);

  std::size_t size() const { return voters_.size(); }
  int alternatives() const { return voters_.empty() ? 0 : voters_.front().size(); }
  const Ranking& operator[](std::size_t i) const { return voters_[i]; }
  const std::vector<Ranking>& voters() const { return voters_; }
  auto begin() const { return voters_.begin(); }
  auto end() const { return voters_.end(); }

  void set(std::size_t i, const Ranking& r);
  Profile with(std::size_t i, const Ranking& r) const;

  friend bool operator==(const Profile&, const Profile&) = default;
  friend auto operator<=>(const Profile&, const Profile&) = default;

 private:
  std::vector<Ranking> voters_;
};

// Applies y to every coordinate.
Profile compose(const Ranking& y, const Profile& x);
// Applies t to coordinate i only ([a:b]_i x).
Profile apply_adjacent(const AdjTransposition& t, std::size_t i, const Profile& x);

Profile random_profile(std::mt19937_64& rng, int q, std::size_t n);

std::string to_string(const Profile& x);
// Parses "3>1>2|1>2>3".
Profile parse_profile(std::string_view text);

// Coordinates on which two equal-length profiles differ.
std::vector<std::size_t> differing_coordinates(const Profile& x, const Profile& y);

// Mixed-radix indexing of L_q^n: coordinate 0 is the most significant digit,
// each digit is that coordinate's Lehmer code.
class ProfileSpace {
 public:
  ProfileSpace(int q, std::size_t n);

  int alternatives() const { return q_; }
  std::size_t voters() const { return n_; }
  std::uint64_t rankings_count() const { return radix_; }
  std::uint64_t size() const { return size_; }

  std::uint64_t encode(const Profile& x) const;
  Profile decode(std::uint64_t code) const;
  std::uint64_t digit(std::uint64_t code, std::size_t i) const {
    return (code / weights_[i]) % radix_;
  }
  std::uint64_t with_digit(std::uint64_t code, std::size_t i, std::uint64_t digit) const {
    return code - this->digit(code, i) * weights_[i] + digit * weights_[i];
  }
  std::uint64_t weight(std::size_t i) const { return weights_[i]; }

 private:
  int q_;
  std::size_t n_;
  std::uint64_t radix_;
  std::uint64_t size_;
  std::vector<std::uint64_t> weights_;
};

// View over L_q^n in encode order. Throws CapExceeded if (q!)^n > cap.
inline auto enumerate_profiles(int q, std::size_t n, std::uint64_t cap) {
  require_within_cap(profile_count(q, n), cap, "profile enumeration");
  ProfileSpace space(q, n);
  return std::views::iota(std::uint64_t{0}, space.size()) |
         std::views::transform([space](std::uint64_t c) { return space.decode(c); });
}

// All rankings of q with their inverse positions precomputed, for hot loops.
class RankingTable {
 public:
  explicit RankingTable(int q);
  int alternatives() const { return q_; }
  std::uint64_t size() const { return rankings_.size(); }
  const Ranking& operator[](std::uint64_t code) const { return rankings_[code]; }
  int rank_of(std::uint64_t code, Alternative a) const {
    return ranks_[code * static_cast<std::uint64_t>(q_) + static_cast<std::uint64_t>(a - 1)];
  }

 private:
  int q_;
  std::vector<Ranking> rankings_;
  std::vector<std::uint8_t> ranks_;
};

}  // namespace gslab
