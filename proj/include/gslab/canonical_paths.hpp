#pragma once

// Concrete canonical paths on L_q and on pairs of profiles, their symmetry
// groups and the counting bounds they are checked against.

#include <cstdint>
#include <string>
#include <vector>

#include "gslab/paths.hpp"
#include "gslab/ranking.hpp"
#include "gslab/rational.hpp"

namespace gslab {

// Distinguished alternatives a, b, c, d (c, d unused by the two-letter maps).
struct Letters {
  Alternative a = 1;
  Alternative b = 2;
  Alternative c = 3;
  Alternative d = 4;
};

// x to y on L_q: bubble y(1) to position 1, then y(2) to position 2, and so on.
Path<Ranking> bubble_map_path(const Ranking& x, const Ranking& y);

// x to y inside {a above b}: the other alternatives are bubbled up, in y's
// order, to the top q-2 positions; then a and then b are bubbled to their
// places in y. Never applies [a:b].
Path<Ranking> order_preserving_path(Alternative a, Alternative b, const Ranking& x,
                                    const Ranking& y);

// x, y, z where y is z with a and b exchanged if x and z order them differently.
Path<Ranking> sim_canon_path(Alternative a, Alternative b, const Ranking& x, const Ranking& z);

// Parts "I" (exchange the places of c and d when x and z order them
// differently) and "Pi" (order_preserving_path keeping the c, d order).
// I never applies [a:b]; Pi never applies [c:d].
Path<Ranking> generic_refined_path(const Letters& l, const Ranking& x, const Ranking& z);

// For x with a, b adjacent. Parts "I" (bubble c, then d, next to the block
// without moving a or b), "Delta" (one edge reordering the four-block to z's
// order; zero-length when it already matches) and "Pi" (as above).
Path<Ranking> block_refined_path(const Letters& l, const Ranking& x, const Ranking& z);

// Path between B_i^{a,b} and B_j^{c,d} edges with 2n-2 vertices: the other
// coordinates move to their sim_canon middles in ascending order, one edge
// changes coordinates i and j, then the other coordinates move to z in
// descending order. Parts "I", "middle", "II".
Path<ProfilePair> profile_path_v1(const Letters& l, std::size_t i, std::size_t j,
                                  const ProfilePair& start, const ProfilePair& end);

// Path from (x, [a:b]_i x) to (z, [c:d]_j z). Parts "I" (partner [a:b]_i v),
// "Delta" (a single edge) and "Pi" (partner [c:d]_j w).
Path<ProfilePair> refined_profile_path(const Letters& l, std::size_t i, std::size_t j,
                                       const ProfilePair& start, const ProfilePair& end);

std::uint64_t ranking_key(const Ranking& x);
std::function<std::uint64_t(const ProfilePair&)> pair_key(int q, std::size_t n);

std::vector<Ranking> rankings_with(int q, Alternative above, Alternative below);
std::vector<Ranking> rankings_with_adjacent(int q, Alternative a, Alternative b);
// All (x, [a:b]_i x) with a, b adjacent in x_i.
std::vector<ProfilePair> refined_boundary_domain(int q, std::size_t n, std::size_t i,
                                                 Alternative a, Alternative b);

PathMap<Ranking> bubble_map(int q);
PathMap<Ranking> order_preserving_map(int q, Alternative a, Alternative b);
PathMap<Ranking> generic_refined_map(int q, const Letters& l);
PathMap<Ranking> block_refined_map(int q, const Letters& l);
PathMap<ProfilePair> refined_profile_map(int q, std::size_t n, const Letters& l, std::size_t i,
                                         std::size_t j);

// Bounds on max |Gamma^{-1}(z)|.
BigInt bound_bubble_map(int q);                        // q^2 q! / 2
BigInt bound_order_preserving(int q);                  // q^4 q!
BigInt bound_generic_refined(int q);                   // q^4 q!
BigInt bound_block_refined(int q);                     // 2 q^3 q!
BigInt bound_refined_profile(int q, std::size_t n);    // 7 n q^12 (q!)^n
// Bounds on max |h^{-1}(y)| for the manipulation extraction maps.
BigInt bound_extraction_v1(int q, std::size_t n);       // 2 n (q!)^(n+4)
BigInt bound_extraction_refined(int q, std::size_t n);  // 10^4 n q^16 (q!)^n

std::size_t max_length_order_preserving(int q);   // q^2
std::size_t max_length_refined_coordinate(int q); // q^2 + 2q
std::size_t max_length_refined_profile(int q, std::size_t n);  // 2n(q^2 + 2)

enum class RankingPathKind { Bubble, OrderPreserving, SimCanon, Generic, Block };

// Structural rules each construction promises, checked edge by edge. Returns
// one message per violation.
std::vector<std::string> discipline_violations(RankingPathKind kind, const Letters& l,
                                               const Ranking& x, const Ranking& z,
                                               const Path<Ranking>& p);
std::vector<std::string> discipline_violations_v1(const Letters& l, std::size_t i, std::size_t j,
                                                  const ProfilePair& start, const ProfilePair& end,
                                                  const Path<ProfilePair>& p);
std::vector<std::string> discipline_violations_refined(const Letters& l, std::size_t i,
                                                       std::size_t j, const ProfilePair& start,
                                                       const ProfilePair& end,
                                                       const Path<ProfilePair>& p);

}  // namespace gslab
