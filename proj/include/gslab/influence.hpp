#pragma once

// Plain and refined influences, boundaries between values of f, and the
// search for two large boundaries in different coordinates.

#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "gslab/parallel.hpp"
#include "gslab/ranking.hpp"
#include "gslab/rational.hpp"
#include "gslab/scf.hpp"

namespace gslab {

// X' re-randomizes coordinate i; the refined kinds instead keep X_i with
// probability 1/2 and apply z otherwise.
struct TotalInfluence {};                // P(f(X) != f(X'))
struct SingleInfluence {                 // P(f(X) = a, f(X') != a)
  Alternative a;
};
struct PairInfluence {                   // P(f(X) = a, f(X') = b)
  Alternative a;
  Alternative b;
};
struct PairRefinedInfluence {            // (1/2) P(f(X) = a, f(zX) = b)
  Alternative a;
  Alternative b;
  AdjTransposition z;
};
struct SingleRefinedInfluence {          // (1/2) P(f(X) = a, f(zX) != a)
  Alternative a;
  AdjTransposition z;
};
struct PairRefinedTotalInfluence {       // sum over z in T of the pair refined influence
  Alternative a;
  Alternative b;
};

using InfluenceKind = std::variant<TotalInfluence, SingleInfluence, PairInfluence,
                                   PairRefinedInfluence, SingleRefinedInfluence,
                                   PairRefinedTotalInfluence>;

// Exact integer counts behind every influence of one coordinate.
class CoordinateInfluence {
 public:
  CoordinateInfluence(const TabularScf& f, std::size_t i, unsigned workers = 1);

  int alternatives() const { return q_; }
  std::size_t coordinate() const { return i_; }

  // #{(x, sigma) : f(x) = a, f(x with x_i = sigma) = b}
  std::uint64_t pair_count(Alternative a, Alternative b) const;
  // #{x : f(x) = a, f(z_i x) = b}
  std::uint64_t refined_count(Alternative a, Alternative b, const AdjTransposition& z) const;

  Rational value(const InfluenceKind& kind) const;

 private:
  std::size_t zindex(const AdjTransposition& z) const;

  int q_;
  std::size_t i_;
  std::uint64_t profiles_;
  std::vector<AdjTransposition> transpositions_;
  std::vector<std::uint64_t> pair_;     // [a][b]
  std::vector<std::uint64_t> refined_;  // [z][a][b]
};

Rational influence(const SocialChoiceFn& f, std::size_t i, const InfluenceKind& kind,
                   const Exact& mode = {});
Estimate influence(const SocialChoiceFn& f, std::size_t i, const InfluenceKind& kind,
                   const Sampled& mode);

// Var[1{f(X) = a}] = mu_a (1 - mu_a).
Rational variance_indicator(const SocialChoiceFn& f, Alternative a, const Exact& mode = {});
Estimate variance_indicator(const SocialChoiceFn& f, Alternative a, const Sampled& mode);

struct BoundaryEdge {
  Profile x;
  Profile y;
  std::size_t coordinate = 0;
  std::optional<AdjTransposition> z;
};

struct AllTranspositions {};
// Plain boundary, one transposition, or the union over all transpositions.
using BoundaryScope = std::variant<std::monostate, AdjTransposition, AllTranspositions>;

// Edges (x, y) with f(x) = a, f(y) = b that differ only in coordinate i,
// ordered by x's code, then y's code (plain) or transposition order.
std::vector<BoundaryEdge> boundary_edges(const SocialChoiceFn& f, std::size_t i, Alternative a,
                                         Alternative b, const BoundaryScope& scope = {},
                                         const Exact& mode = {});

enum class BoundaryLemma {
  Plain,          // Dist(f, NONMANIP) >= eps, threshold 2 eps / (n q^2 (q-1)), c not in {a,b}
  PlainNeutral,   // neutral, Dist(f, DICT) >= eps, threshold eps / (n q^2 (q-1)), a,b,c,d distinct
  Refined,        // refined influences, threshold 2 eps / (n q^7), or 2-manipulable >= 4 eps / (n q^7)
  RefinedNeutral, // neutral refined, eps / (n q^7), or 2-manipulable >= 2 eps / (n q^7)
};

const char* to_string(BoundaryLemma lemma);

struct BoundaryPair {
  std::size_t i = 0;
  Alternative a = 0;
  Alternative b = 0;
  Rational influence;
};

struct LargeBoundaryResult {
  BoundaryLemma lemma = BoundaryLemma::Plain;
  Rational epsilon;
  Rational pair_threshold;
  std::optional<std::pair<BoundaryPair, BoundaryPair>> pairs;
  // Refined lemmas only.
  std::optional<Rational> manipulation_threshold;
  std::optional<Rational> two_manipulable_fraction;
  // Filled when the 2-manipulation branch is the one that holds.
  std::vector<Profile> two_manipulation_points;
};

Rational boundary_pair_threshold(BoundaryLemma lemma, const Rational& epsilon, std::size_t n, int q);

// Scans (i, a, b) then (j, c, d) lexicographically and returns the first
// pair of large boundaries; the refined lemmas fall back to the 2-manipulation
// branch. epsilon defaults to Dist(f, NONMANIP) for the general lemmas and
// Dist(f, DICT) for the neutral ones. Throws DomainError if the hypotheses fail
// and TheoremViolation if they hold but neither conclusion does.
LargeBoundaryResult find_large_boundary_pair(const SocialChoiceFn& f, BoundaryLemma lemma,
                                             std::optional<Rational> epsilon = std::nullopt,
                                             const Exact& mode = {});

// CSV with columns i,a,b,z,value_num,value_den: plain pair influences (empty z)
// and refined pair influences for every transposition. i is 1-based.
void write_influence_csv(std::ostream& out, const SocialChoiceFn& f, const Exact& mode = {});

}  // namespace gslab
