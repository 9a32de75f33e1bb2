#pragma once

// Manipulation pairs, manipulation points and r-manipulation points; exact and
// sampled censuses with the lower bounds they are compared against.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "gslab/parallel.hpp"
#include "gslab/ranking.hpp"
#include "gslab/rational.hpp"
#include "gslab/scf.hpp"

namespace gslab {

// (x, y) differ only in `voter` and voter `voter` strictly prefers f(y) under x.
struct ManipulationWitness {
  Profile x;
  Profile y;
  std::size_t voter = 0;
  // Size of the smallest block of adjacent positions containing every change.
  std::optional<int> r;
};

// Smallest window of consecutive positions outside which x and y agree
// (0 when x == y).
int block_span(const Ranking& x, const Ranking& y);

bool is_manipulation_pair(const SocialChoiceFn& f, const Profile& x, const Profile& y);

// Rankings reachable from x by permuting one block of min(r, q) consecutive
// positions. Scan order: window start, then Lehmer order of the block
// permutation. Duplicates and x itself are skipped.
std::vector<Ranking> window_neighbors(const Ranking& x, int r);

// First witness in scan order (voter, window start, block permutation).
std::optional<ManipulationWitness> is_r_manipulation_point(const SocialChoiceFn& f,
                                                           const Profile& x, int r);
// Any change of a single coordinate (r = q).
std::optional<ManipulationWitness> find_manipulation(const SocialChoiceFn& f, const Profile& x);

// For every profile of a tabulated f: the smallest r for which it is an
// r-manipulation point, or 0 if it is not a manipulation point at all.
class ManipulationIndex {
 public:
  explicit ManipulationIndex(const SocialChoiceFn& f, const Exact& mode = {});

  const SocialChoiceFn& function() const { return f_; }
  const TabularScf& table() const { return *table_; }
  const ProfileSpace& space() const { return table_->space(); }
  int min_block(std::uint64_t code) const { return levels_[code]; }
  bool manipulable(std::uint64_t code) const { return levels_[code] != 0; }
  bool r_manipulable(std::uint64_t code, int r) const {
    return levels_[code] != 0 && levels_[code] <= r;
  }
  bool manipulable(const Profile& x) const { return manipulable(space().encode(x)); }
  std::uint64_t count_manipulable() const;
  std::uint64_t count_r_manipulable(int r) const;

 private:
  SocialChoiceFn f_;
  std::shared_ptr<const TabularScf> table_;
  std::vector<std::uint8_t> levels_;
};

// Lower bounds on manipulation probabilities for neutral f with
// Dist(f, DICT) >= epsilon.
Rational bound_manipulable(const Rational& epsilon, std::size_t n, int q);        // e^2/(2 n^3 q^6 (q!)^2)
Rational bound_reset_pair(const Rational& epsilon, std::size_t n, int q);         // e^2/(2 n^4 q^6 (q!)^3)
Rational bound_four_manipulable(const Rational& epsilon, std::size_t n, int q);   // e^2/(10^4 n^3 q^30)
Rational bound_block4_pair(const Rational& epsilon, std::size_t n, int q);        // e^2/(10^9 n^4 q^34)

inline const char* kBoundManipulableFormula = "eps^2/(2*n^3*q^6*(q!)^2)";
inline const char* kBoundFourManipulableFormula = "eps^2/(10^4*n^3*q^30)";

struct ManipulationCensus {
  std::string rule;
  int q = 0;
  std::size_t n = 0;
  bool exact = true;
  std::uint64_t total = 0;  // profiles enumerated or sampled
  std::uint64_t manipulable = 0;
  std::array<std::uint64_t, 3> r_manipulable{};  // r = 2, 3, 4
  std::optional<std::uint64_t> seed;

  // Theorem inputs; epsilon = Dist(f, DICT), exact when available.
  std::optional<Rational> epsilon;
  bool neutral = false;
  bool applicable = false;  // q >= 4 and f neutral
  std::optional<Rational> bound_thm13;
  std::optional<Rational> bound_thm16;
  std::optional<bool> pass_thm13;  // exact mode only
  std::optional<bool> pass_thm16;

  Rational fraction_manipulable() const { return make_rational(manipulable, total); }
  Rational fraction_r(int r) const {
    return make_rational(r_manipulable[static_cast<std::size_t>(r - 2)], total);
  }
  Estimate estimate_manipulable() const;
  Estimate estimate_r(int r) const;
};

ManipulationCensus census(const SocialChoiceFn& f, const Exact& mode);
// epsilon and neutrality are computed exactly when (q!)^n fits under `exact_cap`.
ManipulationCensus census(const SocialChoiceFn& f, const Sampled& mode,
                          std::uint64_t exact_cap = kDefaultCap);

enum class PairFlavor {
  ResetCoordinate,  // re-draw X_i uniformly (Y = X allowed)
  AdjacentBlock4,   // uniformly permute a uniform window of 4 adjacent positions in X_i
};

// P((X, Y) is a manipulation pair) by Monte Carlo.
Estimate estimate_pair_probability(const SocialChoiceFn& f, PairFlavor flavor, const Sampled& mode);
// Same probability by enumerating the full law of (X, i, Y_i).
Rational pair_probability(const SocialChoiceFn& f, PairFlavor flavor, const Exact& mode = {});

struct GsOutcome {
  bool applicable = false;  // f takes >= 3 values and Dist(f, DICT) > 0
  std::string reason;
  std::optional<ManipulationWitness> witness;
};

// Exhaustive search for the first manipulation point in encode order.
// Throws TheoremViolation if an applicable f has none.
GsOutcome gs_witness(const SocialChoiceFn& f, const Exact& mode = {});

// First manipulation point in encode order, if any (no applicability check).
std::optional<ManipulationWitness> first_manipulation_point(const SocialChoiceFn& f,
                                                            const Exact& mode = {});

struct ScalingRow {
  std::size_t n = 0;
  Estimate manipulable;
  // Profiles where the top two plurality scores differ by at most one; a
  // profile with a larger margin is never a manipulation point.
  Estimate near_tie;
};

std::vector<ScalingRow> plurality_scaling_experiment(int q, const std::vector<std::size_t>& ns,
                                                     const Sampled& mode);

}  // namespace gslab
