#pragma once

// Constructive maps from boundary edges (or pairs of boundary edges) to
// manipulation points, following canonical paths.

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "gslab/canonical_paths.hpp"
#include "gslab/manipulation.hpp"
#include "gslab/scf.hpp"

namespace gslab {

struct ExtractionOutcome {
  ManipulationWitness witness;
  // Which branch of the argument produced the witness; see the extractor.
  int branch = 0;
  // Edge of the canonical path where the branch fired.
  std::optional<std::size_t> edge;
  // Coordinates a brute-force sub-search ranged over.
  std::vector<std::size_t> coordinates;
  // Edges whose two-coordinate restriction had no manipulation point.
  std::size_t skipped_edges = 0;
};

class ManipulationExtractor {
 public:
  explicit ManipulationExtractor(const SocialChoiceFn& f, const Exact& mode = {});

  const SocialChoiceFn& function() const { return index_.function(); }
  const ManipulationIndex& index() const { return index_; }
  Alternative value(const Profile& x) const { return index_.table()(x); }

  // u and w differ in one coordinate by an adjacent transposition t with
  // f(u) != f(w) and t != [f(u):f(w)]: one of them is a 2-manipulation point.
  std::optional<ManipulationWitness> adjacent_edge(const Profile& u, const Profile& w) const;

  // (x, y) with f(x) = a, f(y) = b and x_i = t y_i for an adjacent
  // transposition t other than [a:b]. Throws DomainError otherwise.
  ManipulationWitness from_refined_boundary(const Profile& x, const Profile& y) const;

  // (x, y) in B_i^{a,b;T} and (z, y) in B_j^{c,b;T} with a, b, c distinct and
  // i != j. Returns a 3-manipulation point w agreeing with y off {i, j}.
  // branch: 1 the edges themselves, 2 while bubbling, 3 an edge of the
  // three-letter restriction, 4 brute force on that restriction.
  ExtractionOutcome from_triple(const Profile& x, const Profile& y, const Profile& z) const;

  // start in B_i^{a,b}, end in B_j^{c,d} with i != j and a != b. Walks the
  // v1 path; branch 1 a path vertex is a manipulation point, branch 2 brute
  // force on the two coordinates of an edge whose values take three values.
  ExtractionOutcome along_v1(const ProfilePair& start, const ProfilePair& end) const;

  // start = (x, [a:b]_i x) in B_i^{a,b;[a:b]}, end = (z, [c:d]_j z) in
  // B_j^{c,d;[c:d]}, with a, b, c, d distinct and i != j. Returns a
  // 4-manipulation point. branch: 1 along I, 2 along Pi, 3 across Delta.
  ExtractionOutcome along_refined(const ProfilePair& start, const ProfilePair& end) const;

 private:
  std::optional<ManipulationWitness> gs_on_coordinates(const Profile& base, std::size_t i,
                                                       std::size_t j) const;
  // Brute force on the restriction where the letters of `letters` are
  // reordered inside their blocks in coordinates i and j of `base`.
  ExtractionOutcome block_restriction(const Profile& base, std::size_t i, std::size_t j,
                                      const std::vector<Alternative>& letters, int branch_edges,
                                      int branch_gs) const;

  ManipulationIndex index_;
  mutable std::mutex memo_mutex_;
  mutable std::map<std::vector<std::uint64_t>, std::optional<ManipulationWitness>> memo_;
};

ManipulationWitness extract_2manip_from_refined_boundary(const SocialChoiceFn& f,
                                                         const Profile& x, const Profile& y);
ExtractionOutcome extract_3manip_from_triple(const SocialChoiceFn& f, const Profile& x,
                                             const Profile& y, const Profile& z);
ExtractionOutcome extract_manipulation_v1(const SocialChoiceFn& f, const ProfilePair& start,
                                          const ProfilePair& end);
ExtractionOutcome extract_manipulation_refined(const SocialChoiceFn& f, const ProfilePair& start,
                                               const ProfilePair& end);

// w agrees with y off {i, j}; w_i without c equals x_i or y_i without c;
// w_j without a equals z_j or y_j without a.
bool triple_locality_holds(const Profile& w, const Profile& x, const Profile& y, const Profile& z,
                           std::size_t i, std::size_t j, Alternative a, Alternative c);

// Some first member v on the path agrees with w in all but at most two
// coordinates, and on each of those w_k is v_k with a, b, c, d permuted among
// their places and then one alternative moved.
bool close_to_path(const Profile& w, const Path<ProfilePair>& path, const Letters& l);

}  // namespace gslab
