#include "gslab/extraction.hpp"

#include <algorithm>
#include <set>

#include "gslab/errors.hpp"

namespace gslab {

namespace {

std::size_t single_difference(const Profile& x, const Profile& y, const char* what) {
  if (x.size() != y.size() || x.alternatives() != y.alternatives())
    throw DomainError(std::string(what) + ": profiles of different shapes");
  auto diff = differing_coordinates(x, y);
  if (diff.size() != 1) throw DomainError(std::string(what) + ": profiles must differ in one coordinate");
  return diff.front();
}

std::vector<Alternative> without(const Ranking& x, Alternative s) {
  std::vector<Alternative> out;
  for (auto e : x.order())
    if (e != s) out.push_back(e);
  return out;
}

// Writes the letters, in the order given by u over 1..m, into `positions`.
Ranking fill_block(const Ranking& base, const std::vector<int>& positions,
                   const std::vector<Alternative>& letters, const Ranking& u) {
  auto order = base.order();
  for (std::size_t t = 0; t < positions.size(); ++t)
    order[static_cast<std::size_t>(positions[t] - 1)] = letters[static_cast<std::size_t>(u.at(static_cast<int>(t) + 1) - 1)];
  return Ranking::from_order(order);
}

std::vector<int> block_positions(const Ranking& x, const std::vector<Alternative>& letters) {
  std::vector<int> out;
  for (auto e : letters) out.push_back(x.rank_of(e));
  std::sort(out.begin(), out.end());
  if (out.back() - out.front() + 1 != static_cast<int>(out.size()))
    throw TheoremViolation("letters do not form a block");
  return out;
}

}  // namespace

ManipulationExtractor::ManipulationExtractor(const SocialChoiceFn& f, const Exact& mode)
    : index_(f, mode) {}

std::optional<ManipulationWitness> ManipulationExtractor::adjacent_edge(const Profile& u,
                                                                        const Profile& w) const {
  auto diff = differing_coordinates(u, w);
  if (diff.size() != 1) return std::nullopt;
  const std::size_t k = diff.front();
  auto t = adjacent_swap_between(u[k], w[k]);
  if (!t) return std::nullopt;
  const Alternative fu = value(u);
  const Alternative fw = value(w);
  if (fu == fw || t->same_pair(fu, fw)) return std::nullopt;
  // t keeps the order of fu and fw, so whichever end ranks the other value
  // higher can move to the other end.
  ManipulationWitness m = u[k].prefers(fw, fu) ? ManipulationWitness{u, w, k, std::nullopt}
                                               : ManipulationWitness{w, u, k, std::nullopt};
  m.r = block_span(m.x[k], m.y[k]);
  if (!is_manipulation_pair(function(), m.x, m.y))
    throw TheoremViolation("adjacent edge did not yield a manipulation pair");
  return m;
}

ManipulationWitness ManipulationExtractor::from_refined_boundary(const Profile& x,
                                                                 const Profile& y) const {
  const std::size_t i = single_difference(x, y, "refined boundary edge");
  auto t = adjacent_swap_between(x[i], y[i]);
  if (!t) throw DomainError("refined boundary edge: not an adjacent transposition");
  const Alternative a = value(x);
  const Alternative b = value(y);
  if (a == b) throw DomainError("refined boundary edge: f(x) == f(y)");
  if (t->same_pair(a, b)) throw DomainError("refined boundary edge: transposition is [a:b]");
  auto m = adjacent_edge(x, y);
  if (!m) throw TheoremViolation("refined boundary edge without a 2-manipulation point");
  return *m;
}

ExtractionOutcome ManipulationExtractor::block_restriction(const Profile& base, std::size_t i,
                                                           std::size_t j,
                                                           const std::vector<Alternative>& letters,
                                                           int branch_edges, int branch_gs) const {
  const int m = static_cast<int>(letters.size());
  const auto pos_i = block_positions(base[i], letters);
  const auto pos_j = block_positions(base[j], letters);
  auto lift = [&](const Profile& u) {
    Profile out = base;
    out.set(i, fill_block(base[i], pos_i, letters, u[0]));
    out.set(j, fill_block(base[j], pos_j, letters, u[1]));
    return out;
  };

  ExtractionOutcome out;
  out.coordinates = {i, j};
  for (const auto& u : enumerate_profiles(m, 2, kDefaultCap)) {
    const Profile full = lift(u);
    for (std::size_t k = 0; k < 2; ++k) {
      for (int p = 1; p < m; ++p) {
        Ranking moved = u[k].with_swapped_positions(p, p + 1);
        if (encode(moved) < encode(u[k])) continue;
        if (auto w = adjacent_edge(full, lift(u.with(k, moved)))) {
          out.witness = *w;
          out.branch = branch_edges;
          return out;
        }
      }
    }
  }

  SocialChoiceFn restricted(m, 2, "block restriction", [&](const Profile& u) {
    const Alternative v = value(lift(u));
    auto it = std::find(letters.begin(), letters.end(), v);
    if (it == letters.end()) throw TheoremViolation("block restriction leaves its letters");
    return static_cast<Alternative>(it - letters.begin()) + 1;
  });
  auto w = first_manipulation_point(restricted);
  if (!w) throw TheoremViolation("block restriction has no manipulation point");
  const std::size_t voter = w->voter == 0 ? i : j;
  out.witness = ManipulationWitness{lift(w->x), lift(w->y), voter, std::nullopt};
  out.witness.r = block_span(out.witness.x[voter], out.witness.y[voter]);
  if (!is_manipulation_pair(function(), out.witness.x, out.witness.y))
    throw TheoremViolation("lifted witness is not a manipulation pair");
  out.branch = branch_gs;
  return out;
}

ExtractionOutcome ManipulationExtractor::from_triple(const Profile& x, const Profile& y,
                                                     const Profile& z) const {
  const std::size_t i = single_difference(x, y, "triple (x, y)");
  const std::size_t j = single_difference(z, y, "triple (z, y)");
  if (i == j) throw DomainError("triple: coordinates must differ");
  if (!adjacent_swap_between(x[i], y[i]) || !adjacent_swap_between(z[j], y[j]))
    throw DomainError("triple: edges must be adjacent transpositions");
  const Alternative a = value(x);
  const Alternative b = value(y);
  const Alternative c = value(z);
  if (a == b || b == c || a == c) throw DomainError("triple: values must be distinct");

  ExtractionOutcome out;
  out.coordinates = {i, j};
  auto found = [&](const ManipulationWitness& w, int branch) {
    out.witness = w;
    out.branch = branch;
    return out;
  };
  if (auto w = adjacent_edge(x, y)) return found(*w, 1);
  if (auto w = adjacent_edge(z, y)) return found(*w, 1);

  Profile X = x, Y = y, Z = z;
  // Bubble `mover` in coordinate k until it touches the block of `pair`.
  auto bubble = [&](std::size_t k, Alternative mover, Alternative p1,
                    Alternative p2) -> std::optional<ManipulationWitness> {
    const int lo = std::min(Y[k].rank_of(p1), Y[k].rank_of(p2));
    const int hi = lo + 1;
    while (true) {
      const int r = Y[k].rank_of(mover);
      if (r == lo - 1 || r == hi + 1) return std::nullopt;
      const AdjTransposition t(mover, Y[k].at(r < lo ? r + 1 : r - 1));
      Profile nX = apply_adjacent(t, k, X);
      Profile nY = apply_adjacent(t, k, Y);
      Profile nZ = apply_adjacent(t, k, Z);
      using Edge = std::pair<const Profile*, const Profile*>;
      for (const auto& [u, w] : std::initializer_list<Edge>{{&X, &nX}, {&Y, &nY}, {&Z, &nZ}, {&nX, &nY}, {&nZ, &nY}})
        if (auto m = adjacent_edge(*u, *w)) return m;
      X = std::move(nX);
      Y = std::move(nY);
      Z = std::move(nZ);
    }
  };
  if (auto w = bubble(i, c, a, b)) return found(*w, 2);
  if (auto w = bubble(j, a, b, c)) return found(*w, 2);
  auto r = block_restriction(Y, i, j, {a, b, c}, 3, 4);
  r.coordinates = {i, j};
  return r;
}

std::optional<ManipulationWitness> ManipulationExtractor::gs_on_coordinates(const Profile& base,
                                                                            std::size_t i,
                                                                            std::size_t j) const {
  const std::size_t lo = std::min(i, j);
  const std::size_t hi = std::max(i, j);
  std::vector<std::uint64_t> key{lo, hi};
  std::map<std::size_t, Ranking> fixed;
  for (std::size_t k = 0; k < base.size(); ++k) {
    if (k == lo || k == hi) continue;
    fixed.emplace(k, base[k]);
    key.push_back(encode(base[k]));
  }
  {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  auto g = fixed.empty() ? function() : restrict_coordinates(function(), fixed);
  std::optional<ManipulationWitness> out;
  if (auto w = first_manipulation_point(g)) {
    Profile x = base.with(lo, w->x[0]).with(hi, w->x[1]);
    Profile y = base.with(lo, w->y[0]).with(hi, w->y[1]);
    const std::size_t voter = w->voter == 0 ? lo : hi;
    out = ManipulationWitness{x, y, voter, block_span(x[voter], y[voter])};
  }
  std::lock_guard<std::mutex> lock(memo_mutex_);
  memo_.emplace(key, out);
  return out;
}

ExtractionOutcome ManipulationExtractor::along_v1(const ProfilePair& start,
                                                  const ProfilePair& end) const {
  const std::size_t i = single_difference(start.first, start.second, "start");
  const std::size_t j = single_difference(end.first, end.second, "end");
  if (i == j) throw DomainError("start and end must change different coordinates");
  const Letters l{value(start.first), value(start.second), value(end.first), value(end.second)};
  if (l.a == l.b || l.c == l.d) throw DomainError("endpoints must be boundary edges");
  const auto path = profile_path_v1(l, i, j, start, end);
  const std::size_t n = start.first.size();
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j) others.push_back(k);
  const std::size_t m = others.size();

  ExtractionOutcome out;
  for (std::size_t e = 0; e + 1 < path.vertices.size(); ++e) {
    const auto& [u, u2] = path.vertices[e];
    const auto& [v, v2] = path.vertices[e + 1];
    for (const Profile* p : {&u, &u2, &v, &v2}) {
      if (!index_.manipulable(*p)) continue;
      out.witness = *find_manipulation(function(), *p);
      out.branch = 1;
      out.edge = e;
      return out;
    }
    std::set<Alternative> values{value(u), value(u2), value(v), value(v2)};
    if (values.size() < 3) continue;
    std::pair<std::size_t, std::size_t> coords =
        e < m ? std::pair{i, others[e]} : e == m ? std::pair{i, j} : std::pair{j, others[2 * m - e]};
    if (auto w = gs_on_coordinates(u, coords.first, coords.second)) {
      out.witness = *w;
      out.branch = 2;
      out.edge = e;
      out.coordinates = {std::min(coords.first, coords.second), std::max(coords.first, coords.second)};
      return out;
    }
    ++out.skipped_edges;
  }
  throw TheoremViolation("v1 path produced no manipulation point");
}

ExtractionOutcome ManipulationExtractor::along_refined(const ProfilePair& start,
                                                       const ProfilePair& end) const {
  const std::size_t i = single_difference(start.first, start.second, "start");
  const std::size_t j = single_difference(end.first, end.second, "end");
  if (i == j) throw DomainError("start and end must change different coordinates");
  const Letters l{value(start.first), value(start.second), value(end.first), value(end.second)};
  if (std::set<Alternative>{l.a, l.b, l.c, l.d}.size() != 4)
    throw DomainError("values at the endpoints must be four distinct alternatives");
  if (start.second != apply_adjacent(AdjTransposition(l.a, l.b), i, start.first))
    throw DomainError("start must be an [a:b] edge");
  if (end.second != apply_adjacent(AdjTransposition(l.c, l.d), j, end.first))
    throw DomainError("end must be a [c:d] edge");
  const auto path = refined_profile_path(l, i, j, start, end);
  const PathPart& first = *path.part("I");
  const PathPart& delta = *path.part("Delta");
  const PathPart& last = *path.part("Pi");
  auto values = [&](std::size_t k) {
    return std::pair{value(path.vertices[k].first), value(path.vertices[k].second)};
  };

  // `keep` = (v, v') has values (p, p'); (w, w') does not.
  auto resolve = [&](const ProfilePair& keep, const ProfilePair& other, Alternative p,
                     Alternative p2, int branch, std::size_t edge) {
    ExtractionOutcome out;
    out.branch = branch;
    out.edge = edge;
    try {
      if (value(other.first) != p) {
        if (auto w = adjacent_edge(keep.first, other.first)) {
          out.witness = *w;
          return out;
        }
        auto r = from_triple(keep.second, keep.first, other.first);
        out.witness = r.witness;
        out.coordinates = r.coordinates;
        return out;
      }
      if (value(other.second) == p2) throw TheoremViolation("edge does not change the values");
      if (auto w = adjacent_edge(keep.second, other.second)) {
        out.witness = *w;
        return out;
      }
      auto r = from_triple(keep.first, keep.second, other.second);
      out.witness = r.witness;
      out.coordinates = r.coordinates;
      return out;
    } catch (const DomainError& e) {
      throw TheoremViolation(std::string("refined path edge outside the triple lemma: ") + e.what());
    }
  };

  const std::pair ab{l.a, l.b};
  const std::pair cd{l.c, l.d};
  for (std::size_t k = first.first; k < first.last; ++k)
    if (values(k + 1) != ab) return resolve(path.vertices[k], path.vertices[k + 1], l.a, l.b, 1, k);
  for (std::size_t k = last.last; k > last.first; --k)
    if (values(k - 1) != cd) return resolve(path.vertices[k], path.vertices[k - 1], l.c, l.d, 2, k - 1);
  auto out = block_restriction(path.vertices[delta.first].first, i, j, {l.a, l.b, l.c, l.d}, 3, 3);
  out.edge = delta.first;
  return out;
}

ManipulationWitness extract_2manip_from_refined_boundary(const SocialChoiceFn& f,
                                                         const Profile& x, const Profile& y) {
  return ManipulationExtractor(f).from_refined_boundary(x, y);
}

ExtractionOutcome extract_3manip_from_triple(const SocialChoiceFn& f, const Profile& x,
                                             const Profile& y, const Profile& z) {
  return ManipulationExtractor(f).from_triple(x, y, z);
}

ExtractionOutcome extract_manipulation_v1(const SocialChoiceFn& f, const ProfilePair& start,
                                          const ProfilePair& end) {
  return ManipulationExtractor(f).along_v1(start, end);
}

ExtractionOutcome extract_manipulation_refined(const SocialChoiceFn& f, const ProfilePair& start,
                                               const ProfilePair& end) {
  return ManipulationExtractor(f).along_refined(start, end);
}

bool triple_locality_holds(const Profile& w, const Profile& x, const Profile& y, const Profile& z,
                           std::size_t i, std::size_t j, Alternative a, Alternative c) {
  for (std::size_t k = 0; k < w.size(); ++k)
    if (k != i && k != j && w[k] != y[k]) return false;
  auto wi = without(w[i], c);
  if (wi != without(x[i], c) && wi != without(y[i], c)) return false;
  auto wj = without(w[j], a);
  return wj == without(z[j], a) || wj == without(y[j], a);
}

namespace {

bool close_ranking(const Ranking& w, const Ranking& v, const Letters& l) {
  std::vector<Alternative> letters{l.a, l.b, l.c, l.d};
  std::vector<int> positions;
  for (auto e : letters) positions.push_back(v.rank_of(e));
  std::sort(letters.begin(), letters.end());
  do {
    auto order = v.order();
    for (std::size_t t = 0; t < 4; ++t) order[static_cast<std::size_t>(positions[t] - 1)] = letters[t];
    Ranking r = Ranking::from_order(order);
    if (r == w) return true;
    for (Alternative s = 1; s <= w.size(); ++s)
      if (without(r, s) == without(w, s)) return true;
  } while (std::next_permutation(letters.begin(), letters.end()));
  return false;
}

}  // namespace

bool close_to_path(const Profile& w, const Path<ProfilePair>& path, const Letters& l) {
  for (const auto& vertex : path.vertices) {
    const Profile& v = vertex.first;
    auto diff = differing_coordinates(w, v);
    if (diff.size() > 2) continue;
    if (std::all_of(diff.begin(), diff.end(), [&](std::size_t k) { return close_ranking(w[k], v[k], l); }))
      return true;
  }
  return false;
}

}  // namespace gslab
