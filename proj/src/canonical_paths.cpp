#include "gslab/canonical_paths.hpp"

#include <algorithm>
#include <set>

#include "gslab/errors.hpp"

namespace gslab {

namespace {

void require_letters(int q, std::initializer_list<Alternative> letters) {
  std::set<Alternative> seen;
  for (auto a : letters) {
    if (a < 1 || a > q) throw DomainError("alternative out of range");
    if (!seen.insert(a).second) throw DomainError("distinguished alternatives must be distinct");
  }
}

void require_same_q(const Ranking& x, const Ranking& y) {
  if (x.size() != y.size()) throw DomainError("rankings over different numbers of alternatives");
}

// Sorted positions of `letters` in x; throws unless they are consecutive.
std::pair<int, int> block_of(const Ranking& x, std::initializer_list<Alternative> letters) {
  int lo = x.size() + 1;
  int hi = 0;
  for (auto a : letters) {
    lo = std::min(lo, x.rank_of(a));
    hi = std::max(hi, x.rank_of(a));
  }
  if (hi - lo + 1 != static_cast<int>(letters.size())) throw DomainError("letters do not form a block");
  return {lo, hi};
}

// Bubbles m until it sits directly above or below the block [lo, hi].
std::vector<Ranking> bubble_next_to(const Ranking& x, Alternative m, std::pair<int, int> block) {
  const int r = x.rank_of(m);
  if (r >= block.first && r <= block.second) throw DomainError("alternative already inside block");
  return bubble_path(x, m, r < block.first ? block.first - 1 : block.second + 1);
}

// x with the letters in `letters` reordered, in place, as in `order`.
Ranking reorder_block(const Ranking& x, const Ranking& order,
                      std::initializer_list<Alternative> letters) {
  std::vector<int> positions;
  for (auto a : letters) positions.push_back(x.rank_of(a));
  std::sort(positions.begin(), positions.end());
  std::vector<Alternative> sorted(letters);
  std::sort(sorted.begin(), sorted.end(),
            [&](Alternative u, Alternative v) { return order.prefers(u, v); });
  auto out = x.order();
  for (std::size_t k = 0; k < positions.size(); ++k)
    out[static_cast<std::size_t>(positions[k] - 1)] = sorted[k];
  return Ranking::from_order(out);
}

// Partial path of a ranking construction with coordinate k varying.
ProfilePair with_coordinate(const ProfilePair& v, std::size_t k, const Ranking& r) {
  return {v.first.with(k, r), v.second.with(k, r)};
}

std::vector<Ranking> all_rankings(int q) {
  std::vector<Ranking> out;
  for (const auto& x : enumerate_rankings(q)) out.push_back(x);
  return out;
}

std::uint64_t power_of_factorial(int q, std::size_t n) {
  auto c = profile_count(q, n);
  if (!c) throw CapExceeded("profile space too large");
  return *c;
}

}  // namespace

Path<Ranking> bubble_map_path(const Ranking& x, const Ranking& y) {
  require_same_q(x, y);
  Path<Ranking> p;
  p.vertices.push_back(x);
  for (int k = 1; k <= x.size(); ++k) p.append(bubble_path(p.back(), y.at(k), k), "");
  return p;
}

Path<Ranking> order_preserving_path(Alternative a, Alternative b, const Ranking& x,
                                    const Ranking& y) {
  require_same_q(x, y);
  require_letters(x.size(), {a, b});
  if (!x.prefers(a, b) || !y.prefers(a, b)) throw DomainError("a must be above b at both ends");
  Path<Ranking> p;
  p.vertices.push_back(x);
  int k = 1;
  for (Alternative e : y.order()) {
    if (e == a || e == b) continue;
    p.append(bubble_path(p.back(), e, k++), "");
  }
  p.append(bubble_path(p.back(), a, y.rank_of(a)), "");
  p.append(bubble_path(p.back(), b, y.rank_of(b)), "");
  return p;
}

Path<Ranking> sim_canon_path(Alternative a, Alternative b, const Ranking& x, const Ranking& z) {
  require_same_q(x, z);
  require_letters(x.size(), {a, b});
  Ranking y = x.prefers(a, b) == z.prefers(a, b) ? z : z.with_swapped_alternatives(a, b);
  Path<Ranking> p;
  p.vertices = {x, y, z};
  p.parts = {{"I", 0, 1}, {"II", 1, 2}};
  return p;
}

namespace {

// Pi: keep the c, d order of the current vertex.
std::vector<Ranking> preserving_cd(const Letters& l, const Ranking& from, const Ranking& to) {
  return from.prefers(l.c, l.d) ? order_preserving_path(l.c, l.d, from, to).vertices
                                : order_preserving_path(l.d, l.c, from, to).vertices;
}

}  // namespace

Path<Ranking> generic_refined_path(const Letters& l, const Ranking& x, const Ranking& z) {
  require_same_q(x, z);
  require_letters(x.size(), {l.a, l.b, l.c, l.d});
  Path<Ranking> p;
  if (x.prefers(l.c, l.d) == z.prefers(l.c, l.d)) {
    p.append({x}, "I");
  } else {
    const int pc = x.rank_of(l.c);
    auto first = bubble_path(x, l.c, x.rank_of(l.d));
    auto second = bubble_path(first.back(), l.d, pc);
    first.insert(first.end(), second.begin() + 1, second.end());
    p.append(first, "I");
  }
  p.append(preserving_cd(l, p.back(), z), "Pi");
  return p;
}

Path<Ranking> block_refined_path(const Letters& l, const Ranking& x, const Ranking& z) {
  require_same_q(x, z);
  require_letters(x.size(), {l.a, l.b, l.c, l.d});
  if (!are_adjacent(x, l.a, l.b)) throw DomainError("a and b must be adjacent in the source");
  auto first = bubble_next_to(x, l.c, block_of(x, {l.a, l.b}));
  auto second = bubble_next_to(first.back(), l.d, block_of(first.back(), {l.a, l.b, l.c}));
  first.insert(first.end(), second.begin() + 1, second.end());
  Path<Ranking> p;
  p.append(first, "I");
  Ranking ordered = reorder_block(p.back(), z, {l.a, l.b, l.c, l.d});
  if (ordered == p.back())
    p.append({ordered}, "Delta");
  else
    p.append({p.back(), ordered}, "Delta");
  p.append(preserving_cd(l, p.back(), z), "Pi");
  return p;
}

namespace {

void require_edge(const ProfilePair& e, std::size_t coordinate, const char* what) {
  if (e.first.size() != e.second.size() || e.first.alternatives() != e.second.alternatives())
    throw DomainError(std::string(what) + ": profiles of different shapes");
  auto diff = differing_coordinates(e.first, e.second);
  if (diff.size() != 1 || diff.front() != coordinate)
    throw DomainError(std::string(what) + ": profiles must differ exactly in the given coordinate");
}

void require_shapes(const ProfilePair& s, const ProfilePair& e, std::size_t i, std::size_t j) {
  const std::size_t n = s.first.size();
  if (e.first.size() != n || s.first.alternatives() != e.first.alternatives())
    throw DomainError("endpoints of different shapes");
  if (n < 2 || i >= n || j >= n || i == j) throw DomainError("need distinct coordinates i and j");
}

}  // namespace

Path<ProfilePair> profile_path_v1(const Letters& l, std::size_t i, std::size_t j,
                                  const ProfilePair& start, const ProfilePair& end) {
  require_shapes(start, end, i, j);
  require_letters(start.first.alternatives(), {l.a, l.b});
  require_edge(start, i, "start");
  require_edge(end, j, "end");
  const std::size_t n = start.first.size();
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j) others.push_back(k);

  std::vector<ProfilePair> first{start};
  for (auto k : others) {
    Ranking middle = sim_canon_path(l.a, l.b, start.first[k], end.first[k]).vertices[1];
    first.push_back(with_coordinate(first.back(), k, middle));
  }
  ProfilePair turn = first.back();
  turn.first.set(i, end.first[i]);
  turn.first.set(j, end.first[j]);
  turn.second.set(i, end.second[i]);
  turn.second.set(j, end.second[j]);
  std::vector<ProfilePair> second{turn};
  for (auto it = others.rbegin(); it != others.rend(); ++it)
    second.push_back(with_coordinate(second.back(), *it, end.first[*it]));

  Path<ProfilePair> p;
  p.append(first, "I");
  p.append({first.back(), turn}, "middle");
  p.append(second, "II");
  return p;
}

Path<ProfilePair> refined_profile_path(const Letters& l, std::size_t i, std::size_t j,
                                       const ProfilePair& start, const ProfilePair& end) {
  require_shapes(start, end, i, j);
  const int q = start.first.alternatives();
  require_letters(q, {l.a, l.b, l.c, l.d});
  const AdjTransposition ab(l.a, l.b);
  const AdjTransposition cd(l.c, l.d);
  if (start.second != apply_adjacent(ab, i, start.first) || start.second == start.first)
    throw DomainError("start must be (x, [a:b]_i x) with x != [a:b]_i x");
  if (end.second != apply_adjacent(cd, j, end.first) || end.second == end.first)
    throw DomainError("end must be (z, [c:d]_j z) with z != [c:d]_j z");
  const Profile& x = start.first;
  const Profile& z = end.first;
  const std::size_t n = x.size();

  std::vector<std::vector<Ranking>> first_moves(n);
  std::vector<std::vector<Ranking>> last_moves(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i) {
      auto g = block_refined_path(l, x[k], z[k]);
      first_moves[k] = g.part_vertices("I");
      last_moves[k] = g.part_vertices("Pi");
    } else if (k == j) {
      const Letters swapped{l.c, l.d, l.a, l.b};
      auto g = reversed(block_refined_path(swapped, z[k], x[k]));
      first_moves[k] = g.part_vertices("Pi");
      last_moves[k] = g.part_vertices("I");
    } else {
      auto g = generic_refined_path(l, x[k], z[k]);
      first_moves[k] = g.part_vertices("I");
      last_moves[k] = g.part_vertices("Pi");
    }
  }

  std::vector<ProfilePair> first{start};
  Profile v = x;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 1; s < first_moves[k].size(); ++s) {
      v.set(k, first_moves[k][s]);
      first.push_back({v, apply_adjacent(ab, i, v)});
    }
  }
  Profile w = v;
  w.set(i, last_moves[i].front());
  w.set(j, last_moves[j].front());
  std::vector<ProfilePair> last{{w, apply_adjacent(cd, j, w)}};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 1; s < last_moves[k].size(); ++s) {
      w.set(k, last_moves[k][s]);
      last.push_back({w, apply_adjacent(cd, j, w)});
    }
  }

  Path<ProfilePair> p;
  p.append(first, "I");
  p.append({first.back(), last.front()}, "Delta");
  p.append(last, "Pi");
  return p;
}

std::uint64_t ranking_key(const Ranking& x) { return encode(x); }

std::function<std::uint64_t(const ProfilePair&)> pair_key(int q, std::size_t n) {
  const std::uint64_t size = power_of_factorial(q, n);
  if (size > (std::uint64_t{1} << 32)) throw CapExceeded("profile pairs do not fit a 64-bit key");
  ProfileSpace space(q, n);
  return [space, size](const ProfilePair& p) {
    return space.encode(p.first) * size + space.encode(p.second);
  };
}

std::vector<Ranking> rankings_with(int q, Alternative above, Alternative below) {
  std::vector<Ranking> out;
  for (const auto& x : enumerate_rankings(q))
    if (x.prefers(above, below)) out.push_back(x);
  return out;
}

std::vector<Ranking> rankings_with_adjacent(int q, Alternative a, Alternative b) {
  std::vector<Ranking> out;
  for (const auto& x : enumerate_rankings(q))
    if (are_adjacent(x, a, b)) out.push_back(x);
  return out;
}

std::vector<ProfilePair> refined_boundary_domain(int q, std::size_t n, std::size_t i,
                                                 Alternative a, Alternative b) {
  if (i >= n) throw DomainError("coordinate out of range");
  const AdjTransposition t(a, b);
  std::vector<ProfilePair> out;
  for (const auto& x : enumerate_profiles(q, n, kDefaultCap))
    if (are_adjacent(x[i], a, b)) out.push_back({x, apply_adjacent(t, i, x)});
  return out;
}

PathMap<Ranking> bubble_map(int q) {
  auto all = all_rankings(q);
  return {"bubble", all, all, bubble_map_path, static_cast<std::size_t>(q * (q - 1) / 2),
          ranking_key};
}

PathMap<Ranking> order_preserving_map(int q, Alternative a, Alternative b) {
  require_letters(q, {a, b});
  auto domain = rankings_with(q, a, b);
  return {"order_preserving", domain, domain,
          [a, b](const Ranking& x, const Ranking& y) { return order_preserving_path(a, b, x, y); },
          max_length_order_preserving(q), ranking_key};
}

PathMap<Ranking> generic_refined_map(int q, const Letters& l) {
  require_letters(q, {l.a, l.b, l.c, l.d});
  auto all = all_rankings(q);
  return {"generic", all, all,
          [l](const Ranking& x, const Ranking& z) { return generic_refined_path(l, x, z); },
          max_length_refined_coordinate(q), ranking_key};
}

PathMap<Ranking> block_refined_map(int q, const Letters& l) {
  require_letters(q, {l.a, l.b, l.c, l.d});
  auto all = all_rankings(q);
  return {"block", rankings_with_adjacent(q, l.a, l.b), all,
          [l](const Ranking& x, const Ranking& z) { return block_refined_path(l, x, z); },
          max_length_refined_coordinate(q), ranking_key};
}

PathMap<ProfilePair> refined_profile_map(int q, std::size_t n, const Letters& l, std::size_t i,
                                         std::size_t j) {
  require_letters(q, {l.a, l.b, l.c, l.d});
  if (n < 2 || i >= n || j >= n || i == j) throw DomainError("need distinct coordinates i and j");
  return {"refined", refined_boundary_domain(q, n, i, l.a, l.b),
          refined_boundary_domain(q, n, j, l.c, l.d),
          [l, i, j](const ProfilePair& s, const ProfilePair& e) {
            return refined_profile_path(l, i, j, s, e);
          },
          max_length_refined_profile(q, n), pair_key(q, n)};
}

BigInt bound_bubble_map(int q) { return pow_int(q, 2) * factorial(q) / 2; }
BigInt bound_order_preserving(int q) { return pow_int(q, 4) * factorial(q); }
BigInt bound_generic_refined(int q) { return pow_int(q, 4) * factorial(q); }
BigInt bound_block_refined(int q) { return 2 * pow_int(q, 3) * factorial(q); }

BigInt bound_refined_profile(int q, std::size_t n) {
  return 7 * BigInt(n) * pow_int(q, 12) * pow_int(static_cast<std::int64_t>(factorial(q)), static_cast<unsigned>(n));
}

BigInt bound_extraction_v1(int q, std::size_t n) {
  return 2 * BigInt(n) * pow_int(static_cast<std::int64_t>(factorial(q)), static_cast<unsigned>(n + 4));
}

BigInt bound_extraction_refined(int q, std::size_t n) {
  return pow_int(10, 4) * BigInt(n) * pow_int(q, 16) *
         pow_int(static_cast<std::int64_t>(factorial(q)), static_cast<unsigned>(n));
}

std::size_t max_length_order_preserving(int q) { return static_cast<std::size_t>(q * q); }
std::size_t max_length_refined_coordinate(int q) { return static_cast<std::size_t>(q * q + 2 * q); }
std::size_t max_length_refined_profile(int q, std::size_t n) {
  return 2 * n * static_cast<std::size_t>(q * q + 2);
}

namespace {

struct Report {
  std::vector<std::string> out;
  void fail(const std::string& what) { out.push_back(what); }
};

std::string edge_name(std::size_t k) { return "edge " + std::to_string(k); }

// Alternatives at positions where x and y differ.
std::set<Alternative> moved(const Ranking& x, const Ranking& y) {
  std::set<Alternative> out;
  for (int p = 1; p <= x.size(); ++p)
    if (x.at(p) != y.at(p)) out.insert(x.at(p));
  return out;
}

void check_ends(Report& r, const Path<Ranking>& p, const Ranking& x, const Ranking& z,
                std::size_t max_length) {
  if (p.vertices.empty() || p.front() != x || p.back() != z) r.fail("wrong endpoints");
  if (p.length() > max_length)
    r.fail("length " + std::to_string(p.length()) + " exceeds " + std::to_string(max_length));
}

void check_adjacent_edges(Report& r, const Path<Ranking>& p, std::size_t first, std::size_t last,
                          const std::optional<AdjTransposition>& forbidden) {
  for (std::size_t k = first; k < last; ++k) {
    auto t = adjacent_swap_between(p.vertices[k], p.vertices[k + 1]);
    if (!t)
      r.fail(edge_name(k) + " is not an adjacent transposition");
    else if (forbidden && *t == *forbidden)
      r.fail(edge_name(k) + " applies " + to_string(*t));
  }
}

}  // namespace

std::vector<std::string> discipline_violations(RankingPathKind kind, const Letters& l,
                                               const Ranking& x, const Ranking& z,
                                               const Path<Ranking>& p) {
  Report r;
  const int q = x.size();
  switch (kind) {
    case RankingPathKind::Bubble:
      check_ends(r, p, x, z, static_cast<std::size_t>(q * (q - 1) / 2));
      check_adjacent_edges(r, p, 0, p.length(), std::nullopt);
      break;
    case RankingPathKind::OrderPreserving:
      check_ends(r, p, x, z, max_length_order_preserving(q));
      check_adjacent_edges(r, p, 0, p.length(), AdjTransposition(l.a, l.b));
      for (const auto& v : p.vertices)
        if (!v.prefers(l.a, l.b)) r.fail("vertex " + to_string(v) + " leaves {a above b}");
      break;
    case RankingPathKind::SimCanon: {
      check_ends(r, p, x, z, 2);
      if (p.vertices.size() != 3) {
        r.fail("expected three vertices");
        break;
      }
      const Ranking& y = p.vertices[1];
      if (y.prefers(l.a, l.b) != x.prefers(l.a, l.b)) r.fail("middle changes the a, b order");
      if (y != z && y != z.with_swapped_alternatives(l.a, l.b))
        r.fail("middle differs from the target by more than the a, b exchange");
      break;
    }
    case RankingPathKind::Generic:
    case RankingPathKind::Block: {
      check_ends(r, p, x, z, max_length_refined_coordinate(q));
      const PathPart* first = p.part("I");
      const PathPart* last = p.part("Pi");
      if (!first || !last) {
        r.fail("missing parts");
        break;
      }
      check_adjacent_edges(r, p, first->first, first->last, AdjTransposition(l.a, l.b));
      check_adjacent_edges(r, p, last->first, last->last, AdjTransposition(l.c, l.d));
      for (std::size_t k = last->first; k <= last->last; ++k)
        if (p.vertices[k].prefers(l.c, l.d) != z.prefers(l.c, l.d))
          r.fail("Pi changes the c, d order at vertex " + std::to_string(k));
      if (kind == RankingPathKind::Generic) {
        for (std::size_t k = first->first; k < first->last; ++k) {
          auto t = adjacent_swap_between(p.vertices[k], p.vertices[k + 1]);
          if (t && !t->involves(l.c) && !t->involves(l.d))
            r.fail(edge_name(k) + " in I moves neither c nor d");
        }
        break;
      }
      for (std::size_t k = first->first; k <= first->last; ++k)
        if (p.vertices[k].rank_of(l.a) != x.rank_of(l.a) || p.vertices[k].rank_of(l.b) != x.rank_of(l.b))
          r.fail("I moves a or b at vertex " + std::to_string(k));
      const PathPart* delta = p.part("Delta");
      if (!delta || delta->last - delta->first > 1) {
        r.fail("Delta must be at most one edge");
        break;
      }
      const Ranking& before = p.vertices[delta->first];
      try {
        block_of(before, {l.a, l.b, l.c, l.d});
      } catch (const DomainError&) {
        r.fail("a, b, c, d are not a block after I");
      }
      for (auto e : moved(before, p.vertices[delta->last]))
        if (e != l.a && e != l.b && e != l.c && e != l.d) r.fail("Delta moves another alternative");
      break;
    }
  }
  return r.out;
}

std::vector<std::string> discipline_violations_v1(const Letters&, std::size_t i, std::size_t j,
                                                  const ProfilePair& start, const ProfilePair& end,
                                                  const Path<ProfilePair>& p) {
  Report r;
  const std::size_t n = start.first.size();
  if (p.vertices.size() != 2 * n - 2) r.fail("expected 2n-2 vertices");
  if (p.vertices.empty() || p.front() != start || p.back() != end) r.fail("wrong endpoints");
  if (!r.out.empty()) return r.out;
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < n; ++k)
    if (k != i && k != j) others.push_back(k);
  std::vector<std::vector<std::size_t>> allowed;
  for (auto k : others) allowed.push_back({k});
  allowed.push_back({i, j});
  for (auto it = others.rbegin(); it != others.rend(); ++it) allowed.push_back({*it});
  for (std::size_t e = 0; e + 1 < p.vertices.size(); ++e) {
    const auto& u = p.vertices[e];
    const auto& v = p.vertices[e + 1];
    for (auto side : {&ProfilePair::first, &ProfilePair::second}) {
      for (auto k : differing_coordinates(u.*side, v.*side))
        if (std::find(allowed[e].begin(), allowed[e].end(), k) == allowed[e].end())
          r.fail(edge_name(e) + " changes coordinate " + std::to_string(k));
    }
    if (allowed[e].size() == 1 && u.first[allowed[e][0]] != u.second[allowed[e][0]])
      r.fail(edge_name(e) + " updates a coordinate where the pair differs");
  }
  return r.out;
}

std::vector<std::string> discipline_violations_refined(const Letters& l, std::size_t i,
                                                       std::size_t j, const ProfilePair& start,
                                                       const ProfilePair& end,
                                                       const Path<ProfilePair>& p) {
  Report r;
  const int q = start.first.alternatives();
  const std::size_t n = start.first.size();
  if (p.vertices.empty() || p.front() != start || p.back() != end) r.fail("wrong endpoints");
  if (p.length() > max_length_refined_profile(q, n)) r.fail("length exceeds 2n(q^2+2)");
  const PathPart* first = p.part("I");
  const PathPart* delta = p.part("Delta");
  const PathPart* last = p.part("Pi");
  if (!first || !delta || !last || delta->last != delta->first + 1) {
    r.fail("parts must be I, one Delta edge, Pi");
    return r.out;
  }
  const AdjTransposition ab(l.a, l.b);
  const AdjTransposition cd(l.c, l.d);
  for (std::size_t k = first->first; k <= first->last; ++k) {
    const auto& v = p.vertices[k];
    if (v.second != apply_adjacent(ab, i, v.first) || v.second == v.first)
      r.fail("vertex " + std::to_string(k) + " leaves B_i^{a,b;[a:b]}");
  }
  for (std::size_t k = last->first; k <= last->last; ++k) {
    const auto& w = p.vertices[k];
    if (w.second != apply_adjacent(cd, j, w.first) || w.second == w.first)
      r.fail("vertex " + std::to_string(k) + " leaves B_j^{c,d;[c:d]}");
  }
  auto one_swap = [&](std::size_t k, const AdjTransposition& keep) {
    const auto& u = p.vertices[k].first;
    const auto& v = p.vertices[k + 1].first;
    auto diff = differing_coordinates(u, v);
    if (diff.size() != 1) {
      r.fail(edge_name(k) + " changes " + std::to_string(diff.size()) + " coordinates");
      return;
    }
    auto t = adjacent_swap_between(u[diff[0]], v[diff[0]]);
    if (!t)
      r.fail(edge_name(k) + " is not an adjacent transposition");
    else if (*t == keep)
      r.fail(edge_name(k) + " applies " + to_string(keep));
  };
  for (std::size_t k = first->first; k < first->last; ++k) one_swap(k, ab);
  for (std::size_t k = last->first; k < last->last; ++k) one_swap(k, cd);
  const auto& v = p.vertices[delta->first].first;
  const auto& w = p.vertices[delta->last].first;
  for (auto k : differing_coordinates(v, w)) {
    if (k != i && k != j) r.fail("Delta changes coordinate " + std::to_string(k));
    for (auto e : moved(v[k], w[k]))
      if (e != l.a && e != l.b && e != l.c && e != l.d) r.fail("Delta moves another alternative");
  }
  return r.out;
}

}  // namespace gslab
