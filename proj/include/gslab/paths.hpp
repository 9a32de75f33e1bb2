#pragma once

// Generic canonical path machinery: paths with labelled parts, path maps,
// relabeling group actions, invariance checks and inverse-image censuses.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gslab/parallel.hpp"
#include "gslab/ranking.hpp"
#include "gslab/rational.hpp"

namespace gslab {

using ProfilePair = std::pair<Profile, Profile>;

std::string to_string(const ProfilePair& p);

// Vertices [first, last] of a path form one named part. A zero-length part has
// first == last.
struct PathPart {
  std::string label;
  std::size_t first = 0;
  std::size_t last = 0;
};

template <class V>
struct Path {
  std::vector<V> vertices;
  std::vector<PathPart> parts;

  std::size_t length() const { return vertices.empty() ? 0 : vertices.size() - 1; }
  const V& front() const { return vertices.front(); }
  const V& back() const { return vertices.back(); }

  const PathPart* part(const std::string& label) const {
    for (const auto& p : parts)
      if (p.label == label) return &p;
    return nullptr;
  }

  std::vector<V> part_vertices(const std::string& label) const {
    const PathPart* p = part(label);
    if (!p) return {};
    return std::vector<V>(vertices.begin() + static_cast<std::ptrdiff_t>(p->first),
                          vertices.begin() + static_cast<std::ptrdiff_t>(p->last) + 1);
  }

  // Appends `seq`, whose first vertex must be the current last vertex, as a part.
  void append(const std::vector<V>& seq, const std::string& label) {
    if (seq.empty()) throw std::logic_error("empty path segment");
    std::size_t first = 0;
    if (vertices.empty()) {
      vertices.push_back(seq.front());
    } else {
      if (!(vertices.back() == seq.front())) throw std::logic_error("path segments do not join");
      first = vertices.size() - 1;
    }
    vertices.insert(vertices.end(), seq.begin() + 1, seq.end());
    if (!label.empty()) parts.push_back({label, first, vertices.size() - 1});
  }
};

template <class V>
Path<V> reversed(const Path<V>& p) {
  Path<V> out;
  out.vertices.assign(p.vertices.rbegin(), p.vertices.rend());
  const std::size_t last = p.vertices.size() - 1;
  for (auto it = p.parts.rbegin(); it != p.parts.rend(); ++it)
    out.parts.push_back({it->label, last - it->last, last - it->first});
  return out;
}

// Gamma : L1 x L2 -> paths of length <= max_length.
template <class V>
struct PathMap {
  std::string name;
  std::vector<V> sources;
  std::vector<V> targets;
  std::function<Path<V>(const V&, const V&)> generate;
  std::size_t max_length = 0;
  // Injective on the vertex universe.
  std::function<std::uint64_t(const V&)> key;
};

// A group of relabelings of the alternatives acting on V.
template <class V>
struct GroupAction {
  std::string name;
  std::vector<Ranking> elements;  // identity first
  std::function<V(const Ranking&, const V&)> act;
};

// All relabelings p with p(a) = a for every a in `fixed`, identity first.
std::vector<Ranking> relabelings_fixing(int q, const std::vector<Alternative>& fixed);

GroupAction<Ranking> relabeling_action_rankings(int q, const std::vector<Alternative>& fixed);
GroupAction<ProfilePair> relabeling_action_pairs(int q, const std::vector<Alternative>& fixed);

struct InvarianceVerdict {
  bool group_closed = true;       // identity present, closed under composition
  bool domains_closed = true;     // H L1 = L1 and H L2 = L2
  bool equivariant = true;        // Gamma(hx, hy) = h Gamma(x, y)
  bool fixed_point_free = true;   // h v != v for h != id and every visited vertex v
  std::uint64_t checks = 0;
  std::string witness;            // first failure, if any

  bool pass() const { return group_closed && domains_closed && equivariant && fixed_point_free; }
};

namespace detail {

template <class V>
void fail(InvarianceVerdict& v, bool InvarianceVerdict::*flag, const std::string& what) {
  if (v.*flag && v.witness.empty()) v.witness = what;
  v.*flag = false;
}

template <class V>
std::set<std::uint64_t> key_set(const PathMap<V>& map, const std::vector<V>& items) {
  std::set<std::uint64_t> out;
  for (const auto& x : items) out.insert(map.key(x));
  return out;
}

}  // namespace detail

// Exhaustive over (h, x, y), or over `sampled->samples` random triples.
template <class V>
InvarianceVerdict verify_invariance(const PathMap<V>& map, const GroupAction<V>& group,
                                    const std::optional<Sampled>& sampled = std::nullopt) {
  InvarianceVerdict v;
  const auto& els = group.elements;
  if (els.empty() || els.front() != Ranking::identity(els.front().size())) {
    detail::fail<V>(v, &InvarianceVerdict::group_closed, "identity missing or not first");
    return v;
  }
  std::set<Ranking> members(els.begin(), els.end());
  for (const auto& g : els) {
    for (const auto& h : els) {
      ++v.checks;
      if (!members.count(compose(g, h)))
        detail::fail<V>(v, &InvarianceVerdict::group_closed,
                        "not closed: " + to_string(g) + " * " + to_string(h));
    }
  }

  auto src = detail::key_set(map, map.sources);
  auto dst = detail::key_set(map, map.targets);
  for (const auto& h : els) {
    for (const auto& x : map.sources)
      if (!src.count(map.key(group.act(h, x))))
        detail::fail<V>(v, &InvarianceVerdict::domains_closed, "source leaves L1 under " + to_string(h));
    for (const auto& y : map.targets)
      if (!dst.count(map.key(group.act(h, y))))
        detail::fail<V>(v, &InvarianceVerdict::domains_closed, "target leaves L2 under " + to_string(h));
  }
  if (!v.domains_closed) return v;

  auto check = [&](const Ranking& h, const V& x, const V& y, bool identity) {
    ++v.checks;
    Path<V> base = map.generate(x, y);
    if (!identity) {
      for (const auto& u : base.vertices) {
        if (map.key(group.act(h, u)) == map.key(u)) {
          detail::fail<V>(v, &InvarianceVerdict::fixed_point_free,
                          to_string(h) + " fixes " + to_string(u));
          break;
        }
      }
    }
    Path<V> moved = map.generate(group.act(h, x), group.act(h, y));
    bool same = moved.vertices.size() == base.vertices.size();
    for (std::size_t k = 0; same && k < base.vertices.size(); ++k)
      same = map.key(moved.vertices[k]) == map.key(group.act(h, base.vertices[k]));
    if (!same)
      detail::fail<V>(v, &InvarianceVerdict::equivariant,
                      "h=" + to_string(h) + " x=" + to_string(x) + " y=" + to_string(y));
  };

  if (sampled) {
    auto rng = block_rng(sampled->seed, 0);
    std::uniform_int_distribution<std::size_t> ph(0, els.size() - 1);
    std::uniform_int_distribution<std::size_t> px(0, map.sources.size() - 1);
    std::uniform_int_distribution<std::size_t> py(0, map.targets.size() - 1);
    for (std::uint64_t s = 0; s < sampled->samples; ++s) {
      std::size_t k = ph(rng);
      check(els[k], map.sources[px(rng)], map.targets[py(rng)], k == 0);
    }
    return v;
  }
  for (std::size_t k = 0; k < els.size(); ++k)
    for (const auto& x : map.sources)
      for (const auto& y : map.targets) check(els[k], x, y, k == 0);
  return v;
}

struct CensusRow {
  std::string vertex;
  std::optional<std::size_t> step;  // empty for |Gamma^{-1}(z)|
  std::uint64_t count = 0;
};

struct InverseImageCensus {
  std::string map;
  std::uint64_t sources = 0;
  std::uint64_t targets = 0;
  std::uint64_t paths = 0;
  std::size_t declared_max_length = 0;
  std::size_t observed_max_length = 0;
  bool endpoints_ok = true;
  bool lengths_ok = true;
  // max over z of |Gamma_i^{-1}(z)| for i = 0..observed_max_length
  std::vector<std::uint64_t> max_step;
  std::uint64_t max_step_overall = 0;
  // max over z of |Gamma^{-1}(z)|
  std::uint64_t max_total = 0;
  std::uint64_t distinct_vertices = 0;
  // |Gamma^{-1}(z)| <= sum_i |Gamma_i^{-1}(z)| for every z
  bool union_bound_ok = true;
  std::vector<CensusRow> rows;  // filled when requested
};

// Exact counts over L1 x L2.
template <class V>
InverseImageCensus inverse_image_census(const PathMap<V>& map, bool keep_rows = false,
                                        unsigned workers = 1) {
  InverseImageCensus c;
  c.map = map.name;
  c.sources = map.sources.size();
  c.targets = map.targets.size();
  c.declared_max_length = map.max_length;

  struct Local {
    std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> steps;
    std::unordered_map<std::uint64_t, std::uint64_t> totals;
    std::map<std::uint64_t, V> names;
    std::size_t max_len = 0;
    std::uint64_t paths = 0;
    bool endpoints_ok = true;
    bool lengths_ok = true;
  };
  const std::size_t blocks = map.sources.size();
  std::vector<Local> locals(blocks);
  parallel_blocks(blocks, workers, [&](std::size_t b) {
    Local& l = locals[b];
    const V& x = map.sources[b];
    std::vector<std::uint64_t> keys;
    for (const auto& y : map.targets) {
      Path<V> p = map.generate(x, y);
      ++l.paths;
      if (p.vertices.empty() || map.key(p.front()) != map.key(x) || map.key(p.back()) != map.key(y))
        l.endpoints_ok = false;
      if (p.length() > map.max_length) l.lengths_ok = false;
      l.max_len = std::max(l.max_len, p.length());
      keys.clear();
      for (std::size_t s = 0; s < p.vertices.size(); ++s) {
        auto k = map.key(p.vertices[s]);
        auto& v = l.steps[k];
        if (v.size() <= s) v.resize(s + 1, 0);
        ++v[s];
        keys.push_back(k);
        if (keep_rows && !l.names.count(k)) l.names.emplace(k, p.vertices[s]);
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      for (auto k : keys) ++l.totals[k];
    }
  });

  std::map<std::uint64_t, std::vector<std::uint64_t>> steps;
  std::map<std::uint64_t, std::uint64_t> totals;
  std::map<std::uint64_t, V> names;
  for (auto& l : locals) {
    c.paths += l.paths;
    c.endpoints_ok = c.endpoints_ok && l.endpoints_ok;
    c.lengths_ok = c.lengths_ok && l.lengths_ok;
    c.observed_max_length = std::max(c.observed_max_length, l.max_len);
    for (auto& [k, v] : l.steps) {
      auto& dst = steps[k];
      if (dst.size() < v.size()) dst.resize(v.size(), 0);
      for (std::size_t s = 0; s < v.size(); ++s) dst[s] += v[s];
    }
    for (auto& [k, t] : l.totals) totals[k] += t;
    if (keep_rows) names.merge(l.names);
  }
  c.max_step.assign(c.observed_max_length + 1, 0);
  for (const auto& [k, v] : steps) {
    std::uint64_t sum = 0;
    for (std::size_t s = 0; s < v.size(); ++s) {
      c.max_step[s] = std::max(c.max_step[s], v[s]);
      sum += v[s];
    }
    if (totals[k] > sum) c.union_bound_ok = false;
  }
  for (auto m : c.max_step) c.max_step_overall = std::max(c.max_step_overall, m);
  for (const auto& [k, t] : totals) c.max_total = std::max(c.max_total, t);
  c.distinct_vertices = totals.size();
  if (keep_rows) {
    for (const auto& [k, v] : steps) {
      const std::string name = to_string(names.at(k));
      for (std::size_t s = 0; s < v.size(); ++s)
        if (v[s]) c.rows.push_back({name, s, v[s]});
      c.rows.push_back({name, std::nullopt, totals[k]});
    }
  }
  return c;
}

// Number of (x, y) whose path has `vertex` as the first (or last) vertex of
// the part `label`, keyed by vertex.
template <class V>
std::map<std::uint64_t, std::uint64_t> part_endpoint_census(const PathMap<V>& map,
                                                            const std::string& label, bool last) {
  std::map<std::uint64_t, std::uint64_t> counts;
  for (const auto& x : map.sources) {
    for (const auto& y : map.targets) {
      Path<V> p = map.generate(x, y);
      const PathPart* part = p.part(label);
      if (!part) throw std::logic_error("path has no part " + label);
      ++counts[map.key(p.vertices[last ? part->last : part->first])];
    }
  }
  return counts;
}

// Counting bounds for an H-invariant map under a fixed-point-free H, from the
// sizes of L1, L2 and H.
inline Rational symmetric_step_bound(std::uint64_t l1, std::uint64_t l2, std::uint64_t h) {
  return make_rational(BigInt(l1) * BigInt(l2), BigInt(h));
}
inline Rational symmetric_total_bound(std::uint64_t l1, std::uint64_t l2, std::uint64_t h,
                                      std::size_t length) {
  return make_rational(BigInt(length + 1) * BigInt(l1) * BigInt(l2), BigInt(h));
}

}  // namespace gslab
