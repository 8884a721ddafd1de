#pragma once

#include "minoramp/graph.hpp"

#include <optional>
#include <vector>

namespace minoramp {

/// A (K,d)-small vertex together with all of its (eps,d)-mates, ascending.
struct MateWitness {
  Vertex v = kNoVertex;
  std::vector<Vertex> mates;
};

/// Ascending list of all (eps,d)-mates of v.
inline std::vector<Vertex> mates_of(const Graph& g, Vertex v, const Rational& eps, const Rational& d) {
  g.check(v);
  const std::int64_t need = mate_threshold(eps, d);
  std::vector<Vertex> out;
  if (need <= 0) {
    for (Vertex w = 0; w < g.vertex_count(); ++w)
      if (w != v) out.push_back(w);
    return out;
  }
  std::vector<std::uint32_t> shared(g.vertex_count(), 0);
  std::vector<Vertex> touched;
  for (Vertex x : g.neighbors(v))
    for (Vertex w : g.neighbors(x)) {
      if (w == v) continue;
      if (shared[w]++ == 0) touched.push_back(w);
    }
  for (Vertex w : touched)
    if (static_cast<std::int64_t>(shared[w]) >= need) out.push_back(w);
  std::sort(out.begin(), out.end());
  return out;
}

/// Scans small vertices in ascending id and returns the first one with at
/// least eps*d mates; nullopt means G is (K,eps,d)-unmated.
inline std::optional<MateWitness> unmated_or_witness(const Graph& g, const Rational& K, const Rational& eps,
                                                     const Rational& d) {
  const std::int64_t small_limit = small_degree_limit(K, d);
  const std::int64_t need = mate_threshold(eps, d);
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (static_cast<std::int64_t>(g.degree(v)) > small_limit) continue;
    if (need > 0 && g.degree(v) == 0) continue;
    auto mates = mates_of(g, v, eps, d);
    if (static_cast<std::int64_t>(mates.size()) >= need && !mates.empty())
      return MateWitness{v, std::move(mates)};
  }
  return std::nullopt;
}

/// Checks that w is a genuine witness for (K, eps, d) in g.
inline bool is_valid_witness(const Graph& g, const MateWitness& w, const Rational& K, const Rational& eps,
                             const Rational& d) {
  if (!g.contains(w.v)) return false;
  if (degree_class(g, w.v, K, d) != DegreeClass::Small) return false;
  if (Rational(BigInt(w.mates.size())) < eps * d || w.mates.empty()) return false;
  for (std::size_t i = 0; i < w.mates.size(); ++i) {
    Vertex m = w.mates[i];
    if (!g.contains(m) || m == w.v) return false;
    if (i > 0 && w.mates[i - 1] >= m) return false;
    if (!are_mates(g, w.v, m, eps, d)) return false;
  }
  return true;
}

/// G[v + N(v) + first ceil(eps*d) mates]: at most 1 + Kd + ceil(eps*d)
/// vertices and at least eps^2 d^2 / 2 edges.
inline Subgraph small_dense_from_witness(const Graph& g, const MateWitness& w, const Rational& K,
                                         const Rational& eps, const Rational& d) {
  if (!is_valid_witness(g, w, K, eps, d)) throw Error("invalid mate witness");
  const auto take = static_cast<std::size_t>(std::max<std::int64_t>(ceil_i64(eps * d), 1));
  std::vector<Vertex> verts{w.v};
  for (Vertex x : g.neighbors(w.v)) verts.push_back(x);
  for (std::size_t i = 0; i < take; ++i) verts.push_back(w.mates[i]);
  std::sort(verts.begin(), verts.end());
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
  Subgraph h = induced_subgraph(g, verts);

  const Rational v_bound = Rational(1) + K * d + Rational(BigInt(take));
  const Rational e_bound = eps * eps * d * d / 2;
  if (Rational(BigInt(h.vertex_count())) > v_bound || Rational(BigInt(h.edge_count())) < e_bound)
    throw InvariantViolation("small dense subgraph misses its counting bounds");
  return h;
}

}  // namespace minoramp
