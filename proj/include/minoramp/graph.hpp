#pragma once

#include "minoramp/rational.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace minoramp {

using Vertex = std::uint32_t;
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();

/// Undirected edge, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {}

  Vertex other(Vertex x) const { return x == u ? v : u; }
  bool touches(Vertex x) const { return x == u || x == v; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on dense ids 0..n-1 with sorted adjacency lists.
/// Immutable once built.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n) {}

  /// Builds a simple graph; duplicate edges collapse, self-loops and
  /// out-of-range endpoints throw.
  static Graph from_edges(std::size_t n, std::span<const Edge> edges) {
    Graph g(n);
    for (const Edge& e : edges) {
      if (e.u == e.v) throw Error("self-loop at vertex " + std::to_string(e.u));
      if (e.v >= n) throw Error("edge endpoint " + std::to_string(e.v) + " out of range");
      g.adj_[e.u].push_back(e.v);
      g.adj_[e.v].push_back(e.u);
    }
    g.m_ = 0;
    for (auto& list : g.adj_) {
      std::sort(list.begin(), list.end());
      list.erase(std::unique(list.begin(), list.end()), list.end());
      g.m_ += list.size();
    }
    g.m_ /= 2;
    return g;
  }
  static Graph from_edges(std::size_t n, const std::vector<Edge>& edges) {
    return from_edges(n, std::span<const Edge>(edges));
  }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return m_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    check(v);
    return adj_[v];
  }
  std::size_t degree(Vertex v) const {
    check(v);
    return adj_[v].size();
  }
  bool contains(Vertex v) const { return v < adj_.size(); }

  bool has_edge(Vertex a, Vertex b) const {
    if (!contains(a) || !contains(b)) return false;
    const auto& list = adj_[a].size() <= adj_[b].size() ? adj_[a] : adj_[b];
    Vertex target = adj_[a].size() <= adj_[b].size() ? b : a;
    return std::binary_search(list.begin(), list.end(), target);
  }

  /// All edges in ascending (u, v) order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(m_);
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  void check(Vertex v) const {
    if (v >= adj_.size()) throw Error("unknown vertex " + std::to_string(v));
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  std::vector<std::vector<Vertex>> adj_;
  std::size_t m_ = 0;
};

/// A subgraph together with the host id of each of its vertices
/// (to_host[i] is the host vertex behind local vertex i).
struct Subgraph {
  Graph graph;
  std::vector<Vertex> to_host;

  std::size_t vertex_count() const { return graph.vertex_count(); }
  std::size_t edge_count() const { return graph.edge_count(); }
};

/// Disjoint vertex sets A and B of a host graph.
struct Bipartition {
  std::vector<Vertex> A;
  std::vector<Vertex> B;
};

enum class Side : std::uint8_t { None, A, B };

/// Side lookup table for a bipartition; throws if A and B overlap.
inline std::vector<Side> side_table(std::size_t n, const Bipartition& part) {
  std::vector<Side> side(n, Side::None);
  for (Vertex a : part.A) {
    if (a >= n) throw Error("bipartition vertex out of range");
    side[a] = Side::A;
  }
  for (Vertex b : part.B) {
    if (b >= n) throw Error("bipartition vertex out of range");
    if (side[b] == Side::A) throw Error("bipartition sides overlap at vertex " + std::to_string(b));
    side[b] = Side::B;
  }
  return side;
}

/// d(G) = e(G)/v(G), exact.
inline Rational density(const Graph& g) {
  if (g.vertex_count() == 0) throw Error("undefined density");
  return Rational(BigInt(g.edge_count()), BigInt(g.vertex_count()));
}

inline std::size_t common_neighbor_count(const Graph& g, Vertex a, Vertex b) {
  auto na = g.neighbors(a), nb = g.neighbors(b);
  std::size_t count = 0;
  auto i = na.begin(), j = nb.begin();
  while (i != na.end() && j != nb.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

enum class DegreeClass : std::uint8_t { Small, Big };

/// Small iff deg(v) <= K*d.
inline DegreeClass degree_class(const Graph& g, Vertex v, const Rational& K, const Rational& d) {
  return Rational(BigInt(g.degree(v))) <= K * d ? DegreeClass::Small : DegreeClass::Big;
}

/// Mates share at least eps*d common neighbors.
inline bool are_mates(const Graph& g, Vertex u, Vertex v, const Rational& eps, const Rational& d) {
  g.check(u);
  g.check(v);
  if (u == v) throw Error("a vertex is not its own mate");
  return Rational(BigInt(common_neighbor_count(g, u, v))) >= eps * d;
}

/// Integer form of "count >= eps*d": the least count that qualifies.
inline std::int64_t mate_threshold(const Rational& eps, const Rational& d) {
  return std::max<std::int64_t>(ceil_i64(eps * d), 0);
}

/// Integer form of "deg <= K*d": the largest small degree.
inline std::int64_t small_degree_limit(const Rational& K, const Rational& d) {
  return floor_i64(K * d);
}

/// G[vertices]; the local order follows the given vertex order.
inline Subgraph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<Vertex> local(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    g.check(vertices[i]);
    if (local[vertices[i]] != kNoVertex) throw Error("duplicate vertex in induced subgraph");
    local[vertices[i]] = static_cast<Vertex>(i);
  }
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] != kNoVertex && local[w] > i) edges.emplace_back(static_cast<Vertex>(i), local[w]);
  return Subgraph{Graph::from_edges(vertices.size(), edges), {vertices.begin(), vertices.end()}};
}
inline Subgraph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  return induced_subgraph(g, std::span<const Vertex>(vertices));
}

/// Subgraph on the given host vertices keeping only the listed host edges.
inline Subgraph edge_subgraph(const Graph& g, std::vector<Vertex> vertices, std::span<const Edge> host_edges) {
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  std::vector<Vertex> local(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<Vertex>(i);
  std::vector<Edge> edges;
  for (const Edge& e : host_edges) {
    if (!g.has_edge(e.u, e.v)) throw Error("edge is not in the host graph");
    if (local[e.u] == kNoVertex || local[e.v] == kNoVertex) throw Error("edge endpoint outside subgraph");
    edges.emplace_back(local[e.u], local[e.v]);
  }
  return Subgraph{Graph::from_edges(vertices.size(), edges), std::move(vertices)};
}

/// Peels the smallest-id vertex with degree <= current density until none
/// qualifies (or one vertex is left). Every remaining vertex has degree
/// above the final density, which is at least d(G).
inline Subgraph dense_core(const Graph& g) {
  if (g.edge_count() == 0) throw Error("dense core of an edgeless graph");
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg(n);
  std::vector<bool> alive(n, true);
  for (Vertex v = 0; v < n; ++v) deg[v] = g.degree(v);
  std::size_t alive_count = n, edges = g.edge_count();

  while (alive_count > 1) {
    Vertex victim = kNoVertex;
    for (Vertex v = 0; v < n; ++v) {
      // deg <= edges/alive_count
      if (alive[v] && static_cast<unsigned __int128>(deg[v]) * alive_count <= edges) {
        victim = v;
        break;
      }
    }
    if (victim == kNoVertex) break;
    alive[victim] = false;
    --alive_count;
    for (Vertex w : g.neighbors(victim))
      if (alive[w]) {
        --deg[w];
        --edges;
      }
  }
  std::vector<Vertex> keep;
  for (Vertex v = 0; v < n; ++v)
    if (alive[v]) keep.push_back(v);
  return induced_subgraph(g, keep);
}

/// 64-bit FNV-1a over the ascending edge list, each endpoint as 4 little-endian bytes.
inline std::uint64_t edge_list_hash(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint32_t x) {
    for (int i = 0; i < 4; ++i) {
      h ^= (x >> (8 * i)) & 0xffu;
      h *= 0x100000001b3ull;
    }
  };
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u))
      if (u < v) {
        mix(u);
        mix(v);
      }
  return h;
}

}  // namespace minoramp
