#pragma once

#include "minoramp/graph.hpp"
#include "minoramp/minor.hpp"
#include "minoramp/union_find.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace minoramp {

/// A tree given by its vertex list and edge list (host ids).
struct Tree {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
};

/// Acyclic edge subset of a host graph, plus optional isolated member
/// vertices. Components are tracked with union-find; deleting an edge marks
/// the index stale and the next query rebuilds it.
class Forest {
public:
  Forest() = default;
  explicit Forest(const Graph& host) : host_(&host), adj_(host.vertex_count()), member_(host.vertex_count(), false) {}

  static Forest from_edges(const Graph& host, std::span<const Edge> edges) {
    Forest f(host);
    for (const Edge& e : edges) f.add_edge(e.u, e.v);
    return f;
  }
  static Forest from_edges(const Graph& host, const std::vector<Edge>& edges) {
    return from_edges(host, std::span<const Edge>(edges));
  }

  const Graph& host() const { return *host_; }

  void add_vertex(Vertex v) {
    host_->check(v);
    if (!member_[v]) {
      member_[v] = true;
      ++vertex_count_;
    }
  }

  /// Adds host edge uv; throws if uv is not a host edge or closes a cycle.
  void add_edge(Vertex u, Vertex v) {
    if (!host_->has_edge(u, v)) throw Error("forest edge " + std::to_string(u) + "-" + std::to_string(v) + " is not a host edge");
    if (same_component(u, v)) throw Error("forest edge " + std::to_string(u) + "-" + std::to_string(v) + " closes a cycle");
    add_vertex(u);
    add_vertex(v);
    adj_[u].push_back(v);
    adj_[v].push_back(u);
    ++edge_count_;
    dsu_.unite(u, v);
  }

  void remove_edge(Vertex u, Vertex v) {
    auto drop = [](std::vector<Vertex>& list, Vertex x) {
      auto it = std::find(list.begin(), list.end(), x);
      if (it == list.end()) return false;
      list.erase(it);
      return true;
    };
    if (!host_->contains(u) || !host_->contains(v) || !drop(adj_[u], v))
      throw Error("edge " + std::to_string(u) + "-" + std::to_string(v) + " is not in the forest");
    drop(adj_[v], u);
    --edge_count_;
    stale_ = true;
  }

  /// Removes a member vertex together with its incident forest edges.
  void remove_vertex(Vertex v) {
    host_->check(v);
    if (!member_[v]) return;
    for (Vertex w : std::vector<Vertex>(adj_[v])) remove_edge(v, w);
    member_[v] = false;
    --vertex_count_;
    stale_ = true;
  }

  bool contains(Vertex v) const { return v < member_.size() && member_[v]; }
  bool has_edge(Vertex u, Vertex v) const {
    return contains(u) && std::find(adj_[u].begin(), adj_[u].end(), v) != adj_[u].end();
  }
  std::size_t degree(Vertex v) const { return contains(v) ? adj_[v].size() : 0; }
  std::span<const Vertex> neighbors(Vertex v) const { return adj_[v]; }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_count_; }
  bool empty() const { return vertex_count_ == 0; }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < member_.size(); ++v)
      if (member_[v]) out.push_back(v);
    return out;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) out.emplace_back(u, v);
    std::sort(out.begin(), out.end());
    return out;
  }

  bool same_component(Vertex u, Vertex v) const {
    refresh();
    return dsu_.same(u, v);
  }

  /// Representative of v's component (valid until the next mutation).
  Vertex component_of(Vertex v) const {
    refresh();
    return dsu_.find(v);
  }

  /// Components as ascending vertex lists, ordered by smallest vertex.
  std::vector<std::vector<Vertex>> components() const {
    refresh();
    std::map<Vertex, std::size_t> slot;
    std::vector<std::vector<Vertex>> out;
    for (Vertex v = 0; v < member_.size(); ++v) {
      if (!member_[v]) continue;
      Vertex r = dsu_.find(v);
      auto [it, inserted] = slot.try_emplace(r, out.size());
      if (inserted) out.emplace_back();
      out[it->second].push_back(v);
    }
    return out;
  }

  std::vector<Vertex> component_vertices(Vertex v) const {
    std::vector<Vertex> out;
    if (!contains(v)) return out;
    std::vector<Vertex> stack{v};
    out.push_back(v);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : adj_[x])
        if (std::find(out.begin(), out.end(), y) == out.end()) {
          out.push_back(y);
          stack.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  Tree component_tree(Vertex v) const {
    Tree t;
    t.vertices = component_vertices(v);
    for (Vertex x : t.vertices)
      for (Vertex y : adj_[x])
        if (x < y) t.edges.emplace_back(x, y);
    std::sort(t.edges.begin(), t.edges.end());
    return t;
  }

  /// Components as a minor model (width = largest component).
  MinorModel as_model() const {
    MinorModel m;
    m.branch_sets = components();
    m.width = 1;
    for (const auto& c : m.branch_sets) m.width = std::max(m.width, c.size());
    return m;
  }

  /// Label per host vertex: component index for members, fresh labels after.
  std::vector<Vertex> contraction_labels() const {
    std::size_t count = 0;
    return minoramp::contraction_labels(host_->vertex_count(), as_model(), &count);
  }

private:
  void refresh() const {
    if (!stale_ && dsu_.size() == member_.size()) return;
    dsu_ = DisjointSets(member_.size());
    for (Vertex u = 0; u < adj_.size(); ++u)
      for (Vertex v : adj_[u])
        if (u < v) dsu_.unite(u, v);
    stale_ = false;
  }

  const Graph* host_ = nullptr;
  std::vector<std::vector<Vertex>> adj_;
  std::vector<bool> member_;
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
  mutable DisjointSets dsu_;
  mutable bool stale_ = true;
};

// ---------------------------------------------------------------------------
// Contraction bookkeeping

/// e(G) - e(G/uv) = 1 + |N(u) & N(v)| for an edge uv.
inline std::size_t edge_contraction_loss(const Graph& g, Vertex u, Vertex v) {
  if (!g.has_edge(u, v)) throw Error("not an edge: " + std::to_string(u) + "-" + std::to_string(v));
  return 1 + common_neighbor_count(g, u, v);
}

/// e(G) - e(G/F) by materializing the contraction.
inline std::size_t contraction_loss(const Graph& g, const Forest& f) {
  if (&f.host() != &g && f.host().vertex_count() != g.vertex_count())
    throw Error("forest belongs to a different host");
  return g.edge_count() - quotient_edge_count(g, f.contraction_labels());
}

/// G/F with component i as vertex i and uncovered vertices after.
inline Graph contract_forest(const Graph& g, const Forest& f) {
  std::size_t count = 0;
  auto label = contraction_labels(g.vertex_count(), f.as_model(), &count);
  return quotient_graph(g, label, count);
}

// ---------------------------------------------------------------------------
// Forest predicates

/// Every vertex of V(F) has degree <= K*d in G[V(F)].
inline bool is_small_forest(const Graph& g, const Forest& f, const Rational& K, const Rational& d) {
  const std::int64_t limit = small_degree_limit(K, d);
  for (Vertex v : f.vertices()) {
    std::int64_t deg = 0;
    for (Vertex w : g.neighbors(v))
      if (f.contains(w)) ++deg;
    if (deg > limit) return false;
  }
  return true;
}

/// No component holds two distinct (eps,d)-mates of G.
inline bool is_mate_free(const Graph& g, const Forest& f, const Rational& eps, const Rational& d) {
  const std::int64_t need = mate_threshold(eps, d);
  for (const auto& comp : f.components())
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = i + 1; j < comp.size(); ++j)
        if (static_cast<std::int64_t>(common_neighbor_count(g, comp[i], comp[j])) >= need) return false;
  return true;
}

/// e(G) - e(G/F) <= c*d*v(F).
inline bool is_clean(const Graph& g, const Forest& f, const Rational& c, const Rational& d) {
  if (f.empty()) throw Error("cleanliness of an empty forest");
  return Rational(BigInt(contraction_loss(g, f))) <= c * d * Rational(BigInt(f.vertex_count()));
}

/// Every component has k/2 < size <= k.
inline bool is_shrubbery(const Forest& f, std::size_t k) {
  if (f.empty()) throw Error("shrubbery test on an empty forest");
  for (const auto& comp : f.components())
    if (2 * comp.size() <= k || comp.size() > k) return false;
  return true;
}

enum class StarMode : std::uint8_t { AtMost, Exactly };

/// Center and leaves of a star component.
struct StarShape {
  Vertex center = kNoVertex;
  std::vector<Vertex> leaves;
};

/// Reads a component as a star centred in B with leaves in A; nullopt if it is not one.
inline std::optional<StarShape> star_shape(const Forest& f, const std::vector<Vertex>& comp,
                                           const std::vector<Side>& side) {
  if (comp.size() < 2) return std::nullopt;
  Vertex center = kNoVertex;
  for (Vertex v : comp)
    if (side[v] == Side::B) {
      if (center != kNoVertex) return std::nullopt;
      center = v;
    }
  if (center == kNoVertex) return std::nullopt;
  if (f.degree(center) != comp.size() - 1) return std::nullopt;
  StarShape s{center, {}};
  for (Vertex v : comp) {
    if (v == center) continue;
    if (side[v] != Side::A || f.degree(v) != 1) return std::nullopt;
    s.leaves.push_back(v);
  }
  return s;
}

/// Every component is a star with center in B, leaves in A and between 1
/// and ell leaves (AtMost) or exactly ell leaves (Exactly).
inline bool is_star_matching(const Forest& f, const Bipartition& part, std::size_t ell, StarMode mode) {
  auto side = side_table(f.host().vertex_count(), part);
  for (const auto& comp : f.components()) {
    auto star = star_shape(f, comp, side);
    if (!star) return false;
    std::size_t leaves = star->leaves.size();
    if (leaves < 1 || leaves > ell) return false;
    if (mode == StarMode::Exactly && leaves != ell) return false;
  }
  return true;
}

/// Star matching whose components are induced subgraphs of G.
inline bool is_claw_matching(const Graph& g, const Forest& f, const Bipartition& part, std::size_t ell,
                             StarMode mode) {
  if (!is_star_matching(f, part, ell, mode)) return false;
  auto side = side_table(g.vertex_count(), part);
  for (const auto& comp : f.components()) {
    auto star = star_shape(f, comp, side);
    const auto& leaves = star->leaves;
    for (std::size_t i = 0; i < leaves.size(); ++i)
      for (std::size_t j = i + 1; j < leaves.size(); ++j)
        if (g.has_edge(leaves[i], leaves[j])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Centroids and peripheral pieces

namespace detail {

/// Rooted view of a tree: local ids, parent and subtree sizes.
struct RootedTree {
  std::vector<Vertex> vertices;                 // local -> host
  std::vector<std::vector<std::uint32_t>> adj;  // local adjacency
  std::vector<std::uint32_t> parent;            // root's parent = itself
  std::vector<std::uint32_t> subtree;           // subtree sizes from local 0

  std::uint32_t local(Vertex v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || *it != v) throw Error("vertex " + std::to_string(v) + " is not in the tree");
    return static_cast<std::uint32_t>(it - vertices.begin());
  }

  /// Size of the side containing a after deleting edge (a, b).
  std::uint32_t side_size(std::uint32_t a, std::uint32_t b) const {
    auto n = static_cast<std::uint32_t>(vertices.size());
    if (parent[b] == a && b != a) return n - subtree[b];  // b is a's child
    return subtree[a];                                    // a is b's child
  }
};

inline RootedTree root_tree(const Tree& t) {
  RootedTree r;
  r.vertices = t.vertices;
  std::sort(r.vertices.begin(), r.vertices.end());
  if (r.vertices.empty()) throw Error("input is not a tree: no vertices");
  if (std::adjacent_find(r.vertices.begin(), r.vertices.end()) != r.vertices.end())
    throw Error("input is not a tree: repeated vertex");
  if (t.edges.size() + 1 != r.vertices.size()) throw Error("input is not a tree: wrong edge count");
  const std::size_t n = r.vertices.size();
  r.adj.assign(n, {});
  for (const Edge& e : t.edges) {
    auto a = r.local(e.u), b = r.local(e.v);
    if (a == b) throw Error("input is not a tree: loop");
    r.adj[a].push_back(b);
    r.adj[b].push_back(a);
  }
  const std::uint32_t unset = std::numeric_limits<std::uint32_t>::max();
  r.parent.assign(n, unset);
  r.subtree.assign(n, 1);
  std::vector<std::uint32_t> order{0};
  r.parent[0] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto x = order[i];
    for (auto y : r.adj[x])
      if (r.parent[y] == unset) {
        r.parent[y] = x;
        order.push_back(y);
      }
  }
  if (order.size() != n) throw Error("input is not a tree: disconnected");
  for (std::size_t i = n; i-- > 1;) r.subtree[r.parent[order[i]]] += r.subtree[order[i]];
  return r;
}

}  // namespace detail

/// Centroids of a tree: the sinks of the orientation that points every edge
/// toward its side holding more than half of the vertices.
inline std::vector<Vertex> centroids(const Tree& t) {
  auto r = detail::root_tree(t);
  const std::size_t n = r.vertices.size();
  std::vector<bool> has_out(n, false);
  for (std::uint32_t x = 0; x < n; ++x)
    for (auto y : r.adj[x]) {
      // x -> y when y's side of T - xy has more than n/2 vertices
      std::uint32_t y_side = r.side_size(y, x);
      if (2 * static_cast<std::size_t>(y_side) > n) has_out[x] = true;
    }
  std::vector<Vertex> out;
  for (std::uint32_t x = 0; x < n; ++x)
    if (!has_out[x]) out.push_back(r.vertices[x]);
  return out;
}

struct PeripheralPiece {
  Edge central_edge;
  std::vector<Vertex> piece;  // ascending
};

/// For a non-centroid v: the incident edge whose removal leaves v on a side
/// of at most (v(T)-1)/2 vertices, minimizing that side (ties: smaller
/// neighbor id).
inline PeripheralPiece peripheral_piece(const Tree& t, Vertex v) {
  auto r = detail::root_tree(t);
  const std::size_t n = r.vertices.size();
  auto x = r.local(v);
  std::uint32_t best_nb = std::numeric_limits<std::uint32_t>::max();
  std::uint32_t best_size = 0;
  for (auto y : r.adj[x]) {
    std::uint32_t mine = r.side_size(x, y);
    if (2 * static_cast<std::size_t>(mine) + 1 > n) continue;  // needs mine <= (n-1)/2
    bool better = best_nb == std::numeric_limits<std::uint32_t>::max() || mine < best_size ||
                  (mine == best_size && r.vertices[y] < r.vertices[best_nb]);
    if (better) {
      best_nb = y;
      best_size = mine;
    }
  }
  if (best_nb == std::numeric_limits<std::uint32_t>::max())
    throw Error("no central edge: vertex " + std::to_string(v) + " is a centroid");
  PeripheralPiece out{Edge(v, r.vertices[best_nb]), {}};
  std::vector<std::uint32_t> stack{x};
  std::vector<bool> seen(n, false);
  seen[x] = seen[best_nb] = true;
  while (!stack.empty()) {
    auto a = stack.back();
    stack.pop_back();
    out.piece.push_back(r.vertices[a]);
    for (auto b : r.adj[a])
      if (!seen[b]) {
        seen[b] = true;
        stack.push_back(b);
      }
  }
  std::sort(out.piece.begin(), out.piece.end());
  return out;
}

// ---------------------------------------------------------------------------
// Bad pairs

/// Two forest edges in distinct components that lie on a 4-cycle of G
/// carrying every G-edge between the two components.
struct BadPair {
  Edge first;  // first < second
  Edge second;
  friend auto operator<=>(const BadPair&, const BadPair&) = default;
};

/// All bad pairs of F, sorted. Only component pairs joined by exactly two
/// G-edges can host one, and then the two crossing edges determine it.
inline std::vector<BadPair> bad_pairs(const Graph& g, const Forest& f) {
  std::vector<Vertex> comp(g.vertex_count(), kNoVertex);
  for (Vertex v : f.vertices()) comp[v] = f.component_of(v);
  std::map<std::pair<Vertex, Vertex>, std::vector<Edge>> crossing;
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (comp[u] == kNoVertex) continue;
    for (Vertex v : g.neighbors(u)) {
      if (u >= v || comp[v] == kNoVertex || comp[u] == comp[v]) continue;
      auto key = std::minmax(comp[u], comp[v]);
      auto& list = crossing[{key.first, key.second}];
      if (list.size() <= 2) list.emplace_back(u, v);
    }
  }
  std::vector<BadPair> out;
  for (const auto& [key, list] : crossing) {
    if (list.size() != 2) continue;
    // orient each crossing edge as (endpoint in key.first, endpoint in key.second)
    auto orient = [&](const Edge& e) {
      return comp[e.u] == key.first ? std::pair{e.u, e.v} : std::pair{e.v, e.u};
    };
    auto [x1, x2] = orient(list[0]);
    auto [y1, y2] = orient(list[1]);
    if (x1 == y1 || x2 == y2) continue;
    if (f.has_edge(x1, y1) && f.has_edge(x2, y2)) {
      Edge a(x1, y1), b(x2, y2);
      out.push_back({std::min(a, b), std::max(a, b)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace minoramp
