#pragma once

#include "minoramp/graph.hpp"

#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace minoramp {

/// Branch sets of a bounded minor: pairwise disjoint, each connected in the
/// host, each of size at most width.
struct MinorModel {
  std::vector<std::vector<Vertex>> branch_sets;
  std::size_t width = 1;

  friend bool operator==(const MinorModel&, const MinorModel&) = default;
};

struct ModelViolation {
  std::size_t branch_set = 0;
  std::string reason;  // "range", "empty", "width", "disjointness" or "connectivity"
};

/// First failing branch set (in order) and why; nullopt when the model is valid.
inline std::optional<ModelViolation> validate_model(const Graph& g, const MinorModel& model) {
  if (model.width == 0) return ModelViolation{0, "width"};
  std::vector<std::uint32_t> owner(g.vertex_count(), std::numeric_limits<std::uint32_t>::max());
  for (std::size_t i = 0; i < model.branch_sets.size(); ++i) {
    const auto& set = model.branch_sets[i];
    if (set.empty()) return ModelViolation{i, "empty"};
    if (set.size() > model.width) return ModelViolation{i, "width"};
    for (Vertex v : set) {
      if (!g.contains(v)) return ModelViolation{i, "range"};
      if (owner[v] != std::numeric_limits<std::uint32_t>::max()) return ModelViolation{i, "disjointness"};
      owner[v] = static_cast<std::uint32_t>(i);
    }
    // BFS inside the set
    std::vector<Vertex> stack{set.front()};
    std::size_t seen = 1;
    std::vector<Vertex> visited{set.front()};
    auto is_visited = [&](Vertex x) { return std::find(visited.begin(), visited.end(), x) != visited.end(); };
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x))
        if (owner[y] == i && !is_visited(y)) {
          visited.push_back(y);
          stack.push_back(y);
          ++seen;
        }
    }
    if (seen != set.size()) return ModelViolation{i, "connectivity"};
  }
  return std::nullopt;
}

/// Labels for contract(): branch set i gets label i, uncovered vertices get
/// consecutive labels after the branch sets in ascending host id.
inline std::vector<Vertex> contraction_labels(std::size_t n, const MinorModel& model, std::size_t* label_count) {
  std::vector<Vertex> label(n, kNoVertex);
  for (std::size_t i = 0; i < model.branch_sets.size(); ++i)
    for (Vertex v : model.branch_sets[i]) label[v] = static_cast<Vertex>(i);
  auto next = static_cast<Vertex>(model.branch_sets.size());
  for (Vertex v = 0; v < n; ++v)
    if (label[v] == kNoVertex) label[v] = next++;
  if (label_count) *label_count = next;
  return label;
}

/// Simple quotient graph: vertices are labels, labels adjacent iff some host
/// edge joins them. Vertices labelled kNoVertex are dropped.
inline Graph quotient_graph(const Graph& g, const std::vector<Vertex>& label, std::size_t label_count) {
  std::vector<Edge> edges;
  edges.reserve(g.edge_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    if (label[u] == kNoVertex) continue;
    for (Vertex v : g.neighbors(u))
      if (u < v && label[v] != kNoVertex && label[u] != label[v]) edges.emplace_back(label[u], label[v]);
  }
  return Graph::from_edges(label_count, edges);
}

/// e(G/labels) without building adjacency lists.
inline std::size_t quotient_edge_count(const Graph& g, const std::vector<Vertex>& label) {
  std::vector<std::uint64_t> keys;
  keys.reserve(g.edge_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u)
    for (Vertex v : g.neighbors(u)) {
      if (u >= v) continue;
      Vertex a = label[u], b = label[v];
      if (a == b) continue;
      if (a > b) std::swap(a, b);
      keys.push_back((static_cast<std::uint64_t>(a) << 32) | b);
    }
  std::sort(keys.begin(), keys.end());
  return static_cast<std::size_t>(std::unique(keys.begin(), keys.end()) - keys.begin());
}

inline void require_valid(const Graph& g, const MinorModel& model) {
  if (auto bad = validate_model(g, model))
    throw Error("invalid minor model: branch set " + std::to_string(bad->branch_set) + " fails " + bad->reason);
}

/// G contracted along the model; uncovered host vertices stay as singletons
/// numbered after the branch sets.
inline Graph contract(const Graph& g, const MinorModel& model) {
  require_valid(g, model);
  std::size_t count = 0;
  auto label = contraction_labels(g.vertex_count(), model, &count);
  return quotient_graph(g, label, count);
}

/// The minor spanned by the branch sets alone (uncovered vertices dropped).
inline Graph minor_graph(const Graph& g, const MinorModel& model) {
  require_valid(g, model);
  std::vector<Vertex> label(g.vertex_count(), kNoVertex);
  for (std::size_t i = 0; i < model.branch_sets.size(); ++i)
    for (Vertex v : model.branch_sets[i]) label[v] = static_cast<Vertex>(i);
  return quotient_graph(g, label, model.branch_sets.size());
}

/// Host vertices behind each vertex of contract(g, model).
inline std::vector<std::vector<Vertex>> contracted_members(const Graph& g, const MinorModel& model) {
  std::size_t count = 0;
  auto label = contraction_labels(g.vertex_count(), model, &count);
  std::vector<std::vector<Vertex>> members(count);
  for (Vertex v = 0; v < g.vertex_count(); ++v) members[label[v]].push_back(v);
  return members;
}

/// Expands a subgraph H' of contract(g, model) (H'.to_host holds contracted
/// ids) into a subgraph H of g: every branch set of V(H') with a spanning
/// tree, plus one witnessing host edge per edge of H'. v(H) <= width*v(H'),
/// e(H) >= e(H').
inline Subgraph lift_subgraph(const Graph& g, const MinorModel& model, const Subgraph& contracted_sub) {
  require_valid(g, model);
  auto members = contracted_members(g, model);
  std::size_t count = members.size();
  std::vector<Vertex> label(g.vertex_count());
  for (Vertex i = 0; i < count; ++i)
    for (Vertex v : members[i]) label[v] = i;

  std::vector<Vertex> verts;
  std::vector<Edge> edges;
  std::vector<bool> chosen(count, false);
  for (Vertex c : contracted_sub.to_host) {
    if (c >= count) throw Error("subgraph references unknown contracted vertex " + std::to_string(c));
    chosen[c] = true;
    const auto& set = members[c];
    verts.insert(verts.end(), set.begin(), set.end());
    // spanning tree of the branch set by BFS from its smallest vertex
    std::vector<Vertex> sorted = set;
    std::sort(sorted.begin(), sorted.end());
    std::vector<bool> reached(g.vertex_count(), false);
    std::deque<Vertex> queue{sorted.front()};
    reached[sorted.front()] = true;
    while (!queue.empty()) {
      Vertex x = queue.front();
      queue.pop_front();
      for (Vertex y : g.neighbors(x))
        if (label[y] == c && !reached[y]) {
          reached[y] = true;
          edges.emplace_back(x, y);
          queue.push_back(y);
        }
    }
  }
  for (const Edge& ce : contracted_sub.graph.edges()) {
    Vertex a = contracted_sub.to_host[ce.u], b = contracted_sub.to_host[ce.v];
    Edge witness;
    bool found = false;
    for (Vertex x : members[a]) {
      for (Vertex y : g.neighbors(x))
        if (label[y] == b && (!found || Edge(x, y) < witness)) {
          witness = Edge(x, y);
          found = true;
        }
    }
    if (!found) throw Error("subgraph edge has no witnessing host edge");
    edges.push_back(witness);
  }
  return edge_subgraph(g, std::move(verts), edges);
}

}  // namespace minoramp
