#pragma once

#include "minoramp/forest.hpp"
#include "minoramp/mates.hpp"
#include "minoramp/minor.hpp"
#include "minoramp/mode.hpp"

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <variant>
#include <vector>

namespace minoramp {

// ---------------------------------------------------------------------------
// Alternating paths

/// Breadth-first alternating search from an uncovered A-vertex. A-vertices
/// leave along non-forest edges into B (subject to the triangle filter);
/// B-vertices leave along their forest edges to their leaves.
struct AlternationState {
  Vertex origin = kNoVertex;
  std::vector<Vertex> reached;     // B-vertices with an alternating path, ascending
  std::vector<Vertex> predecessor; // per host vertex; kNoVertex when unreached
  std::vector<std::uint32_t> depth;

  bool reaches(Vertex v) const { return v < predecessor.size() && predecessor[v] != kNoVertex; }

  /// origin ... v along predecessors.
  std::vector<Vertex> path_to(Vertex v) const {
    if (!reaches(v)) throw Error("vertex " + std::to_string(v) + " is not reachable");
    std::vector<Vertex> path{v};
    while (path.back() != origin) path.push_back(predecessor[path.back()]);
    std::reverse(path.begin(), path.end());
    return path;
  }
};

/// Rejects non-forest edge xy (x in A, y in B) when some triangle xyz of G
/// also carries a forest edge xz or yz.
inline bool passes_triangle_filter(const Graph& g, const Forest& f0, Vertex x, Vertex y) {
  for (Vertex z : f0.neighbors(y))
    if (z != x && g.has_edge(x, z)) return false;
  for (Vertex z : f0.neighbors(x))
    if (z != y && g.has_edge(y, z)) return false;
  return true;
}

namespace detail {

/// Shared BFS. With stop_ell > 0 it stops after the first B-layer holding a
/// vertex of forest degree < stop_ell and reports the smallest such vertex.
inline AlternationState alternating_bfs(const Graph& g, const std::vector<Side>& side, const Forest& f0, Vertex u,
                                        std::size_t stop_ell, Vertex* augmentable) {
  AlternationState st;
  st.origin = u;
  st.predecessor.assign(g.vertex_count(), kNoVertex);
  st.depth.assign(g.vertex_count(), 0);
  st.predecessor[u] = u;
  if (augmentable) *augmentable = kNoVertex;

  std::vector<Vertex> a_layer{u};
  std::uint32_t layer_depth = 0;
  while (!a_layer.empty()) {
    std::vector<Vertex> b_layer;
    for (Vertex x : a_layer)
      for (Vertex y : g.neighbors(x)) {
        if (side[y] != Side::B || st.reaches(y) || f0.has_edge(x, y)) continue;
        if (!passes_triangle_filter(g, f0, x, y)) continue;
        st.predecessor[y] = x;
        st.depth[y] = layer_depth + 1;
        b_layer.push_back(y);
      }
    std::sort(b_layer.begin(), b_layer.end());
    st.reached.insert(st.reached.end(), b_layer.begin(), b_layer.end());
    if (stop_ell > 0) {
      for (Vertex y : b_layer)
        if (f0.degree(y) < stop_ell) {
          *augmentable = y;
          std::sort(st.reached.begin(), st.reached.end());
          return st;
        }
    }
    std::vector<Vertex> next;
    for (Vertex y : b_layer)
      for (Vertex a : f0.neighbors(y)) {
        if (st.reaches(a)) continue;
        st.predecessor[a] = y;
        st.depth[a] = layer_depth + 2;
        next.push_back(a);
      }
    std::sort(next.begin(), next.end());
    a_layer = std::move(next);
    layer_depth += 2;
  }
  std::sort(st.reached.begin(), st.reached.end());
  return st;
}

}  // namespace detail

/// All B-vertices reachable from u by an alternating path with respect to F0.
inline AlternationState alternating_reachability(const Graph& g, const Bipartition& part, const Forest& f0, Vertex u) {
  auto side = side_table(g.vertex_count(), part);
  g.check(u);
  if (side[u] != Side::A) throw Error("alternating search must start in A");
  if (f0.contains(u)) throw Error("alternating search must start at an uncovered vertex");
  return detail::alternating_bfs(g, side, f0, u, 0, nullptr);
}

// ---------------------------------------------------------------------------
// Claw matchings

struct ClawRun {
  Forest forest;
  std::size_t augmentations = 0;
  bool covered_all = false;  // true when every A-vertex ended up covered
  Vertex stuck_at = kNoVertex;
};

/// Called after every augmentation with the current partial matching.
using AugmentationObserver = std::function<void(const Forest&)>;

/// Greedy alternating-path construction of an ell-claw-matching from B to A
/// in which every leaf has at most dA neighbors in B outside the matching.
/// Requires |A| >= ell*|B| and every A-vertex to have more than ell*dA
/// neighbors in B and at most dA in A.
inline ClawRun build_claw_matching(const Graph& g, const Bipartition& part, std::size_t ell, const Rational& dA,
                                   const AugmentationObserver& observer = {}) {
  if (ell == 0) throw Error("claw arity must be positive");
  auto side = side_table(g.vertex_count(), part);
  if (part.A.size() < ell * part.B.size()) throw Error("claw matching needs |A| >= ell*|B|");
  const Rational b_need = Rational(BigInt(ell)) * dA;
  for (Vertex a : part.A) {
    std::size_t in_a = 0, in_b = 0;
    for (Vertex w : g.neighbors(a)) {
      if (side[w] == Side::A) ++in_a;
      if (side[w] == Side::B) ++in_b;
    }
    if (Rational(BigInt(in_b)) <= b_need) throw Error("A-vertex " + std::to_string(a) + " has too few B-neighbors");
    if (Rational(BigInt(in_a)) > dA) throw Error("A-vertex " + std::to_string(a) + " has too many A-neighbors");
  }

  std::vector<Vertex> a_sorted = part.A;
  std::sort(a_sorted.begin(), a_sorted.end());
  ClawRun run{Forest(g), 0, false, kNoVertex};
  Forest& f0 = run.forest;

  for (Vertex u : a_sorted) {
    if (f0.contains(u)) continue;
    Vertex target = kNoVertex;
    auto st = detail::alternating_bfs(g, side, f0, u, ell, &target);
    if (target == kNoVertex) {
      // No augmentation from u: keep the stars that meet B_u.
      Forest out(g);
      for (Vertex b : st.reached) {
        if (f0.degree(b) != ell)
          throw InvariantViolation("reached B-vertex " + std::to_string(b) + " is not a full star center");
        for (Vertex a : f0.neighbors(b)) out.add_edge(a, b);
      }
      run.forest = std::move(out);
      run.stuck_at = u;
      break;
    }
    auto path = st.path_to(target);
    // path = u, b1, a1, b2, ..., target: drop forest edges (b_i, a_i), then add the rest.
    for (std::size_t i = 1; i + 1 < path.size(); i += 2) f0.remove_edge(path[i], path[i + 1]);
    for (std::size_t i = 0; i + 1 < path.size(); i += 2) f0.add_edge(path[i], path[i + 1]);
    ++run.augmentations;
    if (observer) observer(f0);
  }
  if (run.stuck_at == kNoVertex) run.covered_all = true;

  // Every leaf sees at most dA B-vertices outside the matching.
  auto sideB = side;
  for (Vertex a : run.forest.vertices()) {
    if (side[a] != Side::A) continue;
    std::size_t outside = 0;
    for (Vertex w : g.neighbors(a))
      if (sideB[w] == Side::B && !run.forest.contains(w)) ++outside;
    if (Rational(BigInt(outside)) > dA)
      throw InvariantViolation("leaf " + std::to_string(a) + " has too many B-neighbors outside the matching");
  }
  if (!run.forest.empty() && !is_claw_matching(g, run.forest, part, ell, StarMode::Exactly))
    throw InvariantViolation("claw matching construction produced an invalid forest");
  return run;
}

/// Mate-free claw matching of a bipartite graph: either a witness that some
/// A-vertex has at least eps0*d0 mates, or a claw matching (re-homed on g)
/// whose components contain no (eps0,d0)-mates.
inline std::variant<ClawRun, MateWitness> mate_free_claw_matching(const Graph& g, const Bipartition& part,
                                                                  std::size_t ell, const Rational& eps0,
                                                                  const Rational& d0,
                                                                  const AugmentationObserver& observer = {}) {
  auto side = side_table(g.vertex_count(), part);
  for (const Edge& e : g.edges())
    if (side[e.u] == side[e.v] || side[e.u] == Side::None || side[e.v] == Side::None)
      throw Error("mate-free claw matching needs a bipartite graph on (A,B)");
  if (part.A.size() < ell * part.B.size()) throw Error("claw matching needs |A| >= ell*|B|");
  if (eps0 * Rational(BigInt(ell)) >= 1) throw Error("eps0 must be below 1/ell");
  for (Vertex a : part.A)
    if (Rational(BigInt(g.degree(a))) < d0) throw Error("A-vertex " + std::to_string(a) + " has fewer than d0 neighbors");

  std::vector<Vertex> a_sorted = part.A;
  std::sort(a_sorted.begin(), a_sorted.end());
  std::vector<Edge> aux_edges = g.edges();
  std::size_t max_mates = 0;
  for (Vertex a : a_sorted) {
    auto mates = mates_of(g, a, eps0, d0);
    if (Rational(BigInt(mates.size())) >= eps0 * d0 && !mates.empty()) return MateWitness{a, std::move(mates)};
    max_mates = std::max(max_mates, mates.size());
    for (Vertex m : mates)
      if (a < m) aux_edges.emplace_back(a, m);
  }
  Graph aux = Graph::from_edges(g.vertex_count(), aux_edges);
  ClawRun run = build_claw_matching(aux, part, ell, Rational(BigInt(max_mates)), observer);
  Forest rehomed = Forest::from_edges(g, run.forest.edges());
  return ClawRun{std::move(rehomed), run.augmentations, run.covered_all, run.stuck_at};
}

// ---------------------------------------------------------------------------
// Cleaning

/// Host vertex set of a small dense subgraph.
struct SmallDenseFound {
  std::vector<Vertex> vertices;  // ascending
};

struct CleanRun {
  Forest forest;
  std::size_t dropped_components = 0;
  std::size_t swaps = 0;
  std::vector<std::size_t> bad_pair_history;  // total bad pairs before each swap, then the final count
};

namespace detail {

inline std::map<Edge, std::size_t> bad_pair_degrees(const std::vector<BadPair>& pairs) {
  std::map<Edge, std::size_t> deg;
  for (const auto& p : pairs) {
    ++deg[p.first];
    ++deg[p.second];
  }
  return deg;
}

inline bool component_mate_free(const Graph& g, const std::vector<Vertex>& comp, std::int64_t need) {
  for (std::size_t i = 0; i < comp.size(); ++i)
    for (std::size_t j = i + 1; j < comp.size(); ++j)
      if (static_cast<std::int64_t>(common_neighbor_count(g, comp[i], comp[j])) >= need) return false;
  return true;
}

/// Lifts a mate witness found in G/F back to a subgraph of G.
inline SmallDenseFound lift_witness(const Graph& g, const MinorModel& model, const Graph& contracted,
                                    const MateWitness& w, const Rational& K, const Rational& eps,
                                    const Rational& d) {
  Subgraph h_contracted = small_dense_from_witness(contracted, w, K, eps, d);
  Subgraph lifted = lift_subgraph(g, model, h_contracted);
  return SmallDenseFound{lifted.to_host};
}

}  // namespace detail

/// Drops components holding a (K,d1)-big vertex, then swaps along bad-pair
/// 4-cycles until no edge lies in more than ell*(eps1*d1 + 1) bad pairs.
/// A mate witness in G/F ends the run with a small dense subgraph instead.
inline std::variant<CleanRun, SmallDenseFound> clean_claw_matching(const Graph& g, const Bipartition& part,
                                                                   const Forest& f1, std::size_t ell,
                                                                   const Rational& K, const Rational& eps1,
                                                                   const Rational& d1) {
  auto side = side_table(g.vertex_count(), part);
  if (!is_claw_matching(g, f1, part, ell, StarMode::Exactly)) throw Error("input is not an ell-claw-matching");
  if (!is_mate_free(g, f1, eps1, d1)) throw Error("input claw matching is not mate-free");

  CleanRun run{Forest(g), 0, 0, {}};
  const std::int64_t big_above = small_degree_limit(K, d1);
  for (const auto& comp : f1.components()) {
    bool has_big = std::any_of(comp.begin(), comp.end(),
                               [&](Vertex v) { return static_cast<std::int64_t>(g.degree(v)) > big_above; });
    if (has_big) {
      ++run.dropped_components;
      continue;
    }
    for (Vertex v : comp)
      for (Vertex w : f1.neighbors(v))
        if (v < w) run.forest.add_edge(v, w);
  }
  Forest& f = run.forest;
  if (f.empty()) return run;

  const Rational bound = Rational(BigInt(ell)) * (eps1 * d1 + 1);
  const std::int64_t mate_need = mate_threshold(eps1, d1);
  const Rational contracted_K = K * Rational(BigInt(ell + 1));

  auto pairs = bad_pairs(g, f);
  for (;;) {
    auto deg = detail::bad_pair_degrees(pairs);
    std::vector<Edge> over;
    for (const auto& [e, count] : deg)
      if (Rational(BigInt(count)) > bound) over.push_back(e);
    if (over.empty()) break;
    run.bad_pair_history.push_back(pairs.size());

    MinorModel model = f.as_model();
    std::size_t label_count = 0;
    auto labels = contraction_labels(g.vertex_count(), model, &label_count);
    Graph contracted = quotient_graph(g, labels, label_count);
    if (auto w = unmated_or_witness(contracted, contracted_K, eps1, d1))
      return detail::lift_witness(g, model, contracted, *w, contracted_K, eps1, d1);

    bool swapped = false;
    for (const Edge& e : over) {
      Vertex t_label = labels[e.u];
      for (const auto& p : pairs) {
        if (p.first != e && p.second != e) continue;
        const Edge e1 = p.first == e ? p.second : p.first;
        Vertex t1_label = labels[e1.u];
        if (static_cast<std::int64_t>(common_neighbor_count(contracted, t_label, t1_label)) >= mate_need) continue;

        // crossing edges between the two components
        auto comp_t = f.component_vertices(e.u), comp_t1 = f.component_vertices(e1.u);
        std::vector<Edge> crossing;
        for (Vertex x : comp_t)
          for (Vertex y : g.neighbors(x))
            if (std::binary_search(comp_t1.begin(), comp_t1.end(), y)) crossing.emplace_back(x, y);
        if (crossing.size() != 2) continue;

        Forest trial = f;
        trial.remove_edge(e.u, e.v);
        trial.remove_edge(e1.u, e1.v);
        trial.add_edge(crossing[0].u, crossing[0].v);
        trial.add_edge(crossing[1].u, crossing[1].v);
        if (!is_claw_matching(g, trial, part, ell, StarMode::Exactly)) continue;
        if (!detail::component_mate_free(g, trial.component_vertices(e.u), mate_need) ||
            !detail::component_mate_free(g, trial.component_vertices(e1.u), mate_need))
          continue;
        auto trial_pairs = bad_pairs(g, trial);
        if (trial_pairs.size() >= pairs.size()) continue;
        f = std::move(trial);
        pairs = std::move(trial_pairs);
        ++run.swaps;
        swapped = true;
        break;
      }
      if (swapped) break;
    }
    if (!swapped)
      throw InvariantViolation("bad-pair swap loop stalled: an edge exceeds the bad-pair bound but no improving swap exists");
  }
  run.bad_pair_history.push_back(pairs.size());
  return run;
}

// ---------------------------------------------------------------------------
// Bipartite graph to bounded minor

struct BipartiteMinorStats {
  std::size_t augmentations = 0;
  std::size_t swaps = 0;
  std::size_t dropped_components = 0;
};

struct BoundedMinorFound {
  MinorModel model;        // stars of the cleaned matching plus singletons of the rest of its host
  Rational density;        // d(G'/F) on the regularized bipartite host
  Rational bound;          // (ell/2)(1 - 3 ell^3 eps0) d0
  bool bound_met = false;
};

using BipartiteMinorOutcome = std::variant<SmallDenseFound, BoundedMinorFound>;

namespace detail {

/// Keeps for every A-vertex its `keep` smallest-id B-neighbors, preferring the
/// edges listed in `pinned`.
inline Graph trim_a_degrees(const Graph& g, const std::vector<Side>& side, std::size_t keep,
                            const Forest* pinned) {
  std::vector<Edge> edges;
  for (Vertex a = 0; a < g.vertex_count(); ++a) {
    if (side[a] != Side::A) continue;
    std::vector<Vertex> chosen;
    if (pinned)
      for (Vertex b : pinned->neighbors(a)) chosen.push_back(b);
    for (Vertex b : g.neighbors(a)) {
      if (chosen.size() >= keep) break;
      if (side[b] == Side::B && std::find(chosen.begin(), chosen.end(), b) == chosen.end()) chosen.push_back(b);
    }
    for (Vertex b : chosen) edges.emplace_back(a, b);
  }
  return Graph::from_edges(g.vertex_count(), edges);
}

}  // namespace detail

/// Either a small dense subgraph of the bipartite host or an
/// (ell+1)-bounded minor of density about (ell/2)(1 - 3 ell^3 eps0) d0.
/// Host ids are kept throughout; vertices outside X and Y are ignored.
inline BipartiteMinorOutcome bipartite_dense_minor(const Graph& h, const Bipartition& part, std::size_t ell,
                                                   const Rational& K, const Rational& eps0, const Rational& d0,
                                                   Mode mode, BipartiteMinorStats* stats = nullptr) {
  auto side = side_table(h.vertex_count(), part);
  const Rational ell_r{BigInt(ell)};
  if (ell < 1) throw Error("ell must be at least 1");
  if (part.A.size() < ell * part.B.size()) throw Error("bipartite minor needs |X| >= ell*|Y|");
  if (eps0 <= 0 || eps0 * ell_r >= 1) throw Error("eps0 must lie in (0, 1/ell)");
  if (d0 <= 0) throw Error("d0 must be positive");
  if (mode == Mode::Theorem) {
    if (K < ell_r) throw Error("K must be at least ell");
    if (d0 * eps0 < 1) throw Error("d0 must be at least 1/eps0");
  }
  for (Vertex x : part.A) {
    std::size_t into_y = 0;
    for (Vertex y : h.neighbors(x))
      if (side[y] == Side::B) ++into_y;
    if (Rational(BigInt(into_y)) < d0) throw Error("X-vertex " + std::to_string(x) + " has fewer than d0 neighbors in Y");
  }

  // Regularize: every X-vertex keeps exactly ceil(d0) neighbors in Y.
  const auto keep0 = static_cast<std::size_t>(ceil_i64(d0));
  Graph base = detail::trim_a_degrees(h, side, keep0, nullptr);

  if (auto w = unmated_or_witness(base, K, eps0, d0))
    return SmallDenseFound{small_dense_from_witness(base, *w, K, eps0, d0).to_host};

  auto first = mate_free_claw_matching(base, part, ell, eps0, d0);
  if (auto* w = std::get_if<MateWitness>(&first)) {
    // Not reachable when every X-vertex is small; report the witness neighbourhood.
    if (!is_valid_witness(base, *w, K, eps0, d0))
      throw InvariantViolation("mate witness for a big X-vertex after regularization");
    return SmallDenseFound{small_dense_from_witness(base, *w, K, eps0, d0).to_host};
  }
  ClawRun& f1_run = std::get<ClawRun>(first);
  if (stats) stats->augmentations = f1_run.augmentations;

  // Restrict to V(F1) and regularize again to ceil(d1), keeping F1's edges.
  const Rational d1 = d0 * (1 - eps0);
  const Rational eps1 = eps0 / (1 - eps0);
  std::vector<Vertex> covered = f1_run.forest.vertices();
  std::vector<bool> in_cover(h.vertex_count(), false);
  for (Vertex v : covered) in_cover[v] = true;
  std::vector<Edge> restricted;
  for (const Edge& e : base.edges())
    if (in_cover[e.u] && in_cover[e.v]) restricted.push_back(e);
  Graph restricted_graph = Graph::from_edges(h.vertex_count(), restricted);
  Forest f1_on_restricted = Forest::from_edges(restricted_graph, f1_run.forest.edges());
  std::vector<Side> restricted_side(h.vertex_count(), Side::None);
  Bipartition restricted_part;
  for (Vertex v : covered) {
    restricted_side[v] = side[v];
    (side[v] == Side::A ? restricted_part.A : restricted_part.B).push_back(v);
  }
  const auto keep1 = static_cast<std::size_t>(ceil_i64(d1));
  Graph cleaned_host = detail::trim_a_degrees(restricted_graph, restricted_side, keep1, &f1_on_restricted);
  Forest f1 = Forest::from_edges(cleaned_host, f1_run.forest.edges());

  auto cleaned = clean_claw_matching(cleaned_host, restricted_part, f1, ell, K, eps1, d1);
  if (auto* sd = std::get_if<SmallDenseFound>(&cleaned)) return *sd;
  CleanRun& clean = std::get<CleanRun>(cleaned);
  if (stats) {
    stats->swaps = clean.swaps;
    stats->dropped_components = clean.dropped_components;
  }

  BoundedMinorFound out;
  out.model.width = ell + 1;
  out.model.branch_sets = clean.forest.components();
  for (Vertex v : covered)
    if (!clean.forest.contains(v)) out.model.branch_sets.push_back({v});
  out.density = density(minor_graph(cleaned_host, out.model));
  out.bound = ell_r / 2 * (1 - 3 * ell_r * ell_r * ell_r * eps0) * d0;
  out.bound_met = out.density >= out.bound;
  if (mode == Mode::Theorem && !out.bound_met)
    throw InvariantViolation("bounded minor density " + to_string(out.density) + " misses its bound " +
                             to_string(out.bound));
  return out;
}

}  // namespace minoramp
