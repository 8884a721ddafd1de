#pragma once

#include "minoramp/claw.hpp"
#include "minoramp/forest.hpp"
#include "minoramp/mates.hpp"
#include "minoramp/minor.hpp"
#include "minoramp/mode.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace minoramp {

struct ShrubberyParams {
  std::size_t k = 2;
  std::size_t ell = 2;
  Rational K = 2;
  Rational eps = Rational(1, 64);
  Mode mode = Mode::Theorem;
};

enum class ShrubberyKind { SmallDense, UnbalancedBipartite, Shrubbery };

inline const char* kind_name(ShrubberyKind k) {
  switch (k) {
    case ShrubberyKind::SmallDense: return "small_dense";
    case ShrubberyKind::UnbalancedBipartite: return "unbalanced_bipartite";
    case ShrubberyKind::Shrubbery: return "shrubbery";
  }
  return "?";
}

enum class MoveKind { Attach, Star, Graft };

struct ShrubberyStats {
  std::size_t moves = 0;
  std::size_t strict_moves = 0;  // moves taken because a vertex broke a leftover bound
  std::size_t attach_moves = 0;
  std::size_t star_moves = 0;
  std::size_t graft_moves = 0;
  std::size_t failed_strict = 0;  // relaxed mode only
};

/// Every vertex set refers to core-local ids; core.to_host maps back.
struct ShrubberyOutcome {
  ShrubberyKind kind = ShrubberyKind::Shrubbery;
  Subgraph core;
  Rational d;  // frozen reference density d(core)
  std::vector<Vertex> small_dense;
  Bipartition unbalanced;  // A = X (uncovered small), B = Y (big and centroids)
  std::vector<Edge> forest_edges;
  std::vector<Check> checks;
  ShrubberyStats stats;

  /// The shrubbery as a Forest over core.graph (valid while *this is alive and unmoved).
  Forest forest() const { return Forest::from_edges(core.graph, forest_edges); }
};

/// Called after each committed move with the updated forest.
using MoveObserver = std::function<void(const Forest&, MoveKind, bool strict)>;

inline void check_shrubbery_params(const ShrubberyParams& p) {
  if (p.ell < 2 || p.k < p.ell) throw Error("need k >= ell >= 2");
  if (p.eps <= 0) throw Error("eps must be positive");
  if (p.mode == Mode::Theorem) {
    if (p.K < Rational(BigInt(p.k))) throw Error("need K >= k");
    if (p.eps * Rational(BigInt(p.k)) >= 1) throw Error("need eps < 1/k");
  } else if (p.K < 1) {
    throw Error("need K >= 1");
  }
}

namespace detail {

enum class Role : std::uint8_t { Big, Uncovered, Growing, Centroid, Peripheral };

struct Layout {
  std::vector<std::vector<Vertex>> comps;
  std::vector<std::uint32_t> comp_of;  // kNoVertex outside F
  std::vector<Role> role;
  std::vector<Vertex> uncovered;       // A', ascending
};

/// Sorted labels adjacent to `members` under `label`, excluding labels in `skip`.
inline std::vector<Vertex> label_neighbors(const Graph& g, const std::vector<Vertex>& label,
                                           const std::vector<Vertex>& members, const std::vector<Vertex>& skip) {
  std::vector<Vertex> out;
  for (Vertex x : members)
    for (Vertex y : g.neighbors(x)) out.push_back(label[y]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  std::vector<Vertex> sorted_skip = skip;
  std::sort(sorted_skip.begin(), sorted_skip.end());
  std::vector<Vertex> kept;
  std::set_difference(out.begin(), out.end(), sorted_skip.begin(), sorted_skip.end(), std::back_inserter(kept));
  return kept;
}

inline std::size_t intersection_size(const std::vector<Vertex>& a, const std::vector<Vertex>& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) ++i;
    else if (*j < *i) ++j;
    else { ++n; ++i; ++j; }
  }
  return n;
}

class ShrubberyBuilder {
public:
  ShrubberyBuilder(const Graph& g, const ShrubberyParams& p, const Rational& d, const MoveObserver& observer)
      : g_(g), p_(p), d_(d), f_(g), observer_(observer) {
    k_ = p.k;
    kr_ = Rational(BigInt(p.k));
    mate_need_ = mate_threshold(p.eps, d);
    small_limit_ = small_degree_limit(p.K, d);
    clean_c_ = 2 * kr_ * p.eps;
    contracted_K_ = p.K * kr_;
    small_.resize(g.vertex_count());
    for (Vertex v = 0; v < g.vertex_count(); ++v)
      small_[v] = static_cast<std::int64_t>(g.degree(v)) <= small_limit_;
  }

  ShrubberyOutcome run() {
    ShrubberyOutcome out;
    const std::size_t n = g_.vertex_count();
    const Rational violator_bound = 8 * kr_ * kr_ * p_.eps * d_;
    std::size_t cursor = 0;
    for (;;) {
      if (stats_.moves > n) throw InvariantViolation("move counter exceeded v(G)");
      Layout layout = make_layout();
      const bool covered = covered_enough(layout);
      if (!covered || f_.empty()) {
        Vertex violator = kNoVertex;
        for (Vertex v : layout.uncovered)
          if (Rational(BigInt(outside_count(layout, v))) > violator_bound) {
            violator = v;
            break;
          }
        if (violator != kNoVertex) {
          if (auto sd = strict_move(layout, violator)) return small_dense_exit(std::move(out), *sd);
          if (moved_) continue;
          ++stats_.failed_strict;
        }
      }
      if (opportunistic_move(layout, cursor)) continue;
      break;
    }
    Layout layout = make_layout();
    if (covered_enough(layout) && !f_.empty()) return shrubbery_exit(std::move(out), layout);
    return unbalanced_exit(std::move(out), layout);
  }

private:
  // --- layout -------------------------------------------------------------

  Layout make_layout() const {
    const std::size_t n = g_.vertex_count();
    Layout L;
    L.comps = f_.components();
    L.comp_of.assign(n, kNoVertex);
    L.role.assign(n, Role::Big);
    for (std::uint32_t i = 0; i < L.comps.size(); ++i) {
      const auto& comp = L.comps[i];
      for (Vertex v : comp) {
        L.comp_of[v] = i;
        L.role[v] = comp.size() == k_ ? Role::Peripheral : Role::Growing;
      }
      if (comp.size() == k_)
        for (Vertex c : centroids(f_.component_tree(comp.front()))) L.role[c] = Role::Centroid;
    }
    for (Vertex v = 0; v < n; ++v)
      if (small_[v] && !f_.contains(v)) {
        L.role[v] = Role::Uncovered;
        L.uncovered.push_back(v);
      }
    return L;
  }

  bool covered_enough(const Layout& L) const {
    return 4 * p_.ell * L.uncovered.size() <= k_ * g_.vertex_count();
  }

  std::size_t count_role(const Layout& L, Vertex v, Role r) const {
    std::size_t c = 0;
    for (Vertex w : g_.neighbors(v))
      if (L.role[w] == r) ++c;
    return c;
  }

  std::size_t outside_count(const Layout& L, Vertex v) const {
    std::size_t c = 0;
    for (Vertex w : g_.neighbors(v))
      if (L.role[w] == Role::Uncovered || L.role[w] == Role::Growing || L.role[w] == Role::Peripheral) ++c;
    return c;
  }

  bool is_mate(Vertex a, Vertex b) const {
    return static_cast<std::int64_t>(common_neighbor_count(g_, a, b)) >= mate_need_;
  }

  bool mate_free_across(const std::vector<Vertex>& xs, const std::vector<Vertex>& ys) const {
    for (Vertex x : xs)
      for (Vertex y : ys)
        if (is_mate(x, y)) return false;
    return true;
  }

  // --- contracted graphs --------------------------------------------------

  /// Model of the current forest with some components replaced.
  MinorModel working_model(const std::vector<std::vector<Vertex>>& sets) const {
    return MinorModel{sets, k_};
  }

  /// Mate witness in G/sets lifted to a small dense subgraph of G.
  std::optional<std::vector<Vertex>> contracted_witness(const MinorModel& model, std::vector<Vertex>* labels) {
    std::size_t count = 0;
    *labels = contraction_labels(g_.vertex_count(), model, &count);
    Graph q = quotient_graph(g_, *labels, count);
    if (auto w = unmated_or_witness(q, contracted_K_, p_.eps, d_)) {
      Subgraph h = small_dense_from_witness(q, *w, contracted_K_, p_.eps, d_);
      return lift_subgraph(g_, model, h).to_host;
    }
    return std::nullopt;
  }

  std::optional<std::vector<Vertex>> host_witness() {
    if (host_unmated_) return std::nullopt;
    if (auto w = unmated_or_witness(g_, p_.K, p_.eps, d_))
      return small_dense_from_witness(g_, *w, p_.K, p_.eps, d_).to_host;
    host_unmated_ = true;
    return std::nullopt;
  }

  // --- committing ---------------------------------------------------------

  struct Change {
    std::vector<Edge> remove;
    std::vector<Edge> add;
  };

  /// Applies the change if every forest invariant survives; otherwise throws
  /// (strict moves in theorem mode) or leaves F untouched.
  bool commit(const Change& c, MoveKind kind, bool strict) {
    Forest next = f_;
    std::size_t next_loss = 0;
    for (const Edge& e : c.remove) next.remove_edge(e.u, e.v);
    for (const Edge& e : c.add) next.add_edge(e.u, e.v);
    std::string failure;
    if (next.vertex_count() <= f_.vertex_count()) failure = "v(F) did not grow";
    else if (!is_shrubbery(next, k_)) failure = "not a shrubbery";
    else if (!is_mate_free(g_, next, p_.eps, d_)) failure = "component holds mates";
    else {
      next_loss = contraction_loss(g_, next);
      if (next_loss > budget_loss(next.vertex_count())) failure = "contraction loss over budget";
    }
    if (failure.empty())
      for (Vertex v : next.vertices())
        if (!small_[v]) {
          failure = "big vertex in forest";
          break;
        }
    if (!failure.empty()) {
      if (strict && p_.mode == Mode::Theorem) throw InvariantViolation("move broke an invariant: " + failure);
      return false;
    }
    f_ = std::move(next);
    loss_ = next_loss;
    ++stats_.moves;
    if (strict) ++stats_.strict_moves;
    switch (kind) {
      case MoveKind::Attach: ++stats_.attach_moves; break;
      case MoveKind::Star: ++stats_.star_moves; break;
      case MoveKind::Graft: ++stats_.graft_moves; break;
    }
    if (observer_) observer_(f_, kind, strict);
    return true;
  }

  std::size_t budget_loss(std::size_t forest_vertices) const {
    const Rational cap = clean_c_ * d_ * Rational(BigInt(forest_vertices));
    return static_cast<std::size_t>(std::max<std::int64_t>(floor_i64(cap), 0));
  }

  // --- moves --------------------------------------------------------------

  using MoveResult = std::optional<std::vector<Vertex>>;  // small dense vertex set, if found

  /// Proof-driven move for a vertex breaking the leftover bound.
  MoveResult strict_move(const Layout& L, Vertex v) {
    moved_ = false;
    if (auto sd = host_witness()) return sd;
    const Rational epsd = p_.eps * d_;
    std::size_t to_growing = count_role(L, v, Role::Growing);
    std::size_t to_uncovered = count_role(L, v, Role::Uncovered);
    std::size_t to_peripheral = count_role(L, v, Role::Peripheral);
    MoveResult r;
    if (Rational(BigInt(to_growing)) > 2 * kr_ * epsd) r = attach(L, v, true);
    else if (Rational(BigInt(to_uncovered)) > 4 * kr_ * epsd) r = grow_star(L, v, true);
    else if (Rational(BigInt(to_peripheral)) > 4 * kr_ * kr_ * epsd) r = graft(L, v, true);
    else throw InvariantViolation("vertex " + std::to_string(v) + " breaks the leftover bound but no branch count does");
    if (!r && !moved_ && p_.mode == Mode::Theorem)
      throw InvariantViolation("no qualifying move for vertex " + std::to_string(v));
    return r;
  }

  bool opportunistic_move(const Layout& L, std::size_t& cursor) {
    const auto& A = L.uncovered;
    for (std::size_t step = 0; step < A.size(); ++step) {
      std::size_t idx = (cursor + step) % A.size();
      Vertex v = A[idx];
      if (outside_count(L, v) == 0) continue;
      moved_ = false;
      attach(L, v, false);
      if (!moved_) grow_star(L, v, false);
      if (!moved_) graft(L, v, false);
      if (moved_) {
        cursor = idx + 1;
        return true;
      }
    }
    return false;
  }

  /// Adds v to an adjacent component of size < k.
  MoveResult attach(const Layout& L, Vertex v, bool strict) {
    std::vector<Vertex> labels;
    MinorModel model = working_model(L.comps);
    if (strict) {
      if (auto sd = contracted_witness(model, &labels)) return sd;
    } else {
      labels = contraction_labels(g_.vertex_count(), model, nullptr);
    }
    // candidate components ordered by v's smallest neighbor in them
    std::vector<std::pair<Vertex, std::uint32_t>> cands;
    std::vector<bool> seen(L.comps.size(), false);
    for (Vertex w : g_.neighbors(v)) {
      if (L.role[w] != Role::Growing) continue;
      auto c = L.comp_of[w];
      if (seen[c]) continue;
      seen[c] = true;
      cands.emplace_back(w, c);
    }
    const std::size_t loss = loss_;
    const std::size_t budget = budget_loss(f_.vertex_count() + 1);
    auto v_nbrs = label_neighbors(g_, labels, {v}, {labels[v]});
    for (auto [w, c] : cands) {
      const auto& comp = L.comps[c];
      if (!mate_free_across({v}, comp)) continue;
      auto t_nbrs = label_neighbors(g_, labels, comp, {c});
      std::size_t common = intersection_size(v_nbrs, t_nbrs);
      if (strict && static_cast<std::int64_t>(common) >= mate_need_) continue;
      if (loss + 1 + common > budget) continue;
      if (commit({{}, {Edge(v, w)}}, MoveKind::Attach, strict)) {
        moved_ = true;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  /// Grows a new star around v from its uncovered neighbors.
  MoveResult grow_star(const Layout& L, Vertex v, bool strict) {
    std::vector<Vertex> cands;
    for (Vertex w : g_.neighbors(v))
      if (L.role[w] == Role::Uncovered && !is_mate(v, w)) cands.push_back(w);
    std::vector<Vertex> members{v};
    std::vector<bool> used(g_.vertex_count(), false);
    std::size_t loss = loss_;
    while (2 * members.size() <= k_) {
      auto sets = L.comps;
      sets.push_back(members);
      MinorModel model = working_model(sets);
      std::vector<Vertex> labels;
      if (strict) {
        if (auto sd = contracted_witness(model, &labels)) return sd;
      } else {
        labels = contraction_labels(g_.vertex_count(), model, nullptr);
      }
      const Vertex ts_label = static_cast<Vertex>(sets.size() - 1);
      auto ts_nbrs = label_neighbors(g_, labels, members, {ts_label});
      const std::size_t budget = budget_loss(f_.vertex_count() + members.size() + 1);
      bool grew = false;
      for (Vertex w : cands) {
        if (used[w]) continue;
        if (!mate_free_across({w}, members)) continue;
        auto w_nbrs = label_neighbors(g_, labels, {w}, {labels[w], ts_label});
        std::size_t common = intersection_size(ts_nbrs, w_nbrs);
        if (strict && static_cast<std::int64_t>(common) >= mate_need_) continue;
        if (loss + 1 + common > budget) continue;
        used[w] = true;
        members.push_back(w);
        loss += 1 + common;
        grew = true;
        break;
      }
      if (!grew) return std::nullopt;
    }
    Change c;
    for (std::size_t i = 1; i < members.size(); ++i) c.add.emplace_back(v, members[i]);
    if (commit(c, MoveKind::Star, strict)) moved_ = true;
    return std::nullopt;
  }

  /// Pulls peripheral pieces of full components onto v.
  MoveResult graft(const Layout& L, Vertex v, bool strict) {
    struct Piece {
      Vertex anchor;
      std::uint32_t comp;
      PeripheralPiece piece;
    };
    std::vector<Piece> pieces;
    std::vector<bool> seen(L.comps.size(), false);
    for (Vertex w : g_.neighbors(v)) {
      if (L.role[w] != Role::Peripheral) continue;
      auto c = L.comp_of[w];
      if (seen[c]) continue;
      seen[c] = true;
      if (!mate_free_across({v}, L.comps[c])) continue;
      pieces.push_back({w, c, peripheral_piece(f_.component_tree(w), w)});
    }
    if (pieces.empty()) return std::nullopt;

    std::vector<Vertex> members{v};
    std::vector<bool> used(pieces.size(), false);
    auto sets = L.comps;
    std::vector<Edge> removed, added;
    const std::size_t e_total = g_.edge_count();
    while (2 * members.size() <= k_) {
      std::vector<Vertex> labels;
      auto staged = sets;
      staged.push_back(members);
      MinorModel model = working_model(staged);
      const Vertex ts_label = static_cast<Vertex>(staged.size() - 1);
      if (strict) {
        if (auto sd = contracted_witness(model, &labels)) return sd;
      } else {
        labels = contraction_labels(g_.vertex_count(), model, nullptr);
      }
      auto ts_nbrs = label_neighbors(g_, labels, members, {ts_label});
      const std::size_t before = e_total - quotient_edge_count(g_, labels);
      const std::size_t budget = budget_loss(f_.vertex_count() + 1);
      bool grew = false;
      for (std::size_t i = 0; i < pieces.size(); ++i) {
        if (used[i]) continue;
        const auto& pc = pieces[i];
        if (members.size() + pc.piece.piece.size() > k_) continue;
        if (!mate_free_across(pc.piece.piece, members)) continue;
        if (strict) {
          auto t_nbrs = label_neighbors(g_, labels, sets[pc.comp], {pc.comp});
          if (static_cast<std::int64_t>(intersection_size(ts_nbrs, t_nbrs)) >= mate_need_) continue;
        }
        // tentative split of T_i and merge of its piece into T_S
        auto trial_sets = sets;
        auto& rest = trial_sets[pc.comp];
        std::vector<Vertex> remainder;
        std::set_difference(rest.begin(), rest.end(), pc.piece.piece.begin(), pc.piece.piece.end(),
                            std::back_inserter(remainder));
        rest = remainder;
        auto trial_members = members;
        trial_members.insert(trial_members.end(), pc.piece.piece.begin(), pc.piece.piece.end());
        std::sort(trial_members.begin(), trial_members.end());
        trial_sets.push_back(trial_members);
        auto trial_labels = contraction_labels(g_.vertex_count(), working_model(trial_sets), nullptr);
        const std::size_t after = e_total - quotient_edge_count(g_, trial_labels);
        if (strict && Rational(BigInt(after)) > Rational(BigInt(before)) + p_.eps * d_ + 1) {
          if (p_.mode == Mode::Theorem) throw InvariantViolation("graft step lost more than eps*d + 1 edges");
          continue;
        }
        if (after > budget) continue;
        used[i] = true;
        sets = std::move(trial_sets);
        sets.pop_back();
        members = std::move(trial_members);
        removed.push_back(pc.piece.central_edge);
        added.emplace_back(v, pc.anchor);
        grew = true;
        break;
      }
      if (!grew) return std::nullopt;
    }
    if (commit({removed, added}, MoveKind::Graft, strict)) moved_ = true;
    return std::nullopt;
  }

  // --- exits --------------------------------------------------------------

  void finish(ShrubberyOutcome& out) const {
    out.d = d_;
    out.stats = stats_;
    out.forest_edges = f_.edges();
    if (p_.mode == Mode::Theorem && !all_hold(out.checks)) {
      std::string names;
      for (const auto& n : failed_checks(out.checks)) names += (names.empty() ? "" : ", ") + n;
      throw InvariantViolation(std::string("shrubbery exit ") + kind_name(out.kind) + " fails: " + names);
    }
  }

  ShrubberyOutcome small_dense_exit(ShrubberyOutcome out, const std::vector<Vertex>& verts) const {
    out.kind = ShrubberyKind::SmallDense;
    out.small_dense = verts;
    Subgraph h = induced_subgraph(g_, verts);
    const Rational v_bound = 3 * kr_ * kr_ * p_.K * d_;
    const Rational e_bound = p_.eps * p_.eps * d_ * d_ / 2;
    out.checks.push_back({"v(H) <= 3k^2Kd", Rational(BigInt(h.vertex_count())) <= v_bound});
    out.checks.push_back({"e(H) >= eps^2 d^2 / 2", Rational(BigInt(h.edge_count())) >= e_bound});
    finish(out);
    return out;
  }

  ShrubberyOutcome shrubbery_exit(ShrubberyOutcome out, const Layout&) const {
    out.kind = ShrubberyKind::Shrubbery;
    const Rational n(BigInt(g_.vertex_count()));
    const Rational ell(BigInt(p_.ell));
    out.checks.push_back({"shrubbery", is_shrubbery(f_, k_)});
    out.checks.push_back({"small forest", is_small_forest(g_, f_, p_.K, d_)});
    out.checks.push_back({"mate-free", is_mate_free(g_, f_, p_.eps, d_)});
    out.checks.push_back({"clean", is_clean(g_, f_, clean_c_, d_)});
    out.checks.push_back({"coverage", Rational(BigInt(f_.vertex_count())) >= (1 - (2 + 4 * ell) / kr_) * n});
    finish(out);
    return out;
  }

  ShrubberyOutcome unbalanced_exit(ShrubberyOutcome out, const Layout& L) const {
    out.kind = ShrubberyKind::UnbalancedBipartite;
    const Rational n(BigInt(g_.vertex_count()));
    const Rational ell(BigInt(p_.ell));
    std::vector<Vertex> big, cent;
    for (Vertex v = 0; v < g_.vertex_count(); ++v) {
      if (L.role[v] == Role::Big) big.push_back(v);
      if (L.role[v] == Role::Centroid) cent.push_back(v);
    }
    out.unbalanced.A = L.uncovered;
    out.unbalanced.B = big;
    out.unbalanced.B.insert(out.unbalanced.B.end(), cent.begin(), cent.end());
    std::sort(out.unbalanced.B.begin(), out.unbalanced.B.end());

    const Rational leftover_bound = 8 * kr_ * kr_ * p_.eps * d_;
    const Rational degree_need = (1 - 8 * kr_ * kr_ * p_.eps) * d_;
    bool leftovers = true, degrees = true;
    for (Vertex x : L.uncovered) {
      std::size_t into_y = 0;
      for (Vertex w : g_.neighbors(x))
        if (L.role[w] == Role::Big || L.role[w] == Role::Centroid) ++into_y;
      if (Rational(BigInt(outside_count(L, x))) > leftover_bound) leftovers = false;
      if (Rational(BigInt(into_y)) < degree_need) degrees = false;
    }
    out.checks.push_back({"X non-empty", !L.uncovered.empty()});
    out.checks.push_back({"|X| >= ell|Y|", L.uncovered.size() >= p_.ell * out.unbalanced.B.size()});
    out.checks.push_back({"X-degrees into Y", degrees});
    out.checks.push_back({"leftovers", leftovers});
    out.checks.push_back({"|B| <= (2/k)v(G)", Rational(BigInt(big.size())) <= 2 * n / kr_});
    out.checks.push_back({"|C| <= (2/k)v(G)", Rational(BigInt(cent.size())) <= 2 * n / kr_});
    out.checks.push_back({"|A'| > (4ell/k)v(G)", Rational(BigInt(L.uncovered.size())) > 4 * ell * n / kr_});
    finish(out);
    return out;
  }

  const Graph& g_;
  ShrubberyParams p_;
  Rational d_;
  Forest f_;
  MoveObserver observer_;
  std::size_t k_ = 0;
  Rational kr_;
  std::int64_t mate_need_ = 0;
  std::int64_t small_limit_ = 0;
  Rational clean_c_;
  Rational contracted_K_;
  std::vector<bool> small_;
  std::size_t loss_ = 0;  // e(G) - e(G/F)
  bool host_unmated_ = false;
  bool moved_ = false;
  ShrubberyStats stats_;
};

}  // namespace detail

/// Runs on dense_core(G) with d frozen at its density. Returns a small dense
/// subgraph, an unbalanced bipartite pair, or a mate-free clean k-shrubbery
/// covering most of the core.
inline ShrubberyOutcome build_shrubbery(const Graph& g, const ShrubberyParams& p, const MoveObserver& observer = {}) {
  check_shrubbery_params(p);
  if (g.edge_count() == 0) throw Error("graph has no edges");
  if (p.mode == Mode::Theorem && density(g) * p.eps < 2) throw Error("need d(G) >= 2/eps");
  Subgraph core = dense_core(g);
  const Rational d = density(core.graph);
  detail::ShrubberyBuilder builder(core.graph, p, d, observer);
  ShrubberyOutcome out = builder.run();
  out.core = std::move(core);
  return out;
}

}  // namespace minoramp
