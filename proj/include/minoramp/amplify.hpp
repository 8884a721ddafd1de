#pragma once

#include "minoramp/certificate.hpp"
#include "minoramp/claw.hpp"
#include "minoramp/params.hpp"
#include "minoramp/shrubbery.hpp"

#include <string>
#include <vector>

namespace minoramp {

struct AmplifyStats {
  ShrubberyKind exit = ShrubberyKind::Shrubbery;
  std::size_t moves = 0;
  std::size_t swaps = 0;
  std::size_t augmentations = 0;
};

struct AmplifyResult {
  Certificate certificate;
  AmplifyStats stats;
  Rational measured_density;  // d(minor) for minors, d(G[H]) for a small dense subgraph
};

namespace detail {

inline std::vector<Vertex> to_host_ids(const Subgraph& core, const std::vector<Vertex>& local) {
  std::vector<Vertex> out;
  out.reserve(local.size());
  for (Vertex v : local) out.push_back(core.to_host[v]);
  std::sort(out.begin(), out.end());
  return out;
}

inline MinorModel canonical_model(std::vector<std::vector<Vertex>> sets, std::size_t width) {
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  return MinorModel{std::move(sets), width};
}

inline void fill_small_dense(const Graph& g, Certificate& c, std::vector<Vertex> verts, AmplifyResult& r) {
  c.outcome = Outcome::SmallDense;
  c.vertices = std::move(verts);
  auto b = certificate_bounds(c.params, c.reference_density, c.outcome);
  Subgraph h = induced_subgraph(g, c.vertices);
  const Rational v(BigInt(h.vertex_count())), e(BigInt(h.edge_count()));
  c.claimed_v_bound = b.v_bound;
  c.claimed_e_bound = b.e_bound;
  c.bounds_met = v <= b.v_bound && e >= b.e_bound;
  c.tight_v_bound_met = c.bounds_met && v <= b.tight_v_bound;
  r.measured_density = density(h.graph);
}

inline void fill_minor(const Graph& g, Certificate& c, Outcome o, MinorModel model, AmplifyResult& r) {
  c.outcome = o;
  c.model = std::move(model);
  auto b = certificate_bounds(c.params, c.reference_density, o);
  r.measured_density = density(minor_graph(g, c.model));
  c.claimed_density = r.measured_density;
  c.bound = b.bound;
  c.bound_met = c.claimed_density >= b.bound;
  if (o == Outcome::EllMinor) {
    c.strong_bound = b.strong_bound;
    c.strong_bound_met = c.claimed_density >= b.strong_bound;
  }
}

}  // namespace detail

/// One amplification step with K = k: a small dense subgraph, an
/// (ell+1)-bounded minor, or a k-bounded minor, each as a self-checked
/// certificate.
inline AmplifyResult amplify(const Graph& g, const Params& params) {
  check_params(params);
  if (g.edge_count() == 0) throw Error("graph has no edges");
  if (params.mode == Mode::Theorem && density(g) * params.eps < 2) throw Error("theorem mode needs d(G) >= 2/eps");

  Params p = params;
  p.K = params.effective_K();
  ShrubberyParams sp{p.k, p.ell, p.K, p.eps, p.mode};
  ShrubberyOutcome sh = build_shrubbery(g, sp);

  AmplifyResult r;
  r.stats.exit = sh.kind;
  r.stats.moves = sh.stats.moves;
  Certificate& c = r.certificate;
  c.params = p;
  c.host = fingerprint(g);
  c.reference_density = sh.d;
  const Rational d = sh.d;

  switch (sh.kind) {
    case ShrubberyKind::SmallDense:
      detail::fill_small_dense(g, c, detail::to_host_ids(sh.core, sh.small_dense), r);
      break;
    case ShrubberyKind::Shrubbery: {
      Forest f = sh.forest();
      std::vector<std::vector<Vertex>> sets;
      for (const auto& comp : f.components()) sets.push_back(detail::to_host_ids(sh.core, comp));
      for (Vertex v = 0; v < sh.core.vertex_count(); ++v)
        if (!f.contains(v)) sets.push_back({sh.core.to_host[v]});
      detail::fill_minor(g, c, Outcome::KMinor, detail::canonical_model(std::move(sets), p.k), r);
      break;
    }
    case ShrubberyKind::UnbalancedBipartite: {
      const Rational k(BigInt(p.k));
      const Rational d0 = (1 - 8 * k * k * p.eps) * d;
      if (d0 <= 0 || 2 * p.eps * Rational(BigInt(p.ell)) >= 1) {
        // Relaxed parameters leave no room for the bipartite step; a mate
        // witness in the core still yields a small dense subgraph.
        if (auto w = unmated_or_witness(sh.core.graph, p.K, p.eps, d)) {
          Subgraph h = small_dense_from_witness(sh.core.graph, *w, p.K, p.eps, d);
          detail::fill_small_dense(g, c, detail::to_host_ids(sh.core, h.to_host), r);
          break;
        }
        throw Error("unbalanced exit needs 8k^2 eps < 1 and 2 eps ell < 1");
      }
      BipartiteMinorStats bs;
      auto res = bipartite_dense_minor(sh.core.graph, sh.unbalanced, p.ell, p.K, 2 * p.eps, d0, p.mode, &bs);
      r.stats.swaps = bs.swaps;
      r.stats.augmentations = bs.augmentations;
      if (auto* sd = std::get_if<SmallDenseFound>(&res)) {
        detail::fill_small_dense(g, c, detail::to_host_ids(sh.core, sd->vertices), r);
      } else {
        auto& bm = std::get<BoundedMinorFound>(res);
        std::vector<std::vector<Vertex>> sets;
        for (const auto& s : bm.model.branch_sets) sets.push_back(detail::to_host_ids(sh.core, s));
        detail::fill_minor(g, c, Outcome::EllMinor, detail::canonical_model(std::move(sets), p.ell + 1), r);
      }
      break;
    }
  }

  auto verdict = verify_certificate(g, c);
  if (!verdict.accepted) throw InvariantViolation("certificate failed self-verification: " + verdict.reason);
  return r;
}

// ---------------------------------------------------------------------------
// Iterated search

struct ForcedLevel {
  std::size_t depth = 0;
  std::size_t n = 0;
  std::size_t e = 0;
  Rational density;    // d of the graph at this level
  Rational r;          // D / density
  Outcome outcome = Outcome::SmallDense;
  std::size_t width = 1;  // width of the model taken at this level (1 for the final level)
  Rational claimed;       // claimed density (minor) or claimed v bound (small dense)
  Rational measured;      // measured density of the minor, or of the small dense subgraph
  // after lifting the final subgraph up to this level
  std::size_t lifted_v = 0;
  std::size_t lifted_e = 0;
  bool lift_v_ok = false;  // lifted_v <= width * inner v
  bool lift_d_ok = false;  // lifted density >= inner density / width
};

struct ForcedTrace {
  std::vector<ForcedLevel> levels;
  Subgraph result;             // subgraph of the input host
  Rational result_density;
  BigInt width_product = 1;
  bool product_v_ok = false;   // v(H) <= prod widths * v(innermost)
  bool product_d_ok = false;   // d(H) >= d(innermost) / prod widths
  bool exponent_identity = false;  // 1 - (1 - alpha) * lambda == 0
  bool final_v_ok = false;     // v(H) <= 2^(16/alpha^2) r^lambda D
  bool final_d_ok = false;     // d(H) >= 2^(-16/alpha^2) r^-lambda D
};

namespace detail {

/// x <= 2^(s*16/alpha^2) * r^(s*lambda) * D for s = +1, or x >= ... with
/// s = -1, all compared exactly after clearing the rational exponents.
inline bool compare_forced(const Rational& x, const ForcedParams& fp, int sign) {
  // alpha = a/b, lambda = b/(b-a), 16/alpha^2 = 16 b^2 / a^2. Raise to a^2 (b-a).
  const auto a = detail::small_int(numerator_of(fp.alpha), "alpha numerator");
  const auto b = detail::small_int(denominator_of(fp.alpha), "alpha denominator");
  const std::int64_t m = a * a * (b - a);
  const Rational ratio = x / fp.D;                                    // compare against 2^(..) r^(..)
  const Rational lhs = rational_pow(ratio, m);
  const Rational rhs = pow2(sign * 16 * b * b * (b - a)) * rational_pow(fp.r, sign * a * a * b);
  return sign > 0 ? lhs <= rhs : lhs >= rhs;
}

}  // namespace detail

/// Repeats amplify on the minor it returns until a small dense subgraph
/// appears, then lifts it back to the input host level by level.
inline ForcedTrace forced_search(const Graph& g, const Params& params, const ForcedParams& fp,
                                 std::size_t depth_limit = 64) {
  if (fp.lambda * (1 - fp.alpha) != 1) throw Error("lambda must equal 1/(1-alpha)");
  ForcedTrace trace;
  trace.exponent_identity = 1 - (1 - fp.alpha) * fp.lambda == 0;

  std::vector<Graph> graphs{g};
  std::vector<MinorModel> models;
  std::vector<Vertex> final_vertices;
  for (std::size_t depth = 0;; ++depth) {
    if (depth >= depth_limit) throw Error("forced search exceeded depth limit " + std::to_string(depth_limit));
    const Graph& cur = graphs.back();
    AmplifyResult res = amplify(cur, params);
    const Certificate& c = res.certificate;
    ForcedLevel lvl;
    lvl.depth = depth;
    lvl.n = cur.vertex_count();
    lvl.e = cur.edge_count();
    lvl.density = density(cur);
    lvl.r = fp.D / lvl.density;
    lvl.outcome = c.outcome;
    lvl.measured = res.measured_density;
    if (c.outcome == Outcome::SmallDense) {
      lvl.claimed = c.claimed_v_bound;
      trace.levels.push_back(lvl);
      final_vertices = c.vertices;
      break;
    }
    lvl.width = c.model.width;
    lvl.claimed = c.claimed_density;
    trace.levels.push_back(lvl);
    models.push_back(c.model);
    graphs.push_back(minor_graph(cur, c.model));
  }

  // lift back through the chain
  Subgraph h = induced_subgraph(graphs.back(), final_vertices);
  const std::size_t inner_v = h.vertex_count();
  const Rational inner_d = h.vertex_count() ? density(h.graph) : Rational(0);
  trace.levels.back().lifted_v = h.vertex_count();
  trace.levels.back().lifted_e = h.edge_count();
  trace.levels.back().lift_v_ok = trace.levels.back().lift_d_ok = true;
  for (std::size_t i = models.size(); i-- > 0;) {
    const std::size_t w = models[i].width;
    Subgraph lifted = lift_subgraph(graphs[i], models[i], h);
    auto& lvl = trace.levels[i];
    lvl.lifted_v = lifted.vertex_count();
    lvl.lifted_e = lifted.edge_count();
    lvl.lift_v_ok = lifted.vertex_count() <= w * h.vertex_count();
    lvl.lift_d_ok = density(lifted.graph) * Rational(BigInt(w)) >= density(h.graph);
    trace.width_product *= w;
    h = std::move(lifted);
  }
  trace.result = std::move(h);
  trace.result_density = density(trace.result.graph);
  const Rational prod(trace.width_product);
  trace.product_v_ok = Rational(BigInt(trace.result.vertex_count())) <= prod * Rational(BigInt(inner_v));
  trace.product_d_ok = trace.result_density * prod >= inner_d;
  trace.final_v_ok = detail::compare_forced(Rational(BigInt(trace.result.vertex_count())), fp, +1);
  trace.final_d_ok = detail::compare_forced(trace.result_density, fp, -1);
  return trace;
}

}  // namespace minoramp
