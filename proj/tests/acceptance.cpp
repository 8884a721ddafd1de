// Acceptance run: one PASS/FAIL line per criterion, each timed against a
// pinned budget. Exact rational comparisons throughout; no tolerances.

#include "cli.hpp"
#include "minoramp/minoramp.hpp"
#include "minoramp/testing/instances.hpp"
#include "minoramp/testing/oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace minoramp;

namespace {

Rational q(std::size_t x) { return Rational(BigInt(x)); }

// Wall-clock budgets in seconds.
constexpr double kBudget1 = 5, kBudget2 = 5, kBudget3 = 30, kBudget4 = 60, kBudget5PerSeed = 120, kBudget6 = 60,
                 kBudget7 = 1, kBudget8 = 120, kBudget9 = 30, kBudget10 = 600;

// Criteria whose statement is false as written; they still print FAIL but do
// not fail the process. See the README section on known failures.
const std::set<int> kKnownFailures{7};

struct Result {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

// ---------------------------------------------------------------------------

Result loss_identities() {
  Result r;
  Rng rng(101);
  std::size_t edges_checked = 0, pairs_checked = 0;
  for (std::uint64_t host = 0; edges_checked < 1000; ++host) {
    Graph g = gen_gnp(100, Rational(1, 5), 5000 + host);
    auto edges = g.edges();
    for (int i = 0; i < 100 && edges_checked < 1000; ++i, ++edges_checked) {
      Edge e = edges[rng.below(edges.size())];
      const std::size_t fast = edge_contraction_loss(g, e.u, e.v);
      const std::size_t materialized = g.edge_count() - contract_forest(g, Forest::from_edges(g, {e})).edge_count();
      r.require(fast == materialized, "edge loss differs from materialized contraction");
      r.require(fast == 1 + common_neighbor_count(g, e.u, e.v), "edge loss differs from 1 + |N(u)&N(v)|");
    }
  }
  for (std::uint64_t host = 0; pairs_checked < 500; ++host) {
    Graph g = gen_gnp(100, Rational(1, 5), 7000 + host);
    for (int i = 0; i < 50 && pairs_checked < 500; ++i) {
      Forest f = testing::random_forest(g, rng, 1 + rng.below(3), 4);
      auto fe = f.edges();
      if (fe.empty()) continue;
      // proper subforest: drop a random non-empty subset of edges
      std::vector<Edge> keep;
      for (const Edge& e : fe)
        if (rng.bernoulli(1, 2)) keep.push_back(e);
      if (keep.size() == fe.size()) keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(rng.below(keep.size())));
      Forest sub = Forest::from_edges(g, keep);
      const std::size_t full = oracle::contraction_loss(g, f), part = oracle::contraction_loss(g, sub);
      r.require(contraction_loss(g, f) == full, "forest loss differs from oracle");
      r.require(part + 1 <= full, "subforest loss not at least one below");
      ++pairs_checked;
    }
  }
  r.detail = r.pass ? std::to_string(edges_checked) + " edges, " + std::to_string(pairs_checked) + " subforest pairs"
                    : r.detail;
  return r;
}

Result centroid_oracle() {
  Result r;
  Rng rng(202);
  std::size_t sizes[3] = {0, 0, 0};
  for (int i = 0; i < 200; ++i) {
    Tree t = testing::random_tree(1 + rng.below(200), rng);
    auto got = centroids(t);
    r.require(got.size() == 1 || got.size() == 2, "centroid count outside {1,2}");
    r.require(got == oracle::centroids(t), "centroids differ from definition");
    ++sizes[std::min<std::size_t>(got.size(), 2)];
  }
  if (r.pass)
    r.detail = "200 trees, " + std::to_string(sizes[1]) + " with one centroid, " + std::to_string(sizes[2]) + " with two";
  return r;
}

Result claw_contract() {
  Result r;
  std::size_t augmentations = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t ell = 2 + seed % 2;
    const Rational dA(3);
    BipartiteHost h = gen_bipartite_host(30, ell, 12, 300 + seed, 3);
    const Graph& g = h.graph;
    auto side = side_table(g.vertex_count(), h.part);
    for (Vertex b : h.part.B) r.require(g.degree(b) >= 12, "host B-degree below 12");
    std::size_t covered = 0;
    auto covered_a = [&](const Forest& f) {
      std::size_t c = 0;
      for (Vertex v : f.vertices()) c += side[v] == Side::A;
      return c;
    };
    ClawRun run = build_claw_matching(g, h.part, ell, dA, [&](const Forest& f) {
      const std::size_t now = covered_a(f);
      r.require(now == covered + 1, "augmentation changed |V(F0) & A| by other than 1");
      r.require(is_claw_matching(g, f, h.part, ell, StarMode::AtMost), "augmentation broke the claw invariant");
      covered = now;
    });
    augmentations += run.augmentations;
    r.require(run.forest.empty() || is_claw_matching(g, run.forest, h.part, ell, StarMode::Exactly),
              "result is not an ell-claw-matching");
    for (Vertex a : run.forest.vertices()) {
      if (side[a] != Side::A) continue;
      std::size_t outside = 0;
      for (Vertex w : g.neighbors(a)) outside += side[w] == Side::B && !run.forest.contains(w);
      r.require(q(outside) <= dA, "leaf with more than dA neighbors in B outside the matching");
    }
  }
  if (r.pass) r.detail = "100 hosts, " + std::to_string(augmentations) + " augmentations, 0 violations";
  return r;
}

Result cleaning() {
  Result r;
  const Rational eps1(1, 3), d1(6), K(2);
  const std::size_t ell = 2;
  std::size_t swaps = 0;
  for (std::size_t spokes = 7; spokes <= 10; ++spokes) {
    auto gadget = testing::swap_gadget(1, spokes);
    Forest f = Forest::from_edges(gadget.graph, gadget.forest);
    r.require(bad_pairs(gadget.graph, f).size() == spokes, "gadget lacks its planted bad pairs");
    auto res = clean_claw_matching(gadget.graph, gadget.part, f, ell, K, eps1, d1);
    if (!std::holds_alternative<CleanRun>(res)) {
      r.require(false, "cleaning returned a small dense subgraph on gadget " + std::to_string(spokes));
      continue;
    }
    const auto& clean = std::get<CleanRun>(res);
    swaps += clean.swaps;
    r.require(clean.swaps >= 1, "gadget cleaned without a swap");
    const auto& hist = clean.bad_pair_history;
    for (std::size_t i = 1; i < hist.size(); ++i) r.require(hist[i] < hist[i - 1], "bad-pair count did not drop");
    r.require(q(contraction_loss(gadget.graph, clean.forest)) <=
                  q(ell * ell) * eps1 * d1 * q(clean.forest.vertex_count()),
              "final loss above ell^2 eps1 d1 v(F)");
  }
  Rng rng(404);
  std::size_t compared = 0;
  for (std::size_t n = 4; n <= 10; ++n)
    for (auto [num, den] : {std::pair{1, 5}, std::pair{2, 5}, std::pair{3, 5}})
      for (int round = 0; round < 60; ++round) {
        Graph g = gen_gnp(n, Rational(num, den), rng.next());
        Forest f = testing::random_forest(g, rng, 1, 2);
        std::set<std::pair<Edge, Edge>> got;
        for (const auto& p : bad_pairs(g, f)) got.insert({p.first, p.second});
        r.require(got == oracle::bad_pairs(g, f), "bad_pairs differs from the 4-cycle oracle");
        ++compared;
      }
  // every graph on 5 vertices, with one random forest each
  for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
    Graph g = testing::graph_from_mask(5, mask);
    Forest f = testing::random_forest(g, rng, 1, 2);
    std::set<std::pair<Edge, Edge>> got;
    for (const auto& p : bad_pairs(g, f)) got.insert({p.first, p.second});
    r.require(got == oracle::bad_pairs(g, f), "bad_pairs differs from the oracle on a 5-vertex graph");
    ++compared;
  }
  if (r.pass) r.detail = std::to_string(swaps) + " swaps on 4 gadgets, " + std::to_string(compared) + " oracle comparisons";
  return r;
}

Result theorem_end_to_end(double& worst_seed) {
  Result r;
  const Params p{2, 2, Rational(1, 64), 0, Mode::Theorem};
  const Rational k(2), ell(2), eps = p.eps;
  std::size_t outcomes[3] = {0, 0, 0};
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto start = std::chrono::steady_clock::now();
    Graph g = gen_gnp(1500, Rational(9, 50), seed);
    r.require(density(g) >= 128, "host density below 2/eps");
    AmplifyResult res = amplify(g, p);
    const Certificate& c = res.certificate;
    r.require(verify_certificate(g, c).accepted, "verifier rejected seed " + std::to_string(seed));
    const Rational d = c.reference_density;
    r.require(d >= density(g), "reference density below d(G)");
    ++outcomes[static_cast<int>(c.outcome)];
    if (c.outcome == Outcome::SmallDense) {
      Subgraph h = induced_subgraph(g, c.vertices);
      r.require(q(h.vertex_count()) <= 6 * k * k * k * d, "small dense v above 6k^3 d");
      r.require(q(h.edge_count()) >= eps * eps * d * d / 2, "small dense e below eps^2 d^2 / 2");
    } else if (c.outcome == Outcome::EllMinor) {
      const Rational d0 = (1 - 8 * k * k * eps) * d;
      const Rational measured = density(minor_graph(g, c.model));
      r.require(measured >= ell / 2 * (1 - 3 * ell * ell * ell * 2 * eps) * d0, "ell-minor below its bound");
    } else {
      const Rational measured = density(minor_graph(g, c.model));
      r.require(measured >= k / (8 * ell) * (1 - 2 * k * eps) * d, "k-minor below its bound");
    }
    worst_seed = std::max(worst_seed, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  if (r.pass)
    r.detail = "20 seeds: " + std::to_string(outcomes[0]) + " small_dense, " + std::to_string(outcomes[1]) +
               " ell_minor, " + std::to_string(outcomes[2]) + " k_minor";
  return r;
}

Result builder_exits() {
  Result r;
  {
    Graph g = gen_cliques(200, 4);
    const ShrubberyParams p{4, 2, 4, Rational(3, 2), Mode::Relaxed};
    ShrubberyOutcome o = build_shrubbery(g, p);
    r.require(o.kind == ShrubberyKind::Shrubbery, "cliques host did not return a shrubbery");
    if (o.kind == ShrubberyKind::Shrubbery) {
      Forest f = o.forest();
      const Rational cover = (1 - Rational(BigInt(2 + 4 * p.ell), BigInt(p.k))) * q(o.core.vertex_count());
      r.require(q(f.vertex_count()) >= cover, "shrubbery covers too little");
      r.require(is_shrubbery(f, p.k), "not a k-shrubbery");
      r.require(is_small_forest(o.core.graph, f, p.K, o.d), "forest not small");
      r.require(is_mate_free(o.core.graph, f, p.eps, o.d), "forest not mate-free");
      r.require(is_clean(o.core.graph, f, 2 * q(p.k) * p.eps, o.d), "forest not clean");
      r.require(all_hold(o.checks), "builder self-checks failed");
    }
  }
  {
    Graph g = gen_pendant(10, 200, 5);
    const ShrubberyParams p{16, 2, 16, Rational(1, 4096), Mode::Relaxed};
    ShrubberyOutcome o = build_shrubbery(g, p);
    r.require(o.kind == ShrubberyKind::UnbalancedBipartite, "pendant host did not exit unbalanced");
    if (o.kind == ShrubberyKind::UnbalancedBipartite) {
      const auto& X = o.unbalanced.A;
      const auto& Y = o.unbalanced.B;
      r.require(X.size() >= p.ell * Y.size(), "|X| < ell |Y|");
      std::vector<bool> in_y(o.core.vertex_count(), false);
      for (Vertex y : Y) in_y[y] = true;
      const Rational need = (1 - 8 * q(p.k) * q(p.k) * p.eps) * o.d;
      for (Vertex x : X) {
        std::size_t into = 0;
        for (Vertex w : o.core.graph.neighbors(x)) into += in_y[w];
        r.require(q(into) >= need, "X-vertex with too few neighbors in Y");
      }
      if (r.pass) r.detail = "200 cliques covered; pendant host |X| = " + std::to_string(X.size()) + ", |Y| = " +
                             std::to_string(Y.size());
    }
  }
  return r;
}

Result alpha_arithmetic() {
  Result r;
  std::vector<std::string> failed;
  for (auto alpha : {Rational(1, 2), Rational(1, 3)}) {
    const auto p = params_from_alpha(alpha);
    auto rep = check_alpha_inequalities(p);
    r.require(rep.checks.front().name == "14k^2 eps = 1/2" && rep.checks.front().holds, "14k^2 eps != 1/2");
    for (const auto& name : failed_checks(rep.checks)) failed.push_back("alpha=" + to_string(alpha) + ": " + name);
  }
  r.require(failed.empty(), "");
  if (!failed.empty()) {
    r.detail = "failed: ";
    for (std::size_t i = 0; i < failed.size(); ++i) r.detail += (i ? "; " : "") + failed[i];
    r.detail += " (eps^2/2 = 2^(-16/alpha^2)/1568 exactly)";
  } else {
    r.detail = "all inequalities hold for alpha = 1/2, 1/3";
  }
  return r;
}

Result forced_accounting() {
  Result r;
  const Graph g = gen_gnp(12, Rational(1, 5), 1);
  const Params p{2, 2, Rational(1), 0, Mode::Relaxed};
  const ForcedParams fp = make_forced_params(density(g) * 4, 3, 4, Rational(1, 2));
  ForcedTrace tr = forced_search(g, p, fp);
  r.require(tr.levels.size() == 3, "expected two minor levels before the small dense one");
  r.require(tr.levels.back().outcome == Outcome::SmallDense, "last level is not small dense");

  // replay the chain independently and lift by hand
  std::vector<Graph> graphs{g};
  std::vector<MinorModel> models;
  std::vector<Vertex> inner;
  for (std::size_t i = 0; i < tr.levels.size(); ++i) {
    const Certificate c = amplify(graphs.back(), p).certificate;
    if (c.outcome == Outcome::SmallDense) {
      inner = c.vertices;
      break;
    }
    models.push_back(c.model);
    graphs.push_back(minor_graph(graphs.back(), c.model));
  }
  r.require(models.size() + 1 == tr.levels.size(), "replay took a different number of levels");
  Subgraph h = induced_subgraph(graphs.back(), inner);
  for (std::size_t i = models.size(); i-- > 0;) {
    const std::size_t w = models[i].width;
    Subgraph lifted = lift_subgraph(graphs[i], models[i], h);
    r.require(lifted.vertex_count() <= w * h.vertex_count(), "lift more than width times the vertices");
    r.require(density(lifted.graph) * q(w) >= density(h.graph), "lift lost more than a width factor of density");
    r.require(lifted.vertex_count() == tr.levels[i].lifted_v && lifted.edge_count() == tr.levels[i].lifted_e,
              "trace disagrees with the hand lift");
    r.require(tr.levels[i].lift_v_ok && tr.levels[i].lift_d_ok, "trace flags a level");

    // width * (r / width^(1-alpha))^lambda * r^-lambda = 1, with (1-alpha) lambda = 1 and lambda = 2
    const Rational lr = tr.levels[i].r, wq = q(w);
    r.require((1 - fp.alpha) * fp.lambda == 1 && fp.lambda == 2, "lambda is not 1/(1-alpha) = 2");
    r.require(wq * (detail::rational_pow(lr, 2) / wq) * detail::rational_pow(lr, -2) == 1, "exponent identity");
    h = std::move(lifted);
  }
  r.require(h.to_host == tr.result.to_host, "final lifted subgraph differs from the trace");
  r.require(tr.product_v_ok && tr.product_d_ok && tr.exponent_identity, "trace product bounds");
  if (r.pass)
    r.detail = "levels " + std::to_string(tr.levels.size()) + ", width product " + tr.width_product.str() + ", H: v=" +
               std::to_string(tr.result.vertex_count()) + " d=" + to_string(tr.result_density);
  return r;
}

Result verifier_adversarial() {
  Result r;
  std::vector<std::pair<Graph, Certificate>> certs;
  for (std::uint64_t seed = 0; certs.size() < 100; ++seed) {
    const std::size_t k = 2 + seed % 3;
    Graph g;
    Params p;
    switch (seed % 4) {
      case 0:
      case 1: g = gen_gnp(120, Rational(1, 15), 9000 + seed); p = Params{k, 2, Rational(1, 2), 0, Mode::Relaxed}; break;
      case 2: g = gen_gnp(80, Rational(1, 8), 9000 + seed); p = Params{k, 2, Rational(1), 0, Mode::Relaxed}; break;
      default: g = gen_gnp(1500, Rational(9, 50), seed); p = Params{2, 2, Rational(1, 64), 0, Mode::Theorem}; break;
    }
    Certificate c = amplify(g, p).certificate;
    certs.emplace_back(std::move(g), std::move(c));
  }
  std::size_t accepted = 0, rejected = 0, kinds_seen[5] = {0, 0, 0, 0, 0};
  for (std::size_t i = 0; i < certs.size(); ++i) {
    const auto& [g, c] = certs[i];
    if (verify_certificate(g, c).accepted) ++accepted;
    else r.require(false, "untampered certificate rejected");
    std::optional<testing::Tampered> t;
    std::size_t kind = i % 5;
    for (std::size_t tries = 0; tries < 5 && !t; ++tries, kind = (kind + 1) % 5) {
      t = testing::tamper(g, c, testing::kTampers[kind]);
      if (t) ++kinds_seen[kind];
    }
    if (!t) {
      r.require(false, "no tamper applicable");
      continue;
    }
    Verdict v = verify_certificate(g, t->cert);
    r.require(!v.accepted, "tampered certificate accepted");
    r.require(v.reason == t->reason, "expected reject reason '" + t->reason + "', got '" + v.reason + "'");
    rejected += !v.accepted && v.reason == t->reason;
  }
  if (r.pass) {
    r.detail = std::to_string(accepted) + "/100 accepted, " + std::to_string(rejected) + "/100 rejected (move " +
               std::to_string(kinds_seen[0]) + ", duplicate " + std::to_string(kinds_seen[1]) + ", inflate " +
               std::to_string(kinds_seen[2]) + ", fingerprint " + std::to_string(kinds_seen[3]) + ", flag " +
               std::to_string(kinds_seen[4]) + ")";
  }
  return r;
}

/// The full bench suite: the theorem-mode sweep plus a relaxed parameter sweep.
std::vector<cli::RunConfig> bench_suite() {
  cli::RunConfig theorem;
  theorem.gen = "gnp:1500,0.18";
  theorem.seeds = 20;
  theorem.bench_k = {2};
  theorem.bench_ell = {2};
  theorem.bench_eps = {"1/64"};
  cli::RunConfig relaxed;
  relaxed.gen = "gnp:200,1/10";
  relaxed.seeds = 5;
  relaxed.bench_k = {2, 3, 4};
  relaxed.bench_eps = {"1/4", "1/2", "1"};
  relaxed.mode = "relaxed";
  cli::RunConfig cliques;
  cliques.gen = "cliques:200,4";
  cliques.seeds = 2;
  cliques.bench_k = {4};
  cliques.bench_eps = {"3/2"};
  cliques.K = "4";
  cliques.mode = "relaxed";
  return {theorem, relaxed, cliques};
}

Result determinism() {
  Result r;
  std::size_t rows = 0;
  for (auto cfg : bench_suite()) {
    cfg.threads = 1;
    auto first = cli::run_bench(cfg);
    cfg.threads = 2;
    auto second = cli::run_bench(cfg);
    r.require(cli::bench_csv(first, false) == cli::bench_csv(second, false), "CSV differs between runs");
    r.require(first.size() == second.size(), "row count differs");
    for (std::size_t i = 0; i < std::min(first.size(), second.size()); ++i) {
      r.require(first[i].certificate == second[i].certificate, "certificate bytes differ between runs");
      r.require(first[i].verified, "bench row not verified: " + first[i].csv);
    }
    rows += first.size();
  }
  if (r.pass) r.detail = std::to_string(rows) + " rows and certificates identical across two runs";
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Result()> run;
  };
  double worst_seed = 0;
  std::vector<Criterion> criteria{
      {1, "contraction loss identities", kBudget1, loss_identities},
      {2, "centroids", kBudget2, centroid_oracle},
      {3, "claw matching contract", kBudget3, claw_contract},
      {4, "bad-pair cleaning", kBudget4, cleaning},
      {5, "theorem-mode end to end", kBudget5PerSeed * 20, [&] { return theorem_end_to_end(worst_seed); }},
      {6, "shrubbery builder exits", kBudget6, builder_exits},
      {7, "alpha parameter arithmetic", kBudget7, alpha_arithmetic},
      {8, "forced search accounting", kBudget8, forced_accounting},
      {9, "verifier adversarial suite", kBudget9, verifier_adversarial},
      {10, "bench determinism", kBudget10, determinism},
  };

  bool unexpected = false;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.id == 5 && worst_seed > kBudget5PerSeed) res.require(false, "a seed exceeded its time budget");
    if (secs > c.budget) res.require(false, "over time budget");
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs / %.0fs", secs, c.budget);
    std::cout << "criterion " << c.id << " (" << c.name << "): " << (res.pass ? "PASS" : "FAIL") << " [" << timing
              << "] " << res.detail;
    if (!res.pass && kKnownFailures.count(c.id)) std::cout << " [known]";
    std::cout << std::endl;
    if (!res.pass && !kKnownFailures.count(c.id)) unexpected = true;
  }
  return unexpected ? 1 : 0;
}
