#pragma once

// Command-line front end. run_cli() never exits the process, so the tests
// can drive it with in-memory streams.

#include "minoramp/minoramp.hpp"
#include "minoramp/testing/instances.hpp"
#include "minoramp/testing/oracles.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace minoramp::cli {

/// Bad flags or flag combinations; exit code 2.
class UsageError : public Error {
public:
  using Error::Error;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitReject = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kBenchFormat = "minoramp-bench/1";
inline constexpr const char* kBenchColumns =
    "seed,n,e,d,k,ell,eps,mode,outcome,measured_density,claimed_density,moves,swaps,verified,ms";

/// Everything a subcommand needs, filled from the flags.
struct RunConfig {
  std::string command;
  std::string in;       // host file
  std::string gen;      // or generator spec
  std::string format = "auto";
  std::string out;
  std::string cert;
  std::uint64_t seed = 0;
  std::size_t seeds = 1;
  std::size_t k = 2;
  std::size_t ell = 2;
  std::string eps = "1/64";
  std::string alpha;
  std::string K;
  std::string mode = "theorem";
  // forced search
  bool forced = false;
  std::string D;
  std::size_t t = 1;
  std::string r;
  std::string forced_alpha = "1/2";
  std::size_t depth_limit = 64;
  // claw
  std::size_t split = 0;
  std::string dA = "0";
  // bench
  std::vector<std::size_t> bench_k;
  std::vector<std::size_t> bench_ell;
  std::vector<std::string> bench_eps;
  std::size_t threads = 1;
  std::string cert_dir;
  // selftest
  std::size_t rounds = 50;
};

// ---------------------------------------------------------------------------
// Inputs

inline Rational flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

struct Host {
  Graph graph;
  std::optional<Bipartition> part;  // generators that know one
};

/// "gnp:n,p", "bip:nB,ell,degB[,a_max]", "cliques:count,size", "pendant:core,pendants,attach".
inline Host generate(const std::string& spec, std::uint64_t seed) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw UsageError("--gen: expected kind:args, got '" + spec + "'");
  const std::string kind = spec.substr(0, colon);
  std::vector<std::string> args;
  std::stringstream ss(spec.substr(colon + 1));
  for (std::string a; std::getline(ss, a, ',');) args.push_back(a);
  auto count = [&](std::size_t i) {
    std::uint64_t v = 0;
    if (!detail::parse_u64(args[i], v)) throw UsageError("--gen: bad integer '" + args[i] + "'");
    return static_cast<std::size_t>(v);
  };
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) throw UsageError("--gen: wrong number of arguments for " + kind);
  };
  if (kind == "gnp") {
    arity(2, 2);
    return {gen_gnp(count(0), flag_rational("--gen", args[1]), seed), std::nullopt};
  }
  if (kind == "bip") {
    arity(3, 4);
    auto h = gen_bipartite_host(count(0), count(1), count(2), seed, args.size() == 4 ? count(3) : 0);
    return {std::move(h.graph), std::move(h.part)};
  }
  if (kind == "cliques") {
    arity(2, 2);
    return {gen_cliques(count(0), count(1)), std::nullopt};
  }
  if (kind == "pendant") {
    arity(3, 3);
    return {gen_pendant(count(0), count(1), count(2)), std::nullopt};
  }
  throw UsageError("--gen: unknown generator '" + kind + "'");
}

inline bool looks_like_dimacs(const std::string& path, const std::string& text) {
  const auto ext = std::filesystem::path(path).extension().string();
  if (ext == ".dimacs" || ext == ".col" || ext == ".dim") return true;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0] == "c" || fields[0].front() == '#') continue;
    return fields[0] == "p";
  }
  return false;
}

inline Host load_host(const RunConfig& cfg, std::ostream& err) {
  if (cfg.in.empty() == cfg.gen.empty()) throw UsageError("give exactly one of --in and --gen");
  if (!cfg.gen.empty()) return generate(cfg.gen, cfg.seed);
  const std::string text = read_file(cfg.in);
  bool dimacs = false;
  if (cfg.format == "dimacs") dimacs = true;
  else if (cfg.format == "auto") dimacs = looks_like_dimacs(cfg.in, text);
  else if (cfg.format != "el") throw UsageError("--format must be el, dimacs or auto");
  if (!dimacs) return {parse_edge_list(text), std::nullopt};
  std::vector<std::string> warnings;
  Graph g = parse_dimacs(text, &warnings);
  for (const auto& w : warnings) err << "warning: " << w << "\n";
  return {std::move(g), std::nullopt};
}

inline Mode parse_mode(const std::string& s) {
  if (s == "theorem") return Mode::Theorem;
  if (s == "relaxed") return Mode::Relaxed;
  throw UsageError("--mode must be theorem or relaxed");
}

/// k, ell, eps from --alpha when given, else from the individual flags.
inline Params params_of(const RunConfig& cfg) {
  Params p;
  p.mode = parse_mode(cfg.mode);
  if (!cfg.alpha.empty()) {
    AlphaParams ap;
    try {
      ap = params_from_alpha(flag_rational("--alpha", cfg.alpha));
    } catch (const UsageError&) {
      throw;
    } catch (const Error& e) {
      throw UsageError(std::string("--alpha: ") + e.what());
    }
    if (ap.k > BigInt(std::numeric_limits<std::uint32_t>::max())) throw UsageError("--alpha: k too large to run");
    p.k = ap.k.convert_to<std::size_t>();
    p.ell = ap.ell.convert_to<std::size_t>();
    p.eps = ap.eps;
  } else {
    p.k = cfg.k;
    p.ell = cfg.ell;
    p.eps = flag_rational("--eps", cfg.eps);
  }
  if (!cfg.K.empty()) p.K = flag_rational("--K", cfg.K);
  try {
    check_params(p);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return p;
}

inline std::string approx(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", to_double(r));
  return buf;
}

inline std::string exact_and_approx(const Rational& r) { return to_string(r) + " (" + approx(r) + ")"; }

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

// ---------------------------------------------------------------------------
// Subcommands

inline void print_certificate_summary(const Certificate& c, const AmplifyResult& r, std::ostream& out) {
  out << "outcome: " << outcome_name(c.outcome) << "\n";
  out << "builder_exit: " << kind_name(r.stats.exit) << "\n";
  out << "reference_density: " << exact_and_approx(c.reference_density) << "\n";
  if (c.outcome == Outcome::SmallDense) {
    out << "vertices: " << c.vertices.size() << " (bound " << exact_and_approx(c.claimed_v_bound) << ")\n";
    out << "measured_density: " << exact_and_approx(r.measured_density) << "\n";
    out << "claimed_e_bound: " << exact_and_approx(c.claimed_e_bound) << "\n";
    out << "bounds_met: " << yes_no(c.bounds_met) << "\n";
  } else {
    out << "branch_sets: " << c.model.branch_sets.size() << " (width " << c.model.width << ")\n";
    out << "measured_density: " << exact_and_approx(r.measured_density) << "\n";
    out << "claimed_density: " << exact_and_approx(c.claimed_density) << "\n";
    out << "bound: " << exact_and_approx(c.bound) << "\n";
    out << "bound_met: " << yes_no(c.bound_met) << "\n";
    if (c.outcome == Outcome::EllMinor)
      out << "strong_bound: " << exact_and_approx(c.strong_bound) << " met: " << yes_no(c.strong_bound_met) << "\n";
  }
  out << "moves: " << r.stats.moves << " swaps: " << r.stats.swaps << " augmentations: " << r.stats.augmentations
      << "\n";
}

inline int cmd_forced(const RunConfig& cfg, const Graph& g, const Params& p, std::ostream& out) {
  if (cfg.D.empty()) throw UsageError("--forced needs --D");
  const Rational D = flag_rational("--D", cfg.D);
  const Rational r = cfg.r.empty() ? D / density(g) : flag_rational("--r", cfg.r);
  ForcedParams fp;
  try {
    fp = make_forced_params(D, cfg.t, r, flag_rational("--forced-alpha", cfg.forced_alpha));
  } catch (const UsageError&) {
    throw;
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  ForcedTrace tr = forced_search(g, p, fp, cfg.depth_limit);
  out << "levels: " << tr.levels.size() << "\n";
  for (const auto& lvl : tr.levels) {
    out << "level " << lvl.depth << ": n=" << lvl.n << " e=" << lvl.e << " d=" << to_string(lvl.density)
        << " outcome=" << outcome_name(lvl.outcome) << " width=" << lvl.width << " measured=" << to_string(lvl.measured)
        << " lifted_v=" << lvl.lifted_v << " lifted_e=" << lvl.lifted_e << " lift_v_ok=" << yes_no(lvl.lift_v_ok)
        << " lift_d_ok=" << yes_no(lvl.lift_d_ok) << "\n";
  }
  out << "result: v=" << tr.result.vertex_count() << " e=" << tr.result.edge_count()
      << " d=" << exact_and_approx(tr.result_density) << "\n";
  out << "width_product: " << tr.width_product << "\n";
  out << "product_bounds: " << yes_no(tr.product_v_ok && tr.product_d_ok) << "\n";
  out << "exponent_identity: " << yes_no(tr.exponent_identity) << "\n";
  out << "final_bounds: " << yes_no(tr.final_v_ok && tr.final_d_ok) << "\n";
  bool ok = tr.product_v_ok && tr.product_d_ok && tr.exponent_identity;
  for (const auto& lvl : tr.levels) ok = ok && lvl.lift_v_ok && lvl.lift_d_ok;
  return ok ? kExitOk : kExitReject;
}

inline int cmd_amplify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p = params_of(cfg);
  Host host = load_host(cfg, err);
  if (cfg.forced) return cmd_forced(cfg, host.graph, p, out);
  const auto start = std::chrono::steady_clock::now();
  AmplifyResult r = amplify(host.graph, p);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  const Certificate& c = r.certificate;
  print_certificate_summary(c, r, out);
  out << "runtime_ms: " << ms.count() << "\n";
  if (!cfg.out.empty()) write_file(cfg.out, serialize(c));
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.cert.empty()) throw UsageError("verify needs --cert");
  Host host = load_host(cfg, err);
  Certificate c = parse_certificate(read_file(cfg.cert));
  Verdict v = verify_certificate(host.graph, c);
  if (v.accepted) {
    out << "Accept\n";
    return kExitOk;
  }
  out << "Reject: " << v.reason << "\n";
  return kExitReject;
}

inline int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  if (cfg.gen.empty()) throw UsageError("gen needs --gen");
  if (cfg.format != "auto" && cfg.format != "el" && cfg.format != "dimacs")
    throw UsageError("--format must be el, dimacs or auto");
  Host host = generate(cfg.gen, cfg.seed);
  const std::string text = cfg.format == "dimacs" ? write_dimacs(host.graph) : write_edge_list(host.graph);
  if (cfg.out.empty()) out << text;
  else write_file(cfg.out, text);
  return kExitOk;
}

inline int report_checks(const std::vector<Check>& checks, std::ostream& out) {
  for (const auto& c : checks) out << "check " << c.name << ": " << (c.holds ? "ok" : "FAIL") << "\n";
  return all_hold(checks) ? kExitOk : kExitReject;
}

inline int cmd_shrub(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Params p = params_of(cfg);
  Host host = load_host(cfg, err);
  ShrubberyOutcome o = build_shrubbery(host.graph, ShrubberyParams{p.k, p.ell, p.effective_K(), p.eps, p.mode});
  out << "exit: " << kind_name(o.kind) << "\n";
  out << "reference_density: " << exact_and_approx(o.d) << "\n";
  out << "core_vertices: " << o.core.vertex_count() << "\n";
  out << "moves: " << o.stats.moves << " (attach " << o.stats.attach_moves << ", star " << o.stats.star_moves
      << ", graft " << o.stats.graft_moves << ", strict " << o.stats.strict_moves << ")\n";
  switch (o.kind) {
    case ShrubberyKind::SmallDense:
      out << "small_dense_vertices: " << o.small_dense.size() << "\n";
      break;
    case ShrubberyKind::UnbalancedBipartite:
      out << "X: " << o.unbalanced.A.size() << " Y: " << o.unbalanced.B.size() << "\n";
      break;
    case ShrubberyKind::Shrubbery:
      out << "forest_edges: " << o.forest_edges.size() << "\n";
      break;
  }
  return report_checks(o.checks, out);
}

inline int cmd_claw(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  Host host = load_host(cfg, err);
  Bipartition part;
  if (cfg.split > 0) {
    if (cfg.split >= host.graph.vertex_count()) throw UsageError("--split must leave a non-empty B side");
    for (Vertex v = 0; v < host.graph.vertex_count(); ++v) (v < cfg.split ? part.A : part.B).push_back(v);
  } else if (host.part) {
    part = *host.part;
  } else {
    throw UsageError("claw needs a bip: generator or --split");
  }
  const Rational dA = flag_rational("--dA", cfg.dA);
  ClawRun run = build_claw_matching(host.graph, part, cfg.ell, dA);
  std::vector<Check> checks;
  checks.push_back({"claw matching", run.forest.empty() ||
                                         is_claw_matching(host.graph, run.forest, part, cfg.ell, StarMode::Exactly)});
  auto side = side_table(host.graph.vertex_count(), part);
  bool leaves_ok = true;
  for (Vertex a : run.forest.vertices()) {
    if (side[a] != Side::A) continue;
    std::size_t outside = 0;
    for (Vertex w : host.graph.neighbors(a)) outside += side[w] == Side::B && !run.forest.contains(w);
    leaves_ok = leaves_ok && Rational(BigInt(outside)) <= dA;
  }
  checks.push_back({"leaf bound", leaves_ok});
  out << "augmentations: " << run.augmentations << "\n";
  out << "covered_all: " << yes_no(run.covered_all) << "\n";
  if (!run.covered_all) out << "stuck_at: " << run.stuck_at << "\n";
  out << "components: " << run.forest.components().size() << "\n";
  return report_checks(checks, out);
}

// ---------------------------------------------------------------------------
// selftest

struct SelftestLine {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
};

inline std::vector<SelftestLine> run_selftest(std::uint64_t seed, std::size_t rounds) {
  std::vector<SelftestLine> lines;
  Rng rng(seed);

  SelftestLine cen{"centroids", 0, 0};
  for (std::size_t i = 0; i < rounds; ++i) {
    Tree t = testing::random_tree(1 + rng.below(60), rng);
    ++cen.cases;
    cen.failures += centroids(t) != oracle::centroids(t);
  }
  lines.push_back(cen);

  SelftestLine loss{"contraction loss", 0, 0};
  for (std::size_t i = 0; i < rounds; ++i) {
    Graph g = gen_gnp(30, Rational(1, 5), rng.next());
    Forest f = testing::random_forest(g, rng, 1, 2);
    ++loss.cases;
    loss.failures += contraction_loss(g, f) != oracle::contraction_loss(g, f);
    auto edges = g.edges();
    if (edges.empty()) continue;
    Edge e = edges[rng.below(edges.size())];
    ++loss.cases;
    loss.failures += edge_contraction_loss(g, e.u, e.v) != oracle::contraction_loss(g, Forest::from_edges(g, {e}));
  }
  lines.push_back(loss);

  SelftestLine bad{"bad pairs", 0, 0};
  for (std::size_t i = 0; i < rounds; ++i) {
    Graph g = gen_gnp(4 + rng.below(7), Rational(BigInt(1 + rng.below(3)), BigInt(5)), rng.next());
    Forest f = testing::random_forest(g, rng, 1, 2);
    std::set<std::pair<Edge, Edge>> got;
    for (const auto& p : bad_pairs(g, f)) got.insert({p.first, p.second});
    ++bad.cases;
    bad.failures += got != oracle::bad_pairs(g, f);
  }
  lines.push_back(bad);

  SelftestLine alt{"alternating reach", 0, 0};
  for (std::size_t i = 0; i < rounds; ++i) {
    const std::size_t ell = 2 + rng.below(2);
    BipartiteHost h = gen_bipartite_host(4 + rng.below(3), ell, 2, rng.next(), 2);
    Forest f0 = testing::random_star_matching(h.graph, h.part, ell, rng);
    for (Vertex u : h.part.A) {
      if (f0.contains(u)) continue;
      auto st = alternating_reachability(h.graph, h.part, f0, u);
      ++alt.cases;
      alt.failures += std::set<Vertex>(st.reached.begin(), st.reached.end()) !=
                      oracle::alternating_reachable(h.graph, h.part, f0, u);
    }
  }
  lines.push_back(alt);

  SelftestLine mates{"mates", 0, 0};
  for (std::size_t i = 0; i < rounds; ++i) {
    Graph g = gen_gnp(25, Rational(1, 4), rng.next());
    const Rational eps(1, 2), d(BigInt(2 + rng.below(4)));
    const Vertex v = static_cast<Vertex>(rng.below(g.vertex_count()));
    ++mates.cases;
    mates.failures += mates_of(g, v, eps, d) != oracle::mates(g, v, mate_threshold(eps, d));
  }
  lines.push_back(mates);

  SelftestLine core{"dense core", 0, 0};
  for (std::size_t i = 0; i < rounds; ++i) {
    Graph g = gen_gnp(4 + rng.below(9), Rational(BigInt(1 + rng.below(4)), BigInt(5)), rng.next());
    if (g.edge_count() == 0) continue;
    // peeling contract: density and min degree at least d(G), density at most the optimum
    Subgraph h = dense_core(g);
    const Rational d = density(g), dh = density(h.graph);
    bool ok = dh >= d && dh <= oracle::max_subgraph_density(g);
    for (Vertex v = 0; v < h.vertex_count(); ++v) ok = ok && Rational(BigInt(h.graph.degree(v))) >= d;
    ++core.cases;
    core.failures += !ok;
  }
  lines.push_back(core);
  return lines;
}

inline int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  bool ok = true;
  for (const auto& line : run_selftest(cfg.seed, cfg.rounds)) {
    ok = ok && line.failures == 0;
    out << (line.failures == 0 ? "ok   " : "FAIL ") << line.name << " (" << line.cases << " cases";
    if (line.failures) out << ", " << line.failures << " mismatches";
    out << ")\n";
  }
  return ok ? kExitOk : kExitReject;
}

// ---------------------------------------------------------------------------
// bench

struct BenchRow {
  std::string csv;          // without the trailing timing column
  long long ms = 0;
  std::string certificate;  // serialized, empty on error
  bool verified = false;
};

struct BenchCell {
  std::uint64_t seed;
  Params params;
};

inline BenchRow run_bench_cell(const std::string& gen, const BenchCell& cell) {
  BenchRow row;
  const Params& p = cell.params;
  std::ostringstream csv;
  const auto start = std::chrono::steady_clock::now();
  Host host = generate(gen, cell.seed);
  const Graph& g = host.graph;
  csv << cell.seed << ',' << g.vertex_count() << ',' << g.edge_count() << ',';
  try {
    AmplifyResult r = amplify(g, p);
    const Certificate& c = r.certificate;
    row.verified = verify_certificate(g, c).accepted;
    row.certificate = serialize(c);
    // small dense rows report the density implied by the claimed e and v bounds
    const Rational claimed =
        c.outcome == Outcome::SmallDense ? c.claimed_e_bound / c.claimed_v_bound : c.claimed_density;
    csv << to_string(c.reference_density) << ',' << p.k << ',' << p.ell << ',' << to_string(p.eps) << ','
        << mode_name(p.mode) << ',' << outcome_name(c.outcome) << ',' << to_string(r.measured_density) << ','
        << to_string(claimed) << ',' << r.stats.moves << ',' << r.stats.swaps << ',' << (row.verified ? 1 : 0);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& ch : msg)
      if (ch == ',' || ch == '\n') ch = ';';
    csv << ',' << p.k << ',' << p.ell << ',' << to_string(p.eps) << ',' << mode_name(p.mode) << ",error: " << msg
        << ",,,,,0";
  }
  row.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  row.csv = csv.str();
  return row;
}

inline std::vector<BenchCell> bench_cells(const RunConfig& cfg) {
  RunConfig base = cfg;
  std::vector<std::size_t> ks = cfg.bench_k.empty() ? std::vector<std::size_t>{cfg.k} : cfg.bench_k;
  std::vector<std::size_t> ells = cfg.bench_ell.empty() ? std::vector<std::size_t>{cfg.ell} : cfg.bench_ell;
  std::vector<std::string> epss = cfg.bench_eps.empty() ? std::vector<std::string>{cfg.eps} : cfg.bench_eps;
  std::vector<BenchCell> cells;
  for (std::size_t k : ks)
    for (std::size_t ell : ells)
      for (const auto& eps : epss) {
        base.k = k;
        base.ell = ell;
        base.eps = eps;
        const Params p = params_of(base);
        for (std::size_t s = 0; s < cfg.seeds; ++s) cells.push_back({cfg.seed + s, p});
      }
  return cells;
}

/// Runs every cell, `threads` at a time; rows come back in cell order.
inline std::vector<BenchRow> run_bench(const RunConfig& cfg) {
  if (cfg.gen.empty()) throw UsageError("bench needs --gen");
  if (!cfg.in.empty()) throw UsageError("bench takes --gen, not --in");
  if (cfg.seeds == 0) throw UsageError("--seeds must be positive");
  generate(cfg.gen, cfg.seed);  // surface spec errors before spawning workers
  const auto cells = bench_cells(cfg);
  std::vector<BenchRow> rows(cells.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < cells.size();) rows[i] = run_bench_cell(cfg.gen, cells[i]);
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(cfg.threads, cells.size()));
  std::vector<std::thread> pool;
  for (std::size_t i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

inline std::string bench_csv(const std::vector<BenchRow>& rows, bool with_timing = true) {
  std::ostringstream out;
  out << "# " << kBenchFormat << "\n" << kBenchColumns << "\n";
  for (const auto& r : rows) {
    out << r.csv;
    if (with_timing) out << ',' << r.ms;
    out << "\n";
  }
  return out.str();
}

inline int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  auto rows = run_bench(cfg);
  const std::string csv = bench_csv(rows);
  if (cfg.out.empty()) out << csv;
  else write_file(cfg.out, csv);
  if (!cfg.cert_dir.empty()) {
    std::filesystem::create_directories(cfg.cert_dir);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!rows[i].certificate.empty())
        write_file((std::filesystem::path(cfg.cert_dir) / ("cell-" + std::to_string(i) + ".json")).string(),
                   rows[i].certificate);
  }
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.verified;
  return ok ? kExitOk : kExitReject;
}

// ---------------------------------------------------------------------------
// Entry point

inline void add_host_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--in", cfg.in, "host graph file (edge list or DIMACS)");
  sub->add_option("--gen", cfg.gen, "generator: gnp:n,p | bip:nB,ell,degB[,amax] | cliques:c,s | pendant:c,p,a");
  sub->add_option("--seed", cfg.seed, "generator seed");
  sub->add_option("--format", cfg.format, "input format: auto, el or dimacs");
}

inline void add_param_flags(CLI::App* sub, RunConfig& cfg) {
  auto* k = sub->add_option("--k", cfg.k, "branch set width k");
  auto* ell = sub->add_option("--ell", cfg.ell, "claw size ell");
  auto* eps = sub->add_option("--eps", cfg.eps, "epsilon, p/q or exact decimal");
  auto* alpha = sub->add_option("--alpha", cfg.alpha, "derive k, ell, eps from alpha");
  alpha->excludes(k)->excludes(ell)->excludes(eps);
  sub->add_option("--K", cfg.K, "small-degree multiplier (default k)");
  sub->add_option("--mode", cfg.mode, "theorem or relaxed");
}

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Dense minor amplification with exact certificates"};
  app.require_subcommand(1);

  auto* amp = app.add_subcommand("amplify", "run one amplification step and write a certificate");
  add_host_flags(amp, cfg);
  add_param_flags(amp, cfg);
  amp->add_option("--out", cfg.out, "certificate output path");
  amp->add_flag("--forced", cfg.forced, "iterate on the returned minors until a small dense subgraph appears");
  amp->add_option("--D", cfg.D, "forced search: density scale D");
  amp->add_option("--t", cfg.t, "forced search: clique order t");
  amp->add_option("--r", cfg.r, "forced search: ratio r (default D/d(G))");
  amp->add_option("--forced-alpha", cfg.forced_alpha, "forced search: exponent alpha");
  amp->add_option("--depth-limit", cfg.depth_limit, "forced search: maximum number of levels");

  auto* ver = app.add_subcommand("verify", "check a certificate against its host");
  add_host_flags(ver, cfg);
  ver->add_option("--cert", cfg.cert, "certificate path")->required();

  auto* gen = app.add_subcommand("gen", "write a generated host as an edge list");
  gen->add_option("--gen", cfg.gen, "generator spec")->required();
  gen->add_option("--seed", cfg.seed, "generator seed");
  gen->add_option("--out", cfg.out, "output path (default stdout)");
  gen->add_option("--format", cfg.format, "el or dimacs");

  auto* shrub = app.add_subcommand("shrub", "run the shrubbery builder and report its checks");
  add_host_flags(shrub, cfg);
  add_param_flags(shrub, cfg);

  auto* claw = app.add_subcommand("claw", "build a claw matching and report its checks");
  add_host_flags(claw, cfg);
  claw->add_option("--ell", cfg.ell, "claw size ell");
  claw->add_option("--dA", cfg.dA, "leaf bound dA");
  claw->add_option("--split", cfg.split, "A = vertices below this id (for --in hosts)");

  auto* self = app.add_subcommand("selftest", "compare library routines with brute-force oracles");
  self->add_option("--seed", cfg.seed, "seed");
  self->add_option("--rounds", cfg.rounds, "instances per check");

  auto* bench = app.add_subcommand("bench", "sweep seeds and parameters, one CSV row per run");
  bench->add_option("--gen", cfg.gen, "generator spec")->required();
  bench->add_option("--in", cfg.in, "not supported; bench needs a generator");
  bench->add_option("--seed", cfg.seed, "first seed");
  bench->add_option("--seeds", cfg.seeds, "number of seeds");
  bench->add_option("--k", cfg.bench_k, "k values")->expected(1, -1);
  bench->add_option("--ell", cfg.bench_ell, "ell values")->expected(1, -1);
  bench->add_option("--eps", cfg.bench_eps, "eps values")->expected(1, -1);
  bench->add_option("--K", cfg.K, "small-degree multiplier (default k)");
  bench->add_option("--mode", cfg.mode, "theorem or relaxed");
  bench->add_option("--threads", cfg.threads, "worker threads");
  bench->add_option("--out", cfg.out, "CSV path (default stdout)");
  bench->add_option("--cert-dir", cfg.cert_dir, "write each certificate here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  try {
    if (*amp) return cmd_amplify(cfg, out, err);
    if (*ver) return cmd_verify(cfg, out, err);
    if (*gen) return cmd_gen(cfg, out);
    if (*shrub) return cmd_shrub(cfg, out, err);
    if (*claw) return cmd_claw(cfg, out, err);
    if (*self) return cmd_selftest(cfg, out);
    if (*bench) return cmd_bench(cfg, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitReject;
  }
  return kExitUsage;
}

}  // namespace minoramp::cli
