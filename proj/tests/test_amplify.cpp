#include <catch_amalgamated.hpp>

#include "minoramp/amplify.hpp"
#include "minoramp/generators.hpp"
#include "minoramp/testing/instances.hpp"

#include <set>

using namespace minoramp;

namespace {

Rational q(std::size_t x) { return Rational(BigInt(x)); }

/// Density of the minor described by `sets`, counted pair by pair.
Rational brute_minor_density(const Graph& g, const std::vector<std::vector<Vertex>>& sets) {
  std::size_t e = 0;
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      bool adjacent = false;
      for (Vertex x : sets[i])
        for (Vertex y : sets[j]) adjacent = adjacent || g.has_edge(x, y);
      e += adjacent;
    }
  return Rational(BigInt(e), BigInt(sets.size()));
}

}  // namespace

TEST_CASE("params_from_alpha") {
  auto half = params_from_alpha(Rational(1, 2));
  CHECK(half.ell == 15);
  CHECK(half.k == BigInt(1) << 16);
  CHECK(half.eps == Rational(BigInt(1), 28 * (BigInt(1) << 32)));

  auto third = params_from_alpha(Rational(1, 3));
  CHECK(third.ell == 63);
  CHECK(third.k == BigInt(1) << 36);

  CHECK_THROWS_AS(params_from_alpha(Rational(2, 5)), Error);
  CHECK_THROWS_AS(params_from_alpha(Rational(3, 4)), Error);
  CHECK_THROWS_AS(params_from_alpha(Rational(0)), Error);
}

TEST_CASE("alpha inequalities under exact arithmetic") {
  for (auto alpha : {Rational(1, 2), Rational(1, 3)}) {
    const auto p = params_from_alpha(alpha);
    auto rep = check_alpha_inequalities(p);
    INFO(to_string(alpha));
    REQUIRE(rep.checks.size() == 5);
    // eps^2/2 = 1/(1568 k^4) and 2^(16/alpha^2) = k^4, so this one is short by 1568
    CHECK(failed_checks(rep.checks) == std::vector<std::string>{"eps^2/2 >= 2^(-16/alpha^2)"});
    CHECK(p.eps * p.eps / 2 * Rational(p.k * p.k * p.k * p.k) == Rational(1, 1568));
  }
  auto p = params_from_alpha(Rational(1, 2));
  auto off = check_alpha_inequalities(p.alpha, p.ell, p.k, p.eps * 2);
  CHECK_FALSE(off.ok());
  CHECK(failed_checks(off.checks).front() == "14k^2 eps = 1/2");
}

TEST_CASE("power comparison") {
  CHECK(at_least_power(Rational(4), Rational(16), Rational(1, 2)));
  CHECK_FALSE(at_least_power(Rational(3), Rational(16), Rational(1, 2)));
  CHECK(at_least_power(Rational(9), Rational(27), Rational(1, 3)));
  CHECK_THROWS_AS(at_least_power(Rational(-1), Rational(1), Rational(1, 2)), Error);
}

TEST_CASE("parameter guards") {
  const Graph g = gen_cliques(3, 4);
  CHECK_THROWS_AS(amplify(g, Params{1, 2, Rational(1, 64), 0, Mode::Relaxed}), Error);
  CHECK_THROWS_AS(amplify(g, Params{2, 2, Rational(1, 63), 0, Mode::Theorem}), Error);
  CHECK_THROWS_AS(amplify(g, Params{2, 2, Rational(0), 0, Mode::Relaxed}), Error);
  CHECK_THROWS_AS(amplify(Graph(5), Params{2, 2, Rational(1, 2), 0, Mode::Relaxed}), Error);
  // theorem mode needs d(G) >= 2/eps = 128
  CHECK_THROWS_AS(amplify(gen_gnp(100, Rational(1, 10), 0), Params{2, 2, Rational(1, 64), 0, Mode::Theorem}), Error);
}

TEST_CASE("disjoint cliques give a k-bounded minor") {
  const Graph g = gen_cliques(200, 4);
  auto r = amplify(g, Params{4, 2, Rational(3, 2), 4, Mode::Relaxed});
  const Certificate& c = r.certificate;
  REQUIRE(c.outcome == Outcome::KMinor);
  CHECK(c.model.width == 4);
  CHECK(c.model.branch_sets.size() == 200);
  CHECK(c.reference_density == Rational(3, 2));
  CHECK(r.measured_density == 0);
  CHECK(verify_certificate(g, c).accepted);
}

TEST_CASE("k-minor density matches a pairwise count") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const Graph g = gen_gnp(120, Rational(1, 15), seed);
    auto r = amplify(g, Params{4, 2, Rational(1, 2), 0, Mode::Relaxed});
    const Certificate& c = r.certificate;
    INFO("seed " << seed << " outcome " << outcome_name(c.outcome));
    CHECK(verify_certificate(g, c).accepted);
    if (c.outcome == Outcome::SmallDense) continue;
    CHECK(c.claimed_density == brute_minor_density(g, c.model.branch_sets));
    CHECK(c.bound_met == (c.claimed_density >= c.bound));
    std::set<Vertex> used;
    for (const auto& s : c.model.branch_sets) used.insert(s.begin(), s.end());
    CHECK(q(used.size()) == [&] {
      std::size_t total = 0;
      for (const auto& s : c.model.branch_sets) total += s.size();
      return q(total);
    }());
  }
}

TEST_CASE("theorem mode on a dense random host") {
  const Graph g = gen_gnp(1500, Rational(9, 50), 0);
  const Params p{2, 2, Rational(1, 64), 0, Mode::Theorem};
  auto r = amplify(g, p);
  const Certificate& c = r.certificate;
  CHECK(c.reference_density >= 128);
  CHECK(verify_certificate(g, c).accepted);
  if (c.outcome == Outcome::SmallDense) {
    Subgraph h = induced_subgraph(g, c.vertices);
    const Rational d = c.reference_density;
    CHECK(q(h.vertex_count()) <= 48 * d);
    CHECK(q(h.edge_count()) >= d * d / (64 * 64 * 2));
    CHECK(c.bounds_met);
  } else {
    CHECK(c.bound_met);
  }
}

TEST_CASE("relaxed pendant host ends with a small dense subgraph") {
  const Graph g = gen_pendant(10, 200, 5);
  auto r = amplify(g, Params{16, 2, Rational(1, 4096), 16, Mode::Relaxed});
  CHECK(r.stats.exit == ShrubberyKind::UnbalancedBipartite);
  REQUIRE(r.certificate.outcome == Outcome::SmallDense);
  CHECK(r.certificate.bounds_met);
  CHECK(verify_certificate(g, r.certificate).accepted);
}

TEST_CASE("ell-minor certificates from the bipartite step verify") {
  auto sts = testing::triple_system_13();
  const Graph& g = sts.graph;
  Params p{2, 2, Rational(1, 5), 0, Mode::Relaxed};
  Certificate c;
  c.params = p;
  c.params.K = 2;
  c.host = fingerprint(g);
  c.reference_density = density(dense_core(g).graph);
  auto res = bipartite_dense_minor(g, sts.part, 2, 2, Rational(2, 5), 3, Mode::Relaxed);
  REQUIRE(std::holds_alternative<BoundedMinorFound>(res));
  AmplifyResult r;
  detail::fill_minor(g, c, Outcome::EllMinor, std::get<BoundedMinorFound>(res).model, r);
  CHECK(c.model.width == 3);
  CHECK(verify_certificate(g, c).accepted);
  CHECK(parse_certificate(serialize(c)) == c);

  Certificate bad = c;
  bad.strong_bound_met = !bad.strong_bound_met;
  CHECK(verify_certificate(g, bad).reason == "flag");
  bad = c;
  bad.strong_bound += 1;
  CHECK(verify_certificate(g, bad).reason == "claimed bounds");
}

TEST_CASE("certificates survive a JSON round trip byte for byte") {
  std::vector<std::pair<Graph, Params>> cases{
      {gen_cliques(20, 4), Params{4, 2, Rational(3, 2), 4, Mode::Relaxed}},
      {gen_gnp(120, Rational(1, 15), 2), Params{4, 2, Rational(1, 2), 0, Mode::Relaxed}},
      {gen_pendant(10, 200, 5), Params{16, 2, Rational(1, 4096), 16, Mode::Relaxed}},
  };
  for (const auto& [g, p] : cases) {
    const Certificate c = amplify(g, p).certificate;
    const std::string text = serialize(c);
    const Certificate back = parse_certificate(text);
    CHECK(back == c);
    CHECK(serialize(back) == text);
  }
}

TEST_CASE("malformed certificates are rejected by the parser") {
  CHECK_THROWS_AS(parse_certificate("{"), Error);
  CHECK_THROWS_AS(parse_certificate("{}"), Error);
  const Certificate c = amplify(gen_cliques(4, 4), Params{4, 2, Rational(3, 2), 4, Mode::Relaxed}).certificate;
  auto j = to_json(c);
  j["format"] = "other/1";
  CHECK_THROWS_AS(certificate_from_json(j), Error);
  j = to_json(c);
  j["outcome"] = "clique";
  CHECK_THROWS_AS(certificate_from_json(j), Error);
  j = to_json(c);
  j["params"]["eps"] = "x";
  CHECK_THROWS_AS(certificate_from_json(j), Error);
}

TEST_CASE("tampered certificates are rejected with the matching reason") {
  std::vector<std::pair<Graph, Params>> cases{
      {gen_gnp(120, Rational(1, 15), 1), Params{4, 2, Rational(1, 2), 0, Mode::Relaxed}},
      {gen_gnp(120, Rational(1, 15), 3), Params{3, 2, Rational(1, 2), 0, Mode::Relaxed}},
      {gen_pendant(10, 200, 5), Params{16, 2, Rational(1, 4096), 16, Mode::Relaxed}},
  };
  std::size_t applied = 0;
  for (const auto& [g, p] : cases) {
    const Certificate c = amplify(g, p).certificate;
    for (testing::Tamper kind : testing::kTampers) {
      auto t = testing::tamper(g, c, kind);
      if (!t) continue;
      ++applied;
      Verdict v = verify_certificate(g, t->cert);
      INFO(outcome_name(c.outcome) << " tamper " << static_cast<int>(kind));
      CHECK_FALSE(v.accepted);
      CHECK(v.reason == t->reason);
    }
  }
  CHECK(applied >= 12);
}

TEST_CASE("theorem-mode verifier enforces the size bound") {
  const Graph g = gen_gnp(1500, Rational(9, 50), 1);
  Certificate c = amplify(g, Params{2, 2, Rational(1, 64), 0, Mode::Theorem}).certificate;
  REQUIRE(c.outcome == Outcome::SmallDense);
  c.vertices = {0};
  c.bounds_met = c.tight_v_bound_met = false;
  CHECK(verify_certificate(g, c).reason == "size bound");
  c.params.mode = Mode::Relaxed;
  CHECK(verify_certificate(g, c).accepted);
}

TEST_CASE("forced search stops at once on a small dense host") {
  const Graph g = gen_cliques(1, 5);
  auto fp = make_forced_params(8, 3, 4, Rational(1, 2));
  auto tr = forced_search(g, Params{2, 2, Rational(1), 0, Mode::Relaxed}, fp);
  REQUIRE(tr.levels.size() == 1);
  CHECK(tr.levels[0].outcome == Outcome::SmallDense);
  CHECK(tr.width_product == 1);
  CHECK(tr.result.vertex_count() == 5);
  CHECK(tr.result_density == 2);
  CHECK(tr.exponent_identity);
  CHECK(tr.final_v_ok);
  CHECK(tr.final_d_ok);
}

TEST_CASE("forced search lifts through two minors") {
  const Graph g = gen_gnp(12, Rational(1, 5), 1);
  auto fp = make_forced_params(density(g) * 4, 3, 4, Rational(1, 2));
  auto tr = forced_search(g, Params{2, 2, Rational(1), 0, Mode::Relaxed}, fp);
  REQUIRE(tr.levels.size() == 3);
  CHECK(tr.levels[2].outcome == Outcome::SmallDense);
  BigInt prod = 1;
  for (std::size_t i = 0; i < tr.levels.size(); ++i) {
    const auto& lvl = tr.levels[i];
    INFO("level " << i);
    CHECK(lvl.lift_v_ok);
    CHECK(lvl.lift_d_ok);
    if (i + 1 < tr.levels.size()) {
      CHECK(lvl.outcome != Outcome::SmallDense);
      prod *= lvl.width;
      // independent recount of the lift bounds
      const auto& inner = tr.levels[i + 1];
      CHECK(lvl.lifted_v <= lvl.width * inner.lifted_v);
      CHECK(Rational(BigInt(lvl.lifted_e), BigInt(lvl.lifted_v)) * q(lvl.width) >=
            Rational(BigInt(inner.lifted_e), BigInt(inner.lifted_v)));
    }
  }
  CHECK(tr.width_product == prod);
  CHECK(tr.result.vertex_count() == tr.levels[0].lifted_v);
  CHECK(tr.product_v_ok);
  CHECK(tr.product_d_ok);
  CHECK(tr.exponent_identity);
  // every lifted vertex is a host vertex and the subgraph is induced
  Subgraph again = induced_subgraph(g, tr.result.to_host);
  CHECK(again.edge_count() == tr.result.edge_count());
}

TEST_CASE("forced search guards") {
  const Graph g = gen_gnp(12, Rational(1, 5), 1);
  ForcedParams fp = make_forced_params(4, 3, 4, Rational(1, 2));
  fp.lambda = 3;
  CHECK_THROWS_AS(forced_search(g, Params{2, 2, Rational(1), 0, Mode::Relaxed}, fp), Error);
  fp.lambda = 2;
  CHECK_THROWS_AS(forced_search(g, Params{2, 2, Rational(1), 0, Mode::Relaxed}, fp, 1), Error);
  CHECK_THROWS_AS(make_forced_params(0, 3, 4, Rational(1, 2)), Error);
  CHECK_THROWS_AS(make_forced_params(4, 3, Rational(1, 2), Rational(1, 2)), Error);
  CHECK_THROWS_AS(make_forced_params(4, 3, 4, Rational(1)), Error);
}
