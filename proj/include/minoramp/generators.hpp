#pragma once

#include "minoramp/graph.hpp"

#include <random>
#include <vector>

namespace minoramp {

/// mt19937_64 with integer draws built on its raw 64-bit output, so samples
/// do not depend on the standard library's distribution implementations.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, bound), rejection sampled.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error("empty sampling range");
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

  /// True with probability num/den.
  bool bernoulli(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

private:
  std::mt19937_64 engine_;
};

namespace detail {

inline std::pair<std::uint64_t, std::uint64_t> probability_parts(const Rational& p) {
  if (p < 0 || p > 1) throw Error("probability must lie in [0,1]");
  const BigInt num = numerator_of(p), den = denominator_of(p);
  if (den > BigInt(std::numeric_limits<std::uint64_t>::max())) throw Error("probability denominator too large");
  return {num.convert_to<std::uint64_t>(), den.convert_to<std::uint64_t>()};
}

}  // namespace detail

/// G(n,p): pairs u < v visited in ascending order, one Bernoulli draw each.
inline Graph gen_gnp(std::size_t n, const Rational& p, std::uint64_t seed) {
  if (n < 1) throw Error("need n >= 1");
  auto [num, den] = detail::probability_parts(p);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.bernoulli(num, den)) edges.emplace_back(u, v);
  return Graph::from_edges(n, edges);
}

struct BipartiteHost {
  Graph graph;
  Bipartition part;
};

/// A = 0..ell*nB-1, B = the next nB ids. Each A-vertex picks degB distinct
/// B-vertices uniformly (partial Fisher-Yates). With a_max > 0, extra A-A
/// edges are planted so that every A-vertex has at most a_max A-neighbors.
inline BipartiteHost gen_bipartite_host(std::size_t nB, std::size_t ell, std::size_t degB, std::uint64_t seed,
                                        std::size_t a_max = 0) {
  if (nB < 1 || ell < 1) throw Error("need nB, ell >= 1");
  if (degB > nB) throw Error("degB exceeds nB");
  const std::size_t nA = ell * nB;
  Rng rng(seed);
  BipartiteHost h;
  std::vector<Edge> edges;
  for (Vertex a = 0; a < nA; ++a) h.part.A.push_back(a);
  for (Vertex b = 0; b < nB; ++b) h.part.B.push_back(static_cast<Vertex>(nA + b));
  std::vector<Vertex> pool = h.part.B;
  for (Vertex a = 0; a < nA; ++a)
    for (std::size_t i = 0; i < degB; ++i) {
      std::size_t j = i + rng.below(nB - i);
      std::swap(pool[i], pool[j]);
      edges.emplace_back(a, pool[i]);
    }
  if (a_max > 0) {
    std::vector<std::size_t> deg(nA, 0);
    std::vector<Edge> planted;
    for (Vertex a = 0; a < nA; ++a)
      for (std::size_t tries = 0; tries < a_max && deg[a] < a_max; ++tries) {
        auto b = static_cast<Vertex>(rng.below(nA));
        if (b == a || deg[b] >= a_max) continue;
        Edge e(a, b);
        if (std::find(planted.begin(), planted.end(), e) != planted.end()) continue;
        planted.push_back(e);
        ++deg[a];
        ++deg[b];
      }
    edges.insert(edges.end(), planted.begin(), planted.end());
  }
  h.graph = Graph::from_edges(nA + nB, edges);
  return h;
}

/// `count` disjoint copies of K_size.
inline Graph gen_cliques(std::size_t count, std::size_t size) {
  if (size < 2) throw Error("clique size must be at least 2");
  std::vector<Edge> edges;
  for (std::size_t c = 0; c < count; ++c)
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = i + 1; j < size; ++j)
        edges.emplace_back(static_cast<Vertex>(c * size + i), static_cast<Vertex>(c * size + j));
  return Graph::from_edges(count * size, edges);
}

/// A clique on 0..core-1 with `pendants` independent vertices after it;
/// pendant i is joined to core vertices (i+j) mod core for j < attach.
inline Graph gen_pendant(std::size_t core, std::size_t pendants, std::size_t attach) {
  if (core < 2 || attach < 1 || attach > core) throw Error("need core >= 2 and 1 <= attach <= core");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < core; ++i)
    for (Vertex j = i + 1; j < core; ++j) edges.emplace_back(i, j);
  for (std::size_t i = 0; i < pendants; ++i)
    for (std::size_t j = 0; j < attach; ++j)
      edges.emplace_back(static_cast<Vertex>(core + i), static_cast<Vertex>((i + j) % core));
  return Graph::from_edges(core + pendants, edges);
}

}  // namespace minoramp
