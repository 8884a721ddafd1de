#pragma once

#include "minoramp/graph.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace minoramp {

namespace detail {

inline std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline bool parse_u64(std::string_view s, std::uint64_t& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

template <class F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    ++line_no;
    f(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace detail

/// Lines "u v" with 0-based ids; '#' starts a comment, blank lines are
/// skipped and duplicates collapse. A comment "# vertices N" fixes the vertex
/// count so trailing isolated vertices survive a round trip.
inline Graph parse_edge_list(std::string_view text) {
  std::vector<Edge> edges;
  std::uint64_t n = 0;
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      auto fields = detail::split_fields(line.substr(hash + 1));
      std::uint64_t declared = 0;
      if (fields.size() == 2 && fields[0] == "vertices" && detail::parse_u64(fields[1], declared))
        n = std::max(n, declared);
      line = line.substr(0, hash);
    }
    auto fields = detail::split_fields(line);
    if (fields.empty()) return;
    std::uint64_t u = 0, v = 0;
    if (fields.size() != 2 || !detail::parse_u64(fields[0], u) || !detail::parse_u64(fields[1], v))
      throw Error("malformed edge at line " + std::to_string(no));
    if (u >= kNoVertex || v >= kNoVertex) throw Error("vertex id too large at line " + std::to_string(no));
    if (u == v) throw Error("self-loop at line " + std::to_string(no));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
    n = std::max({n, u + 1, v + 1});
  });
  return Graph::from_edges(n, edges);
}

/// DIMACS "p edge n m" / "e u v" (1-based). Comment lines start with 'c'.
/// Duplicate edges and an edge count that disagrees with the header are
/// reported through `warnings`.
inline Graph parse_dimacs(std::string_view text, std::vector<std::string>* warnings = nullptr) {
  bool have_header = false;
  std::uint64_t n = 0, m = 0;
  std::vector<Edge> edges;
  detail::for_each_line(text, [&](std::string_view line, std::size_t no) {
    auto fields = detail::split_fields(line);
    if (fields.empty() || fields[0] == "c") return;
    const std::string at = " at line " + std::to_string(no);
    if (fields[0] == "p") {
      if (have_header) throw Error("second header" + at);
      if (fields.size() != 4 || fields[1] != "edge" || !detail::parse_u64(fields[2], n) ||
          !detail::parse_u64(fields[3], m))
        throw Error("malformed header" + at);
      if (n >= kNoVertex) throw Error("vertex count too large" + at);
      have_header = true;
      return;
    }
    if (fields[0] == "e") {
      if (!have_header) throw Error("edge before header" + at);
      std::uint64_t u = 0, v = 0;
      if (fields.size() != 3 || !detail::parse_u64(fields[1], u) || !detail::parse_u64(fields[2], v))
        throw Error("malformed edge" + at);
      if (u < 1 || v < 1 || u > n || v > n) throw Error("vertex out of range" + at);
      if (u == v) throw Error("self-loop" + at);
      edges.emplace_back(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1));
      return;
    }
    throw Error("unknown line type '" + std::string(fields[0]) + "'" + at);
  });
  if (!have_header) throw Error("missing 'p edge' header");
  Graph g = Graph::from_edges(n, edges);
  if (warnings) {
    if (g.edge_count() != edges.size())
      warnings->push_back(std::to_string(edges.size() - g.edge_count()) + " duplicate edge(s) collapsed");
    if (edges.size() != m)
      warnings->push_back("header declares " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  }
  return g;
}

/// Ascending "u v" lines after a "# vertices N" line.
inline std::string write_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# vertices " << g.vertex_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
  return out.str();
}

inline std::string write_dimacs(const Graph& g) {
  std::ostringstream out;
  out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u + 1 << ' ' << e.v + 1 << '\n';
  return out.str();
}

}  // namespace minoramp
