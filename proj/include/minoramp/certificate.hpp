#pragma once

#include "minoramp/graph.hpp"
#include "minoramp/minor.hpp"
#include "minoramp/params.hpp"

#include <json.hpp>

#include <cstdio>
#include <string>
#include <vector>

namespace minoramp {

enum class Outcome { SmallDense, EllMinor, KMinor };

inline const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::SmallDense: return "small_dense";
    case Outcome::EllMinor: return "ell_minor";
    case Outcome::KMinor: return "k_minor";
  }
  return "?";
}

inline Outcome parse_outcome(const std::string& s) {
  if (s == "small_dense") return Outcome::SmallDense;
  if (s == "ell_minor") return Outcome::EllMinor;
  if (s == "k_minor") return Outcome::KMinor;
  throw Error("unknown outcome '" + s + "'");
}

/// Binds a certificate to its host without embedding it.
struct Fingerprint {
  std::uint64_t n = 0;
  std::uint64_t e = 0;
  std::uint64_t hash = 0;
  friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

inline Fingerprint fingerprint(const Graph& g) { return {g.vertex_count(), g.edge_count(), edge_list_hash(g)}; }

struct Certificate {
  Outcome outcome = Outcome::SmallDense;
  Params params;
  Fingerprint host;
  Rational reference_density;  // d(dense_core(host))

  // small dense subgraph
  std::vector<Vertex> vertices;
  Rational claimed_v_bound;
  Rational claimed_e_bound;
  bool bounds_met = false;
  bool tight_v_bound_met = false;  // v <= 3k^3 d as well

  // bounded minor
  MinorModel model;
  Rational claimed_density;
  Rational bound;
  bool bound_met = false;
  Rational strong_bound;  // ell_minor only
  bool strong_bound_met = false;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

/// Density and size bounds a certificate is judged against.
struct CertificateBounds {
  Rational v_bound, tight_v_bound, e_bound;  // small dense
  Rational bound;                            // minor (weak form for ell_minor)
  Rational strong_bound;                     // ell_minor only
  std::size_t width = 0;
};

inline CertificateBounds certificate_bounds(const Params& p, const Rational& d, Outcome o) {
  const Rational k(BigInt(p.k)), ell(BigInt(p.ell));
  CertificateBounds b;
  b.v_bound = 6 * k * k * k * d;
  b.tight_v_bound = 3 * k * k * k * d;
  b.e_bound = p.eps * p.eps * d * d / 2;
  if (o == Outcome::KMinor) {
    b.width = p.k;
    b.bound = k / (8 * ell) * (1 - 2 * k * p.eps) * d;
  } else if (o == Outcome::EllMinor) {
    b.width = p.ell + 1;
    const Rational d0 = (1 - 8 * k * k * p.eps) * d;
    const Rational eps0 = 2 * p.eps;
    b.bound = ell / 2 * (1 - 3 * ell * ell * ell * eps0) * d0;
    b.strong_bound = ell * (1 - 14 * k * k * p.eps) * d;
  }
  return b;
}

// ---------------------------------------------------------------------------
// JSON

inline constexpr const char* kCertificateFormat = "minoramp-certificate/1";

inline std::string hash_hex(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof buf, "0x%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline nlohmann::ordered_json to_json(const Certificate& c) {
  using J = nlohmann::ordered_json;
  J j;
  j["format"] = kCertificateFormat;
  j["outcome"] = outcome_name(c.outcome);
  j["mode"] = mode_name(c.params.mode);
  j["params"] = J{{"k", c.params.k},
                  {"ell", c.params.ell},
                  {"eps", to_string(c.params.eps)},
                  {"K", to_string(c.params.effective_K())}};
  j["fingerprint"] = J{{"n", c.host.n}, {"e", c.host.e}, {"hash", hash_hex(c.host.hash)}};
  j["reference_density"] = to_string(c.reference_density);
  if (c.outcome == Outcome::SmallDense) {
    j["vertices"] = c.vertices;
    j["claimed_v_bound"] = to_string(c.claimed_v_bound);
    j["claimed_e_bound"] = to_string(c.claimed_e_bound);
    j["bounds_met"] = c.bounds_met;
    j["tight_v_bound_met"] = c.tight_v_bound_met;
  } else {
    j["width"] = c.model.width;
    j["branch_sets"] = c.model.branch_sets;
    j["claimed_density"] = to_string(c.claimed_density);
    j["bound"] = to_string(c.bound);
    j["bound_met"] = c.bound_met;
    if (c.outcome == Outcome::EllMinor) {
      j["strong_bound"] = to_string(c.strong_bound);
      j["strong_bound_met"] = c.strong_bound_met;
    }
  }
  return j;
}

inline std::string serialize(const Certificate& c) { return to_json(c).dump(2) + "\n"; }

inline Certificate certificate_from_json(const nlohmann::ordered_json& j) {
  try {
    if (j.at("format").get<std::string>() != kCertificateFormat) throw Error("unsupported certificate format");
    Certificate c;
    c.outcome = parse_outcome(j.at("outcome").get<std::string>());
    const auto mode = j.at("mode").get<std::string>();
    if (mode != "theorem" && mode != "relaxed") throw Error("unknown mode '" + mode + "'");
    c.params.mode = mode == "theorem" ? Mode::Theorem : Mode::Relaxed;
    const auto& p = j.at("params");
    c.params.k = p.at("k").get<std::size_t>();
    c.params.ell = p.at("ell").get<std::size_t>();
    c.params.eps = parse_rational(p.at("eps").get<std::string>());
    c.params.K = parse_rational(p.at("K").get<std::string>());
    const auto& f = j.at("fingerprint");
    c.host.n = f.at("n").get<std::uint64_t>();
    c.host.e = f.at("e").get<std::uint64_t>();
    c.host.hash = std::stoull(f.at("hash").get<std::string>(), nullptr, 16);
    c.reference_density = parse_rational(j.at("reference_density").get<std::string>());
    if (c.outcome == Outcome::SmallDense) {
      c.vertices = j.at("vertices").get<std::vector<Vertex>>();
      c.claimed_v_bound = parse_rational(j.at("claimed_v_bound").get<std::string>());
      c.claimed_e_bound = parse_rational(j.at("claimed_e_bound").get<std::string>());
      c.bounds_met = j.at("bounds_met").get<bool>();
      c.tight_v_bound_met = j.at("tight_v_bound_met").get<bool>();
    } else {
      c.model.width = j.at("width").get<std::size_t>();
      c.model.branch_sets = j.at("branch_sets").get<std::vector<std::vector<Vertex>>>();
      c.claimed_density = parse_rational(j.at("claimed_density").get<std::string>());
      c.bound = parse_rational(j.at("bound").get<std::string>());
      c.bound_met = j.at("bound_met").get<bool>();
      if (c.outcome == Outcome::EllMinor) {
        c.strong_bound = parse_rational(j.at("strong_bound").get<std::string>());
        c.strong_bound_met = j.at("strong_bound_met").get<bool>();
      }
    }
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed certificate: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw Error("malformed certificate: bad fingerprint hash");
  }
}

inline Certificate parse_certificate(const std::string& text) {
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("malformed certificate: ") + e.what());
  }
  return certificate_from_json(j);
}

// ---------------------------------------------------------------------------
// Verification

struct Verdict {
  bool accepted = false;
  std::string reason;  // empty when accepted
};

/// Re-derives every claimed quantity from the host alone.
inline Verdict verify_certificate(const Graph& g, const Certificate& c) {
  auto reject = [](std::string why) { return Verdict{false, std::move(why)}; };
  if (fingerprint(g) != c.host) return reject("fingerprint");
  const Params& p = c.params;
  if (p.ell < 2 || p.k < p.ell || p.eps <= 0 || p.K <= 0) return reject("params");
  if (g.edge_count() == 0) return reject("reference density");
  if (c.reference_density != density(dense_core(g).graph)) return reject("reference density");
  const bool theorem = p.mode == Mode::Theorem;
  const CertificateBounds b = certificate_bounds(p, c.reference_density, c.outcome);

  if (c.outcome == Outcome::SmallDense) {
    if (c.vertices.empty()) return reject("vertices");
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      if (!g.contains(c.vertices[i])) return reject("range");
      if (i > 0 && c.vertices[i - 1] >= c.vertices[i]) return reject("vertices");
    }
    if (c.claimed_v_bound != b.v_bound || c.claimed_e_bound != b.e_bound) return reject("claimed bounds");
    Subgraph h = induced_subgraph(g, c.vertices);
    const Rational v(BigInt(h.vertex_count())), e(BigInt(h.edge_count()));
    const bool met = v <= b.v_bound && e >= b.e_bound;
    if (met != c.bounds_met || (met && v <= b.tight_v_bound) != c.tight_v_bound_met) return reject("flag");
    if (theorem && !met) return reject("size bound");
    return {true, {}};
  }

  if (c.model.width != b.width) return reject("width");
  if (c.model.branch_sets.empty()) return reject("empty");
  if (auto bad = validate_model(g, c.model)) return reject(bad->reason);
  const Rational measured = density(minor_graph(g, c.model));
  if (c.claimed_density > measured) return reject("density bound");
  if (c.bound != b.bound) return reject("claimed bounds");
  if (c.bound_met != (c.claimed_density >= b.bound)) return reject("flag");
  if (c.outcome == Outcome::EllMinor) {
    if (c.strong_bound != b.strong_bound) return reject("claimed bounds");
    if (c.strong_bound_met != (c.claimed_density >= b.strong_bound)) return reject("flag");
  }
  if (theorem && !c.bound_met) return reject("density bound");
  return {true, {}};
}

}  // namespace minoramp
