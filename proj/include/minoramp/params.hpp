#pragma once

#include "minoramp/mode.hpp"
#include "minoramp/rational.hpp"

#include <string>
#include <vector>

namespace minoramp {

/// Parameters of one amplification step. K defaults to k.
struct Params {
  std::size_t k = 2;
  std::size_t ell = 2;
  Rational eps = Rational(1, 64);
  Rational K = 0;  // 0 means "use k"
  Mode mode = Mode::Theorem;

  Rational effective_K() const { return K > 0 ? K : Rational(BigInt(k)); }
  friend bool operator==(const Params&, const Params&) = default;
};

inline void check_params(const Params& p) {
  if (p.ell < 2 || p.k < p.ell) throw Error("need k >= ell >= 2");
  if (p.eps <= 0) throw Error("eps must be positive");
  if (p.K < 0) throw Error("K must be positive");
  if (p.mode == Mode::Theorem) {
    const Rational k(BigInt(p.k));
    if (p.eps * 16 * k * k > 1) throw Error("theorem mode needs eps <= 1/(16k^2)");
    if (p.effective_K() < k) throw Error("theorem mode needs K >= k");
  }
}

/// ell = 2^(2/alpha) - 1, k = 2^(4/alpha^2), eps = 1/(28k^2).
struct AlphaParams {
  Rational alpha;
  std::int64_t q = 0;  // 1/alpha
  BigInt ell;
  BigInt k;
  Rational eps;
};

inline AlphaParams params_from_alpha(const Rational& alpha) {
  if (alpha <= 0 || alpha > Rational(1, 2)) throw Error("alpha must lie in (0, 1/2]");
  const Rational inv = 1 / alpha;
  if (denominator_of(inv) != 1) throw Error("1/alpha must be an integer, got " + to_string(inv));
  const BigInt qb = numerator_of(inv);
  if (qb > 64) throw Error("1/alpha too large for exact parameters");
  const auto q = qb.convert_to<std::int64_t>();
  AlphaParams out;
  out.alpha = alpha;
  out.q = q;
  out.ell = numerator_of(pow2(2 * q)) - 1;
  out.k = numerator_of(pow2(4 * q * q));
  out.eps = Rational(BigInt(1), 28 * out.k * out.k);
  return out;
}

namespace detail {

inline Rational rational_pow(const Rational& base, std::int64_t exponent) {
  if (exponent < 0) return 1 / rational_pow(base, -exponent);
  Rational result = 1, b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

inline std::int64_t small_int(const BigInt& v, const char* what) {
  if (v > 1'000'000 || v < -1'000'000) throw Error(std::string(what) + " too large for an exact power check");
  return v.convert_to<std::int64_t>();
}

}  // namespace detail

/// x >= y^(1-alpha) for x, y >= 0 and rational alpha = a/b, via x^b >= y^(b-a).
inline bool at_least_power(const Rational& x, const Rational& y, const Rational& alpha) {
  if (x < 0 || y < 0) throw Error("power comparison needs non-negative operands");
  const auto a = detail::small_int(numerator_of(alpha), "alpha numerator");
  const auto b = detail::small_int(denominator_of(alpha), "alpha denominator");
  return detail::rational_pow(x, b) >= detail::rational_pow(y, b - a);
}

/// Exact check of the inequalities behind the alpha parameterization.
struct AlphaReport {
  std::vector<Check> checks;
  bool ok() const { return all_hold(checks); }
};

inline AlphaReport check_alpha_inequalities(const Rational& alpha, const BigInt& ell_b, const BigInt& k_b,
                                            const Rational& eps) {
  AlphaReport rep;
  const Rational ell(ell_b), k(k_b);
  const auto a = detail::small_int(numerator_of(alpha), "alpha numerator");
  const auto b = detail::small_int(denominator_of(alpha), "alpha denominator");
  // 2^(16/alpha^2) = 2^(16 b^2 / a^2); compare after raising both sides to a^2.
  const std::int64_t a2 = a * a;
  const Rational two_big = pow2(16 * b * b);
  rep.checks.push_back({"14k^2 eps = 1/2", 14 * k * k * eps == Rational(1, 2)});
  rep.checks.push_back({"6k^3 <= 2^(16/alpha^2)", detail::rational_pow(6 * k * k * k, a2) <= two_big});
  rep.checks.push_back({"eps^2/2 >= 2^(-16/alpha^2)", detail::rational_pow(2 / (eps * eps), a2) <= two_big});
  rep.checks.push_back({"ell(1 - 14k^2 eps) >= (ell+1)^(1-alpha)",
                        at_least_power(ell * (1 - 14 * k * k * eps), ell + 1, alpha)});
  rep.checks.push_back({"(k/8ell)(1 - 2k eps) >= k^(1-alpha)",
                        at_least_power(k / (8 * ell) * (1 - 2 * k * eps), k, alpha)});
  return rep;
}

inline AlphaReport check_alpha_inequalities(const AlphaParams& p) {
  return check_alpha_inequalities(p.alpha, p.ell, p.k, p.eps);
}

/// Inputs of the iterated forced-pair search: host density scale D, clique
/// order t, ratio r with d(G) about D/r, exponent alpha and lambda = 1/(1-alpha).
struct ForcedParams {
  Rational D = 1;
  std::size_t t = 1;
  Rational r = 1;
  Rational alpha = Rational(1, 2);
  Rational lambda = 2;
};

inline ForcedParams make_forced_params(const Rational& D, std::size_t t, const Rational& r, const Rational& alpha) {
  if (D <= 0) throw Error("D must be positive");
  if (t < 1) throw Error("t must be positive");
  if (r < 1) throw Error("r must be at least 1");
  if (alpha <= 0 || alpha >= 1) throw Error("alpha must lie in (0,1)");
  return ForcedParams{D, t, r, alpha, 1 / (1 - alpha)};
}

}  // namespace minoramp
