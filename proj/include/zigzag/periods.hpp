#pragma once

// Zig-zag periods: the closed form
//   I_n = 4 (2n-2)! / (n! (n-1)!) * (1 - (1-(-1)^n)/2^{2n-3}) * zeta(2n-3)
// and the same number extracted from coefficients of the verified S / S-hat
// series, via the regularized value at the origin of the f-functions.

#include "zigzag/sv_series.hpp"

#include <stdexcept>
#include <string>

namespace zigzag {

struct CutoffTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct PeriodResult {
  int n = 0;
  MzvExpr symbolic;          // a single rational multiple of zeta(2n-3)
  long double numeric_value = 0.0L;
  std::string source;        // "closed_form" | "from_S" | "monte_carlo"
};

inline PeriodResult closed_form(int n) {
  if (n < 3) throw std::invalid_argument("closed_form: n >= 3");
  Rational coeff = Rational(4) * Rational(factorial(2 * n - 2), factorial(n) * factorial(n - 1));
  Rational parity = (n % 2 == 0) ? Rational(0) : pow2_rational(-(2 * n - 3)) * 2;
  coeff *= (Rational(1) - parity);
  PeriodResult r;
  r.n = n;
  r.symbolic = MzvExpr::zeta_odd(2 * n - 3, coeff);
  r.numeric_value = numeric(r.symbolic, 15);
  r.source = "closed_form";
  return r;
}

// the alternating word of length n-2 ending in x1 (the f-function index for
// the n-loop graph), and v = reverse(w) x0 x1 w
inline Word period_f_word(int n) { return alternating_word((n % 2 == 0) ? 0 : 1, n - 2); }

// regularized value at z = 0 of f_{2w} for alternating w ending in x1:
// every non-constant polylogarithm vanishes there, so only constant-series
// coefficients survive the deconcatenation sum
inline MzvExpr reg_value_at_zero(const SeriesBundle& b, const Word& w) {
  if (w.empty() || w.last() != 1) throw std::invalid_argument("reg_value_at_zero: w must end in x1");
  for (std::uint32_t i = 0; i + 1 < w.len; ++i)
    if (w.letter(i) == w.letter(i + 1)) throw std::invalid_argument("reg_value_at_zero: w must alternate");
  const int n = static_cast<int>(w.len) + 2;
  if (2 * n - 3 > b.W)
    throw CutoffTooSmall("weight " + std::to_string(2 * n - 3) + " exceeds cutoff " + std::to_string(b.W));
  Word v = w.reversed().concat(x0_word()).concat(x1_word()).concat(w);
  Word x1u = v.drop_last();
  Word ux1 = v.drop_first();
  if (w.first() == 0) {
    // even n: the F branch, coefficients of S
    return -b.S.coeff(x1u) + b.S.coeff(ux1);
  }
  // odd n: the F-hat branch
  return b.Shat.coeff(x1u) - b.Shat.coeff(ux1);
}

inline PeriodResult period_from_S(const SeriesBundle& b, int n) {
  if (n < 3) throw std::invalid_argument("period_from_S: n >= 3");
  if (2 * n - 3 > b.W)
    throw CutoffTooSmall("period weight 2n-3 = " + std::to_string(2 * n - 3) + " exceeds cutoff " +
                         std::to_string(b.W));
  PeriodResult r;
  r.n = n;
  r.symbolic = reg_value_at_zero(b, period_f_word(n));
  r.numeric_value = numeric(r.symbolic, 15);
  r.source = "from_S";
  return r;
}

// true when the expression is a single monomial q * zeta(2n-3)
inline bool is_single_odd_zeta(const MzvExpr& e, int n) {
  if (e.terms().size() != 1) return false;
  const auto& [m, q] = *e.terms().begin();
  return m.pi_pow == 0 && m.unknowns.empty() && m.odd_zetas == std::vector<int>{2 * n - 3};
}

}  // namespace zigzag
