#pragma once

// The exact coefficient ring: rational combinations of monomials
// pi^{2a} * prod zeta(odd) * prod (formal unknowns), graded by weight.
//
// The two unknown kinds stand for zeta values that never get assigned a
// closed form here; the verification layer proves they cancel instead.
//   H(m,n): weight 2m+2n+4
//   D(m,n): weight 2m+2n

#include "zigzag/rational.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace zigzag {

struct UnassignedUnknown : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class UnknownKind { hoffman1, dual_singular };

struct Unknown {
  UnknownKind kind;
  int m = 0, n = 0;

  int weight() const { return kind == UnknownKind::hoffman1 ? 2 * m + 2 * n + 4 : 2 * m + 2 * n; }

  std::string str() const {
    const char* tag = (kind == UnknownKind::hoffman1) ? "H" : "D";
    return std::string(tag) + "(" + std::to_string(m) + "," + std::to_string(n) + ")";
  }

  bool operator==(const Unknown& o) const { return kind == o.kind && m == o.m && n == o.n; }
  bool operator<(const Unknown& o) const {
    return std::tie(kind, m, n) < std::tie(o.kind, o.m, o.n);
  }
};

struct ZetaMonomial {
  int pi_pow = 0;                  // exponent of pi, always even
  std::vector<int> odd_zetas;      // sorted ascending, each odd and >= 3
  std::vector<Unknown> unknowns;   // sorted

  int weight() const {
    int w = pi_pow;
    for (int k : odd_zetas) w += k;
    for (const auto& u : unknowns) w += u.weight();
    return w;
  }

  bool is_one() const { return pi_pow == 0 && odd_zetas.empty() && unknowns.empty(); }
  bool has_unknowns() const { return !unknowns.empty(); }

  ZetaMonomial operator*(const ZetaMonomial& o) const {
    ZetaMonomial r;
    r.pi_pow = pi_pow + o.pi_pow;
    r.odd_zetas = odd_zetas;
    r.odd_zetas.insert(r.odd_zetas.end(), o.odd_zetas.begin(), o.odd_zetas.end());
    std::sort(r.odd_zetas.begin(), r.odd_zetas.end());
    r.unknowns = unknowns;
    r.unknowns.insert(r.unknowns.end(), o.unknowns.begin(), o.unknowns.end());
    std::sort(r.unknowns.begin(), r.unknowns.end());
    return r;
  }

  bool operator==(const ZetaMonomial& o) const {
    return pi_pow == o.pi_pow && odd_zetas == o.odd_zetas && unknowns == o.unknowns;
  }
  bool operator<(const ZetaMonomial& o) const {
    return std::tie(pi_pow, odd_zetas, unknowns) < std::tie(o.pi_pow, o.odd_zetas, o.unknowns);
  }
};

class MzvExpr {
 public:
  MzvExpr() = default;

  static MzvExpr zero() { return MzvExpr(); }

  static MzvExpr rational(const Rational& q) {
    MzvExpr e;
    e.add_term(ZetaMonomial{}, q);
    return e;
  }

  static MzvExpr one() { return rational(1); }

  // q * pi^{2a}
  static MzvExpr pi_even_power(int two_a, const Rational& q = 1) {
    if (two_a % 2 != 0 || two_a < 0) throw std::invalid_argument("pi exponent must be even >= 0");
    MzvExpr e;
    ZetaMonomial m;
    m.pi_pow = two_a;
    e.add_term(m, q);
    return e;
  }

  // q * zeta(k), k odd >= 3
  static MzvExpr zeta_odd(int k, const Rational& q = 1) {
    if (k < 3 || k % 2 == 0) throw std::invalid_argument("zeta_odd wants odd k >= 3");
    MzvExpr e;
    ZetaMonomial m;
    m.odd_zetas = {k};
    e.add_term(m, q);
    return e;
  }

  static MzvExpr unknown(const Unknown& u, const Rational& q = 1) {
    MzvExpr e;
    ZetaMonomial m;
    m.unknowns = {u};
    e.add_term(m, q);
    return e;
  }

  const std::map<ZetaMonomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool has_unknowns() const {
    for (const auto& [m, q] : terms_)
      if (m.has_unknowns()) return true;
    return false;
  }

  // weight of a homogeneous expression; -1 for 0, throws if mixed
  int weight() const {
    int w = -1;
    for (const auto& [m, q] : terms_) {
      int mw = m.weight();
      if (w == -1)
        w = mw;
      else if (w != mw)
        throw std::logic_error("MzvExpr not weight homogeneous");
    }
    return w;
  }

  void add_term(const ZetaMonomial& m, const Rational& q) {
    if (q == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_.emplace(m, q);
    } else {
      it->second += q;
      if (it->second == 0) terms_.erase(it);
    }
  }

  MzvExpr& operator+=(const MzvExpr& o) {
    for (const auto& [m, q] : o.terms_) add_term(m, q);
    return *this;
  }
  MzvExpr& operator-=(const MzvExpr& o) {
    for (const auto& [m, q] : o.terms_) add_term(m, -q);
    return *this;
  }
  friend MzvExpr operator+(MzvExpr a, const MzvExpr& b) { return a += b; }
  friend MzvExpr operator-(MzvExpr a, const MzvExpr& b) { return a -= b; }
  friend MzvExpr operator-(const MzvExpr& a) {
    MzvExpr r;
    for (const auto& [m, q] : a.terms_) r.add_term(m, -q);
    return r;
  }

  friend MzvExpr operator*(const MzvExpr& a, const MzvExpr& b) {
    MzvExpr r;
    for (const auto& [ma, qa] : a.terms_)
      for (const auto& [mb, qb] : b.terms_) r.add_term(ma * mb, qa * qb);
    return r;
  }
  friend MzvExpr operator*(const MzvExpr& a, const Rational& q) {
    MzvExpr r;
    for (const auto& [m, c] : a.terms_) r.add_term(m, c * q);
    return r;
  }
  friend MzvExpr operator*(const Rational& q, const MzvExpr& a) { return a * q; }
  MzvExpr& operator*=(const MzvExpr& o) { return *this = *this * o; }
  MzvExpr& operator*=(const Rational& q) { return *this = *this * q; }

  bool operator==(const MzvExpr& o) const { return terms_ == o.terms_; }
  bool operator!=(const MzvExpr& o) const { return !(*this == o); }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, q] : terms_) {
      if (!first) s += " + ";
      first = false;
      s += to_fraction_string(q);
      if (m.pi_pow > 0) s += "*pi^" + std::to_string(m.pi_pow);
      for (int k : m.odd_zetas) s += "*z" + std::to_string(k);
      for (const auto& u : m.unknowns) s += "*" + u.str();
    }
    return s;
  }

 private:
  std::map<ZetaMonomial, Rational> terms_;
};

// ---------------------------------------------------------------------------
// The closed families of zeta values used throughout.

// zeta(2,...,2) with n twos = pi^{2n} / (2n+1)!
inline MzvExpr zeta_two_string(int n) {
  if (n < 0) throw std::invalid_argument("zeta_two_string: n >= 0");
  return MzvExpr::pi_even_power(2 * n, Rational(1, factorial(2 * n + 1)));
}

// zeta_1(2,...,2) with n twos = 2 sum_{i=1}^n (-1)^i zeta(2i+1) zeta(2^{n-i})
inline MzvExpr zeta1_two_string(int n) {
  if (n < 0) throw std::invalid_argument("zeta1_two_string: n >= 0");
  MzvExpr r;
  for (int i = 1; i <= n; ++i) {
    Rational sign = (i % 2 == 0) ? 1 : -1;
    r += MzvExpr::zeta_odd(2 * i + 1, 2 * sign) * zeta_two_string(n - i);
  }
  return r;
}

// A^r_a = C(2r, 2a+2)
inline Rational binom_A(int r, int a) {
  if (r < 1 || a < 0) throw std::invalid_argument("binom_A: r >= 1, a >= 0");
  return Rational(binomial(2 * r, 2 * a + 2));
}

// B^r_b = (1 - 2^{-2r}) C(2r, 2b+1)
inline Rational binom_B(int r, int b) {
  if (r < 1 || b < 0) throw std::invalid_argument("binom_B: r >= 1, b >= 0");
  return (Rational(1) - pow2_rational(-2 * r)) * Rational(binomial(2 * r, 2 * b + 1));
}

// zeta(2^{a} 3 2^{b}) = 2 sum_{r=1}^{a+b+1} (-1)^r (A^r_a - B^r_b) zeta(2r+1) zeta(2^{a+b+1-r})
inline MzvExpr hoffman_232(int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("hoffman_232: a, b >= 0");
  MzvExpr r;
  for (int k = 1; k <= a + b + 1; ++k) {
    Rational sign = (k % 2 == 0) ? 1 : -1;
    Rational c = 2 * sign * (binom_A(k, a) - binom_B(k, b));
    if (c == 0) continue;
    r += MzvExpr::zeta_odd(2 * k + 1, c) * zeta_two_string(a + b + 1 - k);
  }
  return r;
}

inline MzvExpr unknown_singular(UnknownKind kind, int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("unknown_singular: m, n >= 0");
  return MzvExpr::unknown(Unknown{kind, m, n});
}

// ---------------------------------------------------------------------------
// Numeric evaluation (long double, ~18 significant digits).

namespace detail {

// zeta(s) for integer s >= 2 by direct summation with Euler-Maclaurin tail.
inline long double zeta_int_value(int s) {
  static std::map<int, long double> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;

  const int K = 256;
  long double sum = 0.0L;
  for (int k = K; k >= 1; --k) sum += powl(static_cast<long double>(k), static_cast<long double>(-s));
  // tail: K^{1-s}/(s-1) - K^{-s}/2 + corrections with B_2, B_4, B_6, B_8
  const long double Kl = K;
  long double tail = powl(Kl, 1.0L - s) / (s - 1) - 0.5L * powl(Kl, static_cast<long double>(-s));
  // sum_{k>K} k^{-s} = K^{1-s}/(s-1) - K^{-s}/2 + sum_j B_{2j}/(2j)! * (s)_(2j-1) K^{-s-2j+1}
  const long double bern[] = {1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30};
  long double rising = s;  // (s)_(1)
  long double fact = 2;    // (2j)!
  for (int j = 1; j <= 4; ++j) {
    tail += bern[j - 1] / fact * rising * powl(Kl, static_cast<long double>(-s - 2 * j + 1));
    // update (s)_(2j+1) and (2j+2)!
    rising *= (s + 2 * j - 1);
    rising *= (s + 2 * j);
    fact *= (2 * j + 1);
    fact *= (2 * j + 2);
  }
  long double v = sum + tail;
  cache[s] = v;
  return v;
}

}  // namespace detail

inline long double pi_value() { return std::numbers::pi_v<long double>; }

// Evaluates to |error| below 10^{-precision}. The long double backend caps the
// honest range at 16 digits; anything above that is rejected.
inline long double numeric(const MzvExpr& e, int precision,
                           const std::map<Unknown, long double>* assignment = nullptr) {
  if (precision < 1 || precision > 16)
    throw std::invalid_argument("numeric: precision must be in [1,16] digits");
  long double total = 0.0L;
  for (const auto& [m, q] : e.terms()) {
    long double v = to_long_double(q);
    v *= powl(pi_value(), static_cast<long double>(m.pi_pow));
    for (int k : m.odd_zetas) v *= detail::zeta_int_value(k);
    for (const auto& u : m.unknowns) {
      if (!assignment) throw UnassignedUnknown("no value assigned to " + u.str());
      auto it = assignment->find(u);
      if (it == assignment->end()) throw UnassignedUnknown("no value assigned to " + u.str());
      v *= it->second;
    }
    total += v;
  }
  return total;
}

}  // namespace zigzag
