#pragma once

// Weight-truncated noncommutative formal power series over MzvExpr, with the
// concatenation product, the quotient by the Hoffman ideals, and the
// (level, first letter, last letter) component decomposition.
//
// Two series only interoperate at the same cutoff; mixing cutoffs throws
// instead of silently re-truncating.

#include "zigzag/mzv.hpp"
#include "zigzag/word.hpp"

#include <map>
#include <stdexcept>
#include <string>

namespace zigzag {

struct CutoffMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NotGroupLike : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ComponentKey {
  int level = 0;  // 0 or 1
  int first = 0;  // first letter
  int last = 0;   // last letter
};

class NcSeries {
 public:
  explicit NcSeries(int cutoff) : cutoff_(cutoff) {
    if (cutoff < 0) throw std::invalid_argument("NcSeries cutoff must be >= 0");
  }

  static NcSeries scalar(int cutoff, const MzvExpr& c) {
    NcSeries s(cutoff);
    s.set(Word{}, c);
    return s;
  }
  static NcSeries scalar(int cutoff, const Rational& q) { return scalar(cutoff, MzvExpr::rational(q)); }
  static NcSeries one(int cutoff) { return scalar(cutoff, Rational(1)); }

  static NcSeries monomial(int cutoff, const Word& w, const MzvExpr& c) {
    NcSeries s(cutoff);
    s.set(w, c);
    return s;
  }

  int cutoff() const { return cutoff_; }
  const std::map<Word, MzvExpr>& terms() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  MzvExpr coeff(const Word& w) const {
    auto it = c_.find(w);
    return it == c_.end() ? MzvExpr::zero() : it->second;
  }

  MzvExpr scalar_part() const { return coeff(Word{}); }

  void set(const Word& w, const MzvExpr& c) {
    if (static_cast<int>(w.len) > cutoff_) return;
    if (c.is_zero())
      c_.erase(w);
    else
      c_[w] = c;
  }

  void add(const Word& w, const MzvExpr& c) {
    if (static_cast<int>(w.len) > cutoff_) return;
    auto it = c_.find(w);
    if (it == c_.end()) {
      if (!c.is_zero()) c_.emplace(w, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) c_.erase(it);
    }
  }

  NcSeries& operator+=(const NcSeries& o) {
    check_cutoff(o);
    for (const auto& [w, c] : o.c_) add(w, c);
    return *this;
  }
  NcSeries& operator-=(const NcSeries& o) {
    check_cutoff(o);
    for (const auto& [w, c] : o.c_) add(w, -c);
    return *this;
  }
  friend NcSeries operator+(NcSeries a, const NcSeries& b) { return a += b; }
  friend NcSeries operator-(NcSeries a, const NcSeries& b) { return a -= b; }
  friend NcSeries operator-(const NcSeries& a) {
    NcSeries r(a.cutoff_);
    for (const auto& [w, c] : a.c_) r.set(w, -c);
    return r;
  }

  friend NcSeries operator*(const NcSeries& a, const NcSeries& b) {
    a.check_cutoff(b);
    NcSeries r(a.cutoff_);
    for (const auto& [u, cu] : a.c_) {
      for (const auto& [v, cv] : b.c_) {
        if (static_cast<int>(u.len + v.len) > a.cutoff_) continue;
        r.add(u.concat(v), cu * cv);
      }
    }
    return r;
  }

  friend NcSeries operator*(const NcSeries& a, const MzvExpr& c) {
    NcSeries r(a.cutoff_);
    for (const auto& [w, cw] : a.c_) r.set(w, cw * c);
    return r;
  }
  friend NcSeries operator*(const MzvExpr& c, const NcSeries& a) { return a * c; }
  friend NcSeries operator*(const NcSeries& a, const Rational& q) { return a * MzvExpr::rational(q); }
  friend NcSeries operator*(const Rational& q, const NcSeries& a) { return a * MzvExpr::rational(q); }

  bool operator==(const NcSeries& o) const { return cutoff_ == o.cutoff_ && c_ == o.c_; }
  bool operator!=(const NcSeries& o) const { return !(*this == o); }

 private:
  void check_cutoff(const NcSeries& o) const {
    if (cutoff_ != o.cutoff_)
      throw CutoffMismatch("NcSeries cutoff mismatch: " + std::to_string(cutoff_) + " vs " +
                           std::to_string(o.cutoff_));
  }

  int cutoff_;
  std::map<Word, MzvExpr> c_;
};

inline NcSeries reverse_series(const NcSeries& a) {
  NcSeries r(a.cutoff());
  for (const auto& [w, c] : a.terms()) r.set(w.reversed(), c);
  return r;
}

// A(-x0, -x1): weight-n term picks up (-1)^n
inline NcSeries sign_flip(const NcSeries& a) {
  NcSeries r(a.cutoff());
  for (const auto& [w, c] : a.terms()) r.set(w, (w.len % 2 == 0) ? c : -c);
  return r;
}

// zero out every ideal word; basis-word coefficients pass through unchanged
inline NcSeries reduce_mod_ideal(const NcSeries& a, AlphabetMode mode) {
  NcSeries r(a.cutoff());
  for (const auto& [w, c] : a.terms())
    if (!classify(w, mode).in_ideal()) r.set(w, c);
  return r;
}

// the sub-series of words with given level / first / last; the scalar part and
// the eight components sum back to reduce_mod_ideal(a)
inline NcSeries component(const NcSeries& a, const ComponentKey& key, AlphabetMode mode) {
  NcSeries r(a.cutoff());
  for (const auto& [w, c] : a.terms()) {
    if (w.empty()) continue;
    auto hc = classify(w, mode);
    if (hc.in_ideal()) continue;
    if (hc.level == key.level && w.first() == key.first && w.last() == key.last) r.set(w, c);
  }
  return r;
}

// keep only the alternating (level-0) words plus the scalar; this is reduction
// mod the larger ideal generated by both doubled letters
inline NcSeries alternating_part(const NcSeries& a) {
  NcSeries r(a.cutoff());
  for (const auto& [w, c] : a.terms()) {
    bool alt = true;
    for (std::uint32_t i = 0; i + 1 < w.len; ++i)
      if (w.letter(i) == w.letter(i + 1)) {
        alt = false;
        break;
      }
    if (alt) r.set(w, c);
  }
  return r;
}

// shuffle homomorphism test: S_{u sh v} = S_u S_v for all |u|+|v| <= cutoff
inline bool is_grouplike(const NcSeries& a) {
  if (a.scalar_part().is_zero()) throw std::invalid_argument("is_grouplike: scalar term must be invertible");
  const int W = a.cutoff();
  for (int la = 0; la <= W; ++la) {
    for (int lb = la; la + lb <= W; ++lb) {
      for (const auto& u : all_words(la)) {
        for (const auto& v : all_words(lb)) {
          MzvExpr lhs;
          for (const auto& [w, q] : shuffle(u, v).terms) lhs += a.coeff(w) * q;
          if (lhs != a.coeff(u) * a.coeff(v)) return false;
        }
      }
    }
  }
  return true;
}

// inverse of a group-like series with scalar term 1, by the geometric series
// in (1 - a); the antipode formula reverse(sign_flip(a)) must agree on
// group-like input and is what the tests compare against
inline NcSeries grouplike_inverse(const NcSeries& a) {
  if (a.scalar_part() != MzvExpr::one())
    throw std::invalid_argument("grouplike_inverse: scalar term must be 1");
  if (!is_grouplike(a)) throw NotGroupLike("grouplike_inverse: shuffle homomorphism test failed");
  NcSeries nil = NcSeries::one(a.cutoff()) - a;
  NcSeries inv = NcSeries::one(a.cutoff());
  NcSeries p = nil;
  for (int k = 1; k <= a.cutoff() && !p.is_zero(); ++k) {
    inv += p;
    p = p * nil;
  }
  return inv;
}

// inverse of any series with scalar term 1 (no group-likeness requirement);
// used internally where the input is a truncated assembly
inline NcSeries unit_series_inverse(const NcSeries& a) {
  if (a.scalar_part() != MzvExpr::one())
    throw std::invalid_argument("unit_series_inverse: scalar term must be 1");
  NcSeries nil = NcSeries::one(a.cutoff()) - a;
  NcSeries inv = NcSeries::one(a.cutoff());
  NcSeries p = nil;
  for (int k = 1; k <= a.cutoff() && !p.is_zero(); ++k) {
    inv += p;
    p = p * nil;
  }
  return inv;
}

}  // namespace zigzag
