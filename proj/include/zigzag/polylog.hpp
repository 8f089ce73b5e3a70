#pragma once

// Numerical multiple polylogarithms L_w(z) and everything built on them:
// parallel transport of the full truncated series along paths (for analytic
// continuation and monodromy experiments), regularized limits at z = 1, the
// single-valued combinations F_w / F-hat_w / f_{2w}, and the Bloch-Wigner
// dilogarithm.
//
// Conventions: principal branch of log; d/dz L_{w x_i} = L_w / (z - i), so
// differentiation deconcatenates on the right; values outside the base disk
// are defined by transport along an explicit path, with the antiholomorphic
// factor transported along the complex-conjugate path.

#include "zigzag/sv_series.hpp"

#include <array>
#include <complex>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace zigzag {

using Real = long double;
using Cplx = std::complex<Real>;

struct OutOfDomain : std::domain_error {
  using std::domain_error::domain_error;
};
struct PathTooClose : std::domain_error {
  using std::domain_error::domain_error;
};
struct WordNotInClass : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct RealAxis : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// word ids for dense tables: id(w) = 2^len | bits, so ids of length l fill
// [2^l, 2^{l+1}) and every proper prefix/suffix has a smaller id

inline std::uint32_t word_id(const Word& w) { return (1u << w.len) | w.bits; }

inline Word word_from_id(std::uint32_t id) {
  std::uint32_t len = 0;
  while ((2u << len) <= id) ++len;
  return Word(id & ((1u << len) - 1u), len);
}

// ---------------------------------------------------------------------------
// Local chart at the origin. L(z) = exp(x0 log z) h(z) with h holomorphic on
// the unit disk, h(0) = 1. The Taylor coefficients a_{w,N} of h_w satisfy
//   N a_{w,N} = a_{w/x0,N} - a_{x0\w,N} - sum_{M<N} a_{w/x1,M}
// (terms present when the letter matches), which pins them down weight by
// weight. They are rational; we tabulate them in long double.

class Chart {
 public:
  Chart(int cutoff, int order) : W_(cutoff), N_(order) {
    const std::uint32_t ids = 2u << W_;
    a_.assign(ids, {});
    a_[1].assign(N_ + 1, 0.0L);
    a_[1][0] = 1.0L;  // empty word: h = 1
    for (std::uint32_t id = 2; id < ids; ++id) {
      Word w = word_from_id(id);
      const bool ends0 = w.last() == 0, starts0 = w.first() == 0;
      const std::uint32_t id_drop_last = word_id(w.drop_last());
      const std::uint32_t id_drop_first = word_id(w.drop_first());
      auto& row = a_[id];
      row.assign(N_ + 1, 0.0L);
      Real cum = 0.0L;  // running sum of a_{w/x1, M} for M < N
      for (int N = 1; N <= N_; ++N) {
        Real v = 0.0L;
        if (ends0) v += a_[id_drop_last][N];
        if (starts0) v -= a_[id_drop_first][N];
        if (!ends0) {
          cum += a_[id_drop_last][N - 1];
          v -= cum;
        }
        row[N] = v / N;
      }
    }
  }

  int cutoff() const { return W_; }
  int order() const { return N_; }

  // h_w(z) truncated at order N_
  Cplx eval_h(const Word& w, Cplx z) const {
    const auto& row = a_[word_id(w)];
    Cplx s = 0.0L;
    for (int N = N_; N >= 0; --N) s = s * z + row[N];
    return s;
  }

  // tail of sum_{N > N_} |a| r^N, from |a_{w,N}| <= (3 + log(N+1))^{|w|}
  static Real h_tail_bound(int len, int order, Real r) {
    if (r <= 0) return 0.0L;
    if (r > 0.78L) return INFINITY;
    Real t = powl(3.0L + logl(static_cast<Real>(order + 2)), static_cast<Real>(len)) *
             powl(r, static_cast<Real>(order + 1));
    Real rho = r * powl((3.0L + logl(static_cast<Real>(order + 3))) /
                            (3.0L + logl(static_cast<Real>(order + 2))),
                        static_cast<Real>(len));
    if (rho >= 0.999L) return INFINITY;
    return t / (1.0L - rho);
  }

  // L_w(z) = sum over x0-prefixes, log(z)^k/k! h_{suffix}(z); err_out gets the
  // truncation bound
  Cplx eval_L(const Word& w, Cplx z, Real* err_out = nullptr) const {
    if (w.len > static_cast<std::uint32_t>(W_)) throw std::invalid_argument("eval_L: word beyond cutoff");
    if (w.empty()) {
      if (err_out) *err_out = 0.0L;
      return 1.0L;
    }
    const Real r = std::abs(z);
    if (r == 0.0L || r > 0.75L) throw OutOfDomain("eval_L: need 0 < |z| <= 0.75");
    const Cplx lam = std::log(z);
    Cplx total = 0.0L;
    Real err = 0.0L;
    Cplx lam_pow = 1.0L;
    Real lam_abs_pow = 1.0L, kfact = 1.0L;
    std::uint32_t max_k = 0;
    while (max_k < w.len && w.letter(max_k) == 0) ++max_k;
    for (std::uint32_t k = 0; k <= max_k; ++k) {
      Word u = w.suffix_from(k);
      total += lam_pow / kfact * eval_h(u, z);
      err += lam_abs_pow / kfact * h_tail_bound(static_cast<int>(u.len), N_, r);
      lam_pow *= lam;
      lam_abs_pow *= std::abs(lam);
      kfact *= (k + 1);
    }
    if (err_out) *err_out = err;
    return total;
  }

 private:
  int W_, N_;
  std::vector<std::vector<Real>> a_;
};

// process-wide chart cache; grown on demand, read-only afterwards
inline std::shared_ptr<const Chart> chart_for(int cutoff, int order_min) {
  static std::mutex mu;
  static std::shared_ptr<const Chart> cache;
  std::lock_guard<std::mutex> lock(mu);
  if (!cache || cache->cutoff() < cutoff || cache->order() < order_min) {
    int W = cache ? std::max(cache->cutoff(), cutoff) : cutoff;
    int N = cache ? std::max(cache->order(), order_min) : order_min;
    cache = std::make_shared<const Chart>(W, N);
  }
  return cache;
}

// single-point evaluation with adaptive Taylor order
inline Cplx eval_L(const Word& w, Cplx z, Real tol = 1e-15L) {
  int order = 96;
  for (;;) {
    auto ch = chart_for(std::max<int>(w.len, 4), order);
    Real err = 0.0L;
    Cplx v = ch->eval_L(w, z, &err);
    if (err <= tol || order >= 1024) {
      if (err > tol) throw OutOfDomain("eval_L: cannot reach tolerance at |z|=" + std::to_string((double)std::abs(z)));
      return v;
    }
    order = order * 3 / 2;
  }
}

// ---------------------------------------------------------------------------
// Parallel transport of the truncated series along a polyline. Each straight
// segment is integrated by recursive Taylor steps of the linear system
//   dL_w/dt = u ( L_{w/x0} / z(t) + L_{w/x1} / (z(t)-1) ),
// step length capped by the distance to the singular points.

struct Transporter {
  int W = 0;
  Cplx z;
  std::vector<Cplx> val;  // id-indexed; val[word_id(w)] = L_w(z)
  Real est_error = 0.0L;

  Cplx value(const Word& w) const { return val[word_id(w)]; }
};

inline Transporter make_transporter(int cutoff, Cplx z0, Real tol = 1e-15L) {
  Transporter t;
  t.W = cutoff;
  t.z = z0;
  t.val.assign(2u << cutoff, Cplx(0.0L));
  Real worst = 0.0L;
  int order = 128;
  auto ch = chart_for(cutoff, order);
  for (std::uint32_t id = 1; id < (2u << cutoff); ++id) {
    Real err = 0.0L;
    Word w = word_from_id(id);
    // grow chart order until the per-word bound is fine
    for (;;) {
      t.val[id] = ch->eval_L(w, z0, &err);
      if (err <= tol || ch->order() >= 1024) break;
      ch = chart_for(cutoff, ch->order() * 3 / 2);
    }
    worst = std::max(worst, err);
  }
  t.est_error = worst;
  return t;
}

namespace detail {

// one Taylor step from point a along direction dir (arc length |dir|);
// vals updated in place
inline void taylor_step(std::vector<Cplx>& vals, int W, Cplx a, Cplx dir) {
  constexpr int K = 32;
  const std::uint32_t ids = 2u << W;
  // R0[j], R1[j]: Taylor coefficients of dir/(z(t)) and dir/(z(t)-1), z(t) = a + t dir
  Cplx R0[K + 1], R1[K + 1];
  Cplx inv0 = 1.0L / a, inv1 = 1.0L / (a - 1.0L);
  Cplx p0 = dir * inv0, p1 = dir * inv1;
  for (int j = 0; j <= K; ++j) {
    R0[j] = p0;
    R1[j] = p1;
    p0 *= -dir * inv0;
    p1 *= -dir * inv1;
  }
  // c[id*(K+1) + k], filled in id order (prefix ids are smaller)
  std::vector<Cplx> c(ids * (K + 1), Cplx(0.0L));
  c[1 * (K + 1)] = vals[1];
  for (std::uint32_t id = 2; id < ids; ++id) {
    Word w = word_from_id(id);
    const std::uint32_t pid = word_id(w.drop_last());
    const Cplx* R = (w.last() == 0) ? R0 : R1;
    const Cplx* cp = &c[pid * (K + 1)];
    Cplx* cw = &c[id * (K + 1)];
    cw[0] = vals[id];
    for (int k = 0; k < K; ++k) {
      Cplx s = 0.0L;
      for (int j = 0; j <= k; ++j) s += cp[j] * R[k - j];
      cw[k + 1] = s / static_cast<Real>(k + 1);
    }
  }
  for (std::uint32_t id = 1; id < ids; ++id) {
    const Cplx* cw = &c[id * (K + 1)];
    Cplx s = 0.0L;
    for (int k = K; k >= 0; --k) s = s + cw[k];
    vals[id] = s;
  }
}

}  // namespace detail

inline Transporter kz_transport(const Transporter& start, const std::vector<Cplx>& path,
                                Real tol = 1e-14L, Real min_clearance = 1e-13L) {
  if (path.empty()) return start;
  Transporter t = start;
  if (std::abs(path.front() - t.z) > 1e-15L)
    throw std::invalid_argument("kz_transport: path must start at the transporter base point");
  for (size_t seg = 0; seg + 1 < path.size(); ++seg) {
    Cplx a = path[seg], bnd = path[seg + 1];
    Real seg_len = std::abs(bnd - a);
    if (seg_len == 0.0L) continue;
    Cplx u = (bnd - a) / seg_len;
    Real s = 0.0L;
    while (s < seg_len) {
      Cplx zc = a + u * s;
      Real d = std::min(std::abs(zc), std::abs(zc - Cplx(1.0L)));
      if (d < min_clearance) throw PathTooClose("kz_transport: path clearance below threshold");
      Real h = std::min(seg_len - s, 0.30L * d);
      // step ratio 0.30 at order 32 keeps the Taylor tail at the rounding floor
      detail::taylor_step(t.val, t.W, zc, u * h);
      s += h;
    }
    t.z = bnd;
  }
  t.est_error = start.est_error + tol;
  return t;
}

// positively oriented polygonal loop around `center` through `through`
inline std::vector<Cplx> loop_path(Cplx center, Cplx through, int segments = 48) {
  std::vector<Cplx> p;
  Cplx r = through - center;
  for (int k = 0; k <= segments; ++k) {
    Real th = 2.0L * std::numbers::pi_v<Real> * k / segments;
    p.push_back(center + r * Cplx(cosl(th), sinl(th)));
  }
  p.back() = through;  // close exactly
  return p;
}

inline std::vector<Cplx> conjugate_path(const std::vector<Cplx>& p) {
  std::vector<Cplx> q;
  q.reserve(p.size());
  for (auto z : p) q.push_back(std::conj(z));
  return q;
}

// ---------------------------------------------------------------------------
// Regularized limit at z = 1: transport to 1 - eps, strip exp(x1 log(1-z)),
// and extrapolate eps -> 0 against the basis {1} u {eps log^j eps} u
// {eps^2 log^j eps}. The x1-coefficient of the result is 0 (the zeta(1) = 0
// regularization), the x1 x0 coefficient is -zeta(2), and so on.

namespace detail {

// least squares for the constant term; rows scaled per column
inline Cplx extrapolate_const(const std::vector<Real>& eps, const std::vector<Cplx>& y, int max_log_pow) {
  const int S = static_cast<int>(eps.size());
  std::vector<std::vector<Real>> basis;
  basis.push_back(std::vector<Real>(S, 1.0L));
  for (int j = 0; j <= max_log_pow; ++j) {
    std::vector<Real> col(S);
    for (int i = 0; i < S; ++i) col[i] = eps[i] * powl(logl(eps[i]), static_cast<Real>(j));
    basis.push_back(col);
  }
  for (int j = 0; j <= std::min(3, max_log_pow); ++j) {
    std::vector<Real> col(S);
    for (int i = 0; i < S; ++i) col[i] = eps[i] * eps[i] * powl(logl(eps[i]), static_cast<Real>(j));
    basis.push_back(col);
  }
  const int P = static_cast<int>(basis.size());
  std::vector<Real> scale(P, 1.0L);
  for (int p = 0; p < P; ++p) {
    Real m = 0.0L;
    for (int i = 0; i < S; ++i) m = std::max(m, fabsl(basis[p][i]));
    scale[p] = (m > 0.0L) ? 1.0L / m : 1.0L;
    for (int i = 0; i < S; ++i) basis[p][i] *= scale[p];
  }
  // normal equations, complex rhs
  std::vector<std::vector<Real>> A(P, std::vector<Real>(P, 0.0L));
  std::vector<Cplx> rhs(P, Cplx(0.0L));
  for (int p = 0; p < P; ++p) {
    for (int q = 0; q < P; ++q) {
      Real s = 0.0L;
      for (int i = 0; i < S; ++i) s += basis[p][i] * basis[q][i];
      A[p][q] = s;
    }
    Cplx s = 0.0L;
    for (int i = 0; i < S; ++i) s += basis[p][i] * y[i];
    rhs[p] = s;
  }
  // Gaussian elimination with partial pivoting
  std::vector<int> piv(P);
  for (int i = 0; i < P; ++i) piv[i] = i;
  for (int col = 0; col < P; ++col) {
    int best = col;
    for (int r = col + 1; r < P; ++r)
      if (fabsl(A[r][col]) > fabsl(A[best][col])) best = r;
    std::swap(A[col], A[best]);
    std::swap(rhs[col], rhs[best]);
    for (int r = col + 1; r < P; ++r) {
      Real f = A[r][col] / A[col][col];
      for (int cc = col; cc < P; ++cc) A[r][cc] -= f * A[col][cc];
      rhs[r] -= f * rhs[col];
    }
  }
  std::vector<Cplx> x(P);
  for (int r = P - 1; r >= 0; --r) {
    Cplx s = rhs[r];
    for (int cc = r + 1; cc < P; ++cc) s -= A[r][cc] * x[cc];
    x[r] = s / A[r][r];
  }
  return x[0] * scale[0];
}

}  // namespace detail

struct RegLimit {
  int W = 0;
  std::map<Word, Cplx> coeff;
  Real est_error = 0.0L;

  Cplx value(const Word& w) const {
    auto it = coeff.find(w);
    return it == coeff.end() ? Cplx(0.0L) : it->second;
  }
};

inline RegLimit regularized_limit_at_1(int cutoff, Real tol = 1e-14L) {
  const int n_eps = 14;
  std::vector<Real> eps(n_eps);
  for (int i = 0; i < n_eps; ++i) eps[i] = powl(10.0L, -4.0L - 0.5L * i);

  Transporter t = make_transporter(cutoff, Cplx(0.5L), tol * 1e-2L);
  const std::uint32_t ids = 2u << cutoff;
  std::vector<std::vector<Cplx>> stripped(ids);  // per word, per eps

  for (int i = 0; i < n_eps; ++i) {
    Cplx target = Cplx(1.0L - eps[i]);
    t = kz_transport(t, {t.z, target}, tol * 1e-2L, eps[i] * 0.5L);
    Real l = logl(eps[i]);  // log(1 - z) at z = 1 - eps
    for (std::uint32_t id = 1; id < ids; ++id) {
      Word w = word_from_id(id);
      // [L exp(-x1 log eps)]_w = sum over trailing x1-powers
      Cplx s = 0.0L;
      Real pw = 1.0L, kfact = 1.0L;
      Word u = w;
      for (std::uint32_t k = 0;; ++k) {
        s += t.val[word_id(u)] * pw / kfact;
        if (u.empty() || u.last() != 1) break;
        u = u.drop_last();
        pw *= -l;
        kfact *= (k + 1);
      }
      stripped[id].push_back(s);
    }
  }

  RegLimit out;
  out.W = cutoff;
  Real worst = 0.0L;
  for (std::uint32_t id = 2; id < ids; ++id) {
    Word w = word_from_id(id);
    Cplx c = detail::extrapolate_const(eps, stripped[id], std::min<int>(static_cast<int>(w.len), 6));
    out.coeff[w] = c;
    worst = std::max(worst, fabsl(c.imag()));  // associator coefficients are real
  }
  out.coeff[Word{}] = 1.0L;
  out.est_error = worst;
  return out;
}

// ---------------------------------------------------------------------------
// Bloch-Wigner dilogarithm

inline Cplx dilog(Cplx z, int depth = 0) {
  const Real pi = std::numbers::pi_v<Real>;
  Real r = std::abs(z);
  if (r <= 0.75L || depth >= 4) {
    Cplx s = 0.0L, zp = z;
    for (int k = 1; k <= 220; ++k) {
      s += zp / Cplx(static_cast<Real>(k) * k);
      zp *= z;
      if (std::abs(zp) < 1e-22L) break;
    }
    return s;
  }
  if (r > 1.25L) {
    Cplx L = std::log(-z);
    return -dilog(1.0L / z, depth + 1) - pi * pi / 6.0L - 0.5L * L * L;
  }
  if (std::abs(1.0L - z) < 0.75L) {
    return pi * pi / 6.0L - std::log(z) * std::log(1.0L - z) - dilog(1.0L - z, depth + 1);
  }
  // Landen: Li2(z) = -Li2(z/(z-1)) - log^2(1-z)/2
  Cplx w = z / (z - 1.0L);
  Cplx L = std::log(1.0L - z);
  return -dilog(w, depth + 1) - 0.5L * L * L;
}

inline Real bloch_wigner(Cplx z) {
  if (z.imag() == 0.0L) return 0.0L;  // D vanishes on the real axis
  return (dilog(z) + std::log(std::abs(z)) * std::log(1.0L - z)).imag();
}

// ---------------------------------------------------------------------------
// Single-valued combinations F_w, F-hat_w and f_{2w}

enum class SvMode { F, Fhat };

class SvEvaluator {
 public:
  explicit SvEvaluator(const SeriesBundle& b)
      : W_(b.W), sF_(numeric_coeffs(b.S)), sFhat_(numeric_coeffs(b.Shat)) {}

  // test hook: the same deconcatenation sum with the constant series replaced
  // by 1; not single-valued, used as the negative control
  static SvEvaluator trivial(int cutoff) {
    SvEvaluator e(cutoff);
    e.sF_[Word{}] = 1.0L;
    e.sFhat_[Word{}] = 1.0L;
    return e;
  }

  int cutoff() const { return W_; }

  static AlphabetMode class_of(SvMode m) {
    return m == SvMode::F ? AlphabetMode::B0 : AlphabetMode::B1;
  }

  void require_in_class(const Word& w, SvMode mode) const {
    if (classify(w, class_of(mode)).in_ideal())
      throw WordNotInClass("word " + w.str() + " is not in the class of mode " +
                           (mode == SvMode::F ? "F" : "Fhat"));
  }

  Real s_coeff(const Word& w, SvMode mode) const {
    const auto& m = (mode == SvMode::F) ? sF_ : sFhat_;
    auto it = m.find(w);
    return it == m.end() ? 0.0L : it->second;
  }

  // F_w(z) = sum_{w = u1 u2 u3} L_{rev(u1)}(conj z) S_{u2} L_{u3}(z), values
  // taken from the two argument tables (holomorphic at z, antiholomorphic at
  // conj z transported along the conjugate path)
  Cplx eval_from(const Word& w, SvMode mode,
                 const std::function<Cplx(const Word&)>& L_at_z,
                 const std::function<Cplx(const Word&)>& L_at_zbar) const {
    require_in_class(w, mode);
    Cplx total = 0.0L;
    for (std::uint32_t i = 0; i <= w.len; ++i) {
      for (std::uint32_t j = i; j <= w.len; ++j) {
        Word u1 = w.prefix(i);
        Word u2 = w.prefix(j).suffix_from(i);
        Word u3 = w.suffix_from(j);
        Real s = s_coeff(u2, mode);
        if (s == 0.0L) continue;
        total += L_at_zbar(u1.reversed()) * s * L_at_z(u3);
      }
    }
    return total;
  }

  Cplx eval_F(const Word& w, Cplx z, SvMode mode, Real tol = 1e-14L) const {
    // the deconcatenation sum can amplify per-term error by the total mass of
    // the constant-series coefficients; evaluate the factors well below tol
    Real term_tol = std::max(tol * 1e-4L, 1e-17L);
    auto hol = [&](const Word& u) { return eval_L(u, z, term_tol); };
    auto anti = [&](const Word& u) { return eval_L(u, std::conj(z), term_tol); };
    return eval_from(w, mode, hol, anti);
  }

  // f_{2w} for alternating w (the empty word gives the weight-2 base case):
  // v = rev(w) x0 x1 w, sign (-1)^|w|, F branch for w starting x0, F-hat for
  // w starting x1, divided by z - conj z
  Cplx eval_f2w(const Word& w, Cplx z, Real tol = 1e-14L) const {
    if (z == std::conj(z)) throw RealAxis("eval_f2w: z on the real axis");
    for (std::uint32_t i = 0; i + 1 < w.len; ++i)
      if (w.letter(i) == w.letter(i + 1))
        throw std::invalid_argument("eval_f2w: w must be alternating");
    SvMode mode = (!w.empty() && w.first() == 1) ? SvMode::Fhat : SvMode::F;
    Word v = w.reversed().concat(x0_word()).concat(x1_word()).concat(w);
    Cplx num = eval_F(v, z, mode, tol) - eval_F(v.reversed(), z, mode, tol);
    Real sign = (w.len % 2 == 0) ? 1.0L : -1.0L;
    return sign * num / (z - std::conj(z));
  }

 private:
  explicit SvEvaluator(int cutoff) : W_(cutoff) {}

  int W_;
  std::map<Word, Real> sF_, sFhat_;
};

// regularized numeric value of f_{2w} at the origin: sample along the ray
// arg z = pi/4 and extrapolate the log-corrected expansion to delta -> 0
inline Real f2w_value_at_zero(const SvEvaluator& ev, const Word& w, int n_delta = 11) {
  std::vector<Real> d(n_delta);
  std::vector<Cplx> y(n_delta);
  const Real c = cosl(std::numbers::pi_v<Real> / 4);
  for (int i = 0; i < n_delta; ++i) {
    d[i] = powl(10.0L, -1.5L - 0.35L * i);
    Cplx z(d[i] * c, d[i] * c);
    y[i] = ev.eval_f2w(w, z);
  }
  // the corrections carry at most two log powers per delta power here; a
  // leaner basis keeps the fit well conditioned
  return detail::extrapolate_const(d, y, 2).real();
}

// ---------------------------------------------------------------------------
// Finite-difference checks of the defining differential equations

struct OdeResidual {
  Cplx lhs, rhs;
  Real relative;
};

// d^2/(dz dzbar) F_{x_i w x_j} = F_w / ((zbar - i)(z - j)); the mixed partial
// is Laplacian/4, evaluated by the 5-point stencil
inline OdeResidual check_ode_F(const SvEvaluator& ev, const Word& xwj, Cplx z, Real h, SvMode mode) {
  if (xwj.len < 2) throw std::invalid_argument("check_ode_F: need |word| >= 2");
  ev.require_in_class(xwj, mode);
  Word inner = xwj.drop_first().drop_last();
  ev.require_in_class(inner, mode);
  int i = xwj.first(), j = xwj.last();
  Cplx sum = ev.eval_F(xwj, z + h, mode) + ev.eval_F(xwj, z - h, mode) +
             ev.eval_F(xwj, z + Cplx(0, h), mode) + ev.eval_F(xwj, z - Cplx(0, h), mode) -
             4.0L * ev.eval_F(xwj, z, mode);
  OdeResidual r;
  r.lhs = sum / (4.0L * h * h);
  r.rhs = ev.eval_F(inner, z, mode) / ((std::conj(z) - Cplx((Real)i)) * (z - Cplx((Real)j)));
  r.relative = std::abs(r.lhs - r.rhs) / std::max<Real>(1.0L, std::abs(r.rhs));
  return r;
}

// -(1/(z-zbar)) d^2/(dz dzbar) [ (z-zbar) f_{2 w x_a} ] = f_{2w} / ((z-a)(zbar-a))
inline OdeResidual check_ode_f(const SvEvaluator& ev, const Word& wxa, Cplx z, Real h) {
  if (wxa.empty()) throw std::invalid_argument("check_ode_f: need a letter to strip");
  Word w = wxa.drop_last();
  int a = wxa.last();
  auto g = [&](Cplx zz) { return (zz - std::conj(zz)) * ev.eval_f2w(wxa, zz); };
  Cplx sum = g(z + h) + g(z - h) + g(z + Cplx(0, h)) + g(z - Cplx(0, h)) - 4.0L * g(z);
  OdeResidual r;
  r.lhs = -(sum / (4.0L * h * h)) / (z - std::conj(z));
  r.rhs = ev.eval_f2w(w, z) / ((z - Cplx((Real)a)) * (std::conj(z) - Cplx((Real)a)));
  r.relative = std::abs(r.lhs - r.rhs) / std::max<Real>(1.0L, std::abs(r.rhs));
  return r;
}

// ---------------------------------------------------------------------------
// Loop tests: transport both factors around a singular point and compare

struct LoopDefect {
  Cplx before, after;
  Real relative;
};

inline LoopDefect singlevalued_loop_test(const SvEvaluator& ev, const Word& w, SvMode mode,
                                         Cplx z0, int which, Real tol = 1e-12L) {
  if (which != 0 && which != 1) throw std::invalid_argument("loop center must be 0 or 1");
  const int W = std::max<int>(static_cast<int>(w.len), 2);
  Transporter hol = make_transporter(W, z0, tol * 1e-2L);
  Transporter anti = make_transporter(W, std::conj(z0), tol * 1e-2L);
  auto Lz = [&](const Word& u) { return hol.value(u); };
  auto Lzb = [&](const Word& u) { return anti.value(u); };
  LoopDefect d;
  d.before = ev.eval_from(w, mode, Lz, Lzb);

  auto path = loop_path(Cplx((Real)which), z0);
  Transporter hol2 = kz_transport(hol, path, tol * 1e-2L);
  Transporter anti2 = kz_transport(anti, conjugate_path(path), tol * 1e-2L);
  auto Lz2 = [&](const Word& u) { return hol2.value(u); };
  auto Lzb2 = [&](const Word& u) { return anti2.value(u); };
  d.after = ev.eval_from(w, mode, Lz2, Lzb2);
  d.relative = std::abs(d.after - d.before) / std::max<Real>(1.0L, std::abs(d.before));
  return d;
}

}  // namespace zigzag
