#pragma once

// Independent cross-check on the parametric integral side: zig-zag graphs,
// Kirchhoff polynomials via spanning-tree enumeration (validated against the
// matrix-tree determinant), and a deterministic Monte-Carlo estimate of
//   I = int_simplex Omega / Psi^2
// in the chart sum(alpha) = 1, where the estimate is
// E[Psi(alpha)^{-2}] / (2n-1)! under the flat Dirichlet measure.
//
// Zig-zag realization: cycle v1 .. v_{n+1} plus the chords {v_i, v_{i+2}} for
// i = 1 .. n-1. This is an assumption of the build, pinned by the known
// isomorphisms Z3 = K4, Z4 = W4 and by the Monte-Carlo cross-check.

#include "zigzag/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace zigzag {

struct Graph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // 0-based vertex pairs, edge order is the numbering

  int loop_order() const { return static_cast<int>(edges.size()) - vertices + 1; }
};

inline Graph zigzag_graph(int n) {
  if (n < 3) throw std::invalid_argument("zigzag_graph: n >= 3");
  Graph g;
  g.vertices = n + 1;
  for (int i = 0; i < n + 1; ++i) g.edges.emplace_back(i, (i + 1) % (n + 1));
  for (int i = 0; i + 2 <= n; ++i) g.edges.emplace_back(i, i + 2);
  return g;
}

namespace detail {

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    p[a] = b;
    return true;
  }
};

}  // namespace detail

struct KirchhoffPoly {
  int degree = 0;                           // = loop order
  std::vector<std::vector<int>> monomials;  // each: sorted edge indices not in the tree
};

// one monomial per spanning tree, alpha-variables indexed by edge position
inline KirchhoffPoly kirchhoff(const Graph& g) {
  const int E = static_cast<int>(g.edges.size());
  const int V = g.vertices;
  if (V < 1) throw std::invalid_argument("kirchhoff: empty graph");
  if (E < V - 1) throw std::invalid_argument("kirchhoff: graph is not connected");
  KirchhoffPoly poly;
  poly.degree = g.loop_order();
  std::vector<int> pick(V - 1);
  std::iota(pick.begin(), pick.end(), 0);
  // iterate over all (V-1)-subsets of edges, keep the acyclic spanning ones
  for (;;) {
    detail::UnionFind uf(V);
    bool tree = true;
    for (int e : pick)
      if (!uf.unite(g.edges[e].first, g.edges[e].second)) {
        tree = false;
        break;
      }
    if (tree) {
      std::vector<int> comp;
      comp.reserve(E - (V - 1));
      int j = 0;
      for (int e = 0; e < E; ++e) {
        if (j < V - 1 && pick[j] == e)
          ++j;
        else
          comp.push_back(e);
      }
      poly.monomials.push_back(std::move(comp));
    }
    // next combination
    int i = V - 2;
    while (i >= 0 && pick[i] == E - (V - 1) + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < V - 1; ++k) pick[k] = pick[k - 1] + 1;
  }
  if (poly.monomials.empty()) throw std::invalid_argument("kirchhoff: graph is not connected");
  return poly;
}

// matrix-tree: number of spanning trees as the determinant of the reduced
// Laplacian, exact integer arithmetic (Bareiss)
inline Int spanning_tree_count(const Graph& g) {
  const int n = g.vertices - 1;
  if (n <= 0) return 1;
  std::vector<std::vector<Int>> m(n, std::vector<Int>(n, 0));
  for (const auto& [a, b] : g.edges) {
    if (a < n) m[a][a] += 1;
    if (b < n) m[b][b] += 1;
    if (a < n && b < n) {
      m[a][b] -= 1;
      m[b][a] -= 1;
    }
  }
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (m[r][k] != 0) {
          swap_row = r;
          break;
        }
      if (swap_row < 0) return 0;
      std::swap(m[k], m[swap_row]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// ---------------------------------------------------------------------------
// Monte Carlo

namespace detail {

// counter-based generator: every draw is a pure function of (seed, stream, i)
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform01() {
    // in (0,1), never 0
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
  double normal() {
    double u1 = uniform01(), u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
  }
  // Marsaglia-Tsang for shape >= 1, boosted below 1 by g(a) = g(a+1) u^{1/a}
  double gamma(double shape) {
    if (shape < 1.0) return gamma(shape + 1.0) * std::pow(uniform01(), 1.0 / shape);
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = uniform01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }
};

inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
  SplitMix64 g(seed ^ (0x8badf00ddeadbeefULL + stream * 0x9e3779b97f4a7c15ULL));
  g.next();
  return g.next();
}

}  // namespace detail

struct McResult {
  long double estimate = 0.0L;   // median of block means
  long double std_error = 0.0L;  // 1.2533 * sd(block means)/sqrt(blocks)
  long double mean = 0.0L;       // plain grand mean, for reference
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int workers = 1;
  int blocks = 32;
};

// deterministic given (seed, blocks): per-block RNG streams and a fixed
// reduction order make the worker count irrelevant to the result
//
// The estimand is E_uniform[Psi(alpha)^{-2}]/(2n-1)!. Flat-Dirichlet draws
// leave the estimator with an infinite-variance tail (the boundary strata
// where a subgraph's variables shrink together), so half the draws come from
// a symmetric Dirichlet(1/4) that loads those strata, with exact mixture
// importance weights. For n <= 4 this makes the variance finite and the
// block CLT honest; it does not change the estimand.
inline McResult mc_period(const Graph& g, std::uint64_t samples, std::uint64_t seed,
                          int workers = 1, int blocks = 32) {
  if (workers < 1) throw std::invalid_argument("mc_period: workers >= 1");
  if (blocks < 2) throw std::invalid_argument("mc_period: blocks >= 2");
  const KirchhoffPoly poly = kirchhoff(g);
  const int E = static_cast<int>(g.edges.size());
  const int deg = poly.degree;
  if (2 * deg != E)
    throw std::invalid_argument("mc_period: integrand is not projectively balanced (need deg Psi^2 = #edges)");
  const std::uint64_t per_block = samples / blocks;
  if (per_block == 0) throw std::invalid_argument("mc_period: need at least one sample per block");

  const double kappa = 0.25;
  // log of the density ratio constant Dir(kappa)/Dir(1) on the simplex
  const double log_ratio_const = std::lgamma(kappa * E) - E * std::lgamma(kappa) - std::lgamma((double)E);

  std::vector<long double> block_mean(blocks, 0.0L);
  auto run_block = [&](int bidx) {
    detail::SplitMix64 rng(detail::stream_seed(seed, static_cast<std::uint64_t>(bidx)));
    std::vector<double> e(E);
    // Kahan-compensated block sum
    double sum = 0.0, comp = 0.0;
    for (std::uint64_t s = 0; s < per_block; ++s) {
      bool corner = rng.uniform01() < 0.5;
      double tot = 0.0, log_prod = 0.0;
      for (int i = 0; i < E; ++i) {
        e[i] = corner ? rng.gamma(kappa) : -std::log(rng.uniform01());
        tot += e[i];
      }
      for (int i = 0; i < E; ++i) log_prod += std::log(e[i] / tot);
      double psi = 0.0;
      for (const auto& mono : poly.monomials) {
        double p = 1.0;
        for (int idx : mono) p *= e[idx];
        psi += p;
      }
      // Psi(alpha)^{-2} with alpha = e / tot, Psi homogeneous of degree deg;
      // w = p_uniform / p_mixture
      double log_r = log_ratio_const + (kappa - 1.0) * log_prod;
      double w = (log_r > 700.0) ? 0.0 : 1.0 / (0.5 + 0.5 * std::exp(log_r));
      // deep-corner draws can overflow f; they carry weight 0, never inf*0
      double fw = (w == 0.0) ? 0.0 : std::pow(tot, 2 * deg) / (psi * psi) * w;
      double y = fw - comp;
      double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    block_mean[bidx] = static_cast<long double>(sum) / per_block;
  };

  if (workers == 1) {
    for (int b = 0; b < blocks; ++b) run_block(b);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&, w]() {
        for (int b = w; b < blocks; b += workers) run_block(b);
      });
    for (auto& th : pool) th.join();
  }

  long double fact = 1.0L;
  for (int k = 2; k <= 2 * deg - 1; ++k) fact *= k;

  std::vector<long double> sorted = block_mean;
  std::sort(sorted.begin(), sorted.end());
  long double median = (blocks % 2 == 0)
                           ? 0.5L * (sorted[blocks / 2 - 1] + sorted[blocks / 2])
                           : sorted[blocks / 2];
  long double mean = 0.0L;
  for (auto m : block_mean) mean += m;
  mean /= blocks;
  long double var = 0.0L;
  for (auto m : block_mean) var += (m - mean) * (m - mean);
  var /= (blocks - 1);
  long double se_mean = std::sqrt(var / blocks);

  McResult r;
  r.estimate = median / fact;
  r.std_error = 1.2533L * se_mean / fact;  // asymptotic SE of the median
  r.mean = mean / fact;
  r.samples = per_block * blocks;
  r.seed = seed;
  r.workers = workers;
  r.blocks = blocks;
  return r;
}

// brute-force isomorphism search for small graphs (used by tests)
inline bool graphs_isomorphic(const Graph& a, const Graph& b) {
  if (a.vertices != b.vertices || a.edges.size() != b.edges.size()) return false;
  const int n = a.vertices;
  auto adj = [](const Graph& g) {
    std::vector<std::vector<bool>> m(g.vertices, std::vector<bool>(g.vertices, false));
    for (auto [u, v] : g.edges) m[u][v] = m[v][u] = true;
    return m;
  };
  auto ma = adj(a), mb = adj(b);
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      for (int j = i + 1; j < n && ok; ++j)
        if (ma[i][j] != mb[perm[i]][perm[j]]) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

}  // namespace zigzag
