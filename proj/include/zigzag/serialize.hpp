#pragma once

// JSON forms of the public value types. Orderings are the canonical map
// orders, so serialization is deterministic.

#include "zigzag/feynman.hpp"
#include "zigzag/ncseries.hpp"
#include "zigzag/periods.hpp"
#include "zigzag/sv_series.hpp"

#include <json.hpp>

namespace zigzag {

using json = nlohmann::json;

inline json to_json(const MzvExpr& e) {
  json arr = json::array();
  for (const auto& [m, q] : e.terms()) {
    json t;
    t["coeff"] = to_fraction_string(q);
    t["pi_pow"] = m.pi_pow;
    t["odd"] = m.odd_zetas;
    json unk = json::array();
    for (const auto& u : m.unknowns) unk.push_back(u.str());
    t["unknown"] = unk;
    arr.push_back(t);
  }
  return arr;
}

inline json to_json(const NcSeries& s) {
  json out;
  out["cutoff"] = s.cutoff();
  json terms = json::array();
  for (const auto& [w, c] : s.terms()) {
    json t;
    t["word"] = w.str();
    t["coeff"] = to_json(c);
    terms.push_back(t);
  }
  out["terms"] = terms;
  return out;
}

inline json to_json(const ResidualReport& r) {
  json out;
  out["identity"] = r.name;
  out["pass"] = r.pass;
  out["max_weight_checked"] = r.max_weight_checked;
  out["nonzero_words"] = r.nonzero_words;
  out["time_ms"] = r.time_ms;
  return out;
}

inline json period_to_json(const PeriodResult& p, bool matches_closed_form) {
  json out;
  out["n"] = p.n;
  Rational coeff = 0;
  if (!p.symbolic.is_zero()) coeff = p.symbolic.terms().begin()->second;
  out["coefficient"] = to_fraction_string(coeff);
  out["zeta_weight"] = 2 * p.n - 3;
  out["numeric"] = static_cast<double>(p.numeric_value);
  out["matches_closed_form"] = matches_closed_form;
  out["source"] = p.source;
  return out;
}

inline json to_json(const Graph& g) {
  json out;
  out["vertices"] = g.vertices;
  json edges = json::array();
  for (auto [a, b] : g.edges) edges.push_back(json::array({a + 1, b + 1}));  // 1-based
  out["edges"] = edges;
  return out;
}

inline Graph graph_from_json(const json& j) {
  Graph g;
  g.vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) {
    int a = e.at(0).get<int>(), b = e.at(1).get<int>();
    if (a < 1 || b < 1 || a > g.vertices || b > g.vertices)
      throw std::invalid_argument("graph_from_json: vertex index out of range");
    g.edges.emplace_back(a - 1, b - 1);
  }
  return g;
}

inline json to_json(const McResult& r) {
  json out;
  out["estimate"] = static_cast<double>(r.estimate);
  out["std_error"] = static_cast<double>(r.std_error);
  out["mean"] = static_cast<double>(r.mean);
  out["samples"] = r.samples;
  out["seed"] = r.seed;
  out["workers"] = r.workers;
  out["blocks"] = r.blocks;
  return out;
}

}  // namespace zigzag
