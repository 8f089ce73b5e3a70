// Command-line front end: identity verification, period extraction, numeric
// evaluation of the single-valued functions, loop-transport experiments, and
// the Monte-Carlo oracle on the parametric integral.
//
// Exit codes: 0 all checks pass, 1 mathematical failure, 2 usage/config error.

#include "zigzag/periods.hpp"
#include "zigzag/polylog.hpp"
#include "zigzag/serialize.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace zigzag;

struct RunConfig {
  int weight = 13;
  int prec = 12;
  double tol = 1e-10;
  std::uint64_t seed = 42;
  int workers = 1;
  bool json_out = false;
};

// defaults may come from a JSON file named by ZIGZAG_CONFIG
void load_env_config(RunConfig& cfg) {
  const char* path = std::getenv("ZIGZAG_CONFIG");
  if (!path) return;
  std::ifstream in(path);
  if (!in) throw CLI::ValidationError("config", std::string("cannot open ZIGZAG_CONFIG file ") + path);
  json j = json::parse(in);
  if (j.contains("weight")) cfg.weight = j["weight"].get<int>();
  if (j.contains("prec")) cfg.prec = j["prec"].get<int>();
  if (j.contains("tol")) cfg.tol = j["tol"].get<double>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("workers")) cfg.workers = j["workers"].get<int>();
  if (j.contains("json")) cfg.json_out = j["json"].get<bool>();
}

int validate(const RunConfig& cfg) {
  if (cfg.weight < 3 || cfg.weight > 15) {
    std::cerr << "error: --weight must be in [3,15]\n";
    return 2;
  }
  if (cfg.prec < 10 || cfg.prec > 16) {
    std::cerr << "error: --prec must be in [10,16]\n";
    return 2;
  }
  if (cfg.workers < 1) {
    std::cerr << "error: --workers must be >= 1\n";
    return 2;
  }
  return 0;
}

Cplx parse_complex(const std::string& s) {
  // forms: "0.3", "0.3+0.4i", "-0.2-0.3i", "0.4i", "1e-3+2e-4i"
  std::string t = s;
  if (t.empty()) throw CLI::ValidationError("z", "empty complex literal");
  // the real/imaginary split is the last sign that is not an exponent sign
  auto split_pos = [&](const std::string& u) -> size_t {
    for (size_t p = u.size(); p-- > 1;)
      if ((u[p] == '+' || u[p] == '-') && u[p - 1] != 'e' && u[p - 1] != 'E') return p;
    return std::string::npos;
  };
  if (t.back() == 'i') {
    t.pop_back();
    size_t split = split_pos(t);
    if (split == std::string::npos) {
      if (t.empty() || t == "+") return Cplx(0, 1);
      if (t == "-") return Cplx(0, -1);
      return Cplx(0, strtold(t.c_str(), nullptr));
    }
    std::string re = t.substr(0, split);
    std::string im = t.substr(split);
    if (im == "+") im = "1";
    if (im == "-") im = "-1";
    return Cplx(strtold(re.c_str(), nullptr), strtold(im.c_str(), nullptr));
  }
  return Cplx(strtold(t.c_str(), nullptr), 0);
}

void print_json(const json& j) { std::cout << j.dump(2) << "\n"; }

int cmd_verify(const RunConfig& cfg, bool perturb) {
  SeriesBundle b = SeriesBundle::build(cfg.weight, perturb);
  auto reports = verify_all(b, cfg.workers);
  bool all_pass = true;
  json arr = json::array();
  for (const auto& r : reports) {
    all_pass = all_pass && r.pass;
    if (cfg.json_out) {
      arr.push_back(to_json(r));
    } else {
      std::printf("%-24s %s  (%.1f ms)\n", r.name.c_str(), r.pass ? "PASS" : "FAIL", r.time_ms);
      if (!r.pass)
        for (const auto& w : r.nonzero_words) std::printf("    nonzero: %s\n", w.c_str());
    }
  }
  if (cfg.json_out) print_json(arr);
  return all_pass ? 0 : 1;
}

int cmd_periods(const RunConfig& cfg, int n_max) {
  if (n_max < 3) {
    std::cerr << "error: --n-max must be >= 3\n";
    return 2;
  }
  if (2 * n_max - 3 > cfg.weight) {
    std::cerr << "error: cutoff too small: period weight " << (2 * n_max - 3) << " exceeds --weight "
              << cfg.weight << "\n";
    return 2;
  }
  SeriesBundle b = SeriesBundle::build(cfg.weight);
  bool all_match = true;
  json arr = json::array();
  for (int n = 3; n <= n_max; ++n) {
    PeriodResult from_s = period_from_S(b, n);
    PeriodResult closed = closed_form(n);
    bool match = (from_s.symbolic == closed.symbolic) && is_single_odd_zeta(from_s.symbolic, n);
    all_match = all_match && match;
    if (cfg.json_out) {
      arr.push_back(period_to_json(from_s, match));
    } else {
      Rational c = from_s.symbolic.is_zero() ? Rational(0) : from_s.symbolic.terms().begin()->second;
      std::printf("n=%d  I = %s * zeta(%d)  =~ %.12Lf  closed-form match: %s\n", n,
                  to_fraction_string(c).c_str(), 2 * n - 3, from_s.numeric_value,
                  match ? "yes" : "NO");
    }
  }
  if (cfg.json_out) print_json(arr);
  return all_match ? 0 : 1;
}

int cmd_eval(const RunConfig& cfg, const std::string& word_str, const std::string& z_str,
             const std::string& mode, const std::string& golden_path, bool update_golden) {
  Word w = Word::parse(word_str);
  Cplx z = parse_complex(z_str);
  Cplx value;
  Real est_error = static_cast<Real>(cfg.tol);
  if (mode == "L") {
    value = eval_L(w, z, static_cast<Real>(cfg.tol));
  } else {
    const int needed = (mode == "f2w") ? 2 * static_cast<int>(w.len) + 2 : static_cast<int>(w.len);
    if (needed > 13) {
      std::cerr << "error: word too long for numeric evaluation (weight " << needed << " > 13)\n";
      return 2;
    }
    SeriesBundle b = SeriesBundle::build(std::max(needed, std::min(cfg.weight, 13)));
    SvEvaluator ev(b);
    if (mode == "F")
      value = ev.eval_F(w, z, SvMode::F, static_cast<Real>(cfg.tol));
    else if (mode == "Fhat")
      value = ev.eval_F(w, z, SvMode::Fhat, static_cast<Real>(cfg.tol));
    else if (mode == "f2w")
      value = ev.eval_f2w(w, z, static_cast<Real>(cfg.tol));
    else {
      std::cerr << "error: --mode must be one of L, F, Fhat, f2w\n";
      return 2;
    }
  }
  json out;
  out["word"] = word_str;
  out["z"] = z_str;
  out["mode"] = mode;
  out["value_re"] = static_cast<double>(value.real());
  out["value_im"] = static_cast<double>(value.imag());
  out["est_error"] = static_cast<double>(est_error);
  if (update_golden && !golden_path.empty()) {
    std::ofstream g(golden_path);
    g << out.dump(2) << "\n";
  } else if (!golden_path.empty()) {
    std::ifstream g(golden_path);
    if (!g) {
      std::cerr << "error: cannot open golden file " << golden_path << "\n";
      return 2;
    }
    json want = json::parse(g);
    double dre = std::abs(want["value_re"].get<double>() - static_cast<double>(value.real()));
    double dim = std::abs(want["value_im"].get<double>() - static_cast<double>(value.imag()));
    out["golden_diff"] = dre + dim;
    if (dre + dim > 1e-11) {
      print_json(out);
      return 1;
    }
  }
  print_json(out);
  return 0;
}

int cmd_transport(const RunConfig& cfg, const std::string& from_str, int loop, double radius,
                  const std::string& word_str, const std::string& mode_str) {
  Cplx z0 = parse_complex(from_str);
  Word w = Word::parse(word_str);
  SvMode mode = (mode_str == "Fhat") ? SvMode::Fhat : SvMode::F;
  if (loop != 0 && loop != 1) {
    std::cerr << "error: --loop must be 0 or 1\n";
    return 2;
  }
  Cplx center((Real)loop);
  if (radius <= 0) {
    std::cerr << "error: --radius must be positive\n";
    return 2;
  }
  SeriesBundle b = SeriesBundle::build(std::max<int>(5, (int)w.len));
  SvEvaluator ev(b);

  const int W = std::max<int>(static_cast<int>(w.len), 2);
  Transporter hol = make_transporter(W, z0, 1e-15L);
  Transporter anti = make_transporter(W, std::conj(z0), 1e-15L);
  // walk out to the requested circle, loop once, walk back
  Cplx dir = (z0 - center) / std::abs(z0 - center);
  Cplx start = center + dir * static_cast<Real>(radius);
  std::vector<Cplx> path{z0};
  if (std::abs(start - z0) > 1e-18L) path.push_back(start);
  auto circle = loop_path(center, start);
  path.insert(path.end(), circle.begin() + 1, circle.end());
  if (std::abs(start - z0) > 1e-18L) path.push_back(z0);

  auto before = ev.eval_from(w, mode, [&](const Word& u) { return hol.value(u); },
                             [&](const Word& u) { return anti.value(u); });
  Transporter hol2 = kz_transport(hol, path, 1e-15L);
  Transporter anti2 = kz_transport(anti, conjugate_path(path), 1e-15L);
  auto after = ev.eval_from(w, mode, [&](const Word& u) { return hol2.value(u); },
                            [&](const Word& u) { return anti2.value(u); });
  Real defect = std::abs(after - before) / std::max<Real>(1.0L, std::abs(before));

  json out;
  out["word"] = word_str;
  out["mode"] = (mode == SvMode::F) ? "F" : "Fhat";
  out["loop"] = loop;
  out["radius"] = radius;
  out["value_re"] = static_cast<double>(before.real());
  out["value_im"] = static_cast<double>(before.imag());
  out["defect"] = static_cast<double>(defect);
  out["est_error"] = static_cast<double>(hol2.est_error + anti2.est_error);
  bool pass = defect < static_cast<Real>(cfg.tol);
  out["pass"] = pass;
  print_json(out);
  return pass ? 0 : 1;
}

int cmd_mc(const RunConfig& cfg, int n, std::uint64_t samples, const std::string& graph_path,
           const std::string& dump_graph) {
  Graph g;
  if (!graph_path.empty()) {
    std::ifstream in(graph_path);
    if (!in) {
      std::cerr << "error: cannot open graph file " << graph_path << "\n";
      return 2;
    }
    g = graph_from_json(json::parse(in));
  } else {
    if (n < 3) {
      std::cerr << "error: --n must be >= 3 (or pass --graph)\n";
      return 2;
    }
    g = zigzag_graph(n);
  }
  if (!dump_graph.empty()) {
    std::ofstream out(dump_graph);
    out << to_json(g).dump(2) << "\n";
  }
  McResult r = mc_period(g, samples, cfg.seed, cfg.workers);
  json out = to_json(r);
  if (graph_path.empty()) {
    out["n"] = n;
    PeriodResult closed = closed_form(n);
    out["closed_form"] = static_cast<double>(closed.numeric_value);
    out["sigmas"] =
        static_cast<double>(std::abs(r.estimate - closed.numeric_value) / r.std_error);
  }
  if (cfg.json_out) {
    print_json(out);
  } else {
    std::printf("estimate = %.7Lf  +/- %.7Lf  (samples=%llu seed=%llu)\n", r.estimate, r.std_error,
                static_cast<unsigned long long>(r.samples), static_cast<unsigned long long>(r.seed));
    if (out.contains("closed_form"))
      std::printf("closed form = %.7f  (%.2f sigma)\n", out["closed_form"].get<double>(),
                  out["sigmas"].get<double>());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    load_env_config(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"single-valued polylogarithm engine and zig-zag period calculator"};
  app.require_subcommand(1);
  app.add_option("--weight", cfg.weight, "series weight cutoff");
  app.add_option("--prec", cfg.prec, "numeric precision (decimal digits)");
  app.add_option("--tol", cfg.tol, "numeric tolerance");
  app.add_option("--seed", cfg.seed, "RNG seed");
  app.add_option("--workers", cfg.workers, "worker threads");
  app.add_flag("--json", cfg.json_out, "emit JSON");

  bool perturb = false;
  auto* verify = app.add_subcommand("verify", "run the identity suite");
  verify->add_flag("--perturb-s", perturb, "test hook: corrupt one coefficient of S");

  int n_max = 8;
  auto* periods = app.add_subcommand("periods", "extract periods and compare to the closed form");
  periods->add_option("--n-max", n_max, "largest loop order");

  std::string word_str = "01", z_str = "0.3+0.4i", mode = "F", golden_path;
  bool update_golden = false;
  auto* eval = app.add_subcommand("eval", "evaluate L / F / Fhat / f2w at a point");
  eval->add_option("--word", word_str, "word over {0,1}");
  eval->add_option("--z", z_str, "complex point, e.g. 0.3+0.4i");
  eval->add_option("--mode", mode, "L | F | Fhat | f2w");
  eval->add_option("--golden", golden_path, "compare output against a golden file");
  eval->add_flag("--update-golden", update_golden, "rewrite the golden file");

  std::string t_from = "0.5+0.05i", t_mode = "F", t_word = "01";
  int t_loop = 0;
  double t_radius = 0.5;
  auto* transport = app.add_subcommand("transport", "loop transport and single-valuedness defect");
  transport->add_option("--from", t_from, "base point");
  transport->add_option("--loop", t_loop, "loop around 0 or 1");
  transport->add_option("--radius", t_radius, "loop radius");
  transport->add_option("--word", t_word, "word over {0,1}");
  transport->add_option("--mode", t_mode, "F | Fhat");

  int mc_n = 3;
  std::uint64_t mc_samples = 2000000;
  std::string graph_path, dump_graph;
  auto* mc = app.add_subcommand("mc", "Monte-Carlo estimate of the parametric integral");
  mc->add_option("--n", mc_n, "zig-zag loop order");
  mc->add_option("--samples", mc_samples, "sample count");
  mc->add_option("--graph", graph_path, "JSON edge-list graph to integrate instead");
  mc->add_option("--dump-graph", dump_graph, "write the graph as a JSON edge list");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (int rc = validate(cfg)) return rc;

  try {
    if (verify->parsed()) return cmd_verify(cfg, perturb);
    if (periods->parsed()) return cmd_periods(cfg, n_max);
    if (eval->parsed()) return cmd_eval(cfg, word_str, z_str, mode, golden_path, update_golden);
    if (transport->parsed()) return cmd_transport(cfg, t_from, t_loop, t_radius, t_word, t_mode);
    if (mc->parsed()) return cmd_mc(cfg, mc_n, mc_samples, graph_path, dump_graph);
  } catch (const CutoffTooSmall& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
