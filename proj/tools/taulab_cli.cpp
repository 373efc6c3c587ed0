// Command-line front end: per-module drivers emitting CSV curves with JSON
// run manifests, plus the acceptance-check runner.
//
// Exit codes: 0 ok, 1 check failure, 2 usage/parameter error, 3 numerical
// error (non-finite output, singular solve, evaluation outside a safe
// domain).

#include "CLI11.hpp"
#include "json.hpp"

#include "taulab/cauchydet.hpp"
#include "taulab/checks.hpp"
#include "taulab/expsymbol.hpp"
#include "taulab/hardedge.hpp"
#include "taulab/hypergeom.hpp"
#include "taulab/lame.hpp"
#include "taulab/linsys.hpp"
#include "taulab/numkit.hpp"
#include "taulab/pvi.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using json = nlohmann::json;
using taulab::cplx;

constexpr const char* kVersion = "taulab 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse '" + s + "' as a number in " + what);
  }
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
  std::vector<double> out;
  if (s.empty()) return out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_double(tok, what));
  return out;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (double v : parse_list(s, what)) {
    if (v != std::floor(v) || v < 1)
      throw UsageError(what + " entries must be positive integers");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// start:stop:step, endpoints inclusive (within step rounding).
std::vector<double> parse_grid(const std::string& s) {
  const auto parts = split(s, ':');
  if (parts.size() != 3)
    throw UsageError("grid must look like start:stop:step, got '" + s + "'");
  const double start = parse_double(parts[0], "grid");
  const double stop = parse_double(parts[1], "grid");
  const double step = parse_double(parts[2], "grid");
  if (step <= 0.0) throw UsageError("grid step must be positive");
  if (stop < start) throw UsageError("grid stop must be >= start");
  std::vector<double> ts;
  for (int i = 0;; ++i) {
    const double t = start + step * i;
    if (t > stop + 1e-9 * step) break;
    ts.push_back(t);
  }
  return ts;
}

std::string num17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// Writes the CSV (stdout when path is empty) and the JSON manifest with the
// same basename.  Any non-finite value is a release-blocking failure.
void emit(const Table& table, const std::string& out, json manifest,
          double wall_seconds) {
  for (const auto& row : table.rows)
    for (double v : row)
      if (!std::isfinite(v))
        throw NumericalError("non-finite value in output table");

  std::ostringstream csv;
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    csv << (c ? "," : "") << table.columns[c];
  csv << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      csv << (c ? "," : "") << num17(row[c]);
    csv << "\n";
  }

  if (out.empty()) {
    std::cout << csv.str();
    return;
  }
  std::ofstream f(out);
  if (!f) throw UsageError("cannot open output file '" + out + "'");
  f << csv.str();

  manifest["columns"] = table.columns;
  manifest["rows"] = table.rows.size();
  manifest["version"] = kVersion;
  manifest["wall_seconds"] = wall_seconds;
  std::string base = out;
  const auto dot = base.find_last_of('.');
  if (dot != std::string::npos && base.find('/', dot) == std::string::npos)
    base.resize(dot);
  std::ofstream m(base + ".json");
  if (!m) throw UsageError("cannot open manifest file '" + base + ".json'");
  m << manifest.dump(2) << "\n";
}

// Runs a named check suite, printing one verdict line per check; returns
// the process exit code and appends results to the manifest.
int run_checks(const std::string& suite, std::uint64_t seed, double tol,
               json* verdict) {
  taulab::checks::CheckOptions opts;
  opts.seed = seed;
  opts.tol_floor = tol;
  const auto results = taulab::checks::run_suite(suite, opts);
  bool all = true;
  double total = 0.0;
  json arr = json::array();
  for (const auto& r : results) {
    all = all && r.passed;
    total += r.seconds;
    std::fprintf(stderr, "[%s] %-28s worst %.3e vs tol %.1e (%.2fs) %s\n",
                 r.passed ? "PASS" : "FAIL", r.name.c_str(), r.worst,
                 r.tolerance, r.seconds, r.detail.c_str());
    arr.push_back({{"name", r.name},
                   {"suite", r.suite},
                   {"passed", r.passed},
                   {"worst", r.worst},
                   {"tolerance", r.tolerance},
                   {"seconds", r.seconds},
                   {"detail", r.detail}});
  }
  if (verdict) {
    (*verdict)["checks"] = arr;
    (*verdict)["passed"] = all;
    (*verdict)["total_seconds"] = total;
  }
  return all ? kExitOk : kExitCheckFailure;
}

// --config support: the file is a flat JSON object of long-option keys;
// its entries are turned into tokens inserted right after the subcommand,
// so explicit command-line flags (parsed last) win.
std::vector<std::string> config_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open config file '" + path + "'");
  json cfg;
  try {
    f >> cfg;
  } catch (const json::exception& e) {
    throw UsageError("config file '" + path + "': " + e.what());
  }
  if (!cfg.is_object()) throw UsageError("config file must hold a flat JSON object");
  std::vector<std::string> tokens;
  for (const auto& [key, value] : cfg.items()) {
    if (value.is_boolean()) {
      if (value.get<bool>()) tokens.push_back("--" + key);
    } else if (value.is_string()) {
      tokens.push_back("--" + key);
      tokens.push_back(value.get<std::string>());
    } else if (value.is_number() || value.is_array()) {
      tokens.push_back("--" + key);
      std::string v = value.dump();
      if (value.is_array()) {  // [4,8,16] -> 4,8,16
        v.erase(std::remove_if(v.begin(), v.end(),
                               [](char c) { return c == '[' || c == ']'; }),
                v.end());
      }
      tokens.push_back(v);
    } else {
      throw UsageError("config key '" + key + "' has an unsupported type");
    }
  }
  return tokens;
}

json base_manifest(const std::string& subcommand,
                   const std::vector<std::string>& argv_copy) {
  json m;
  m["subcommand"] = subcommand;
  m["command"] = argv_copy;
  m["threads"] = taulab::numkit::thread_budget();
  return m;
}

struct CommonOpts {
  std::string out;
  std::string config;
  bool check = false;
  std::uint64_t seed = 2026;
  double tol = 0.0;
};

void add_common(CLI::App* sub, CommonOpts* c, bool with_check = true) {
  sub->add_option("--out", c->out,
                  "CSV output path (stdout if omitted); the JSON manifest "
                  "shares the basename");
  sub->add_option("--config", c->config,
                  "flat JSON file of option defaults; explicit flags win");
  sub->add_option("--seed", c->seed, "seed for randomized checks");
  sub->add_option("--tol", c->tol,
                  "raise every check gate to at least this value");
  if (with_check)
    sub->add_flag("--check", c->check,
                  "also run this module's acceptance checks");
}

int finish_module(const std::string& suite, const CommonOpts& c,
                  json* manifest) {
  if (!c.check) return kExitOk;
  return run_checks(suite, c.seed, c.tol, manifest);
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> raw(argv + 1, argv + argc);

  // splice config tokens in after the subcommand name
  for (std::size_t i = 0; i + 1 < raw.size(); ++i) {
    if (raw[i] == "--config") {
      try {
        const auto extra = config_tokens(raw[i + 1]);
        raw.insert(raw.begin() + 1, extra.begin(), extra.end());
      } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
      }
      break;
    }
  }

  CLI::App app{"tau-function laboratory: linear-system realizations, Hankel "
               "determinants, and their degenerations"};
  // config files feed defaults by prepending tokens; the explicit
  // command-line occurrence must win
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed = [&t0] {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  int rc = kExitOk;

  // ---- exp ------------------------------------------------------------
  auto* exp_cmd = app.add_subcommand(
      "exp", "tau curve of an exponential-sum symbol (columns t,tau,sigma)");
  struct {
    std::string lambda, xi, grid = "0:3:0.1";
    CommonOpts c;
  } exp_o;
  exp_cmd->add_option("--lambda", exp_o.lambda,
                      "comma-separated decay rates (empty symbol if omitted)");
  exp_cmd->add_option("--xi", exp_o.xi, "comma-separated coefficients");
  exp_cmd->add_option("--grid", exp_o.grid, "t grid start:stop:step");
  add_common(exp_cmd, &exp_o.c);
  exp_cmd->callback([&] {
    const auto ts = parse_grid(exp_o.grid);
    const auto lambdas = parse_list(exp_o.lambda, "--lambda");
    const auto xis = parse_list(exp_o.xi, "--xi");
    if (lambdas.size() != xis.size())
      throw UsageError("--lambda and --xi must have the same length");
    Table table;
    table.columns = {"t", "tau", "sigma"};
    json manifest = base_manifest("exp", raw);
    manifest["lambda"] = lambdas;
    manifest["xi"] = xis;
    manifest["grid"] = exp_o.grid;
    if (lambdas.empty()) {
      for (double t : ts) table.rows.push_back({t, 1.0, 0.0});
    } else {
      std::vector<cplx> cl(lambdas.begin(), lambdas.end());
      std::vector<cplx> cx(xis.begin(), xis.end());
      const auto sys = taulab::expsymbol::to_realization(
          taulab::expsymbol::make_scalar_symbol(cl, cx));
      const auto curve = taulab::linsys::tau_curve(sys, ts, true);
      for (std::size_t i = 0; i < ts.size(); ++i)
        table.rows.push_back(
            {ts[i], curve.taus[i].real(), curve.sigmas[i].real()});
    }
    const int check_rc = finish_module("exp", exp_o.c, &manifest);
    emit(table, exp_o.c.out, std::move(manifest), elapsed());
    rc = check_rc;
  });

  // ---- bessel ---------------------------------------------------------
  auto* bessel_cmd = app.add_subcommand(
      "bessel", "hard-edge tau curve (columns t,tau,sigma)");
  struct {
    double nu = 0.0;
    int truncation = 30, weight_cap = 10, hill_n = 30;
    std::string grid = "0.5:3:0.1";
    CommonOpts c;
  } bes_o;
  bessel_cmd->add_option("--nu", bes_o.nu, "Bessel order (> -1)");
  bessel_cmd->add_option("--truncation", bes_o.truncation,
                         "exponential terms kept in the symbol");
  bessel_cmd->add_option("--weight-cap", bes_o.weight_cap,
                         "partition-series weight cutoff (checks)");
  bessel_cmd->add_option("--hill-n", bes_o.hill_n, "Hill section size");
  bessel_cmd->add_option("--grid", bes_o.grid, "t grid start:stop:step");
  add_common(bessel_cmd, &bes_o.c);
  bessel_cmd->callback([&] {
    const auto ts = parse_grid(bes_o.grid);
    const taulab::hardedge::BesselParams p{bes_o.nu, bes_o.truncation,
                                           bes_o.weight_cap};
    p.validate();
    Table table;
    table.columns = {"t", "tau", "sigma"};
    for (double t : ts) {
      const double tau = taulab::hardedge::hill_det(p, t, bes_o.hill_n);
      const double sigma = taulab::numkit::log_derivative(
          [&](double u) { return taulab::hardedge::hill_det(p, u, bes_o.hill_n); },
          t, 1e-4);
      table.rows.push_back({t, tau, sigma});
    }
    json manifest = base_manifest("bessel", raw);
    manifest["nu"] = bes_o.nu;
    manifest["truncation"] = bes_o.truncation;
    manifest["weight_cap"] = bes_o.weight_cap;
    manifest["hill_n"] = bes_o.hill_n;
    manifest["grid"] = bes_o.grid;
    const int check_rc = finish_module("bessel", bes_o.c, &manifest);
    emit(table, bes_o.c.out, std::move(manifest), elapsed());
    rc = check_rc;
  });

  // ---- lame -----------------------------------------------------------
  auto* lame_cmd = app.add_subcommand(
      "lame", "elliptic tau curve; complex columns "
              "t,tau_re,tau_im,sigma_re,sigma_im");
  struct {
    double k2 = 0.36, alpha_re = 1.5, alpha_im = 0.0, t0_im = 0.5;
    int truncation = 24;
    std::string grid = "0:2:0.25";
    CommonOpts c;
  } lame_o;
  lame_cmd->add_option("--k2", lame_o.k2, "squared modulus in (0,1)");
  lame_cmd->add_option("--alpha-re", lame_o.alpha_re,
                       "Re(alpha) in units of K");
  lame_cmd->add_option("--alpha-im", lame_o.alpha_im,
                       "Im(alpha) in units of K'");
  lame_cmd->add_option("--t0-im", lame_o.t0_im,
                       "Im(t0) in units of K' (base-point height)");
  lame_cmd->add_option("--truncation", lame_o.truncation,
                       "starting Fourier truncation (auto-doubled)");
  lame_cmd->add_option("--grid", lame_o.grid, "t grid start:stop:step");
  add_common(lame_cmd, &lame_o.c);
  lame_cmd->callback([&] {
    if (!(lame_o.k2 > 0.0) || !(lame_o.k2 < 1.0))
      throw UsageError("--k2 must lie in (0,1)");
    const auto ts = parse_grid(lame_o.grid);
    const auto p = taulab::lame::make_elliptic(std::sqrt(lame_o.k2));
    const cplx alpha(lame_o.alpha_re * p.K, lame_o.alpha_im * p.Kp);
    const auto sym = taulab::lame::make_symbol(
        p, alpha, cplx(0.0, lame_o.t0_im * p.Kp), lame_o.truncation);
    const auto res = taulab::lame::tau_lame(sym, ts);
    Table table;
    table.columns = {"t", "tau_re", "tau_im", "sigma_re", "sigma_im"};
    for (std::size_t i = 0; i < ts.size(); ++i)
      table.rows.push_back({ts[i], res.curve.taus[i].real(),
                            res.curve.taus[i].imag(),
                            res.curve.sigmas[i].real(),
                            res.curve.sigmas[i].imag()});
    json manifest = base_manifest("lame", raw);
    manifest["k2"] = lame_o.k2;
    manifest["K"] = p.K;
    manifest["Kp"] = p.Kp;
    manifest["e1"] = p.e1;
    manifest["e2"] = p.e2;
    manifest["e3"] = p.e3;
    manifest["g2"] = p.g2;
    manifest["g3"] = p.g3;
    manifest["alpha_re"] = alpha.real();
    manifest["alpha_im"] = alpha.imag();
    manifest["t0_im"] = lame_o.t0_im * p.Kp;
    manifest["beta_re"] = sym.beta.real();
    manifest["beta_im"] = sym.beta.imag();
    manifest["truncation_requested"] = lame_o.truncation;
    manifest["truncation_used"] = res.truncation;
    manifest["grid"] = lame_o.grid;
    const int check_rc = finish_module("lame", lame_o.c, &manifest);
    emit(table, lame_o.c.out, std::move(manifest), elapsed());
    rc = check_rc;
  });

  // ---- cauchy ---------------------------------------------------------
  auto* cauchy_cmd = app.add_subcommand(
      "cauchy", "determinant growth table (columns N,root,gap)");
  struct {
    double beta_re = 1.0, beta_im = 0.0, K = 1.0;
    std::string Ns = "4,8,16,32";
    CommonOpts c;
  } cau_o;
  cauchy_cmd->add_option("--beta-re", cau_o.beta_re, "Re beta (> 0)");
  cauchy_cmd->add_option("--beta-im", cau_o.beta_im, "Im beta");
  cauchy_cmd->add_option("--K", cau_o.K, "half-period scale (> 0)");
  cauchy_cmd->add_option("--N", cau_o.Ns, "comma-separated section sizes");
  add_common(cauchy_cmd, &cau_o.c);
  cauchy_cmd->callback([&] {
    const auto Ns = parse_int_list(cau_o.Ns, "--N");
    if (Ns.empty()) throw UsageError("--N must name at least one size");
    const auto rep = taulab::cauchydet::growth_check(
        cplx(cau_o.beta_re, cau_o.beta_im), cau_o.K, Ns);
    Table table;
    table.columns = {"N", "root", "gap"};
    for (std::size_t i = 0; i < rep.Ns.size(); ++i)
      table.rows.push_back(
          {static_cast<double>(rep.Ns[i]), rep.roots[i], rep.gaps[i]});
    json manifest = base_manifest("cauchy", raw);
    manifest["beta_re"] = cau_o.beta_re;
    manifest["beta_im"] = cau_o.beta_im;
    manifest["K"] = cau_o.K;
    manifest["limit"] = rep.limit;
    manifest["fitted_C"] = rep.fitted_C;
    manifest["monotone"] = rep.monotone;
    const int check_rc = finish_module("cauchy", cau_o.c, &manifest);
    emit(table, cau_o.c.out, std::move(manifest), elapsed());
    rc = check_rc;
  });

  // ---- pvi ------------------------------------------------------------
  auto* pvi_cmd = app.add_subcommand(
      "pvi", "isomonodromy kernel diagonal (columns lambda,kdiag)");
  struct {
    double theta0 = 0.31, theta1 = -0.22, thetat = 0.47, theta_inf = 2.6;
    double t = 0.3, z0 = 0.4, z1 = -0.35, u0 = 1.2;
    int order = 180;
    std::string grid = "1.3:4.3:0.25";
    CommonOpts c;
  } pvi_o;
  pvi_cmd->add_option("--theta0", pvi_o.theta0, "local exponent at 0");
  pvi_cmd->add_option("--theta1", pvi_o.theta1, "local exponent at 1");
  pvi_cmd->add_option("--thetat", pvi_o.thetat, "local exponent at t");
  pvi_cmd->add_option("--theta-inf", pvi_o.theta_inf, "exponent at infinity");
  pvi_cmd->add_option("--t", pvi_o.t, "deformation parameter");
  pvi_cmd->add_option("--z0", pvi_o.z0, "free residue parameter z0");
  pvi_cmd->add_option("--z1", pvi_o.z1, "free residue parameter z1");
  pvi_cmd->add_option("--u0", pvi_o.u0, "free residue parameter u0");
  pvi_cmd->add_option("--order", pvi_o.order, "series truncation order");
  pvi_cmd->add_option("--grid", pvi_o.grid, "lambda grid start:stop:step");
  add_common(pvi_cmd, &pvi_o.c);
  pvi_cmd->callback([&] {
    const auto lams = parse_grid(pvi_o.grid);
    const auto p = taulab::pvi::consistent_params(
        pvi_o.theta0, pvi_o.theta1, pvi_o.thetat, pvi_o.theta_inf, pvi_o.t,
        pvi_o.z0, pvi_o.z1, pvi_o.u0);
    const auto series = taulab::pvi::laurent_series(p, pvi_o.order);
    Table table;
    table.columns = {"lambda", "kdiag"};
    try {
      for (double lam : lams)
        table.rows.push_back(
            {lam, taulab::pvi::kernel_k(series, cplx(lam, 0.0), cplx(lam, 0.0))
                      .real()});
    } catch (const std::domain_error& e) {
      throw NumericalError(std::string("kernel evaluation failed: ") +
                           e.what());
    }
    json manifest = base_manifest("pvi", raw);
    manifest["theta"] = {pvi_o.theta0, pvi_o.theta1, pvi_o.thetat,
                         pvi_o.theta_inf};
    manifest["t"] = p.t;
    manifest["z"] = {p.z0, p.z1, p.zt};
    manifest["u"] = {p.u0, p.u1, p.ut};
    manifest["order"] = pvi_o.order;
    manifest["radius_est"] = series.radius_est;
    manifest["grid"] = pvi_o.grid;
    const int check_rc = finish_module("pvi", pvi_o.c, &manifest);
    emit(table, pvi_o.c.out, std::move(manifest), elapsed());
    rc = check_rc;
  });

  // ---- hypergeom --------------------------------------------------------
  auto* hg_cmd = app.add_subcommand(
      "hypergeom", "kernel determinant across grid refinements (columns "
                   "panels,det,ev_min,ev_max,nodes)");
  struct {
    double a = 1.2, b = -1.2, cpar = 0.48;
    double lam_start = 800.0, lam_end = 1.05, delta = 0.1, L = 400.0;
    int per_panel = 16;
    std::string panels = "20,40,80";
    CommonOpts c;
  } hg_o;
  hg_cmd->add_option("--a", hg_o.a, "parameter a (a + b = 0)");
  hg_cmd->add_option("--b", hg_o.b, "parameter b (a + b = 0)");
  hg_cmd->add_option("--c", hg_o.cpar, "parameter c in [0,1]");
  hg_cmd->add_option("--lam-start", hg_o.lam_start, "integration start");
  hg_cmd->add_option("--lam-end", hg_o.lam_end, "integration end (> 1)");
  hg_cmd->add_option("--delta", hg_o.delta, "domain offset above 1");
  hg_cmd->add_option("--L", hg_o.L, "domain truncation");
  hg_cmd->add_option("--per-panel", hg_o.per_panel, "nodes per panel");
  hg_cmd->add_option("--panels", hg_o.panels, "comma-separated panel counts");
  add_common(hg_cmd, &hg_o.c);
  hg_cmd->callback([&] {
    const auto panel_counts = parse_int_list(hg_o.panels, "--panels");
    if (panel_counts.empty())
      throw UsageError("--panels must name at least one count");
    const taulab::hypergeom::HgParams p{hg_o.a, hg_o.b, hg_o.cpar};
    p.validate();
    const auto sol =
        taulab::hypergeom::integrate_system(p, hg_o.lam_start, hg_o.lam_end);
    Table table;
    table.columns = {"panels", "det", "ev_min", "ev_max", "nodes"};
    for (int n : panel_counts) {
      const auto d = taulab::hypergeom::fredholm_det(sol, hg_o.delta, hg_o.L,
                                                     hg_o.per_panel, n);
      table.rows.push_back({static_cast<double>(n), d.det, d.ev_min, d.ev_max,
                            static_cast<double>(d.nodes)});
    }
    json manifest = base_manifest("hypergeom", raw);
    manifest["a"] = hg_o.a;
    manifest["b"] = hg_o.b;
    manifest["c"] = hg_o.cpar;
    manifest["lam_start"] = hg_o.lam_start;
    manifest["lam_end"] = hg_o.lam_end;
    manifest["delta"] = hg_o.delta;
    manifest["L"] = hg_o.L;
    manifest["per_panel"] = hg_o.per_panel;
    manifest["samples"] = sol.nodes.size();
    const int check_rc = finish_module("hypergeom", hg_o.c, &manifest);
    emit(table, hg_o.c.out, std::move(manifest), elapsed());
    rc = check_rc;
  });

  // ---- check ------------------------------------------------------------
  auto* check_cmd =
      app.add_subcommand("check", "run acceptance checks; JSON verdict on "
                                  "stdout, one report line per check on "
                                  "stderr");
  struct {
    std::string suite = "all";
    std::string out;
    std::string config;
    std::uint64_t seed = 2026;
    double tol = 0.0;
  } chk_o;
  check_cmd->add_option("--suite", chk_o.suite,
                        "all, exp, bessel, lame, cauchy, pvi or hypergeom");
  check_cmd->add_option("--seed", chk_o.seed, "seed for randomized corpora");
  check_cmd->add_option("--tol", chk_o.tol,
                        "raise every gate to at least this value");
  check_cmd->add_option("--out", chk_o.out, "write the JSON verdict here");
  check_cmd->add_option("--config", chk_o.config,
                        "flat JSON file of option defaults");
  check_cmd->callback([&] {
    json verdict;
    verdict["suite"] = chk_o.suite;
    verdict["seed"] = chk_o.seed;
    verdict["tol_floor"] = chk_o.tol;
    verdict["version"] = kVersion;
    rc = run_checks(chk_o.suite, chk_o.seed, chk_o.tol, &verdict);
    verdict["wall_seconds"] = elapsed();
    if (chk_o.suite == "all" && elapsed() > 300.0) {
      verdict["passed"] = false;
      std::fprintf(stderr, "[FAIL] runtime budget: %.1fs > 300s\n", elapsed());
      if (rc == kExitOk) rc = kExitCheckFailure;
    }
    if (chk_o.out.empty()) {
      std::cout << verdict.dump(2) << "\n";
    } else {
      std::ofstream f(chk_o.out);
      if (!f) throw UsageError("cannot open output file '" + chk_o.out + "'");
      f << verdict.dump(2) << "\n";
    }
  });

  try {
    app.parse(std::vector<std::string>(raw.rbegin(), raw.rend()));
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const taulab::near_singular_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return rc;
}
