#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "taulab/cauchydet.hpp"
#include "taulab/checks.hpp"
#include "taulab/expsymbol.hpp"
#include "taulab/hardedge.hpp"
#include "taulab/hypergeom.hpp"
#include "taulab/lame.hpp"
#include "taulab/linsys.hpp"
#include "taulab/numkit.hpp"
#include "taulab/pvi.hpp"

#include <complex>
#include <vector>

namespace py = pybind11;
using taulab::cplx;

namespace {

py::dict curve_to_dict(const taulab::linsys::TauCurve& curve) {
  py::dict d;
  d["ts"] = curve.ts;
  d["taus"] = curve.taus;
  d["sigmas"] = curve.sigmas;
  return d;
}

py::dict tau_exp(const std::vector<cplx>& lambdas, const std::vector<cplx>& xis,
                 const std::vector<double>& ts) {
  if (lambdas.empty() && xis.empty()) {
    taulab::linsys::TauCurve curve;
    curve.ts = ts;
    curve.taus.assign(ts.size(), cplx(1.0, 0.0));
    curve.sigmas.assign(ts.size(), cplx(0.0, 0.0));
    return curve_to_dict(curve);
  }
  const auto sys = taulab::expsymbol::to_realization(
      taulab::expsymbol::make_scalar_symbol(lambdas, xis));
  return curve_to_dict(taulab::linsys::tau_curve(sys, ts, true));
}

std::vector<double> tau_bessel(double nu, const std::vector<double>& ts,
                               int truncation, int hill_n) {
  const taulab::hardedge::BesselParams p{nu, truncation, 10};
  p.validate();
  std::vector<double> taus;
  taus.reserve(ts.size());
  for (double t : ts) taus.push_back(taulab::hardedge::hill_det(p, t, hill_n));
  return taus;
}

py::dict tau_lame(double k2, const std::vector<double>& ts, double alpha_re,
                  double alpha_im, double t0_im, int truncation) {
  if (!(k2 > 0.0) || !(k2 < 1.0))
    throw std::invalid_argument("k2 must lie in (0,1)");
  const auto p = taulab::lame::make_elliptic(std::sqrt(k2));
  const cplx alpha(alpha_re * p.K, alpha_im * p.Kp);
  const auto sym =
      taulab::lame::make_symbol(p, alpha, cplx(0.0, t0_im * p.Kp), truncation);
  const auto res = taulab::lame::tau_lame(sym, ts);
  py::dict d = curve_to_dict(res.curve);
  d["truncation"] = res.truncation;
  d["beta"] = sym.beta;
  d["K"] = p.K;
  d["Kp"] = p.Kp;
  d["e"] = py::make_tuple(p.e1, p.e2, p.e3);
  return d;
}

py::dict cauchy_growth(cplx beta, double K, const std::vector<int>& Ns) {
  const auto rep = taulab::cauchydet::growth_check(beta, K, Ns);
  py::dict d;
  d["Ns"] = rep.Ns;
  d["roots"] = rep.roots;
  d["gaps"] = rep.gaps;
  d["limit"] = rep.limit;
  d["fitted_C"] = rep.fitted_C;
  d["monotone"] = rep.monotone;
  return d;
}

double cauchy_determinant(cplx beta, double K, int N) {
  const taulab::cauchydet::ProgressionSpec spec{beta, K, N};
  return taulab::cauchydet::cauchy_det(spec.lambdas());
}

std::vector<double> pvi_kernel(double theta0, double theta1, double thetat,
                               double theta_inf, double t, double z0, double z1,
                               double u0, const std::vector<double>& lams,
                               int order) {
  const auto p = taulab::pvi::consistent_params(theta0, theta1, thetat,
                                                theta_inf, t, z0, z1, u0);
  const auto series = taulab::pvi::laurent_series(p, order);
  std::vector<double> out;
  out.reserve(lams.size());
  for (double lam : lams)
    out.push_back(
        taulab::pvi::kernel_k(series, cplx(lam, 0.0), cplx(lam, 0.0)).real());
  return out;
}

py::dict hypergeom_det(double a, double b, double c, double lam_start,
                       double lam_end, double delta, double L, int per_panel,
                       int panels) {
  const taulab::hypergeom::HgParams p{a, b, c};
  p.validate();
  const auto sol = taulab::hypergeom::integrate_system(p, lam_start, lam_end);
  const auto d = taulab::hypergeom::fredholm_det(sol, delta, L, per_panel, panels);
  py::dict out;
  out["det"] = d.det;
  out["ev_min"] = d.ev_min;
  out["ev_max"] = d.ev_max;
  out["nodes"] = d.nodes;
  return out;
}

py::list run_checks(const std::string& suite, std::uint64_t seed, double tol) {
  taulab::checks::CheckOptions opts;
  opts.seed = seed;
  opts.tol_floor = tol;
  py::list out;
  for (const auto& r : taulab::checks::run_suite(suite, opts)) {
    py::dict d;
    d["name"] = r.name;
    d["suite"] = r.suite;
    d["passed"] = r.passed;
    d["worst"] = r.worst;
    d["tolerance"] = r.tolerance;
    d["seconds"] = r.seconds;
    d["detail"] = r.detail;
    out.append(d);
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_taulab, m) {
  m.doc() = "tau functions from linear-system realizations: exponential-sum "
            "symbols, hard-edge and elliptic degenerations, isomonodromy "
            "kernels, and their determinant identities";

  m.def("tau_exp", &tau_exp, py::arg("lambdas"), py::arg("xis"), py::arg("ts"),
        "Tau curve (with log-derivatives) of an exponential-sum symbol; empty "
        "lists give the constant curve 1.");
  m.def("tau_bessel", &tau_bessel, py::arg("nu"), py::arg("ts"),
        py::arg("truncation") = 30, py::arg("hill_n") = 30,
        "Hard-edge tau values via the Hill-type section determinant.");
  m.def("tau_lame", &tau_lame, py::arg("k2"), py::arg("ts"),
        py::arg("alpha_re") = 1.5, py::arg("alpha_im") = 0.0,
        py::arg("t0_im") = 0.5, py::arg("truncation") = 24,
        "Elliptic tau curve; alpha_re in units of K, alpha_im and t0_im in "
        "units of K'.  Returns the curve plus the chosen truncation and the "
        "lattice data.");
  m.def("cauchy_growth", &cauchy_growth, py::arg("beta"), py::arg("K"),
        py::arg("Ns"),
        "Growth table of the progression determinants D_N^{1/N} with the "
        "K/sinh(Re beta) limit.");
  m.def("cauchy_det", &cauchy_determinant, py::arg("beta"), py::arg("K"),
        py::arg("N"), "Closed-form progression determinant D_N.");
  m.def("pvi_kernel", &pvi_kernel, py::arg("theta0"), py::arg("theta1"),
        py::arg("thetat"), py::arg("theta_inf"), py::arg("t"), py::arg("z0"),
        py::arg("z1"), py::arg("u0"), py::arg("lams"), py::arg("order") = 180,
        "Diagonal of the isomonodromy kernel K(lambda,lambda) on real points "
        "outside the divergence radius.");
  m.def("hypergeom_det", &hypergeom_det, py::arg("a"), py::arg("b"),
        py::arg("c"), py::arg("lam_start") = 800.0, py::arg("lam_end") = 1.05,
        py::arg("delta") = 0.1, py::arg("L") = 400.0, py::arg("per_panel") = 16,
        py::arg("panels") = 40,
        "Fredholm determinant of the degenerate-hypergeometric kernel on "
        "[1+delta, L] with its extreme eigenvalues.");
  m.def("run_checks", &run_checks, py::arg("suite") = "all",
        py::arg("seed") = std::uint64_t{2026}, py::arg("tol") = 0.0,
        "Run a named acceptance-check suite and return one record per check.");

  m.def("elliptic_K", [](double k) { return taulab::lame::elliptic_K(k); },
        py::arg("k"), "Complete elliptic integrals (K, K') for modulus k.");
  m.def("weierstrass_p",
        [](cplx z, double k2) {
          const auto p = taulab::lame::make_elliptic(std::sqrt(k2));
          return taulab::lame::weierstrass_p(z, p);
        },
        py::arg("z"), py::arg("k2"),
        "Weierstrass (p, p') on the rectangular lattice of modulus sqrt(k2).");

  m.attr("__version__") = "1.0.0";
}
