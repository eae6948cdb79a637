#include "bergproj/cli.hpp"

#include <cmath>
#include <complex>
#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bergproj/bounds.hpp"
#include "bergproj/identities.hpp"
#include "bergproj/projection.hpp"
#include "bergproj/rng.hpp"
#include "bergproj/specfun.hpp"

namespace bergproj::cli {

namespace {

using json = nlohmann::ordered_json;
using std::complex;

// fixed 9-significant-digit formatting keeps outputs byte-stable
std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double num9(double v) { return std::stod(fmt9(v)); }

struct Output {
  std::string format = "csv";
  std::string path;

  void emit(const std::string& csv, const json& j) const {
    const std::string text = (format == "json") ? j.dump(2) + "\n" : csv;
    if (path.empty()) {
      std::cout << text;
    } else {
      std::ofstream f(path);
      f << text;
    }
  }
};

void add_output_flags(CLI::App* cmd, Output& out) {
  cmd->add_option("--format", out.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--out", out.path, "Write output to FILE instead of stdout");
}

struct RuleFlags {
  Resolution res;
  void add(CLI::App* cmd) {
    cmd->add_option("--nr", res.n_r, "Radial nodes per panel")->capture_default_str();
    cmd->add_option("--ntheta", res.n_theta, "Angular nodes (even)")
        ->capture_default_str();
    cmd->add_option("--refine", res.refinement, "Boundary panels")
        ->capture_default_str();
  }
};

// ---------------------------------------------------------------- verify --

struct VerifyRow {
  std::string check;
  std::string params;
  double abs_diff;
  double tol;
  bool pass;
};

int cmd_verify(double tol, int trials, std::uint64_t seed, const Resolution& res,
               const Output& out) {
  std::vector<VerifyRow> rows;
  SplitMix64 rng(seed);
  const double tol_1d = tol * 0.1;

  auto record = [&](std::string check, std::string params, double diff,
                    double row_tol) {
    rows.push_back({std::move(check), std::move(params), diff, row_tol,
                    diff <= row_tol});
  };

  for (int i = 0; i < trials; ++i) {
    const double c = rng.uniform(0.3, 3.0);
    const double delta = rng.uniform(0.3, 3.0);
    double a = rng.uniform(-1.5, 1.5);
    double b = rng.uniform(-1.5, 1.5);
    if (delta + c - a - b <= 0.2) a = b = 0.1;
    const auto r = identities::hyp_beta_integral_check(a, b, c, delta, 1e-11);
    std::ostringstream ps;
    ps << "a=" << fmt9(a) << ";b=" << fmt9(b) << ";c=" << fmt9(c)
       << ";delta=" << fmt9(delta);
    record("hyp_beta_integral", ps.str(), r.abs_diff, tol_1d);
  }

  for (int i = 0; i < trials; ++i) {
    const double rz = rng.uniform(0.0, 0.6), az = rng.uniform(0.0, 6.28);
    const double rw = rng.uniform(0.0, 0.6), aw = rng.uniform(0.0, 6.28);
    const complex<double> z{rz * std::cos(az), rz * std::sin(az)};
    const complex<double> w{rw * std::cos(aw), rw * std::sin(aw)};
    const double a = rng.uniform(0.3, 2.0);
    const double b = rng.uniform(0.3, 2.0);
    const double c = rng.uniform(0.3, 2.0);
    const double t = rng.uniform(-0.5, 1.5);
    const auto r = identities::kernel_expansion_check(z, w, a, b, c, t, 96,
                                                      tol * 0.01, res);
    std::ostringstream ps;
    ps << "|z|=" << fmt9(rz) << ";|w|=" << fmt9(rw) << ";a=" << fmt9(a)
       << ";b=" << fmt9(b) << ";c=" << fmt9(c) << ";t=" << fmt9(t);
    record("kernel_expansion", ps.str(), r.abs_diff, tol);
  }

  for (int i = 0; i < trials; ++i) {
    const double rz = rng.uniform(0.0, 0.8), az = rng.uniform(0.0, 6.28);
    const complex<double> z{rz * std::cos(az), rz * std::sin(az)};
    const double a = rng.uniform(0.3, 2.0);
    const double t = rng.uniform(-0.7, 2.0);
    const auto r = identities::kernel_moment_check(z, a, t, res);
    std::ostringstream ps;
    ps << "|z|=" << fmt9(rz) << ";a=" << fmt9(a) << ";t=" << fmt9(t);
    record("kernel_moment", ps.str(), r.abs_diff, tol);
  }

  for (int i = 0; i < trials; ++i) {
    const double a = rng.uniform(0.3, 2.0);
    const double b = rng.uniform(0.3, 2.0);
    double c = rng.uniform(-1.0, 1.5);
    if (1.0 + a + b - 2.0 * c <= 0.2) c = 0.2;
    const auto r = identities::nested_kernel_check(a, b, c);
    std::ostringstream ps;
    ps << "a=" << fmt9(a) << ";b=" << fmt9(b) << ";c=" << fmt9(c);
    record("nested_kernel", ps.str(), r.abs_diff, tol);
  }

  // growth classification and sup identity, fixed cases
  struct {
    double t, c;
    identities::GrowthClass expect;
  } classes[] = {{0.0, -1.0, identities::GrowthClass::bounded},
                 {0.0, 0.0, identities::GrowthClass::logarithmic},
                 {0.0, 1.0, identities::GrowthClass::power}};
  for (const auto& cse : classes) {
    const auto got = identities::forelli_rudin_classify(cse.t, cse.c);
    std::ostringstream ps;
    ps << "t=" << fmt9(cse.t) << ";c=" << fmt9(cse.c) << ";class="
       << identities::to_string(got);
    rows.push_back({"forelli_rudin_classify", ps.str(), 0.0, 0.0,
                    got == cse.expect});
  }
  for (const auto& [a, t] : {std::pair<double, double>{2.0, 0.0}, {1.8, 0.6}}) {
    const auto r = identities::weighted_sup_check(a, t);
    std::ostringstream ps;
    ps << "a=" << fmt9(a) << ";t=" << fmt9(t);
    record("weighted_sup", ps.str(), r.abs_diff,
           1e-4 * std::max(1.0, r.closed_form));
  }

  std::ostringstream csv;
  csv << "check,params,abs_diff,tol,status\n";
  json jrows = json::array();
  bool all_pass = true;
  for (const auto& r : rows) {
    all_pass = all_pass && r.pass;
    csv << r.check << "," << r.params << "," << fmt9(r.abs_diff) << ","
        << fmt9(r.tol) << "," << (r.pass ? "PASS" : "FAIL") << "\n";
    jrows.push_back({{"check", r.check},
                     {"params", r.params},
                     {"abs_diff", num9(r.abs_diff)},
                     {"tol", num9(r.tol)},
                     {"status", r.pass ? "PASS" : "FAIL"}});
  }
  out.emit(csv.str(), json{{"suite", "verify"}, {"rows", jrows},
                           {"status", all_pass ? "PASS" : "FAIL"}});
  return all_pass ? 0 : 1;
}

// ----------------------------------------------------------------- norms --

int cmd_norms(const std::vector<double>& ps, const std::vector<double>& alphas,
              const std::vector<double>& xis, const std::vector<double>& epses,
              bool full, const Output& out) {
  std::ostringstream csv;
  csv << "p,alpha,lower_formula,upper_formula,dostanic\n";
  json jrows = json::array();
  for (double p : ps) {
    for (double alpha : alphas) {
      const SpaceParams sp(p, alpha);
      if (full) {
        const bounds::NormReport r = bounds::make_norm_report(sp, xis, epses);
        json jr{{"p", num9(p)},
                {"alpha", num9(alpha)},
                {"lower_formula", num9(r.lower_formula)},
                {"upper_formula", num9(r.upper_formula)},
                {"dostanic", num9(r.dostanic)}};
        json jray = json::array();
        for (const auto& [x, quot] : r.rayleigh_estimates)
          jray.push_back({{"xi", num9(x)}, {"quotient", num9(quot)}});
        json jbil = json::array();
        for (const auto& [eps, v] : r.bilinear_estimates)
          jbil.push_back({{"eps", num9(eps)}, {"value", num9(v)}});
        jr["rayleigh_estimates"] = jray;
        jr["bilinear_estimates"] = jbil;
        jr["diagnostics"] = r.diagnostics;
        jrows.push_back(jr);
      } else {
        jrows.push_back({{"p", num9(p)},
                         {"alpha", num9(alpha)},
                         {"lower_formula", num9(bounds::conjectured_norm(sp))},
                         {"upper_formula", num9(bounds::upper_bound_norm(sp))},
                         {"dostanic", num9(bounds::dostanic_value(p))}});
      }
      csv << fmt9(p) << "," << fmt9(alpha) << ","
          << fmt9(bounds::conjectured_norm(sp)) << ","
          << fmt9(bounds::upper_bound_norm(sp)) << ","
          << fmt9(bounds::dostanic_value(p)) << "\n";
    }
  }
  out.emit(csv.str(), json{{"suite", "norms"}, {"rows", jrows}});
  return 0;
}

// -------------------------------------------------------------- sweep-xi --

int cmd_sweep_xi(double p, double alpha, const std::vector<double>& xis, int K,
                 const Output& out) {
  const SpaceParams sp(p, alpha);
  std::ostringstream csv;
  csv << "xi,quotient,phi_norm,psi_norm,upsilon_norm,f_norm,residual\n";
  json jrows = json::array();
  for (double r : xis) {
    const double quot = bounds::rayleigh_quotient_f_xi({r, 0.0}, sp, K);
    const bounds::DecompositionNorms d =
        bounds::decomposition_norm_check({r, 0.0}, sp, K);
    csv << fmt9(r) << "," << fmt9(quot) << "," << fmt9(d.phi_norm) << ","
        << fmt9(d.psi_norm) << "," << fmt9(d.upsilon_norm) << ","
        << fmt9(d.f_norm) << "," << fmt9(d.residual) << "\n";
    jrows.push_back({{"xi", num9(r)},
                     {"quotient", num9(quot)},
                     {"phi_norm", num9(d.phi_norm)},
                     {"psi_norm", num9(d.psi_norm)},
                     {"upsilon_norm", num9(d.upsilon_norm)},
                     {"f_norm", num9(d.f_norm)},
                     {"residual", num9(d.residual)}});
  }
  out.emit(csv.str(), json{{"suite", "sweep-xi"},
                           {"p", num9(p)},
                           {"alpha", num9(alpha)},
                           {"rows", jrows}});
  return 0;
}

// ------------------------------------------------------------- sweep-eps --

int cmd_sweep_eps(double p, double alpha, const std::vector<double>& epses,
                  bool quad, const Resolution& res, const Output& out) {
  const SpaceParams sp(p, alpha);
  const double upper = bounds::upper_bound_norm(sp);
  std::ostringstream csv;
  csv << (quad ? "eps,value,quad_value,g_norm,h_norm,upper_bound\n"
                : "eps,value,upper_bound\n");
  json jrows = json::array();
  for (double eps : epses) {
    const double v = bounds::bilinear_form_value(eps, sp);
    json jr{{"eps", num9(eps)}, {"value", num9(v)}};
    if (quad) {
      const bounds::BilinearQuad b = bounds::bilinear_form_quadrature(eps, sp, res);
      csv << fmt9(eps) << "," << fmt9(v) << "," << fmt9(b.value) << ","
          << fmt9(b.g_norm) << "," << fmt9(b.h_norm) << "," << fmt9(upper) << "\n";
      jr["quad_value"] = num9(b.value);
      jr["g_norm"] = num9(b.g_norm);
      jr["h_norm"] = num9(b.h_norm);
    } else {
      csv << fmt9(eps) << "," << fmt9(v) << "," << fmt9(upper) << "\n";
    }
    jr["upper_bound"] = num9(upper);
    jrows.push_back(jr);
  }
  out.emit(csv.str(), json{{"suite", "sweep-eps"},
                           {"p", num9(p)},
                           {"alpha", num9(alpha)},
                           {"rows", jrows}});
  return 0;
}

// -------------------------------------------------------------- hy-check --

int cmd_hy_check(const std::vector<double>& ps, const std::vector<double>& alphas,
                 int trials, int terms, std::uint64_t seed, const Output& out) {
  std::ostringstream csv;
  csv << "p,alpha,trials,min_margin,status\n";
  json jrows = json::array();
  bool all_pass = true;
  const Resolution res{96, 128, 2};
  for (double p : ps) {
    for (double alpha : alphas) {
      const SpaceParams sp(p, alpha);
      // per-cell stream derived from the bit patterns, stable across stdlibs
      SplitMix64 rng(seed ^ (0x9e3779b97f4a7c15ull * std::bit_cast<std::uint64_t>(p)) ^
                     std::bit_cast<std::uint64_t>(alpha));
      double min_margin = std::numeric_limits<double>::infinity();
      for (int t = 0; t < trials; ++t) {
        std::vector<complex<double>> c(terms);
        for (auto& v : c) v = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        const bounds::HYCheck h = bounds::hausdorff_young_check(c, sp, res);
        min_margin = std::min(min_margin, h.margin);
      }
      const bool pass = min_margin >= -1e-8;
      all_pass = all_pass && pass;
      csv << fmt9(p) << "," << fmt9(alpha) << "," << trials << ","
          << fmt9(min_margin) << "," << (pass ? "PASS" : "FAIL") << "\n";
      jrows.push_back({{"p", num9(p)},
                       {"alpha", num9(alpha)},
                       {"trials", trials},
                       {"min_margin", num9(min_margin)},
                       {"status", pass ? "PASS" : "FAIL"}});
    }
  }
  out.emit(csv.str(), json{{"suite", "hy-check"}, {"rows", jrows},
                           {"status", all_pass ? "PASS" : "FAIL"}});
  return all_pass ? 0 : 1;
}

// -------------------------------------------------------------- hv-search --

int cmd_hv_search(double p, double a, double b, long samples,
                  std::uint64_t seed, const Output& out) {
  if (a <= 0.0) a = std::pow(bounds::dostanic_value(p), p);
  const bounds::HVResult r = bounds::hv_inequality_check(p, a, b, samples, seed);
  std::ostringstream csv;
  csv << "p,a,b,samples,seed,violations,max_feasible_b\n";
  csv << fmt9(p) << "," << fmt9(a) << "," << fmt9(b) << "," << samples << ","
      << seed << "," << r.violations << "," << fmt9(r.max_feasible_b) << "\n";
  out.emit(csv.str(), json{{"suite", "hv-search"},
                           {"p", num9(p)},
                           {"a", num9(a)},
                           {"b", num9(b)},
                           {"samples", samples},
                           {"seed", seed},
                           {"violations", r.violations},
                           {"max_feasible_b", num9(r.max_feasible_b)}});
  return 0;
}

// --------------------------------------------------------------- classify --

int cmd_classify(const std::vector<double>& ts, const std::vector<double>& cs,
                 const std::vector<double>& radii, const Output& out) {
  std::ostringstream csv;
  csv << "t,c,class\n";
  json jrows = json::array();
  for (double t : ts) {
    for (double c : cs) {
      std::string cls;
      try {
        cls = identities::to_string(
            radii.empty() ? identities::forelli_rudin_classify(t, c)
                          : identities::forelli_rudin_classify(t, c, radii));
      } catch (const identities::inconclusive_error&) {
        cls = "inconclusive";
      }
      csv << fmt9(t) << "," << fmt9(c) << "," << cls << "\n";
      jrows.push_back({{"t", num9(t)}, {"c", num9(c)}, {"class", cls}});
    }
  }
  out.emit(csv.str(), json{{"suite", "classify"}, {"rows", jrows}});
  return 0;
}

} // namespace

int run(const std::vector<std::string>& argv) {
  CLI::App app{"Weighted Bergman projection norm estimates: identity "
               "verification and bound tables"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the identity-check suite");
  double verify_tol = 1e-8;
  int verify_trials = 50;
  std::uint64_t verify_seed = 12345;
  RuleFlags verify_rule;
  Output verify_out;
  verify->add_option("--tol", verify_tol, "Tolerance for 2-D checks (1-D uses tol/10)")
      ->capture_default_str();
  verify->add_option("--trials", verify_trials, "Random tuples per check")
      ->capture_default_str();
  verify->add_option("--seed", verify_seed, "Random seed")->capture_default_str();
  verify_rule.add(verify);
  add_output_flags(verify, verify_out);

  // norms
  auto* norms = app.add_subcommand("norms", "Bound tables over p/alpha grids");
  std::vector<double> norms_p{2.0, 3.0, 4.0};
  std::vector<double> norms_alpha{0.0};
  std::vector<double> norms_xi{0.9, 0.99};
  std::vector<double> norms_eps{1.0, 0.01, 1e-4};
  bool norms_full = false;
  Output norms_out;
  norms->add_option("--p", norms_p, "p values")->delimiter(',')->capture_default_str();
  norms->add_option("--alpha", norms_alpha, "alpha values")
      ->delimiter(',')
      ->capture_default_str();
  norms->add_flag("--full", norms_full,
                  "Include Rayleigh/bilinear schedules (json output)");
  norms->add_option("--xi", norms_xi, "|xi| schedule for --full")
      ->delimiter(',')
      ->capture_default_str();
  norms->add_option("--eps", norms_eps, "eps schedule for --full")
      ->delimiter(',')
      ->capture_default_str();
  add_output_flags(norms, norms_out);

  // sweep-xi
  auto* sweep_xi = app.add_subcommand(
      "sweep-xi", "Rayleigh-quotient sweep with decomposition diagnostics");
  double sx_p = 4.0, sx_alpha = 0.0;
  std::vector<double> sx_xi{0.9, 0.99, 0.999};
  int sx_K = 0;
  Output sx_out;
  sweep_xi->add_option("--p", sx_p, "p")->capture_default_str();
  sweep_xi->add_option("--alpha", sx_alpha, "alpha")->capture_default_str();
  sweep_xi->add_option("--xi", sx_xi, "|xi| values")->delimiter(',')->capture_default_str();
  sweep_xi->add_option("--K", sx_K, "Series truncation (0 = auto)")
      ->capture_default_str();
  add_output_flags(sweep_xi, sx_out);

  // sweep-eps
  auto* sweep_eps = app.add_subcommand("sweep-eps", "Bilinear-form lower-bound sweep");
  double se_p = 2.0, se_alpha = 0.0;
  std::vector<double> se_eps{1.0, 0.1, 0.01, 1e-3, 1e-4};
  bool se_quad = false;
  RuleFlags se_rule;
  Output se_out;
  sweep_eps->add_option("--p", se_p, "p")->capture_default_str();
  sweep_eps->add_option("--alpha", se_alpha, "alpha")->capture_default_str();
  sweep_eps->add_option("--eps", se_eps, "eps values")->delimiter(',')->capture_default_str();
  sweep_eps->add_flag("--quad", se_quad, "Also integrate the pairing numerically");
  se_rule.add(sweep_eps);
  add_output_flags(sweep_eps, se_out);

  // hy-check
  auto* hy = app.add_subcommand("hy-check",
                                "Randomized coefficient-inequality suite");
  std::vector<double> hy_p{2.0, 3.0, 4.0};
  std::vector<double> hy_alpha{0.0, 1.0};
  int hy_trials = 50, hy_terms = 10;
  std::uint64_t hy_seed = 12345;
  Output hy_out;
  hy->add_option("--p", hy_p, "p values (>= 2)")->delimiter(',')->capture_default_str();
  hy->add_option("--alpha", hy_alpha, "alpha values")->delimiter(',')->capture_default_str();
  hy->add_option("--trials", hy_trials, "Random vectors per cell")->capture_default_str();
  hy->add_option("--terms", hy_terms, "Coefficients per vector")->capture_default_str();
  hy->add_option("--seed", hy_seed, "Random seed")->capture_default_str();
  add_output_flags(hy, hy_out);

  // hv-search
  auto* hv = app.add_subcommand("hv-search", "Scalar-inequality feasibility sampling");
  double hv_p = 1.5, hv_a = 0.0, hv_b = 0.0;
  long hv_samples = 1000000;
  std::uint64_t hv_seed = 1;
  Output hv_out;
  hv->add_option("--p", hv_p, "p in (1, 2]")->capture_default_str();
  hv->add_option("--a", hv_a, "Coefficient a (0 = csc(pi/p)^p)")->capture_default_str();
  hv->add_option("--b", hv_b, "Coefficient b")->capture_default_str();
  hv->add_option("--samples", hv_samples, "Sample count")->capture_default_str();
  hv->add_option("--seed", hv_seed, "Random seed")->capture_default_str();
  add_output_flags(hv, hv_out);

  // classify
  auto* classify = app.add_subcommand("classify", "Kernel-integral growth classes");
  std::vector<double> cl_t{0.0, 1.0};
  std::vector<double> cl_c{-1.0, -0.5, 0.0, 0.5, 1.0};
  std::vector<double> cl_radii;
  Output cl_out;
  classify->add_option("--t", cl_t, "t values")->delimiter(',')->capture_default_str();
  classify->add_option("--c", cl_c, "c values")->delimiter(',')->capture_default_str();
  classify->add_option("--radii", cl_radii, "Radius schedule")->delimiter(',');
  add_output_flags(classify, cl_out);

  std::vector<std::string> args(argv.rbegin(), argv.rend());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (verify->parsed())
      return cmd_verify(verify_tol, verify_trials, verify_seed, verify_rule.res,
                        verify_out);
    if (norms->parsed())
      return cmd_norms(norms_p, norms_alpha, norms_xi, norms_eps, norms_full,
                       norms_out);
    if (sweep_xi->parsed())
      return cmd_sweep_xi(sx_p, sx_alpha, sx_xi, sx_K, sx_out);
    if (sweep_eps->parsed())
      return cmd_sweep_eps(se_p, se_alpha, se_eps, se_quad, se_rule.res, se_out);
    if (hy->parsed())
      return cmd_hy_check(hy_p, hy_alpha, hy_trials, hy_terms, hy_seed, hy_out);
    if (hv->parsed())
      return cmd_hv_search(hv_p, hv_a, hv_b, hv_samples, hv_seed, hv_out);
    if (classify->parsed()) return cmd_classify(cl_t, cl_c, cl_radii, cl_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

} // namespace bergproj::cli
