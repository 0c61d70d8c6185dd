#include "pdem/checks.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <cstdio>
#include <string>

#include "pdem/canonical.hpp"
#include "pdem/errors.hpp"
#include "pdem/limits.hpp"

namespace pdem::checks {

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string g6(double v) { return fmt("%.6g", v); }

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + g6(v[i]);
  return s;
}

double right_end(const model::ModelParams& p) { return p.a() + 12.0 / p.lambda0(); }

// Nodes x_i = -a + i (x_hi + a) / points, i = 1..points.
std::vector<double> sample_nodes(const model::ModelParams& p, int points) {
  std::vector<double> xs(points);
  const double len = right_end(p) + p.a();
  for (int i = 1; i <= points; ++i) xs[i - 1] = -p.a() + len * i / points;
  return xs;
}

CheckResult make(std::string name, double measured, double threshold, bool passed,
                 std::string detail) {
  return {std::move(name), passed, measured, threshold, std::move(detail)};
}

}  // namespace

CheckResult level_count(const Units& u, const std::vector<double>& a_values,
                        const std::vector<int>& expected) {
  if (a_values.size() != expected.size()) throw DomainError("level_count: list sizes differ");
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (std::size_t i = 0; i < a_values.size(); ++i) {
    const int n = model::max_level(u.at(a_values[i]));
    ok = ok && n == expected[i];
    worst = std::max(worst, std::abs(double(n - expected[i])));
    detail += (i ? " " : "") + ("a=" + g6(a_values[i]) + ":N=" + std::to_string(n));
  }
  return make("level-count", worst, 0.0, ok, detail);
}

CheckResult ground_state(const Units& u, const std::vector<double>& a_values) {
  double worst = 0.0;
  for (double a : a_values) {
    const double e0 = model::energy(u.at(a), 0).energy;
    const double ref = 0.5 * u.hbar * u.omega;
    worst = std::max(worst, std::abs(e0 - ref) / ref);
  }
  const double thr = 4.0 * DBL_EPSILON;
  return make("ground-state", worst, thr, worst <= thr, "a=" + join(a_values));
}

CheckResult fd_spectrum(const model::ModelParams& p, const oracle::Grid& grid, int k,
                        double rel_tol) {
  k = std::min(k, model::max_level(p) + 1);
  const auto ham = oracle::build_hamiltonian(p, grid);
  const auto eig = oracle::lowest_eigenpairs(ham, static_cast<std::size_t>(k));
  double worst = 0.0;
  std::vector<double> errs;
  for (int n = 0; n < k; ++n) {
    const double e = model::energy(p, n).energy;
    const double rel = std::abs(eig.eigenvalues[n] - e) / std::abs(e);
    errs.push_back(rel);
    worst = std::max(worst, rel);
  }
  return make("fd-spectrum", worst, rel_tol, worst <= rel_tol,
              "a=" + g6(p.a()) + " points=" + std::to_string(grid.count()) +
                  " rel_errors=" + join(errs));
}

CheckResult fd_convergence(const model::ModelParams& p, const oracle::Grid& grid, int refinements) {
  const double e0 = model::energy(p, 0).energy;
  std::vector<double> errors;
  oracle::Grid g = grid;
  for (int r = 0; r <= refinements; ++r) {
    const auto eig = oracle::lowest_eigenpairs(oracle::build_hamiltonian(p, g), 1);
    errors.push_back(std::abs(eig.eigenvalues[0] - e0));
    if (r < refinements) g = g.refined();
  }
  std::vector<double> ratios;
  bool ok = true;
  double worst = 0.0;
  for (std::size_t i = 1; i < errors.size(); ++i) {
    const double r = errors[i - 1] / errors[i];
    ratios.push_back(r);
    ok = ok && r >= 3.5 && r <= 4.5;
    worst = std::max(worst, std::abs(r - 4.0));
  }
  return make("fd-convergence", worst, 0.5, ok,
              "a=" + g6(p.a()) + " errors=" + join(errors) + " ratios=" + join(ratios));
}

CheckResult orthonormality(const Units& u, const std::vector<double>& a_values, double tol) {
  double worst = 0.0;
  for (double a : a_values) {
    const auto p = u.at(a);
    const int top = model::max_level(p);
    const double lo = -a + 1e-9 * a;
    const double mid = right_end(p);
    for (int m = 0; m <= top; ++m) {
      for (int n = m; n <= top; ++n) {
        auto f = [&](double x) { return model::wavefunction(p, m, x) * model::wavefunction(p, n, x); };
        const oracle::QuadratureOptions opts{1e-11, 8000};
        const double ip = oracle::integrate(f, lo, mid, opts) +
                          oracle::integrate_to_infinity(f, mid, a, opts);
        worst = std::max(worst, std::abs(ip - (m == n ? 1.0 : 0.0)));
      }
    }
  }
  return make("orthonormality", worst, tol, worst <= tol, "a=" + join(a_values));
}

CheckResult dual_form(const Units& u, const std::vector<double>& a_values, int points, double tol) {
  double worst = 0.0;
  for (double a : a_values) {
    const auto p = u.at(a);
    const auto xs = sample_nodes(p, points);
    for (int n = 0; n <= model::max_level(p); ++n) {
      double sup = 0.0, diff = 0.0;
      for (double x : xs) {
        const double b = model::wavefunction(p, n, x, model::WavefunctionForm::Bessel);
        const double l = model::wavefunction(p, n, x, model::WavefunctionForm::Laguerre);
        sup = std::max(sup, std::abs(b));
        diff = std::max(diff, std::abs(b - l));
      }
      worst = std::max(worst, diff / sup);
    }
  }
  return make("dual-form", worst, tol, worst <= tol,
              "a=" + join(a_values) + " points=" + std::to_string(points));
}

CheckResult ode_residuals(const model::ModelParams& p, const std::vector<double>& continuum_ratios,
                          int points, double tol) {
  const double lo = -p.a();
  const double hi = right_end(p);
  const double margin = 0.05 * (hi - lo);
  std::vector<double> xs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = lo + margin + (hi - lo - 2.0 * margin) * i / (points - 1);
  }
  double bound = 0.0;
  for (int n = 0; n <= model::max_level(p); ++n) {
    const double e = model::energy(p, n).energy;
    for (double x : xs) {
      bound = std::max(bound, oracle::ode_residual(p, model::wavefunction_jet(p, n, x), e, x));
    }
  }
  double cont = 0.0;
  std::vector<double> skipped;
  for (double ratio : continuum_ratios) {
    if (!(ratio * model::well_depth(p) > model::continuum_threshold(p))) {
      skipped.push_back(ratio);
      continue;
    }
    const auto s = model::continuum_state(p, ratio * model::well_depth(p));
    for (double x : xs) {
      cont = std::max(cont, oracle::ode_residual(p, model::continuum_jet(s, p, x), s.energy, x));
    }
  }
  const double worst = std::max(bound, cont);
  return make("ode-residual", worst, tol, worst <= tol,
              "a=" + g6(p.a()) + " bound=" + g6(bound) + " continuum=" + g6(cont) +
                  " E/Vinf=" + join(continuum_ratios) +
                  (skipped.empty() ? "" : " below_threshold=" + join(skipped)));
}

CheckResult factorization(const model::ModelParams& p, int points) {
  // Well: A- psi_0 relative to psi_0.
  double well = 0.0;
  for (double x : sample_nodes(p, points)) {
    const auto j = model::wavefunction_jet(p, 0, x);
    if (j.value == 0.0) continue;
    well = std::max(well, std::abs(model::apply_lowering(p, {j.value, j.d1}, x)) / std::abs(j.value));
  }

  const auto c = canonical::CanonicalParams::from(p);
  const double l = c.lambda0();
  double canon = 0.0;
  for (int i = 0; i <= points; ++i) {
    const double x = (-5.0 + 10.0 * i / points) / l;
    const double v = canonical::canonical_wavefunction(c, 0, x);
    const double d = canonical::canonical_wavefunction_derivative(c, 0, x);
    canon = std::max(canon, std::abs(canonical::apply_ladder(c, canonical::Ladder::Lower, {v, d}, x)) /
                                std::abs(v));
  }

  // [a-, a+] g = g for g = x^k exp(-beta (lambda0 x)^2).
  double comm = 0.0;
  const double s2l = std::sqrt(2.0) * l;
  for (int k = 0; k <= 4; ++k) {
    for (double beta : {0.5, 0.8}) {
      for (int i = 0; i <= 60; ++i) {
        const double x = (-3.0 + 0.1 * i) / l;
        const double bb = beta * l * l;
        const double e = std::exp(-bb * x * x);
        const double pk = std::pow(x, k);
        const double p1 = k >= 1 ? k * std::pow(x, k - 1) : 0.0;
        const double p2 = k >= 2 ? k * (k - 1) * std::pow(x, k - 2) : 0.0;
        const double g0 = pk * e;
        const double g1 = (p1 - 2.0 * bb * x * pk) * e;
        const double g2 = (p2 - 2.0 * bb * pk - 4.0 * bb * x * p1 + 4.0 * bb * bb * x * x * pk) * e;
        const model::ValueAndSlope raised{(l * l * x * g0 - g1) / s2l, (l * l * g0 + l * l * x * g1 - g2) / s2l};
        const model::ValueAndSlope lowered{(l * l * x * g0 + g1) / s2l, (l * l * g0 + l * l * x * g1 + g2) / s2l};
        const double cg = canonical::apply_ladder(c, canonical::Ladder::Lower, raised, x) -
                          canonical::apply_ladder(c, canonical::Ladder::Raise, lowered, x);
        const double scale = std::max({std::abs(g0), std::abs(g1) / l, std::abs(g2) / (l * l), 1e-300});
        comm = std::max(comm, std::abs(cg - g0) / scale);
      }
    }
  }
  const bool ok = well <= 1e-12 && canon <= 1e-12 && comm <= 1e-8;
  return make("factorization", std::max({well, canon, comm}), 1e-12, ok,
              "well_lowering=" + g6(well) + " canonical_lowering=" + g6(canon) +
                  " commutator=" + g6(comm) + " (commutator tolerance 1e-8)");
}

CheckResult bessel_hermite(double nu, const std::vector<double>& rate_nus, double threshold) {
  const double err = limits::bessel_hermite_error(nu);
  std::vector<double> ratios;
  bool rate_ok = true;
  for (double v : rate_nus) {
    const double e1 = limits::bessel_hermite_error(v);
    if (!(e1 > 1e-8)) continue;
    const double r = limits::bessel_hermite_error(4.0 * v) / e1;
    ratios.push_back(r);
    rate_ok = rate_ok && r >= 0.35 && r <= 0.65;
  }
  const bool ok = err <= threshold && rate_ok;
  return make("bessel-hermite", err, threshold, ok,
              "nu=" + g6(nu) + " sup_error=" + g6(err) + (err <= threshold ? "" : " (above threshold)") +
                  " rate_ratios=" + join(ratios) + (rate_ok ? "" : " (outside [0.35,0.65])"));
}

CheckResult wavefunction_limit(const std::vector<int>& levels, const std::vector<double>& a_values,
                               double max_ratio) {
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  for (int n : levels) {
    const auto sweep = limits::wavefunction_sweep(a_values, n);
    const auto& d = sweep.metric_values;
    for (std::size_t i = 1; i < d.size(); ++i) ok = ok && d[i] < d[i - 1];
    const double ratio = d.back() / d.front();
    worst = std::max(worst, ratio);
    ok = ok && ratio <= max_ratio;
    detail += (detail.empty() ? "" : " ") + ("n=" + std::to_string(n) + ":" + join(d));
  }
  return make("wavefunction-limit", worst, max_ratio, ok, "a=" + join(a_values) + " " + detail);
}

CheckResult continuum_limit(const std::vector<double>& a_values, double q, double x,
                            double max_ratio) {
  const auto sweep = limits::continuum_sweep(a_values, q, x);
  const auto& m = sweep.metric_values;
  bool decreasing = true;
  for (std::size_t i = 1; i < m.size(); ++i) decreasing = decreasing && m[i] < m[i - 1];
  const double ratio = m.back() / m.front();
  const bool ratio_ok = max_ratio <= 0.0 || ratio <= max_ratio;
  return make("continuum-limit", ratio, max_ratio, decreasing && ratio_ok,
              "a=" + join(a_values) + " |psi_E|=" + join(m) + " last/first=" + g6(ratio) +
                  (max_ratio > 0.0 ? "" : " (ratio not enforced)") +
                  (decreasing ? " decreasing" : " not decreasing"));
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{
      "level-count",  "ground-state",  "fd-spectrum",    "fd-convergence",
      "orthonormality", "dual-form",   "ode-residual",   "factorization",
      "bessel-hermite", "wavefunction-limit", "continuum-limit"};
  return names;
}

std::vector<CheckResult> run_verify(const VerifyConfig& cfg) {
  const auto& names = check_names();
  for (const auto& s : cfg.selected) {
    if (std::find(names.begin(), names.end(), s) == names.end()) {
      throw DomainError("unknown check '" + s + "'");
    }
  }
  auto wanted = [&](const std::string& n) {
    return cfg.selected.empty() ||
           std::find(cfg.selected.begin(), cfg.selected.end(), n) != cfg.selected.end();
  };
  const Units& u = cfg.units;
  std::vector<CheckResult> out;
  auto per_a = [&](auto&& fn) {
    for (double a : cfg.a_values) out.push_back(fn(u.at(a)));
  };

  if (wanted("level-count")) {
    // Independent count: levels n >= 0 with b^2 - n - 1/2 > 0.
    std::vector<int> expected;
    for (double a : cfg.a_values) {
      const double b2 = u.at(a).b_squared();
      int count = 0;
      while (b2 - count - 0.5 > 0.0) ++count;
      expected.push_back(count - 1);
    }
    out.push_back(level_count(u, cfg.a_values, expected));
  }
  if (wanted("ground-state")) out.push_back(ground_state(u, cfg.a_values));
  if (wanted("fd-spectrum")) {
    per_a([&](const model::ModelParams& p) {
      return fd_spectrum(p, oracle::Grid::default_for(p, cfg.grid_points), 4, cfg.fd_tol);
    });
  }
  if (wanted("fd-convergence")) {
    per_a([&](const model::ModelParams& p) {
      return fd_convergence(p, oracle::Grid::default_for(p, std::max(3, cfg.grid_points / 8)));
    });
  }
  if (wanted("orthonormality")) out.push_back(orthonormality(u, cfg.a_values));
  if (wanted("dual-form")) out.push_back(dual_form(u, cfg.a_values));
  if (wanted("ode-residual")) {
    per_a([&](const model::ModelParams& p) { return ode_residuals(p, {1.25, 1.5, 2.0}); });
  }
  if (wanted("factorization")) per_a([&](const model::ModelParams& p) { return factorization(p); });
  if (wanted("bessel-hermite")) out.push_back(bessel_hermite(cfg.nu, {1e4, 4e4, 1.6e5}));
  if (wanted("wavefunction-limit")) out.push_back(wavefunction_limit({0, 1, 2}, {3, 5, 10, 20}));
  if (wanted("continuum-limit")) out.push_back(continuum_limit({2, 4, 8}, 2.0, 1.0, 0.0));
  return out;
}

}  // namespace pdem::checks
