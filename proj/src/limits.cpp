#include "pdem/limits.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pdem/canonical.hpp"
#include "pdem/errors.hpp"
#include "pdem/oracle.hpp"
#include "pdem/specfun.hpp"

namespace pdem::limits {

namespace {

void require_increasing(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw DomainError(std::string(what) + ": empty sweep");
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] > v[i - 1])) {
      throw DomainError(std::string(what) + ": sweep values must be strictly increasing");
    }
  }
}

std::vector<model::ModelParams> unit_family(const std::vector<double>& a_values) {
  std::vector<model::ModelParams> out;
  out.reserve(a_values.size());
  for (double a : a_values) out.push_back(model::ModelParams::unit(a));
  return out;
}

}  // namespace

double scaled_bessel(int n, double x, double nu) {
  if (n < 0) throw DomainError("scaled_bessel: negative degree");
  if (!(nu > 2.0 * n + 1.0)) {
    throw DomainError("scaled_bessel: need nu > 2n + 1, got nu = " + std::to_string(nu));
  }
  const double s = 2.0 / nu + (2.0 / nu) * std::sqrt(2.0 / nu) * x;
  const double y = specfun::bessel_poly(n, -nu, s);
  if (y == 0.0) return 0.0;
  const double sign = ((n % 2 == 0) ? 1.0 : -1.0) * (y > 0.0 ? 1.0 : -1.0);
  return sign * std::exp(std::log(std::abs(y)) + 0.5 * n * std::log(2.0 * nu));
}

double bessel_hermite_error(double nu, int n_max, int points) {
  if (points < 2) throw DomainError("bessel_hermite_error: need at least 2 points");
  double worst = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    for (int i = 0; i < points; ++i) {
      const double x = -2.0 + 4.0 * i / (points - 1);
      const double h = specfun::hermite(n, x);
      worst = std::max(worst, std::abs(scaled_bessel(n, x, nu) - h) / std::max(1.0, std::abs(h)));
    }
  }
  return worst;
}

double energy_gap(const model::ModelParams& p, int n) {
  const auto c = canonical::CanonicalParams::from(p);
  return canonical::canonical_energy(c, n) - model::energy(p, n).energy;
}

double wavefunction_distance(const model::ModelParams& p, int n) {
  if (n < 0 || n > model::max_level(p)) throw LevelOutOfRange(n, model::max_level(p));
  const auto c = canonical::CanonicalParams::from(p);
  const double lo = -p.a() + 1e-9 * p.a();
  const double hi = p.a() + 12.0 / p.lambda0();
  double best = 0.0;
  bool first = true;
  for (double s : {1.0, -1.0}) {
    auto f = [&](double x) {
      const double d = s * model::wavefunction(p, n, x) - canonical::canonical_wavefunction(c, n, x);
      return d * d;
    };
    const double d2 = oracle::integrate(f, lo, hi, {1e-12, 8000});
    const double d = std::sqrt(std::max(0.0, d2));
    if (first || d < best) best = d;
    first = false;
  }
  return best;
}

LimitSweep continuum_magnitude(const std::vector<model::ModelParams>& family, double q, double x,
                               double scale) {
  std::vector<double> as;
  for (const auto& p : family) as.push_back(p.a());
  require_increasing(as, "continuum_magnitude");
  if (!(q > 0.0)) throw BelowContinuum("continuum_magnitude: q must be > 0");
  LimitSweep out{as, {}, "a", "abs_psi_E"};
  for (const auto& p : family) {
    const double b2 = p.b_squared();
    const double c0 = 0.25 * (q * q + 1.0) + b2 * b2;
    const double e = c0 * p.hbar() * p.hbar() / (2.0 * p.m0() * p.a() * p.a());
    const auto state = model::continuum_state(p, e, {scale, 0.0});
    const auto psi = model::continuum_log_wavefunction(state, p, x);
    out.metric_values.push_back(psi.is_zero() ? 0.0 : std::exp(psi.log_abs));
  }
  return out;
}

LimitSweep bessel_hermite_sweep(const std::vector<double>& nus, int n_max, int points) {
  require_increasing(nus, "bessel_hermite_sweep");
  LimitSweep out{nus, {}, "nu", "sup_rel_error"};
  for (double nu : nus) out.metric_values.push_back(bessel_hermite_error(nu, n_max, points));
  return out;
}

LimitSweep energy_sweep(const std::vector<double>& a_values, int n) {
  require_increasing(a_values, "energy_sweep");
  LimitSweep out{a_values, {}, "a", "energy_gap"};
  for (const auto& p : unit_family(a_values)) out.metric_values.push_back(energy_gap(p, n));
  return out;
}

LimitSweep wavefunction_sweep(const std::vector<double>& a_values, int n) {
  require_increasing(a_values, "wavefunction_sweep");
  LimitSweep out{a_values, {}, "a", "l2_distance"};
  for (const auto& p : unit_family(a_values)) {
    out.metric_values.push_back(wavefunction_distance(p, n));
  }
  return out;
}

LimitSweep continuum_sweep(const std::vector<double>& a_values, double q, double x) {
  return continuum_magnitude(unit_family(a_values), q, x);
}

}  // namespace pdem::limits
