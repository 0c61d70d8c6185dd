#pragma once

// a -> inf and nu -> inf limits: the well model against the canonical
// oscillator, and Bessel polynomials against Hermite polynomials.

#include <string>
#include <vector>

#include "pdem/model.hpp"

namespace pdem::limits {

struct LimitSweep {
  std::vector<double> parameter_values;  // strictly increasing (a or nu)
  std::vector<double> metric_values;
  std::string parameter_name;
  std::string metric_name;
};

/// (-1)^n (2 nu)^(n/2) y_n(2/nu + (2/nu) sqrt(2/nu) x; -nu), which tends to
/// H_n(x) as nu -> inf. The power of nu is applied in log space.
/// DomainError unless nu > 2n + 1.
double scaled_bessel(int n, double x, double nu);

/// max over n <= n_max and `points` equally spaced x in [-2, 2] of
/// |scaled_bessel - H_n| / max(1, |H_n|).
double bessel_hermite_error(double nu, int n_max = 6, int points = 17);

// E_n(canonical) - E_n(well) = hbar^2 n (n + 1) / (2 m0 a^2).
double energy_gap(const model::ModelParams& params, int n);

/// min over s = +-1 of || s psi_n(well) - psi_n(canonical) ||_2 on
/// (-a + 1e-9 a, a + 12 / lambda0].
double wavefunction_distance(const model::ModelParams& params, int n);

/// |psi_E(x)| across the family at fixed q, i.e. c0 = (q^2 + 1)/4 + b^4.
/// Members must have strictly increasing a; BelowContinuum if q <= 0.
LimitSweep continuum_magnitude(const std::vector<model::ModelParams>& family, double q, double x,
                               double scale = 1.0);

// Sweeps over unit-constant models (m0 = omega = hbar = 1) unless noted.
LimitSweep bessel_hermite_sweep(const std::vector<double>& nus, int n_max = 6, int points = 17);
LimitSweep energy_sweep(const std::vector<double>& a_values, int n);
LimitSweep wavefunction_sweep(const std::vector<double>& a_values, int n);
LimitSweep continuum_sweep(const std::vector<double>& a_values, double q, double x);

}  // namespace pdem::limits
