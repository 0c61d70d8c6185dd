#pragma once

// Named verification checks shared by `pdem verify` and the acceptance
// binary. Each check measures one quantity and compares it to a threshold;
// none of them throws for a numerical miss.

#include <string>
#include <vector>

#include "pdem/model.hpp"
#include "pdem/oracle.hpp"

namespace pdem::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

struct Units {
  double m0 = 1.0;
  double omega = 1.0;
  double hbar = 1.0;

  model::ModelParams at(double a) const { return model::ModelParams::make(m0, omega, hbar, a); }
};

// N for each a compared with the expected list (same length).
CheckResult level_count(const Units& u, const std::vector<double>& a_values,
                        const std::vector<int>& expected);

// |E_0 - hbar omega / 2| <= 4 eps (hbar omega / 2) for each a.
CheckResult ground_state(const Units& u, const std::vector<double>& a_values);

// FD eigenvalues on `grid` against the closed form for n < k (capped at N + 1).
CheckResult fd_spectrum(const model::ModelParams& p, const oracle::Grid& grid, int k,
                        double rel_tol);

// Error ratios of the n = 0 FD eigenvalue under `refinements` successive
// halvings of the grid spacing; all must lie in [3.5, 4.5].
CheckResult fd_convergence(const model::ModelParams& p, const oracle::Grid& grid,
                           int refinements = 3);

// max |<psi_m, psi_n> - delta_mn| over m, n <= N.
CheckResult orthonormality(const Units& u, const std::vector<double>& a_values, double tol = 1e-8);

// max |psi_bessel - psi_laguerre| / sup|psi_n| on `points` nodes in (-a, a + 12/lambda0].
CheckResult dual_form(const Units& u, const std::vector<double>& a_values, int points = 200,
                      double tol = 1e-10);

// Analytic-jet ODE residual on the interior 90% of (-a, a + 12/lambda0] for
// every bound state and continuum states at E / V_inf in `continuum_ratios`.
// Ratios that do not clear continuum_threshold() are skipped and listed.
CheckResult ode_residuals(const model::ModelParams& p, const std::vector<double>& continuum_ratios,
                          int points = 200, double tol = 1e-6);

// Well A- psi_0, canonical a- psi_0 (both <= 1e-12 relative) and the
// canonical commutator on Gaussian-polynomial test functions (<= 1e-8).
CheckResult factorization(const model::ModelParams& p, int points = 200);

// Sup error at nu below `threshold`, and sup-error ratios under nu -> 4 nu
// for nu in rate_nus within [0.35, 0.65].
CheckResult bessel_hermite(double nu, const std::vector<double>& rate_nus, double threshold = 0.05);

// L2 distance to the canonical state strictly decreasing over a_values for
// each n, and last <= max_ratio * first.
CheckResult wavefunction_limit(const std::vector<int>& levels, const std::vector<double>& a_values,
                               double max_ratio = 0.2);

// |psi_E(x)| at fixed q strictly decreasing over a_values; when max_ratio > 0
// also last <= max_ratio * first.
CheckResult continuum_limit(const std::vector<double>& a_values, double q, double x,
                            double max_ratio);

struct VerifyConfig {
  Units units;
  std::vector<double> a_values{1.0, 2.0};
  int grid_points = 20000;
  double fd_tol = 1e-5;
  double nu = 1e9;
  std::vector<std::string> selected;  // empty = all
};

const std::vector<std::string>& check_names();

// Runs the selected checks in check_names() order. DomainError for an
// unknown name.
std::vector<CheckResult> run_verify(const VerifyConfig& config);

}  // namespace pdem::checks
