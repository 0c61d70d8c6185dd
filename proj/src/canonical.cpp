#include "pdem/canonical.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "pdem/errors.hpp"
#include "pdem/specfun.hpp"

namespace pdem::canonical {

CanonicalParams::CanonicalParams(double m0, double omega, double hbar)
    : m0_(m0), omega_(omega), hbar_(hbar), lambda0_(std::sqrt(m0 * omega / hbar)) {}

CanonicalParams CanonicalParams::make(double m0, double omega, double hbar) {
  for (double v : {m0, omega, hbar}) {
    if (!std::isfinite(v) || !(v > 0.0)) {
      throw DomainError("canonical oscillator constants must be finite and > 0, got " +
                        std::to_string(v));
    }
  }
  return CanonicalParams(m0, omega, hbar);
}

double canonical_energy(const CanonicalParams& p, int n) {
  if (n < 0) throw DomainError("canonical_energy: n must be >= 0");
  return p.hbar() * p.omega() * (n + 0.5);
}

namespace {

// ln of (2^n n!)^(-1/2) (lambda0^2/pi)^(1/4).
double log_prefactor(const CanonicalParams& p, int n) {
  return -0.5 * (n * std::numbers::ln2 + specfun::log_gamma(n + 1.0)) +
         0.25 * std::log(p.lambda0() * p.lambda0() / std::numbers::pi);
}

}  // namespace

double canonical_wavefunction(const CanonicalParams& p, int n, double x) {
  if (n < 0) throw DomainError("canonical_wavefunction: n must be >= 0");
  const double u = p.lambda0() * x;
  return std::exp(log_prefactor(p, n) - 0.5 * u * u) * specfun::hermite(n, u);
}

double canonical_wavefunction_derivative(const CanonicalParams& p, int n, double x) {
  if (n < 0) throw DomainError("canonical_wavefunction_derivative: n must be >= 0");
  const double l = p.lambda0();
  const double u = l * x;
  const double dh = n == 0 ? 0.0 : 2.0 * n * specfun::hermite(n - 1, u);
  return std::exp(log_prefactor(p, n) - 0.5 * u * u) * l * (dh - u * specfun::hermite(n, u));
}

double apply_ladder(const CanonicalParams& p, Ladder direction, model::ValueAndSlope f, double x) {
  const double l = p.lambda0();
  const double sign = direction == Ladder::Raise ? -1.0 : 1.0;
  return (l * l * x * f.value + sign * f.derivative) / (std::numbers::sqrt2 * l);
}

}  // namespace pdem::canonical
