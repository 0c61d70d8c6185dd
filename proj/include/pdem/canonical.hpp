#pragma once

// Constant-mass harmonic oscillator: the a -> inf target of the well model.

#include "pdem/model.hpp"

namespace pdem::canonical {

class CanonicalParams {
 public:
  // All three constants must be finite and > 0 (DomainError otherwise).
  static CanonicalParams make(double m0, double omega, double hbar);
  static CanonicalParams unit() { return make(1.0, 1.0, 1.0); }
  static CanonicalParams from(const model::ModelParams& p) {
    return make(p.m0(), p.omega(), p.hbar());
  }

  double m0() const { return m0_; }
  double omega() const { return omega_; }
  double hbar() const { return hbar_; }
  double lambda0() const { return lambda0_; }

 private:
  CanonicalParams(double m0, double omega, double hbar);

  double m0_;
  double omega_;
  double hbar_;
  double lambda0_;
};

enum class Ladder { Raise, Lower };

double canonical_energy(const CanonicalParams& params, int n);

double canonical_wavefunction(const CanonicalParams& params, int n, double x);
double canonical_wavefunction_derivative(const CanonicalParams& params, int n, double x);

// a+ = (lambda0^2 x - d/dx) / (sqrt2 lambda0), a- = (lambda0^2 x + d/dx) / (sqrt2 lambda0).
double apply_ladder(const CanonicalParams& params, Ladder direction, model::ValueAndSlope f,
                    double x);

}  // namespace pdem::canonical
