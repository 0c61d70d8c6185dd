#pragma once

// The semi-infinite step-harmonic well: a harmonic oscillator whose
// BenDaniel-Duke effective mass M(x) = a^2 m0 / (a + x)^2 turns the parabola
// into a profile with a hard wall at x = -a and a finite plateau
// V_inf = m0 omega^2 a^2 / 2 as x -> +inf.
//
// Throughout, t = x + a is the distance from the wall and b^2 = (lambda0 a)^2
// is the single dimensionless confinement strength.

#include <complex>
#include <variant>

#include "pdem/specfun.hpp"

namespace pdem::model {

class ModelParams {
 public:
  // Throws InvalidParams naming the violated invariant:
  //   m0, omega, hbar > 0 and a > 1 / (sqrt(2) lambda0).
  static ModelParams make(double m0, double omega, double hbar, double a);
  // m0 = omega = hbar = 1.
  static ModelParams unit(double a) { return make(1.0, 1.0, 1.0, a); }

  double m0() const { return m0_; }
  double omega() const { return omega_; }
  double hbar() const { return hbar_; }
  double a() const { return a_; }
  double lambda0() const { return lambda0_; }
  double b() const { return b_; }
  // lambda0^2 a^2, formed without the square root so integer values stay exact.
  double b_squared() const { return b2_; }
  // lambda0^2 a^3; the length scale of the essential singularity at the wall.
  double wall_length() const { return b2_ * a_; }

 private:
  ModelParams(double m0, double omega, double hbar, double a);

  double m0_;
  double omega_;
  double hbar_;
  double a_;
  double lambda0_;
  double b_;
  double b2_;
};

struct DiscreteState {
  int n = 0;
  double energy = 0.0;
  double log_norm = 0.0;  // ln C_n
  double mu = 0.0;        // 2 b^2 - 2n
  double gamma = 0.0;     // -n
};

struct ContinuousState {
  double energy = 0.0;
  double c0 = 0.0;
  double q = 0.0;
  std::complex<double> gamma;
  std::complex<double> mu;
  std::complex<double> scale{1.0, 0.0};
};

// c0 = 2 m0 a^2 E / hbar^2 and c2 = c0 + b^4.
struct ReducedConstants {
  double c0 = 0.0;
  double c2 = 0.0;
};

ReducedConstants reduced_constants(const ModelParams& params, double energy);

struct WallSignal {
  bool operator==(const WallSignal&) const = default;
};
using PotentialValue = std::variant<double, WallSignal>;

enum class WavefunctionForm { Bessel, Laguerre };

// Value and first two x-derivatives at one point.
template <class T>
struct Jet {
  T value{};
  T d1{};
  T d2{};
};

// Wavefunction magnitudes below exp(kLogUnderflow) are returned as exactly 0.
inline constexpr double kLogUnderflow = -700.0;

double effective_mass(const ModelParams& params, double x);
PotentialValue potential(const ModelParams& params, double x);
double well_depth(const ModelParams& params);

/// Bottom of the continuous spectrum, V_inf + hbar^2 / (8 m0 a^2).
///
/// The BenDaniel-Duke kinetic term keeps a constant remainder as M -> 0, so
/// scattering starts slightly above the plateau. The top bound level can sit
/// at or just above V_inf (E_N == V_inf exactly whenever b^2 is an integer)
/// yet is always strictly below this threshold.
double continuum_threshold(const ModelParams& params);

// Largest N with N < b^2 - 1/2.
int max_level(const ModelParams& params);

DiscreteState energy(const ModelParams& params, int n);

// ln C_n, evaluated entirely in log space.
double normalization(const ModelParams& params, int n);

double wavefunction(const ModelParams& params, int n, double x,
                    WavefunctionForm form = WavefunctionForm::Bessel);

double wavefunction_derivative(const ModelParams& params, int n, double x);

// psi_n, psi_n', psi_n'' from the Bessel form.
Jet<double> wavefunction_jet(const ModelParams& params, int n, double x);

// alpha0(x) = psi_0'/psi_0.
double alpha0(const ModelParams& params, double x);

// rho(x) = hbar^2 / (2 M(x)).
double kinetic_coefficient(const ModelParams& params, double x);

struct ValueAndSlope {
  double value = 0.0;
  double derivative = 0.0;
};

/// Lowering operator sqrt(rho/(hbar omega)) (d/dx - alpha0) applied to a
/// function given by its value and derivative at x.
double apply_lowering(const ModelParams& params, ValueAndSlope f, double x);

/// Raises BelowContinuum unless 4 c0 - 4 b^4 - 1 > 0, i.e. E is above
/// continuum_threshold(); that is stricter than E > V_inf.
ContinuousState continuum_state(const ModelParams& params, double energy,
                                std::complex<double> scale = {1.0, 0.0});

/// scale * (x/a + 1)^(-gamma - b^2) * exp(-lambda0^2 a^3 / (x + a))
///       * 1F1(gamma; mu; 2 lambda0^2 a^3 / (x + a)).
///
/// This is the solution regular as x -> +inf. It is not the solution that
/// vanishes at the wall: for complex gamma the 1F1 grows like exp(z) and the
/// modulus diverges as x -> -a+. The log form keeps such values usable.
specfun::LogComplex continuum_log_wavefunction(const ContinuousState& state,
                                               const ModelParams& params, double x);
std::complex<double> continuum_wavefunction(const ContinuousState& state,
                                            const ModelParams& params, double x);
Jet<std::complex<double>> continuum_jet(const ContinuousState& state, const ModelParams& params,
                                        double x);

}  // namespace pdem::model
