#include "pdem/model.hpp"

#include <cmath>
#include <string>

#include "pdem/errors.hpp"

namespace pdem::model {

using specfun::LogComplex;

ModelParams::ModelParams(double m0, double omega, double hbar, double a)
    : m0_(m0),
      omega_(omega),
      hbar_(hbar),
      a_(a),
      lambda0_(std::sqrt(m0 * omega / hbar)),
      b_(lambda0_ * a),
      b2_(m0 * omega * a * a / hbar) {}

ModelParams ModelParams::make(double m0, double omega, double hbar, double a) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(m0)) throw InvalidParams("m0 must be finite and > 0, got " + std::to_string(m0));
  if (!positive(omega)) {
    throw InvalidParams("omega must be finite and > 0, got " + std::to_string(omega));
  }
  if (!positive(hbar)) {
    throw InvalidParams("hbar must be finite and > 0, got " + std::to_string(hbar));
  }
  if (!std::isfinite(a)) throw InvalidParams("a must be finite");
  ModelParams p(m0, omega, hbar, a);
  if (!(p.b2_ > 0.5)) {
    throw InvalidParams("a must exceed 1/(sqrt(2) lambda0) = " +
                        std::to_string(1.0 / (std::sqrt(2.0) * p.lambda0_)) +
                        " so that at least one bound state exists; got a = " + std::to_string(a));
  }
  return p;
}

namespace {

double wall_distance(const ModelParams& p, double x) {
  const double t = x + p.a();
  if (!(t > 0.0)) {
    throw DomainError("x = " + std::to_string(x) + " is at or beyond the wall x = -a = " +
                      std::to_string(-p.a()));
  }
  return t;
}

void require_level(const ModelParams& p, int n) {
  const int top = max_level(p);
  if (n < 0 || n > top) throw LevelOutOfRange(n, top);
}

// exp(log_scale) * v with the underflow floor applied.
double scaled(double log_scale, double v) {
  if (v == 0.0) return 0.0;
  const double l = log_scale + std::log(std::abs(v));
  if (l < kLogUnderflow) return 0.0;
  return std::copysign(std::exp(l), v);
}

// ln(C_n) + ln(phi(x)), phi = (t/a)^(-b^2) exp(-lambda0^2 a^3 / t).
double log_envelope(const ModelParams& p, int n, double t) {
  return normalization(p, n) - p.b_squared() * std::log(t / p.a()) - p.wall_length() / t;
}

}  // namespace

ReducedConstants reduced_constants(const ModelParams& p, double energy) {
  const double c0 = 2.0 * p.m0() * p.a() * p.a() * energy / (p.hbar() * p.hbar());
  return {c0, c0 + p.b_squared() * p.b_squared()};
}

double effective_mass(const ModelParams& p, double x) {
  const double t = wall_distance(p, x);
  return p.a() * p.a() * p.m0() / (t * t);
}

PotentialValue potential(const ModelParams& p, double x) {
  const double t = x + p.a();
  if (!(t > 0.0)) return WallSignal{};
  const double r = x / t;
  return 0.5 * p.m0() * p.omega() * p.omega() * p.a() * p.a() * r * r;
}

double well_depth(const ModelParams& p) {
  return 0.5 * p.m0() * p.omega() * p.omega() * p.a() * p.a();
}

double continuum_threshold(const ModelParams& p) {
  return well_depth(p) + p.hbar() * p.hbar() / (8.0 * p.m0() * p.a() * p.a());
}

int max_level(const ModelParams& p) {
  return static_cast<int>(std::ceil(p.b_squared() - 0.5)) - 1;
}

DiscreteState energy(const ModelParams& p, int n) {
  require_level(p, n);
  DiscreteState s;
  s.n = n;
  s.energy = p.hbar() * p.omega() * (n + 0.5) -
             p.hbar() * p.hbar() / (2.0 * p.m0() * p.a() * p.a()) * n * (n + 1.0);
  s.log_norm = normalization(p, n);
  s.mu = 2.0 * p.b_squared() - 2.0 * n;
  s.gamma = -static_cast<double>(n);
  return s;
}

double normalization(const ModelParams& p, int n) {
  require_level(p, n);
  const double b2 = p.b_squared();
  return b2 * std::log(2.0 * b2) +
         0.5 * (std::log(2.0 * b2 - 2.0 * n - 1.0) - std::log(2.0 * p.wall_length()) -
                specfun::log_gamma(n + 1.0) - specfun::log_gamma(2.0 * b2 - n));
}

double wavefunction(const ModelParams& p, int n, double x, WavefunctionForm form) {
  require_level(p, n);
  const double t = wall_distance(p, x);
  const double b2 = p.b_squared();
  if (form == WavefunctionForm::Bessel) {
    const double y = specfun::bessel_poly(n, -2.0 * b2, t / p.wall_length());
    return scaled(log_envelope(p, n, t), y);
  }
  // y_n(x; -2b^2) = (-1)^n n! (2b^2)^(-n) (t/a)^n L_n^(2b^2-2n-1)(2 b^2 a / t), obtained by
  // matching the 1F1 representations of both polynomials.
  const double lag = specfun::laguerre(n, 2.0 * b2 - 2.0 * n - 1.0, 2.0 * b2 * p.a() / t);
  const double log_factor = specfun::log_gamma(n + 1.0) - n * std::log(2.0 * b2) +
                            n * std::log(t / p.a());
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  return scaled(log_envelope(p, n, t) + log_factor, sign * lag);
}

Jet<double> wavefunction_jet(const ModelParams& p, int n, double x) {
  require_level(p, n);
  const double t = wall_distance(p, x);
  const double b2 = p.b_squared();
  const double w = p.wall_length();
  const double alpha = -2.0 * b2;
  const double s = t / w;
  const double kappa = 1.0 / w;  // ds/dx

  const double y0 = specfun::bessel_poly(n, alpha, s);
  const double y1 = specfun::bessel_poly_derivative(n, alpha, s, 1);
  const double y2 = specfun::bessel_poly_derivative(n, alpha, s, 2);

  const double g = -b2 / t + w / (t * t);                  // (ln phi)'
  const double dg = b2 / (t * t) - 2.0 * w / (t * t * t);  // (ln phi)''

  const double le = log_envelope(p, n, t);
  Jet<double> j;
  // The envelope is exponentiated once per polynomial term so that psi' and
  // psi'' share the rounding of psi.
  j.value = scaled(le, y0);
  const double p1 = scaled(le, kappa * y1);
  const double p2 = scaled(le, kappa * kappa * y2);
  j.d1 = g * j.value + p1;
  j.d2 = (g * g + dg) * j.value + 2.0 * g * p1 + p2;
  return j;
}

double wavefunction_derivative(const ModelParams& p, int n, double x) {
  return wavefunction_jet(p, n, x).d1;
}

double alpha0(const ModelParams& p, double x) {
  const double t = wall_distance(p, x);
  return -p.b_squared() / t + p.wall_length() / (t * t);
}

double kinetic_coefficient(const ModelParams& p, double x) {
  return p.hbar() * p.hbar() / (2.0 * effective_mass(p, x));
}

double apply_lowering(const ModelParams& p, ValueAndSlope f, double x) {
  const double factor = std::sqrt(kinetic_coefficient(p, x) / (p.hbar() * p.omega()));
  return factor * (f.derivative - alpha0(p, x) * f.value);
}

ContinuousState continuum_state(const ModelParams& p, double e, std::complex<double> scale) {
  const double vinf = well_depth(p);
  if (!(e > vinf)) {
    throw BelowContinuum("E = " + std::to_string(e) + " does not exceed V_inf = " +
                         std::to_string(vinf));
  }
  const auto rc = reduced_constants(p, e);
  const double b2 = p.b_squared();
  const double q2 = 4.0 * rc.c0 - 4.0 * b2 * b2 - 1.0;
  if (!(q2 > 0.0)) {
    throw BelowContinuum("E = " + std::to_string(e) + " is below the scattering threshold " +
                         std::to_string(continuum_threshold(p)) + " (4 c0 - 4 b^4 - 1 <= 0)");
  }
  ContinuousState s;
  s.energy = e;
  s.c0 = rc.c0;
  s.q = std::sqrt(q2);
  s.gamma = {0.5 * (1.0 - 2.0 * b2), 0.5 * s.q};
  s.mu = {1.0, s.q};
  s.scale = scale;
  return s;
}

LogComplex continuum_log_wavefunction(const ContinuousState& s, const ModelParams& p, double x) {
  const double t = wall_distance(p, x);
  if (s.scale == std::complex<double>(0.0, 0.0)) return {};
  const double w = p.wall_length();
  const LogComplex f = specfun::kummer_1f1_log(s.gamma, s.mu, 2.0 * w / t);
  if (f.is_zero()) return {};
  const std::complex<double> expo = -s.gamma - p.b_squared();
  const double lt = std::log(t / p.a());
  return {f.log_abs + expo.real() * lt - w / t + std::log(std::abs(s.scale)),
          f.phase + expo.imag() * lt + std::arg(s.scale)};
}

std::complex<double> continuum_wavefunction(const ContinuousState& s, const ModelParams& p,
                                            double x) {
  return continuum_log_wavefunction(s, p, x).value();
}

Jet<std::complex<double>> continuum_jet(const ContinuousState& s, const ModelParams& p,
                                        double x) {
  using C = std::complex<double>;
  const double t = wall_distance(p, x);
  if (s.scale == C(0.0, 0.0)) return {};
  const double w = p.wall_length();
  const double b2 = p.b_squared();
  const double z = 2.0 * w / t;

  LogComplex f[3];
  for (int k = 0; k < 3; ++k) f[k] = specfun::kummer_1f1_log(s.gamma + double(k), s.mu + double(k), z);
  double m = f[0].log_abs;
  for (const auto& fk : f) m = std::max(m, fk.log_abs);

  auto rel = [m](const LogComplex& v) {
    return v.is_zero() ? C(0.0, 0.0) : std::polar(std::exp(v.log_abs - m), v.phase);
  };
  const C F0 = rel(f[0]);
  const C Fz = s.gamma / s.mu * rel(f[1]);
  const C Fzz = s.gamma * (s.gamma + 1.0) / (s.mu * (s.mu + 1.0)) * rel(f[2]);

  const C expo = -s.gamma - b2;
  const double lt = std::log(t / p.a());
  const C g = expo / t + w / (t * t);
  const C dg = -expo / (t * t) - 2.0 * w / (t * t * t);
  const double dz = -z / t;
  const double ddz = 2.0 * z / (t * t);

  const LogComplex prefactor{expo.real() * lt - w / t + m + std::log(std::abs(s.scale)),
                             expo.imag() * lt + std::arg(s.scale)};
  const C P = prefactor.value();

  Jet<C> j;
  j.value = P * F0;
  j.d1 = P * (g * F0 + Fz * dz);
  j.d2 = P * ((g * g + dg) * F0 + 2.0 * g * Fz * dz + Fzz * dz * dz + Fz * ddz);
  return j;
}

}  // namespace pdem::model
