#pragma once

// Polynomial families and hypergeometric series used by the closed-form
// model. Everything here is a pure function of its arguments.

#include <complex>
#include <limits>

namespace pdem::specfun {

struct PolyFamily {
  enum class Kind { Hermite, GeneralizedLaguerre, Bessel };

  Kind kind = Kind::Hermite;
  double alpha = 0.0;  // unused for Hermite

  static PolyFamily hermite() { return {Kind::Hermite, 0.0}; }
  static PolyFamily generalized_laguerre(double alpha) { return {Kind::GeneralizedLaguerre, alpha}; }
  static PolyFamily bessel(double alpha) { return {Kind::Bessel, alpha}; }
};

double evaluate(const PolyFamily& family, int n, double x);

// H_n(x), physicists' normalization.
double hermite(int n, double x);

// L_n^alpha(x) by the three-term recurrence; total in alpha.
double laguerre(int n, double alpha, double x);

/// Bessel polynomial y_n(x; alpha) from the Askey scheme,
/// y_n(x; alpha) = 2F0(-n, n + alpha + 1; -; -x/2).
///
/// Uses the three-term recurrence unless one of its denominators
/// (k + alpha + 1)(2k + alpha) comes within kBesselPoleGuard of zero, in which
/// case the terminating sum is evaluated instead.
double bessel_poly(int n, double alpha, double x);

/// The terminating 2F0 sum, exposed for cross-checks.
double bessel_poly_series(int n, double alpha, double x);

/// d^order/dx^order y_n(x; alpha), via d/dx y_n(x;a) = n(n+a+1)/2 y_{n-1}(x;a+2).
double bessel_poly_derivative(int n, double alpha, double x, int order = 1);

inline constexpr double kBesselPoleGuard = 1e-8;

// Complex number held as (log|w|, arg w); lets values far outside double
// range travel until they are combined with compensating factors.
struct LogComplex {
  double log_abs = -std::numeric_limits<double>::infinity();
  double phase = 0.0;

  bool is_zero() const { return log_abs == -std::numeric_limits<double>::infinity(); }
  // Throws pdem::Overflow when |w| does not fit a double.
  std::complex<double> value() const;
};

/// Kummer's function 1F1(a; b; z) = sum_k (a)_k / (b)_k z^k / k!.
///
/// The series is summed until |term| < 1e-16 |partial sum| holds for eight
/// consecutive terms (or 10^5 terms, which raises NonConvergence). It
/// terminates exactly when a is a non-positive integer. If the double
/// precision pass overflows or cancellation costs more than
/// kMaxDoubleDigitsLost decimal digits, the sum is redone with 50 or 100
/// digit arithmetic.
///
/// Raises PolePivot when b is a non-positive integer (within 1e-12).
std::complex<double> kummer_1f1(std::complex<double> a, std::complex<double> b, double z);

/// Same series, returned in log form so that results beyond double range
/// (large z near the hard wall) remain usable.
LogComplex kummer_1f1_log(std::complex<double> a, std::complex<double> b, double z);

inline constexpr double kMaxDoubleDigitsLost = 3.0;

// ln Gamma(x) for x > 0; DomainError otherwise.
double log_gamma(double x);

// Rising factorial a (a+1) ... (a+n-1); 1 for n == 0.
double pochhammer(double a, int n);

}  // namespace pdem::specfun
