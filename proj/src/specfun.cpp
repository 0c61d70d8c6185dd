#include "pdem/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <optional>
#include <string>

#include "pdem/errors.hpp"

namespace pdem::specfun {

namespace {

void require_degree(int n, const char* who) {
  if (n < 0) throw DomainError(std::string(who) + ": negative degree " + std::to_string(n));
}

}  // namespace

double hermite(int n, double x) {
  require_degree(n, "hermite");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double laguerre(int n, double alpha, double x) {
  require_degree(n, "laguerre");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int k = 1; k < n; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_poly_series(int n, double alpha, double x) {
  require_degree(n, "bessel_poly_series");
  // 2F0(-n, n+alpha+1; -; -x/2), terminating after k = n.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < n; ++k) {
    term *= (k - n) * (n + alpha + 1.0 + k) / (k + 1.0) * (-0.5 * x);
    sum += term;
  }
  return sum;
}

double bessel_poly(int n, double alpha, double x) {
  require_degree(n, "bessel_poly");
  if (n == 0) return 1.0;
  for (int k = 1; k < n; ++k) {
    if (std::abs((k + alpha + 1.0) * (2.0 * k + alpha)) < kBesselPoleGuard) {
      return bessel_poly_series(n, alpha, x);
    }
  }
  double prev = 1.0;
  double cur = 0.5 * (2.0 + alpha) * x + 1.0;
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + alpha;
    const double denom = (k + alpha + 1.0) * s;
    const double A = (s + 1.0) * (2.0 * alpha + s * (s + 2.0) * x) / (2.0 * denom);
    const double B = k * (s + 2.0) / denom;
    const double next = A * cur + B * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_poly_derivative(int n, double alpha, double x, int order) {
  require_degree(n, "bessel_poly_derivative");
  if (order < 0) throw DomainError("bessel_poly_derivative: negative order");
  if (order > n) return 0.0;
  double factor = 1.0;
  for (int j = 0; j < order; ++j) factor *= 0.5 * (n - j) * (n + alpha + 1.0 + j);
  return factor * bessel_poly(n - order, alpha + 2.0 * order, x);
}

double evaluate(const PolyFamily& family, int n, double x) {
  switch (family.kind) {
    case PolyFamily::Kind::Hermite:
      return hermite(n, x);
    case PolyFamily::Kind::GeneralizedLaguerre:
      return laguerre(n, family.alpha, x);
    case PolyFamily::Kind::Bessel:
      return bessel_poly(n, family.alpha, x);
  }
  return 0.0;
}

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("log_gamma: argument must be finite and > 0, got " + std::to_string(x));
  }
  // boost's lgamma is reentrant, unlike ::lgamma which writes signgam.
  return boost::math::lgamma(x);
}

double pochhammer(double a, int n) {
  require_degree(n, "pochhammer");
  double p = 1.0;
  for (int k = 0; k < n; ++k) p *= a + k;
  return p;
}

// ---------------------------------------------------------------------------
// Kummer series
// ---------------------------------------------------------------------------

namespace {

constexpr long kMaxTerms = 100000;
constexpr int kSmallRun = 8;
constexpr double kIntegerTol = 1e-12;

template <class Real>
struct Cx {
  Real re;
  Real im;
};

template <class Real>
Cx<Real> mul(const Cx<Real>& u, const Cx<Real>& v) {
  return {u.re * v.re - u.im * v.im, u.re * v.im + u.im * v.re};
}

template <class Real>
Cx<Real> div(const Cx<Real>& u, const Cx<Real>& v) {
  const Real d = v.re * v.re + v.im * v.im;
  return {(u.re * v.re + u.im * v.im) / d, (u.im * v.re - u.re * v.im) / d};
}

template <class Real>
Real modulus(const Cx<Real>& u) {
  using std::hypot;
  return hypot(u.re, u.im);
}

template <class Real>
struct SeriesOutcome {
  Cx<Real> sum;
  Real max_term;
  bool finite = true;
};

std::optional<long> nonpositive_integer(std::complex<double> w) {
  if (std::abs(w.imag()) > kIntegerTol) return std::nullopt;
  const double r = std::round(w.real());
  if (r > 0.0 || std::abs(w.real() - r) > kIntegerTol) return std::nullopt;
  return static_cast<long>(-r);
}

template <class Real>
SeriesOutcome<Real> sum_series(std::complex<double> a_in, std::complex<double> b_in, double z_in,
                               std::optional<long> terminate_at, const Real& rel_stop) {
  const Cx<Real> a{Real(a_in.real()), Real(a_in.imag())};
  const Cx<Real> b{Real(b_in.real()), Real(b_in.imag())};
  const Real z(z_in);

  Cx<Real> term{Real(1), Real(0)};
  Cx<Real> sum = term;
  Real max_term(1);
  int small_run = 0;
  for (long k = 0;; ++k) {
    if (terminate_at && k == *terminate_at) break;
    if (k >= kMaxTerms) {
      throw NonConvergence("kummer_1f1: no convergence after " + std::to_string(kMaxTerms) +
                           " terms");
    }
    const Cx<Real> num{a.re + Real(k), a.im};
    const Cx<Real> den{b.re + Real(k), b.im};
    term = div(mul(term, num), den);
    term.re *= z / Real(k + 1);
    term.im *= z / Real(k + 1);
    sum.re += term.re;
    sum.im += term.im;

    const Real t = modulus(term);
    if constexpr (std::is_same_v<Real, double>) {
      if (!std::isfinite(t) || !std::isfinite(sum.re) || !std::isfinite(sum.im)) {
        return {sum, max_term, false};
      }
    }
    if (t > max_term) max_term = t;
    if (terminate_at) continue;
    if (t < rel_stop * modulus(sum)) {
      if (++small_run >= kSmallRun) break;
    } else {
      small_run = 0;
    }
  }
  return {sum, max_term, true};
}

template <class Real>
double digits_lost(const SeriesOutcome<Real>& s) {
  using std::log10;
  const Real m = modulus(s.sum);
  if (m == 0) return std::numeric_limits<double>::infinity();
  return static_cast<double>(log10(s.max_term / m));
}

template <class Real>
LogComplex to_log(const Cx<Real>& w) {
  using std::atan2;
  using std::log;
  const Real m = modulus(w);
  if (m == 0) return {};
  return {static_cast<double>(log(m)), static_cast<double>(atan2(w.im, w.re))};
}

template <class Real>
std::optional<LogComplex> extended_pass(std::complex<double> a, std::complex<double> b, double z,
                                        std::optional<long> terminate_at, double max_loss) {
  const auto s = sum_series<Real>(a, b, z, terminate_at, Real(1e-17));
  if (digits_lost(s) > max_loss) return std::nullopt;
  return to_log(s.sum);
}

}  // namespace

std::complex<double> LogComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  if (log_abs > std::log(std::numeric_limits<double>::max())) {
    throw Overflow("value with log-modulus " + std::to_string(log_abs) + " exceeds double range");
  }
  return std::polar(std::exp(log_abs), phase);
}

LogComplex kummer_1f1_log(std::complex<double> a, std::complex<double> b, double z) {
  if (nonpositive_integer(b)) {
    throw PolePivot("kummer_1f1: lower parameter is a non-positive integer");
  }
  if (!std::isfinite(z)) throw DomainError("kummer_1f1: z must be finite");
  if (z == 0.0) return {0.0, 0.0};

  const auto terminate_at = nonpositive_integer(a);
  std::complex<double> a_eff = a;
  if (terminate_at) a_eff = {-static_cast<double>(*terminate_at), 0.0};

  const auto fast = sum_series<double>(a_eff, b, z, terminate_at, 1e-16);
  if (fast.finite && digits_lost(fast) <= kMaxDoubleDigitsLost) return to_log(fast.sum);

  using boost::multiprecision::cpp_bin_float_50;
  using boost::multiprecision::cpp_bin_float_100;
  if (auto r = extended_pass<cpp_bin_float_50>(a_eff, b, z, terminate_at, 30.0)) return *r;
  if (terminate_at) {
    // A polynomial: the 100-digit sum is as good as it gets, even at a root.
    return to_log(sum_series<cpp_bin_float_100>(a_eff, b, z, terminate_at, cpp_bin_float_100(0)).sum);
  }
  if (auto r = extended_pass<cpp_bin_float_100>(a_eff, b, z, terminate_at, 80.0)) return *r;
  throw NonConvergence("kummer_1f1: cancellation exceeds 100-digit working precision");
}

std::complex<double> kummer_1f1(std::complex<double> a, std::complex<double> b, double z) {
  return kummer_1f1_log(a, b, z).value();
}

}  // namespace pdem::specfun
