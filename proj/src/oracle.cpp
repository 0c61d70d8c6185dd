#include "pdem/oracle.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <string>
#include <variant>

#include "pdem/errors.hpp"

namespace pdem::oracle {

// ---------------------------------------------------------------------------
// Grid
// ---------------------------------------------------------------------------

Grid::Grid(GridMapping mapping, double origin, double x_min, double x_max, int count)
    : mapping_(mapping), origin_(origin), x_min_(x_min), x_max_(x_max), count_(count) {
  if (!(x_min < x_max)) throw DomainError("grid: x_min must be < x_max");
  if (count < 3) throw DomainError("grid: need at least 3 interior points");
  if (mapping == GridMapping::Uniform) {
    u_min_ = x_min;
    spacing_ = (x_max - x_min) / (count + 1);
  } else {
    if (!(x_min > origin)) throw DomainError("logarithmic grid: x_min must lie right of origin");
    u_min_ = std::log(x_min - origin);
    spacing_ = (std::log(x_max - origin) - u_min_) / (count + 1);
  }
  if (!(spacing_ > 0.0)) throw DomainError("grid: non-positive spacing");
}

Grid Grid::uniform(double x_min, double x_max, int count) {
  return Grid(GridMapping::Uniform, 0.0, x_min, x_max, count);
}

Grid Grid::logarithmic(double origin, double x_min, double x_max, int count) {
  return Grid(GridMapping::Logarithmic, origin, x_min, x_max, count);
}

double default_log_extent(const model::ModelParams& params) {
  const double kappa = params.b_squared() - model::max_level(params) - 0.5;
  return std::clamp(20.0 / kappa, 20.0, 200.0);
}

Grid Grid::default_for(const model::ModelParams& params, int count) {
  const double a = params.a();
  return logarithmic(-a, -a + 1e-3 * a, -a + a * std::exp(default_log_extent(params)), count);
}

double Grid::position_at(double u) const {
  return mapping_ == GridMapping::Uniform ? u : origin_ + std::exp(u);
}

double Grid::jacobian_at(double u) const {
  return mapping_ == GridMapping::Uniform ? 1.0 : std::exp(u);
}

Grid Grid::refined() const { return Grid(mapping_, origin_, x_min_, x_max_, 2 * (count_ + 1) - 1); }

// ---------------------------------------------------------------------------
// Hamiltonian
// ---------------------------------------------------------------------------

double SymmetricTridiagonal::norm_inf() const {
  double best = 0.0;
  const std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i) {
    double row = std::abs(diag[i]);
    if (i > 0) row += std::abs(off[i - 1]);
    if (i + 1 < n) row += std::abs(off[i]);
    best = std::max(best, row);
  }
  return best;
}

DiscreteHamiltonian build_hamiltonian(const model::ModelParams& params, const Grid& grid) {
  if (!(grid.x_min() > -params.a())) {
    throw DomainError("grid touches the wall: x_min = " + std::to_string(grid.x_min()) +
                      " <= -a = " + std::to_string(-params.a()));
  }
  const int n = grid.count();
  const double h = grid.spacing();
  const double kinetic = 0.5 * params.hbar() * params.hbar() / (h * h);

  // flux[i] sits between nodes i and i+1 (node 0 and n+1 are the boundaries).
  std::vector<double> flux(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double u = grid.u_min() + (i + 0.5) * h;
    const double x = grid.position_at(u);
    flux[i] = kinetic / (model::effective_mass(params, x) * grid.jacobian_at(u));
  }

  DiscreteHamiltonian out{{}, grid, {}};
  out.weights.resize(n);
  out.matrix.diag.resize(n);
  out.matrix.off.resize(n - 1);
  for (int i = 0; i < n; ++i) {
    const double x = grid.node(i + 1);
    out.weights[i] = grid.jacobian(i + 1);
    const auto v = model::potential(params, x);
    out.matrix.diag[i] = (flux[i] + flux[i + 1]) / out.weights[i] + std::get<double>(v);
  }
  for (int i = 0; i + 1 < n; ++i) {
    out.matrix.off[i] = -flux[i + 1] / std::sqrt(out.weights[i] * out.weights[i + 1]);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tridiagonal eigensolver
// ---------------------------------------------------------------------------

namespace {

constexpr int kMaxBisections = 400;
constexpr int kMaxInverseIterations = 8;

// Number of eigenvalues strictly below lambda (negative pivots of T - lambda).
std::size_t sturm_count(const SymmetricTridiagonal& t, double lambda, double pivmin) {
  std::size_t count = 0;
  double q = t.diag[0] - lambda;
  if (std::abs(q) < pivmin) q = -pivmin;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < t.size(); ++i) {
    q = t.diag[i] - lambda - t.off[i - 1] * t.off[i - 1] / q;
    if (std::abs(q) < pivmin) q = -pivmin;
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect(const SymmetricTridiagonal& t, std::size_t index, double lo, double hi,
              double pivmin) {
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;
    if (hi - lo <= 1e-12 * std::max(std::abs(lo), std::abs(hi))) return mid;
    if (sturm_count(t, mid, pivmin) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  throw ConvergenceFailure(index, "bisection did not converge");
}

// LU of (T - shift) with partial pivoting, LAPACK dgttrf layout.
struct TridiagonalLu {
  std::vector<double> dl, d, du, du2;
  std::vector<bool> swapped;

  TridiagonalLu(const SymmetricTridiagonal& t, double shift, double tiny) {
    const std::size_t n = t.size();
    d.resize(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - shift;
    dl = t.off;
    du = t.off;
    du2.assign(n > 2 ? n - 2 : 0, 0.0);
    swapped.assign(n > 1 ? n - 1 : 0, false);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (std::abs(d[i]) >= std::abs(dl[i])) {
        if (d[i] == 0.0) d[i] = tiny;
        const double fact = dl[i] / d[i];
        dl[i] = fact;
        d[i + 1] -= fact * du[i];
      } else {
        const double fact = d[i] / dl[i];
        d[i] = dl[i];
        dl[i] = fact;
        const double temp = du[i];
        du[i] = d[i + 1];
        d[i + 1] = temp - fact * d[i + 1];
        if (i + 2 < n) {
          du2[i] = du[i + 1];
          du[i + 1] = -fact * du[i + 1];
        }
        swapped[i] = true;
      }
    }
    if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
  }

  void solve(std::vector<double>& b) const {
    const std::size_t n = d.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (!swapped[i]) {
        b[i + 1] -= dl[i] * b[i];
      } else {
        const double temp = b[i];
        b[i] = b[i + 1];
        b[i + 1] = temp - dl[i] * b[i];
      }
    }
    b[n - 1] /= d[n - 1];
    if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
    for (std::size_t k = n; k-- > 2;) {
      const std::size_t i = k - 2;
      b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
  }
};

double normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double e : v) s += e * e;
  s = std::sqrt(s);
  if (s > 0.0) {
    for (double& e : v) e /= s;
  }
  return s;
}

double residual_norm(const SymmetricTridiagonal& t, const std::vector<double>& v, double lambda) {
  const std::size_t n = t.size();
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = (t.diag[i] - lambda) * v[i];
    if (i > 0) r += t.off[i - 1] * v[i - 1];
    if (i + 1 < n) r += t.off[i] * v[i + 1];
    s += r * r;
  }
  return std::sqrt(s);
}

}  // namespace

TridiagonalEigenpairs tridiagonal_eigenpairs(const SymmetricTridiagonal& t, std::size_t k) {
  const std::size_t n = t.size();
  if (n == 0 || t.off.size() + 1 != n) throw DomainError("tridiagonal matrix has inconsistent shape");
  if (k < 1 || k > n) throw DomainError("requested eigenpair count outside 1..dimension");

  // Gershgorin interval.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double max_off2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(t.off[i - 1]);
    if (i + 1 < n) r += std::abs(t.off[i]);
    lo = std::min(lo, t.diag[i] - r);
    hi = std::max(hi, t.diag[i] + r);
    if (i + 1 < n) max_off2 = std::max(max_off2, t.off[i] * t.off[i]);
  }
  const double norm = std::max(t.norm_inf(), DBL_MIN);
  const double pad = 2.0 * DBL_EPSILON * norm + DBL_MIN;
  lo -= pad;
  hi += pad;
  const double pivmin = DBL_MIN * std::max(1.0, max_off2);

  TridiagonalEigenpairs out;
  out.values.reserve(k);
  double floor = lo;
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = bisect(t, j, floor, hi, pivmin);
    out.values.push_back(lambda);
    floor = std::max(lo, lambda - pad);
  }

  // Fixed-seed start vectors keep the result reproducible.
  std::mt19937_64 gen(0x5eed);
  const double tiny = DBL_EPSILON * norm;
  const double cluster = 1e-3 * norm;
  for (std::size_t j = 0; j < k; ++j) {
    const double lambda = out.values[j];
    const TridiagonalLu lu(t, lambda, tiny);
    std::vector<double> v(n);
    for (double& e : v) e = static_cast<double>(gen() >> 11) * 0x1.0p-53 - 0.5;
    normalize(v);

    bool ok = false;
    for (int it = 0; it < kMaxInverseIterations; ++it) {
      lu.solve(v);
      // Orthogonalize against earlier vectors of the same cluster.
      for (std::size_t p = 0; p < j; ++p) {
        if (std::abs(out.values[p] - lambda) > cluster) continue;
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += v[i] * out.vectors[p][i];
        for (std::size_t i = 0; i < n; ++i) v[i] -= dot * out.vectors[p][i];
      }
      if (normalize(v) == 0.0) break;
      if (residual_norm(t, v, lambda) <= 1e-8 * norm) {
        ok = true;
        if (it > 0) break;
      }
    }
    if (!ok) throw ConvergenceFailure(j, "inverse iteration residual above 1e-8 |T|");
    out.vectors.push_back(std::move(v));
  }
  return out;
}

EigenResult lowest_eigenpairs(const DiscreteHamiltonian& ham, std::size_t k) {
  auto pairs = tridiagonal_eigenpairs(ham.matrix, k);
  EigenResult out{std::move(pairs.values), {}, ham.grid};
  const double h = ham.grid.spacing();
  const int n = ham.grid.count();
  for (auto& phi : pairs.vectors) {
    SampledFunction f;
    f.x.resize(n);
    f.values.resize(n);
    double peak = 0.0;
    for (int i = 0; i < n; ++i) peak = std::max(peak, std::abs(phi[i]));
    double sign = 0.0;
    for (int i = 0; i < n && sign == 0.0; ++i) {
      if (std::abs(phi[i]) > 1e-3 * peak) sign = phi[i] > 0.0 ? 1.0 : -1.0;
    }
    // |phi|_2 = 1 and psi = phi / sqrt(w), so sum psi^2 w h = h.
    const double scale = sign / std::sqrt(h);
    for (int i = 0; i < n; ++i) {
      f.x[i] = ham.grid.node(i + 1);
      f.values[i] = scale * phi[i] / std::sqrt(ham.weights[i]);
    }
    out.eigenvectors.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

namespace {

struct Piece {
  double lo, hi, value, error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece kronrod_piece(const std::function<double(double)>& f, double lo, double hi) {
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 0, 0.0, &err);
  return {lo, hi, v, err};
}

}  // namespace

double integrate(const std::function<double(double)>& f, double x_min, double x_max,
                 QuadratureOptions options) {
  if (std::isinf(x_max) && x_max > 0.0) return integrate_to_infinity(f, x_min, 1.0, options);
  if (!(x_min < x_max)) throw DomainError("integrate: x_min must be < x_max");
  if (!(options.tol > 0.0)) throw DomainError("integrate: tol must be > 0");

  std::priority_queue<Piece> pieces;
  Piece first = kronrod_piece(f, x_min, x_max);
  double total = first.value;
  double error = first.error;
  pieces.push(first);
  while (error > options.tol * std::max(1.0, std::abs(total))) {
    if (static_cast<int>(pieces.size()) >= options.max_intervals) throw ToleranceNotMet(total, error);
    const Piece worst = pieces.top();
    pieces.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) throw ToleranceNotMet(total, error);
    const Piece left = kronrod_piece(f, worst.lo, mid);
    const Piece right = kronrod_piece(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    pieces.push(left);
    pieces.push(right);
    if (pieces.size() % 64 == 0) {
      // Re-sum to keep incremental round-off out of the stopping test.
      auto copy = pieces;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

double integrate_to_infinity(const std::function<double(double)>& f, double x_min,
                             double length_scale, QuadratureOptions options) {
  if (!(length_scale > 0.0)) throw DomainError("integrate_to_infinity: length scale must be > 0");
  auto mapped = [&](double u) {
    if (u >= 1.0) return 0.0;
    const double r = 1.0 / (1.0 - u);
    return f(x_min + length_scale * u * r) * length_scale * r * r;
  };
  return integrate(mapped, 0.0, 1.0, options);
}

double integrate(const SampledFunction& f) {
  if (f.x.size() != f.values.size()) throw DomainError("sampled function: size mismatch");
  double s = 0.0;
  for (std::size_t i = 1; i < f.x.size(); ++i) {
    s += 0.5 * (f.x[i] - f.x[i - 1]) * (f.values[i] + f.values[i - 1]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// ODE residual
// ---------------------------------------------------------------------------

namespace {

std::complex<double> ode_lhs(const model::ModelParams& p,
                             const model::Jet<std::complex<double>>& psi,
                             std::complex<double> energy, double x) {
  const double t = x + p.a();
  if (!(t > 0.0)) throw DomainError("ode_residual: x at or beyond the wall");
  const double b2 = p.b_squared();
  const std::complex<double> c0 = 2.0 * p.m0() * p.a() * p.a() * energy / (p.hbar() * p.hbar());
  const double t2 = t * t;
  const std::complex<double> coeff = b2 * b2 * x * x / (t2 * t2) - c0 / t2;
  return psi.d2 + 2.0 / t * psi.d1 - coeff * psi.value;
}

double ode_scale(const model::ModelParams& p, const model::Jet<std::complex<double>>& psi) {
  const double l = p.lambda0();
  return std::max({std::abs(psi.d2), l * std::abs(psi.d1), l * l * std::abs(psi.value), 1e-300});
}

}  // namespace

double ode_residual(const model::ModelParams& p, const model::Jet<std::complex<double>>& psi,
                    std::complex<double> energy, double x) {
  return std::abs(ode_lhs(p, psi, energy, x)) / ode_scale(p, psi);
}

double ode_residual(const model::ModelParams& p, const model::Jet<double>& psi, double energy,
                    double x) {
  return ode_residual(p, model::Jet<std::complex<double>>{psi.value, psi.d1, psi.d2},
                      std::complex<double>(energy, 0.0), x);
}

FdResidual ode_residual_fd(const model::ModelParams& p,
                           const std::function<std::complex<double>(double)>& psi,
                           std::complex<double> energy, double x) {
  const double h = 1e-4 * p.a();
  if (!(x - 4.0 * h > -p.a())) throw DomainError("ode_residual_fd: stencil reaches the wall");
  auto jet = [&](double step) {
    const auto fm2 = psi(x - 2.0 * step), fm1 = psi(x - step), f0 = psi(x);
    const auto fp1 = psi(x + step), fp2 = psi(x + 2.0 * step);
    model::Jet<std::complex<double>> j;
    j.value = f0;
    j.d1 = (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * step);
    j.d2 = (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * step * step);
    return j;
  };
  const auto fine = jet(h);
  const auto coarse = jet(2.0 * h);
  const double scale = ode_scale(p, fine);
  const auto lhs_fine = ode_lhs(p, fine, energy, x);
  const auto lhs_coarse = ode_lhs(p, coarse, energy, x);
  return {std::abs(lhs_fine) / scale, std::abs(lhs_fine - lhs_coarse) / scale};
}

}  // namespace pdem::oracle
