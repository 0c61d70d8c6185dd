#pragma once

// Independent numerical checks for the closed forms: a finite-difference
// BenDaniel-Duke Hamiltonian with its own tridiagonal eigensolver, adaptive
// quadrature, and ODE residuals. Nothing in here evaluates the analytic
// spectrum or wavefunctions.

#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "pdem/model.hpp"

namespace pdem::oracle {

enum class GridMapping {
  Uniform,      // nodes equally spaced in x
  Logarithmic,  // nodes equally spaced in u = ln(x - origin)
};

// `count` interior nodes strictly between x_min and x_max; the endpoints carry
// Dirichlet conditions. spacing() is measured in the mapped coordinate.
class Grid {
 public:
  static Grid uniform(double x_min, double x_max, int count);
  static Grid logarithmic(double origin, double x_min, double x_max, int count);

  // Logarithmic grid anchored at the wall: x_min = -a + 1e-3 a and a right
  // end far enough out for the slowest-decaying bound state (see
  // default_log_extent).
  static Grid default_for(const model::ModelParams& params, int count);

  GridMapping mapping() const { return mapping_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  int count() const { return count_; }
  double origin() const { return origin_; }
  double spacing() const { return spacing_; }

  // Position and dx/du of interior node i (1-based, 1..count); also valid for
  // half-integer offsets through position_at/jacobian_at.
  double node(int i) const { return position_at(u_min_ + i * spacing_); }
  double jacobian(int i) const { return jacobian_at(u_min_ + i * spacing_); }
  double position_at(double u) const;
  double jacobian_at(double u) const;
  double u_min() const { return u_min_; }

  // Same extent and mapping with spacing halved.
  Grid refined() const;

 private:
  Grid(GridMapping mapping, double origin, double x_min, double x_max, int count);

  GridMapping mapping_;
  double origin_;
  double x_min_;
  double x_max_;
  int count_;
  double u_min_;
  double spacing_;
};

// Right end of the default grid in u = ln((x + a)/a): the slowest bound
// state decays like exp(-kappa u) with kappa = b^2 - N - 1/2.
double default_log_extent(const model::ModelParams& params);

struct SymmetricTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;  // off[i] couples i and i+1

  std::size_t size() const { return diag.size(); }
  double norm_inf() const;
};

struct DiscreteHamiltonian {
  SymmetricTridiagonal matrix;
  Grid grid;
  std::vector<double> weights;  // dx/du at the nodes; all 1 on uniform grids
};

struct SampledFunction {
  std::vector<double> x;
  std::vector<double> values;
  std::string x_unit = "length";
};

struct EigenResult {
  std::vector<double> eigenvalues;
  std::vector<SampledFunction> eigenvectors;
  Grid grid;
};

struct TridiagonalEigenpairs {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // unit Euclidean norm
};

/// Flux-form discretization of -(hbar^2/2) d/dx (1/M) d/dx + V on the grid:
///
///   (H f)_i = -(hbar^2 / (2 h^2 w_i)) [ s_{i+1/2} (f_{i+1} - f_i) - s_{i-1/2} (f_i - f_{i-1}) ]
///             + V(x_i) f_i,     s = 1 / (M dx/du) at midpoints,
///
/// symmetrized with the node weights w = dx/du. On a uniform grid w = 1 and
/// this is the plain three-point flux stencil. Raises DomainError if the grid
/// reaches the wall.
DiscreteHamiltonian build_hamiltonian(const model::ModelParams& params, const Grid& grid);

/// k lowest eigenpairs by Sturm-sequence bisection and inverse iteration.
/// Raises ConvergenceFailure carrying the failing index.
TridiagonalEigenpairs tridiagonal_eigenpairs(const SymmetricTridiagonal& matrix, std::size_t k);

/// Eigenpairs mapped back to wavefunction samples on the grid, normalized
/// so that sum_i psi_i^2 w_i h = 1 and signed positive on the wall side.
EigenResult lowest_eigenpairs(const DiscreteHamiltonian& hamiltonian, std::size_t k);

struct QuadratureOptions {
  double tol = 1e-10;
  int max_intervals = 4000;
};

/// Globally adaptive 7/15-point Gauss-Kronrod. Converged when the summed
/// error estimate is at most tol * max(1, |I|); otherwise ToleranceNotMet.
/// x_max may be +inf, in which case x = x_min + L u / (1 - u) with L = 1.
double integrate(const std::function<double(double)>& f, double x_min, double x_max,
                 QuadratureOptions options = {});

// Semi-infinite range with an explicit length scale for the mapping.
double integrate_to_infinity(const std::function<double(double)>& f, double x_min,
                             double length_scale, QuadratureOptions options = {});

// Trapezoid rule over the samples.
double integrate(const SampledFunction& f);

/// |psi'' + 2/(a+x) psi' - (b^4 x^2/(a+x)^4 - c0/(a+x)^2) psi| divided by
/// max(|psi''|, lambda0 |psi'|, lambda0^2 |psi|, 1e-300), with c0 from E.
double ode_residual(const model::ModelParams& params, const model::Jet<std::complex<double>>& psi,
                    std::complex<double> energy, double x);
double ode_residual(const model::ModelParams& params, const model::Jet<double>& psi,
                    double energy, double x);

struct FdResidual {
  double residual = 0.0;  // with step h
  double richardson_gap = 0.0;  // |LHS(h) - LHS(2h)| over the same scale
};

/// Same residual with derivatives from 5-point central differences,
/// h = 1e-4 a. DomainError if x - 4h reaches the wall.
FdResidual ode_residual_fd(const model::ModelParams& params,
                           const std::function<std::complex<double>(double)>& psi,
                           std::complex<double> energy, double x);

}  // namespace pdem::oracle
