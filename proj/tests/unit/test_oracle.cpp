#include <cmath>

#include "doctest.h"
#include "pdem/errors.hpp"
#include "pdem/oracle.hpp"

using namespace pdem;
using namespace pdem::oracle;
using doctest::Approx;

TEST_CASE("grid construction") {
  const auto g = Grid::uniform(0.0, 4.0, 3);
  CHECK(g.spacing() == 1.0);
  CHECK(g.node(1) == 1.0);
  CHECK(g.node(3) == 3.0);
  CHECK(g.jacobian(2) == 1.0);
  CHECK(g.refined().count() == 7);
  CHECK(g.refined().spacing() == 0.5);
  CHECK_THROWS_AS(Grid::uniform(1.0, 0.0, 10), DomainError);
  CHECK_THROWS_AS(Grid::uniform(0.0, 1.0, 2), DomainError);
  const auto lg = Grid::logarithmic(-2.0, -1.0, 2.0 * std::exp(4.0) - 2.0, 3);
  CHECK(lg.node(2) == Approx(-2.0 + std::exp(std::log(1.0) + 0.5 * std::log(2.0 * std::exp(4.0)))));
  CHECK_THROWS_AS(Grid::logarithmic(-2.0, -2.0, 1.0, 10), DomainError);
}

TEST_CASE("constant-mass reduction gives the [-1, 2, -1] stencil") {
  // Huge a with tiny omega: M ~ m0 and V ~ 0 on [0, 1].
  const auto p = model::ModelParams::make(1.0, 1e-12, 1.0, 1e9);
  const auto g = Grid::uniform(0.0, 1.0, 3);
  const auto h = build_hamiltonian(p, g);
  const double s = 1.0 / (2.0 * 0.25 * 0.25);
  for (int i = 0; i < 3; ++i) CHECK(h.matrix.diag[i] == Approx(2.0 * s).epsilon(1e-8));
  for (int i = 0; i < 2; ++i) CHECK(h.matrix.off[i] == Approx(-s).epsilon(1e-8));
}

TEST_CASE("build_hamiltonian rejects a grid touching the wall") {
  const auto p = model::ModelParams::unit(2);
  CHECK_THROWS_AS(build_hamiltonian(p, Grid::uniform(-2.0, 5.0, 100)), DomainError);
  CHECK_THROWS_AS(build_hamiltonian(p, Grid::uniform(-3.0, 5.0, 100)), DomainError);
}

TEST_CASE("small tridiagonal eigenproblems") {
  SymmetricTridiagonal t{{2.0, 2.0}, {-1.0}};
  const auto r = tridiagonal_eigenpairs(t, 2);
  CHECK(r.values[0] == Approx(1.0).epsilon(1e-12));
  CHECK(r.values[1] == Approx(3.0).epsilon(1e-12));
  CHECK(std::abs(r.vectors[0][0]) == Approx(std::sqrt(0.5)).epsilon(1e-10));

  SymmetricTridiagonal d{{5.0, 1.0, 3.0}, {0.0, 0.0}};
  const auto rd = tridiagonal_eigenpairs(d, 1);
  CHECK(rd.values.size() == 1);
  CHECK(rd.values[0] == Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(rd.vectors[0][1]) == Approx(1.0));

  CHECK_THROWS_AS(tridiagonal_eigenpairs(t, 0), DomainError);
  CHECK_THROWS_AS(tridiagonal_eigenpairs(t, 3), DomainError);
}

TEST_CASE("eigensolver against the discrete Laplacian spectrum") {
  const int n = 200;
  SymmetricTridiagonal t{std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0)};
  const auto r = tridiagonal_eigenpairs(t, 6);
  for (int k = 1; k <= 6; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(k * M_PI / (n + 1));
    CHECK(r.values[k - 1] == Approx(exact).epsilon(1e-10));
  }
  // Mutually orthogonal unit vectors.
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j <= i; ++j) {
      double dot = 0.0;
      for (int k = 0; k < n; ++k) dot += r.vectors[i][k] * r.vectors[j][k];
      CHECK(dot == Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("eigensolver separates a near-degenerate pair") {
  // Two weakly coupled copies of the same block.
  SymmetricTridiagonal t{{1.0, 4.0, 1.0, 4.0}, {0.5, 1e-9, 0.5}};
  const auto r = tridiagonal_eigenpairs(t, 2);
  double dot = 0.0;
  for (int k = 0; k < 4; ++k) dot += r.vectors[0][k] * r.vectors[1][k];
  CHECK(std::abs(dot) < 1e-8);
}

TEST_CASE("FD spectrum reproduces the closed form on the default grid") {
  const auto p = model::ModelParams::unit(2);
  const auto ham = build_hamiltonian(p, Grid::default_for(p, 20000));
  const auto r = lowest_eigenpairs(ham, 4);
  const double expect[] = {0.5, 1.25, 1.75, 2.0};
  for (int n = 0; n < 4; ++n) CHECK(std::abs(r.eigenvalues[n] - expect[n]) <= 1e-5 * expect[n]);
  CHECK(r.eigenvalues.size() == 4);
  CHECK(r.eigenvectors.size() == 4);
  for (std::size_t n = 1; n < 4; ++n) CHECK(r.eigenvalues[n] > r.eigenvalues[n - 1]);

  // Unit norm under the discrete inner product.
  const double h = r.grid.spacing();
  for (const auto& v : r.eigenvectors) {
    double s = 0.0;
    for (int i = 0; i < r.grid.count(); ++i) s += v.values[i] * v.values[i] * r.grid.jacobian(i + 1) * h;
    CHECK(s == Approx(1.0).epsilon(1e-12));
  }

  // Ground state agrees with the closed form in max norm.
  double worst = 0.0;
  const auto& g0 = r.eigenvectors[0];
  for (std::size_t i = 0; i < g0.x.size(); ++i) {
    worst = std::max(worst, std::abs(g0.values[i] - model::wavefunction(p, 0, g0.x[i])));
  }
  CHECK(worst <= 1e-4);
}

TEST_CASE("second-order convergence on the default grid") {
  const auto p = model::ModelParams::unit(2);
  auto g = Grid::default_for(p, 1000);
  double prev[2] = {0, 0};
  for (int r = 0; r < 4; ++r) {
    const auto e = lowest_eigenpairs(build_hamiltonian(p, g), 2);
    for (int n = 0; n < 2; ++n) {
      const double err = std::abs(e.eigenvalues[n] - model::energy(p, n).energy);
      if (r > 0 && err > 1e-9) {
        CHECK(prev[n] / err >= 3.5);
        CHECK(prev[n] / err <= 4.5);
      }
      prev[n] = err;
    }
    g = g.refined();
  }
}

TEST_CASE("eigenpairs are deterministic") {
  const auto p = model::ModelParams::unit(3);
  const auto h = build_hamiltonian(p, Grid::default_for(p, 3000));
  const auto a = lowest_eigenpairs(h, 5);
  const auto b = lowest_eigenpairs(h, 5);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors[4].values == b.eigenvectors[4].values);
}

TEST_CASE("quadrature") {
  CHECK(integrate([](double) { return 1.0; }, 0.0, 2.0) == Approx(2.0).epsilon(1e-15));
  for (double tol : {1e-6, 1e-10}) {
    CHECK(std::abs(integrate([](double x) { return std::exp(-x); }, 0.0, 50.0, {tol, 4000}) -
                   (1.0 - std::exp(-50.0))) <= tol);
  }
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, INFINITY) == Approx(1.0).epsilon(1e-10));
  CHECK(integrate_to_infinity([](double x) { return 1.0 / (x * x); }, 1.0, 1.0) ==
        Approx(1.0).epsilon(1e-10));
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, {0.0, 10}), DomainError);

  // A singular integrand cannot meet the tolerance.
  try {
    integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-10, 50});
    CHECK(false);
  } catch (const ToleranceNotMet& e) {
    CHECK(e.error_bound() > 0.0);
  }

  SampledFunction s{{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}};
  CHECK(integrate(s) == 2.0);
}

TEST_CASE("normalization and orthogonality by quadrature") {
  const auto p = model::ModelParams::unit(2);
  auto sq = [&](double x) { const double v = model::wavefunction(p, 0, x); return v * v; };
  auto cross = [&](double x) { return model::wavefunction(p, 0, x) * model::wavefunction(p, 1, x); };
  // The power-law tails beyond x = 40 hold ~1e-7 of the norm (psi_0 ~ t^-4,
  // psi_1 ~ t^-3), so the truncated integrals are completed with the tail.
  const double lo = -2.0 + 1e-6;
  const double body_sq = integrate(sq, lo, 40.0);
  const double tail_sq = integrate_to_infinity(sq, 40.0, 40.0);
  CHECK(tail_sq > 1e-8);
  CHECK(std::abs(body_sq + tail_sq - 1.0) <= 1e-8);
  const double body_x = integrate(cross, lo, 40.0);
  const double tail_x = integrate_to_infinity(cross, 40.0, 40.0);
  CHECK(std::abs(body_x + tail_x) <= 1e-8);
}

TEST_CASE("ODE residuals") {
  const auto p = model::ModelParams::unit(2);
  for (double x : {-1.5, 0.0, 3.0}) {
    CHECK(ode_residual(p, model::wavefunction_jet(p, 0, x), model::energy(p, 0).energy, x) <= 1e-10);
  }
  const auto p3 = model::ModelParams::unit(3);
  const double e2 = model::energy(p3, 2).energy;
  for (double x : {-2.0, -1.0, 0.5, 2.0, 6.0}) {
    const auto r = ode_residual_fd(p3, [&](double y) { return std::complex<double>(model::wavefunction(p3, 2, y)); },
                                   e2, x);
    CHECK(r.residual <= 1e-6);
    CHECK(r.richardson_gap <= 1e-5);
  }
  // Negative control.
  const double x = 1.0;
  const double g = std::exp(-x * x);
  model::Jet<double> trial{g, -2 * x * g, (4 * x * x - 2) * g};
  CHECK(ode_residual(p, trial, 1.0, x) > 1e-2);
  CHECK_THROWS_AS(ode_residual(p, trial, 1.0, -2.0), DomainError);
  CHECK_THROWS_AS(ode_residual_fd(p, [](double) { return std::complex<double>(1.0); }, 1.0, -2.0 + 1e-4),
                  DomainError);

  // Complex continuum state.
  const auto s = model::continuum_state(p, 3.0);
  CHECK(ode_residual(p, model::continuum_jet(s, p, 0.0), s.energy, 0.0) <= 1e-6);
}
