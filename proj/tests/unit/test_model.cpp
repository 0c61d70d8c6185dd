#include <cmath>
#include <complex>
#include <variant>

#include "doctest.h"
#include "pdem/errors.hpp"
#include "pdem/model.hpp"

using namespace pdem::model;
using doctest::Approx;

TEST_CASE("parameter validation names the violated bound") {
  CHECK_THROWS_AS(ModelParams::make(1, 1, 1, 0.5), pdem::InvalidParams);
  CHECK_THROWS_AS(ModelParams::make(0, 1, 1, 2), pdem::InvalidParams);
  CHECK_THROWS_AS(ModelParams::make(1, -1, 1, 2), pdem::InvalidParams);
  CHECK_THROWS_AS(ModelParams::make(1, 1, 0, 2), pdem::InvalidParams);
  try {
    ModelParams::unit(0.5);
  } catch (const pdem::InvalidParams& e) {
    CHECK(std::string(e.what()).find("1/(sqrt(2) lambda0)") != std::string::npos);
  }
  const auto p = ModelParams::make(2.0, 3.0, 1.5, 1.2);
  CHECK(p.lambda0() == Approx(2.0));
  CHECK(p.b() == Approx(2.4));
  CHECK(p.b_squared() == Approx(5.76));
}

TEST_CASE("reduced constants") {
  const auto rc = reduced_constants(ModelParams::unit(2), 3.0);
  CHECK(rc.c0 == 24.0);
  CHECK(rc.c2 == 24.0 + 16.0);
}

TEST_CASE("effective mass") {
  CHECK(effective_mass(ModelParams::unit(3), 0.0) == 1.0);
  CHECK(effective_mass(ModelParams::unit(2), 2.0) == 0.25);
  CHECK_THROWS_AS(effective_mass(ModelParams::unit(1), -1.0), pdem::DomainError);
  const auto p = ModelParams::unit(2);
  for (double x = -1.9; x < 10; x += 0.3) CHECK(effective_mass(p, x + 0.1) < effective_mass(p, x));
}

TEST_CASE("potential and well depth") {
  const auto p = ModelParams::unit(2);
  CHECK(std::get<double>(potential(p, 0.0)) == 0.0);
  CHECK(std::get<double>(potential(p, 2.0)) == 0.5);
  CHECK(std::holds_alternative<WallSignal>(potential(p, -2.5)));
  CHECK(std::holds_alternative<WallSignal>(potential(p, -2.0)));
  CHECK(std::get<double>(potential(p, 1e12)) == Approx(well_depth(p)).epsilon(1e-10));
  CHECK(well_depth(ModelParams::unit(1)) == 0.5);
  CHECK(well_depth(ModelParams::unit(4)) == 8.0);
  CHECK(well_depth(ModelParams::make(2, 3, 1, 1)) == 9.0);
}

TEST_CASE("level counts") {
  CHECK(max_level(ModelParams::unit(1)) == 0);
  CHECK(max_level(ModelParams::unit(2)) == 3);
  CHECK(max_level(ModelParams::unit(3)) == 8);
  CHECK(max_level(ModelParams::unit(4)) == 15);
  CHECK(max_level(ModelParams::unit(0.75)) == 0);
}

TEST_CASE("energies") {
  const auto p = ModelParams::unit(2);
  CHECK(energy(p, 0).energy == 0.5);
  CHECK(energy(p, 3).energy == 2.0);
  CHECK_THROWS_AS(energy(p, 4), pdem::LevelOutOfRange);
  CHECK_THROWS_AS(energy(p, -1), pdem::LevelOutOfRange);
  const auto s = energy(p, 2);
  CHECK(s.mu == 4.0);
  CHECK(s.gamma == -2.0);
  CHECK(s.log_norm == normalization(p, 2));
  for (double a : {1.0, 2.0, 3.0, 4.0, 10.0}) {
    CHECK(energy(ModelParams::unit(a), 0).energy == 0.5);
  }
}

TEST_CASE("spectrum shape") {
  for (double a : {1.0, 1.7, 2.0, 3.0, 4.0, 6.3}) {
    const auto p = ModelParams::unit(a);
    const int top = max_level(p);
    for (int n = 0; n <= top; ++n) {
      const auto s = energy(p, n);
      CHECK(s.mu > 1.0);
      CHECK(s.energy < continuum_threshold(p));
      if (a == std::floor(a)) CHECK(s.energy <= well_depth(p));
      if (n < top) {
        const double gap = energy(p, n + 1).energy - s.energy;
        CHECK(gap == Approx(1.0 - (n + 1.0) / (a * a)).epsilon(1e-12));
        CHECK(gap > 0.0);
        if (n + 1 < top) CHECK(energy(p, n + 2).energy - energy(p, n + 1).energy < gap);
      }
    }
  }
}

TEST_CASE("the top level can lie above the plateau") {
  // a = 1.7: E_2 = 2.5 - 3/2.89 exceeds V_inf = 1.445 but not the threshold.
  const auto p = ModelParams::unit(1.7);
  REQUIRE(max_level(p) == 2);
  CHECK(energy(p, 2).energy > well_depth(p));
  CHECK(energy(p, 2).energy < continuum_threshold(p));
  // It is still normalizable.
  CHECK(std::isfinite(normalization(p, 2)));
}

TEST_CASE("top level touches the plateau when b^2 is an integer") {
  for (double a : {1.0, 2.0, 3.0, 4.0}) {
    const auto p = ModelParams::unit(a);
    CHECK(energy(p, max_level(p)).energy == well_depth(p));
  }
}

TEST_CASE("normalization constant") {
  CHECK(normalization(ModelParams::unit(1), 0) == Approx(0.5 * std::log(2.0)).epsilon(1e-15));
  const double expect = 4 * std::log(8.0) + 0.5 * (std::log(7.0) - std::log(16.0) - std::log(5040.0));
  CHECK(normalization(ModelParams::unit(2), 0) == Approx(expect).epsilon(1e-14));
  // Gamma(2 b^2 - n) is far outside double range here.
  const double big = normalization(ModelParams::unit(20), 3);
  CHECK(std::isfinite(big));
}

TEST_CASE("wavefunction values") {
  const auto p = ModelParams::unit(2);
  CHECK(wavefunction(p, 0, 0.0) ==
        Approx(std::exp(normalization(p, 0) - 4.0)).epsilon(1e-14));
  CHECK(wavefunction(ModelParams::unit(1), 0, -1.0 + 1e-4) == 0.0);
  CHECK(wavefunction(ModelParams::unit(1), 0, -1.0 + 1e-4, WavefunctionForm::Laguerre) == 0.0);
  CHECK_THROWS_AS(wavefunction(p, 0, -2.0), pdem::DomainError);
  CHECK_THROWS_AS(wavefunction(p, 4, 0.0), pdem::LevelOutOfRange);
}

TEST_CASE("Bessel and Laguerre forms agree") {
  for (double a : {1.0, 2.0, 3.0}) {
    const auto p = ModelParams::unit(a);
    for (int n = 0; n <= max_level(p); ++n) {
      for (int i = 1; i <= 200; ++i) {
        const double x = -a + (2 * a + 12) * i / 200.0;
        const double b = wavefunction(p, n, x);
        const double l = wavefunction(p, n, x, WavefunctionForm::Laguerre);
        CHECK(std::abs(b - l) <= 1e-10 * std::max(std::abs(b), 1e-12));
      }
    }
  }
}

TEST_CASE("wavefunction vanishes monotonically at the wall") {
  for (double a : {1.0, 2.0, 3.0}) {
    const auto p = ModelParams::unit(a);
    for (int n = 0; n <= max_level(p); ++n) {
      const double v1 = std::abs(wavefunction(p, n, -a + 1e-1 * a));
      const double v2 = std::abs(wavefunction(p, n, -a + 1e-2 * a));
      const double v3 = std::abs(wavefunction(p, n, -a + 1e-3 * a));
      CHECK(v2 < v1);
      CHECK(v3 <= v2);
    }
  }
}

TEST_CASE("derivatives match finite differences") {
  for (double a : {1.0, 2.0, 3.0}) {
    const auto p = ModelParams::unit(a);
    const double h = 1e-5 * a;
    for (int n = 0; n <= std::min(3, max_level(p)); ++n) {
      double peak = 0.0;
      for (int i = 1; i <= 100; ++i) peak = std::max(peak, std::abs(wavefunction(p, n, -a + 0.1 * i)));
      for (int i = 1; i <= 100; ++i) {
        const double x = -a + 0.1 * i;
        if (std::abs(wavefunction(p, n, x)) <= 1e-8 * peak) continue;
        const double fd = (wavefunction(p, n, x + h) - wavefunction(p, n, x - h)) / (2 * h);
        const double d = wavefunction_derivative(p, n, x);
        CHECK(std::abs(d - fd) <= 1e-6 * std::max(std::abs(d), peak));
      }
    }
  }
  const auto p1 = ModelParams::unit(1);
  CHECK(std::abs(wavefunction_derivative(p1, 0, 0.0)) <= 1e-8 * wavefunction(p1, 0, 0.0));
}

TEST_CASE("second derivative from the jet matches finite differences") {
  const auto p = ModelParams::unit(2);
  const double h = 1e-4;
  for (double x : {-1.0, 0.0, 1.0, 3.0}) {
    const auto j = wavefunction_jet(p, 2, x);
    const double fd = (wavefunction_derivative(p, 2, x + h) - wavefunction_derivative(p, 2, x - h)) / (2 * h);
    CHECK(j.d2 == Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("alpha0 and lowering") {
  CHECK(alpha0(ModelParams::unit(1), 0.0) == 0.0);
  CHECK(alpha0(ModelParams::unit(2), 0.0) == 0.0);
  CHECK(alpha0(ModelParams::unit(2), 2.0) == -0.5);
  CHECK_THROWS_AS(alpha0(ModelParams::unit(2), -3.0), pdem::DomainError);

  const auto p = ModelParams::unit(2);
  CHECK(kinetic_coefficient(p, 2.0) == 2.0);
  for (double x : {-1.5, -0.3, 0.0, 0.8, 4.0}) {
    const double c = 1.7;
    CHECK(apply_lowering(p, {c, 0.0}, x) ==
          Approx(-std::sqrt(kinetic_coefficient(p, x)) * alpha0(p, x) * c));
    const auto j = wavefunction_jet(p, 0, x);
    CHECK(std::abs(apply_lowering(p, {j.value, j.d1}, x)) <= 1e-12 * std::abs(j.value));
  }
}

TEST_CASE("lowering psi_1 gives (x + a) psi_0 up to a constant") {
  // The position-dependent prefactor sqrt(rho) = (x + a)/(a sqrt2) makes the
  // image of psi_1 a multiple of (x + a) psi_0, not of psi_0 itself.
  for (double a : {2.0, 3.0}) {
    const auto p = ModelParams::unit(a);
    double peak = 0.0;
    for (int i = 1; i < 200; ++i) peak = std::max(peak, std::abs(wavefunction(p, 0, -a + 0.05 * i)));
    double ref = 0.0;
    for (int i = 1; i < 200; ++i) {
      const double x = -a + 0.05 * i;
      const double psi0 = wavefunction(p, 0, x);
      if (std::abs(psi0) <= 1e-6 * peak) continue;
      const auto j = wavefunction_jet(p, 1, x);
      const double ratio = apply_lowering(p, {j.value, j.d1}, x) / ((x + a) * psi0);
      if (ref == 0.0) ref = ratio;
      CHECK(ratio == Approx(ref).epsilon(1e-6));
    }
    CHECK(ref != 0.0);
  }
}

TEST_CASE("continuum state construction") {
  const auto p = ModelParams::unit(2);
  CHECK_THROWS_AS(continuum_state(p, 2.0), pdem::BelowContinuum);
  CHECK_THROWS_AS(continuum_state(p, 2.01), pdem::BelowContinuum);  // above V_inf, below threshold
  const auto s = continuum_state(p, 3.0);
  CHECK(s.c0 == 24.0);
  CHECK(s.q == Approx(std::sqrt(31.0)));
  CHECK(s.mu == std::complex<double>(1.0, s.q));
  CHECK(s.gamma.real() == -3.5);
  CHECK(s.gamma.imag() == Approx(0.5 * std::sqrt(31.0)));
  const auto s1 = continuum_state(ModelParams::unit(1), 1.0);
  CHECK(s1.c0 == 2.0);
  CHECK(s1.q == Approx(std::sqrt(3.0)));
  CHECK(continuum_threshold(p) == 2.0 + 1.0 / 32.0);
}

TEST_CASE("continuum wavefunction values") {
  const auto p = ModelParams::unit(2);
  const auto s = continuum_state(p, 3.0);
  // 50-digit reference evaluation.
  const auto v0 = continuum_wavefunction(s, p, 0.0);
  CHECK(v0.real() == Approx(-0.70787670427534761).epsilon(1e-12));
  CHECK(v0.imag() == Approx(-0.25794112995910682).epsilon(1e-12));
  const auto v1 = continuum_wavefunction(s, p, 1.0);
  CHECK(v1.real() == Approx(0.022693322766646587).epsilon(1e-10));
  CHECK(v1.imag() == Approx(0.62804775001257375).epsilon(1e-12));
  CHECK(continuum_wavefunction(continuum_state(p, 3.0, 0.0), p, 0.5) == std::complex<double>(0, 0));
  CHECK_THROWS_AS(continuum_wavefunction(s, p, -2.0), pdem::DomainError);
}

TEST_CASE("continuum moduli at fixed q = 2") {
  const double expect[] = {0.41143571522, 0.22548560227, 0.11817359752};
  const double as[] = {2.0, 4.0, 8.0};
  for (int i = 0; i < 3; ++i) {
    const auto p = ModelParams::unit(as[i]);
    const double b2 = p.b_squared();
    const double c0 = 1.25 + b2 * b2;
    const auto s = continuum_state(p, c0 / (2 * as[i] * as[i]));
    CHECK(s.q == Approx(2.0).epsilon(1e-10));
    CHECK(std::abs(continuum_wavefunction(s, p, 1.0)) == Approx(expect[i]).epsilon(1e-9));
  }
}

TEST_CASE("the hypergeometric continuum solution grows toward the wall") {
  const auto p = ModelParams::unit(2);
  const auto s = continuum_state(p, 3.0);
  double prev = -1.0;
  for (double t : {1.0, 0.5, 0.2, 0.1, 0.05}) {
    const double l = continuum_log_wavefunction(s, p, t - 2.0).log_abs;
    CHECK(l > prev);
    prev = l;
  }
  // Close to the wall the value only exists in log form.
  const auto deep = continuum_log_wavefunction(s, p, -2.0 + 1e-3);
  CHECK(deep.log_abs > 700.0);
  CHECK_THROWS_AS(continuum_wavefunction(s, p, -2.0 + 1e-3), pdem::Overflow);
}

TEST_CASE("continuum jet matches finite differences") {
  const auto p = ModelParams::unit(2);
  const auto s = continuum_state(p, 4.0);
  const double h = 1e-4;
  for (double x : {-1.0, 0.0, 2.0}) {
    const auto j = continuum_jet(s, p, x);
    const auto fd1 = (continuum_wavefunction(s, p, x + h) - continuum_wavefunction(s, p, x - h)) / (2 * h);
    CHECK(std::abs(j.value - continuum_wavefunction(s, p, x)) <= 1e-12 * std::abs(j.value));
    CHECK(std::abs(j.d1 - fd1) <= 1e-6 * std::abs(j.d1));
  }
}
