// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cellsim/errors.hpp"
#include "cellsim/mechanics.hpp"
#include "cellsim/particle.hpp"

using cellsim::hydrostatic_stress_direct;
using cellsim::MechanicalParameters;
using cellsim::ParticleGrid;
using cellsim::radial_displacement_from_strain;
using cellsim::StressProfile;
using cellsim::stress_profile_from_strain;
using cellsim::Table1D;

namespace {

constexpr double kE = 10e9;
constexpr double kNu = 0.3;

std::vector<double> uniform_knots(double radius, int n) {
  std::vector<double> rho(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    rho[static_cast<std::size_t>(i)] = radius * i / (n - 1);
  }
  return rho;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// Second-order finite-difference solve of the spherical displacement BVP
//   u'' + 2u'/r - 2u/r^2 = beta * dV'(r),  u(0) = 0,
//   (1-nu) u'(R) + 2 nu u(R)/R = (1+nu) dV(R)/3   (zero radial traction)
// used as an independent oracle for the closed-form displacement.
std::vector<double> fd_displacement(const std::vector<double>& dv, double radius,
                                    double poisson) {
  const int n = static_cast<int>(dv.size()) - 1;  // nodes 0..n
  const double h = radius / n;
  const double beta = (1.0 + poisson) / (3.0 * (1.0 - poisson));

  std::vector<double> lower(static_cast<std::size_t>(n), 0.0);
  std::vector<double> diag(static_cast<std::size_t>(n), 0.0);
  std::vector<double> upper(static_cast<std::size_t>(n), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);

  diag[0] = 1.0;  // u(0) = 0
  for (int i = 1; i < n; ++i) {
    const double r = i * h;
    const auto k = static_cast<std::size_t>(i);
    lower[k] = 1.0 / (h * h) - 1.0 / (r * h);
    diag[k] = -2.0 / (h * h) - 2.0 / (r * r);
    upper[k] = 1.0 / (h * h) + 1.0 / (r * h);
    rhs[k] = beta *
             (dv[static_cast<std::size_t>(i + 1)] - dv[static_cast<std::size_t>(i - 1)]) /
             (2.0 * h);
  }

  // Thomas forward sweep over rows 0..n-1 leaves u_i = d_i - e_i * u_{i+1}.
  std::vector<double> e(static_cast<std::size_t>(n), 0.0);
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  e[0] = upper[0] / diag[0];
  d[0] = rhs[0] / diag[0];
  for (int i = 1; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const double denom = diag[k] - lower[k] * e[k - 1];
    e[k] = upper[k] / denom;
    d[k] = (rhs[k] - lower[k] * d[k - 1]) / denom;
  }

  // Boundary row with a one-sided second-order derivative:
  // (1-nu)(3u_n - 4u_{n-1} + u_{n-2})/(2h) + 2 nu u_n / R = (1+nu) dV_n / 3.
  const double a = (1.0 - poisson) / (2.0 * h);
  double coef_n = 3.0 * a + 2.0 * poisson / radius;
  double rhs_n = (1.0 + poisson) * dv[static_cast<std::size_t>(n)] / 3.0;
  // u_{n-1} = d_{n-1} - e_{n-1} u_n ; u_{n-2} = d_{n-2} - e_{n-2} u_{n-1}.
  const auto kn1 = static_cast<std::size_t>(n - 1);
  const auto kn2 = static_cast<std::size_t>(n - 2);
  // -4a u_{n-1} term:
  coef_n += -4.0 * a * (-e[kn1]);
  rhs_n -= -4.0 * a * d[kn1];
  // +a u_{n-2} = a (d_{n-2} - e_{n-2} (d_{n-1} - e_{n-1} u_n)):
  coef_n += a * (-e[kn2]) * (-e[kn1]);
  rhs_n -= a * (d[kn2] - e[kn2] * d[kn1]);

  std::vector<double> u(static_cast<std::size_t>(n + 1), 0.0);
  u[static_cast<std::size_t>(n)] = rhs_n / coef_n;
  for (int i = n - 1; i >= 0; --i) {
    const auto k = static_cast<std::size_t>(i);
    u[k] = d[k] - e[k] * u[k + 1];
  }
  return u;
}

}  // namespace

TEST_CASE("uniform strain is stress free to roundoff") {
  const double radius = 5e-6;
  for (int n : {2, 7, 41}) {
    const std::vector<double> rho = uniform_knots(radius, n);
    const std::vector<double> dv(static_cast<std::size_t>(n), 0.084);
    const StressProfile s = stress_profile_from_strain(rho, dv, kE, kNu);
    CHECK(max_abs(s.radial) <= 1e-12 * kE);
    CHECK(max_abs(s.tangential) <= 1e-12 * kE);
    CHECK(max_abs(s.hydrostatic) <= 1e-12 * kE);
  }
}

TEST_CASE("surface radial traction vanishes for arbitrary profiles") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> amp(0.0, 0.13);
  const std::vector<double> rho = uniform_knots(3e-6, 33);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> dv(rho.size());
    for (double& v : dv) v = amp(rng);
    const StressProfile s = stress_profile_from_strain(rho, dv, kE, kNu);
    CHECK(std::abs(s.radial.back()) <= 1e-12 * kE);
  }
}

TEST_CASE("hydrostatic stress: two algebraic routes agree on 100 random profiles") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> amp(0.0, 0.13);
  const std::vector<double> rho = uniform_knots(4e-6, 40);

  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> dv(rho.size());
    for (double& v : dv) v = amp(rng);
    const StressProfile s = stress_profile_from_strain(rho, dv, kE, kNu);
    const std::vector<double> direct = hydrostatic_stress_direct(rho, dv, kE, kNu);
    REQUIRE(direct.size() == s.hydrostatic.size());
    const double scale = std::max(max_abs(s.hydrostatic), 1.0);
    for (std::size_t k = 0; k < direct.size(); ++k) {
      CHECK(std::abs(direct[k] - s.hydrostatic[k]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("stresses are linear in the strain profile") {
  const std::vector<double> rho = uniform_knots(4e-6, 21);
  std::vector<double> dv(rho.size());
  for (std::size_t k = 0; k < dv.size(); ++k) dv[k] = 0.05 + 0.04 * std::sin(double(k));
  std::vector<double> dv2 = dv;
  for (double& v : dv2) v *= 2.0;

  const StressProfile a = stress_profile_from_strain(rho, dv, kE, kNu);
  const StressProfile b = stress_profile_from_strain(rho, dv2, kE, kNu);
  const double scale = std::max(max_abs(b.hydrostatic), 1.0);
  for (std::size_t k = 0; k < rho.size(); ++k) {
    CHECK(std::abs(b.radial[k] - 2.0 * a.radial[k]) <= 1e-12 * scale);
    CHECK(std::abs(b.tangential[k] - 2.0 * a.tangential[k]) <= 1e-12 * scale);
    CHECK(std::abs(b.hydrostatic[k] - 2.0 * a.hydrostatic[k]) <= 1e-12 * scale);
  }
}

TEST_CASE("quadratic strain closed form") {
  // dV = k (r/R)^2 gives sigma_h(R) = -4 E k / (45 (1 - nu)) and
  // sigma_h(0) = 2 E k / (15 (1 - nu)).
  const double radius = 6e-6, k = 0.09;
  const int n = 2001;
  const std::vector<double> rho = uniform_knots(radius, n);
  std::vector<double> dv(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double x = rho[i] / radius;
    dv[i] = k * x * x;
  }
  const StressProfile s = stress_profile_from_strain(rho, dv, kE, kNu);
  const double surface = -4.0 * kE * k / (45.0 * (1.0 - kNu));
  const double center = 2.0 * kE * k / (15.0 * (1.0 - kNu));
  CHECK(s.hydrostatic.back() == doctest::Approx(surface).epsilon(1e-6));
  CHECK(s.hydrostatic.front() == doctest::Approx(center).epsilon(1e-6));
}

TEST_CASE("mechanical equilibrium residual shrinks with refinement") {
  auto residual = [](int n) {
    const double radius = 5e-6;
    const std::vector<double> rho = uniform_knots(radius, n);
    std::vector<double> dv(rho.size());
    for (std::size_t i = 0; i < rho.size(); ++i) {
      const double x = rho[i] / radius;
      dv[i] = 0.02 + 0.06 * x * x + 0.03 * std::sin(3.0 * x);
    }
    const StressProfile s = stress_profile_from_strain(rho, dv, kE, kNu);
    double worst = 0.0;
    for (std::size_t k = 1; k + 1 < rho.size(); ++k) {
      const double dr = rho[k + 1] - rho[k - 1];
      const double dsdr = (s.radial[k + 1] - s.radial[k - 1]) / dr;
      const double res = dsdr + 2.0 * (s.radial[k] - s.tangential[k]) / rho[k];
      worst = std::max(worst, std::abs(res) * rho.back());  // scale to stress units
    }
    return worst / std::max(max_abs(s.hydrostatic), 1.0);
  };
  const double coarse = residual(101);
  const double fine = residual(401);
  CHECK(fine < 0.5 * coarse);
  CHECK(fine < 5e-3);
}

TEST_CASE("closed-form displacement matches the finite-difference BVP oracle") {
  const double radius = 5e-6;
  const int n = 4000;  // nodes 0..n
  const std::vector<double> rho = uniform_knots(radius, n + 1);
  std::vector<double> dv(rho.size());
  for (std::size_t i = 0; i < rho.size(); ++i) {
    const double x = rho[i] / radius;
    dv[i] = 0.01 + 0.07 * x * x + 0.02 * std::cos(2.0 * x);
  }

  const std::vector<double> u_code = radial_displacement_from_strain(rho, dv, kNu);
  const std::vector<double> u_fd = fd_displacement(dv, radius, kNu);
  REQUIRE(u_code.size() == u_fd.size());
  const double scale = max_abs(u_fd);
  REQUIRE(scale > 0.0);
  for (std::size_t k = 0; k < u_code.size(); ++k) {
    CHECK(std::abs(u_code[k] - u_fd[k]) <= 1e-6 * scale);
  }
}

TEST_CASE("grid wrappers: knots, table lookup and worst-class signal") {
  MechanicalParameters m;
  m.youngs_modulus = kE;
  m.poissons_ratio = kNu;
  {
    std::vector<double> xs = {0.0, 1.0};
    std::vector<double> ys = {0.0, 0.1};
    m.strain = Table1D(std::move(xs), std::move(ys));
  }
  m.validate();

  ParticleGrid g = ParticleGrid::uniform(5e-6, 30000.0, 1e-13, 10, 15000.0);
  std::vector<double> rho, dv;
  cellsim::strain_knots(g, m.strain, rho, dv);
  REQUIRE(rho.size() == 12);  // center + 10 shells + surface
  CHECK(rho.front() == 0.0);
  CHECK(rho.back() == g.radius);
  CHECK(dv.front() == doctest::Approx(0.1 * 0.5).epsilon(1e-12));

  // Uniform concentration: the worst-class surface signal is ~zero.
  std::vector<ParticleGrid> parts = {g};
  CHECK(cellsim::surface_stress_signal(parts, m) <= 1e-12 * kE);

  // A concentration gradient produces a nonzero signal equal to the largest
  // class magnitude.
  ParticleGrid loaded = g;
  for (int i = 0; i < loaded.shells(); ++i) {
    loaded.conc[static_cast<std::size_t>(i)] = 12000.0 + 600.0 * i;
  }
  std::vector<ParticleGrid> two = {g, loaded};
  const double sig = cellsim::surface_stress_signal(two, m);
  const StressProfile s = cellsim::stress_profile(loaded, m);
  CHECK(sig == doctest::Approx(std::abs(s.surface_hydrostatic())).epsilon(1e-12));
  CHECK(sig > 0.0);
}

TEST_CASE("parameter validation") {
  MechanicalParameters m;
  m.youngs_modulus = -1.0;
  m.poissons_ratio = 0.3;
  std::vector<double> xs = {0.0, 1.0};
  std::vector<double> ys = {0.0, 0.1};
  m.strain = Table1D(std::move(xs), std::move(ys));
  CHECK_THROWS_AS(m.validate(), cellsim::ConfigError);
  m.youngs_modulus = 1e9;
  m.poissons_ratio = 0.5;
  CHECK_THROWS_AS(m.validate(), cellsim::ConfigError);
}
