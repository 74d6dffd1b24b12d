#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qsg/geometry.hpp"

using namespace qsg::geometry;

namespace {

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1e-300, std::abs(b)); }

}  // namespace

TEST_CASE("closed μ, ν for power-law β") {
  for (double r : {0.5, 1.0, 2.0, 7.5}) {
    const double L = std::log(r);
    const MuNu p1 = mu_nu_closed(1);
    CHECK(rel_err(p1.beta(r), 1 / r) < 1e-14);
    CHECK(rel_err(p1.mu(r), 1 / r) < 1e-14);
    CHECK(std::abs(p1.nu(r) - L / r) < 1e-14);
    const MuNu p3 = mu_nu_closed(3);
    CHECK(rel_err(p3.mu(r), -1 / std::pow(r, 3)) < 1e-14);
    CHECK(rel_err(p3.nu(r), 0.5 / std::pow(r, 3)) < 1e-14);
    // n = 2: ν carries a minus sign; the + sign fails rν' + ν = μ
    const MuNu p2 = mu_nu_closed(2);
    CHECK(std::abs(p2.mu(r) - L / (r * r)) < 1e-14);
    CHECK(std::abs(p2.nu(r) + (1 + L) / (r * r)) < 1e-14);
  }
}

TEST_CASE("the opposite-sign n = 2 ν does not solve the profile equation") {
  // rν' + ν for ν = (1 + ln r)/r² equals −ln r/r², not μ = ln r/r²
  const RadialProfile flipped = RadialProfile::closed({{1.0, -2, 0}, {1.0, -2, 1, 1.0}});
  const double r = 3;
  const cplx lhs = r * flipped.derivative(r) + flipped(r);
  CHECK(std::abs(lhs + std::log(r) / (r * r)) < 1e-14);
}

TEST_CASE("Newtonian profiles") {
  const MuNu p = mu_nu_newton(1, 1);
  CHECK(std::abs(p.beta(1.0) + 2.0) < 1e-14);
  CHECK(std::abs(p.mu(1.0) + 1.5) < 1e-14);
  CHECK(std::abs(p.nu(1.0) + 0.5) < 1e-14);
  const MuNu flat = mu_nu_newton(1e-14, 2);
  CHECK(std::abs(flat.beta(3.0) + 0.25) < 1e-13);
  CHECK(std::abs(flat.mu(3.0) + 0.125) < 1e-13);
  CHECK(std::abs(flat.nu(3.0) + 0.125) < 1e-12);
  const OdeResidual res = ode_residuals(p, {2.0});
  CHECK(res.mu < 1e-12);
  CHECK(res.nu < 1e-12);
}

TEST_CASE("numeric integration against the closed forms") {
  const MuNu c1 = mu_nu_closed(1);
  const NumericMuNu n1 = mu_nu_numeric(c1.beta, 1, 1.0, 0.0, 0.5, 10);
  for (double r : n1.profiles.mu.grid()) {
    CHECK(std::abs(n1.profiles.mu(r) - c1.mu(r)) <= 1e-8 * std::abs(c1.mu(r)));
    CHECK(std::abs(n1.profiles.nu(r) - c1.nu(r)) <= 1e-8 * std::max(std::abs(c1.nu(r)), std::abs(c1.mu(r))));
  }
  const cplx b = -0.4;
  const NumericMuNu nc = mu_nu_numeric(RadialProfile::constant(b), 1, b / 2.0, b / 2.0, 0.2, 20);
  for (double r : nc.profiles.mu.grid()) {
    CHECK(std::abs(nc.profiles.mu(r) - b / 2.0) < 1e-10);
    CHECK(std::abs(nc.profiles.nu(r) - b / 2.0) < 1e-10);
  }
  const double gamma = 0.7;
  const MuNu nt = mu_nu_newton(gamma, 1);
  const NumericMuNu nn = mu_nu_numeric(nt.beta, gamma, nt.mu(gamma), nt.nu(gamma), 0.1, 50);
  for (double r : nn.profiles.mu.grid()) {
    CHECK(rel_err(nn.profiles.mu(r), nt.mu(r)) < 1e-8);
    CHECK(rel_err(nn.profiles.nu(r), nt.nu(r)) < 1e-8);
  }
}

TEST_CASE("static metric") {
  const StaticMetric g(mu_nu_newton(0.2, 1).beta);
  CHECK(g.phi(1.0) == doctest::Approx(1 / std::sqrt(1.2)));
  CHECK_THROWS_AS(StaticMetric(RadialProfile::constant(1.0)).phi(1.0), SignatureError);
  // Laplace–Beltrami and Δ̄ agree on a smooth test function
  const RadialProfile f = RadialProfile::closed({{1.0, 0, 0, 1, 0.5}});
  for (double r : {0.8, 1.5, 3.0}) CHECK(g.laplace_beltrami(f, r, 1e-4) == doctest::Approx(g.delta_bar(f, r)).epsilon(1e-6));
}

TEST_CASE("weak field") {
  const double c = 1, G = 1, M = 1e-4;  // Ricci picks up O(Φ²/c⁴)
  const std::vector<double> grid = log_grid(1, 10, 400);
  const WeakFieldReport vac =
      weak_field_check(RadialProfile::closed({{-G * M, -1}}), RadialProfile::constant(0.0), c, G, grid);
  CHECK(vac.max_ricci00 <= 1e-6);
  CHECK(vac.max_laplacian_Phi <= 1e-6);
  CHECK(vac.weak);

  // uniform ball interior, two amplitudes a decade apart
  auto ball = [&](double rho0) {
    return weak_field_check(RadialProfile::closed({{2 * M_PI * G * rho0 / 3, 2}}), RadialProfile::constant(rho0), c, G,
                            uniform_grid(0.1, 1, 200));
  };
  const WeakFieldReport big = ball(1e-3), small = ball(1e-4);
  CHECK(big.max_poisson_residual < 1e-8);
  const double shrink = big.max_relative_deviation / small.max_relative_deviation;
  CHECK(shrink == doctest::Approx(10).epsilon(0.2));
}

TEST_CASE("profiles") {
  CHECK_THROWS(RadialProfile::sampled({1, 2, 3}, {1.0, 2.0, 3.0}));
  const std::vector<double> r = log_grid(1, 5, 40);
  std::vector<cplx> v;
  for (double x : r) v.push_back(x * x);
  const RadialProfile s = RadialProfile::sampled(r, v);
  CHECK(std::abs(s(2.0) - 4.0) < 1e-2);
  CHECK_THROWS(s(0.5));
  CHECK_THROWS(RadialProfile::constant(1.0)(0.0));

  std::stringstream io;
  const RadialProfile p = mu_nu_closed(1).nu;
  write_profile_csv(io, p, r);
  const RadialProfile back = read_profile_csv(io);
  for (double x : r) CHECK(std::abs(back(x) - p(x)) <= 1e-11 * std::max(1.0, std::abs(p(x))));
}

TEST_CASE("property: closed profiles solve the first-order system") {
  const std::vector<double> radii = log_grid(0.2, 50, 100);
  for (double n : {0.5, 1.0, 2.0, 3.0, 5.0}) {
    const OdeResidual r = ode_residuals(mu_nu_closed(n), radii);
    CHECK(r.mu < 1e-10);
    CHECK(r.nu < 1e-10);
  }
  const OdeResidual rn = ode_residuals(mu_nu_newton(0.3, 2), radii);
  CHECK(rn.mu < 1e-10);
  CHECK(rn.nu < 1e-10);
}

TEST_CASE("property: the integrator is linear in β and the pins") {
  const RadialProfile b1 = mu_nu_closed(1).beta, b3 = mu_nu_closed(3).beta;
  const NumericMuNu a = mu_nu_numeric(b1, 1, 1.0, 0.0, 0.5, 5);
  const NumericMuNu b = mu_nu_numeric(b3, 1, -1.0, 0.5, 0.5, 5);
  const NumericMuNu s = mu_nu_numeric(b1 + b3.scaled(2.0), 1, -1.0, 1.0, 0.5, 5);
  double gap = 0, scale = 0;
  for (double r : s.profiles.mu.grid()) {
    const cplx want = a.profiles.mu(r) + 2.0 * b.profiles.mu(r);
    gap = std::max(gap, std::abs(s.profiles.mu(r) - want));
    scale = std::max(scale, std::abs(want));
  }
  CHECK(gap <= 1e-10 * scale);
}
