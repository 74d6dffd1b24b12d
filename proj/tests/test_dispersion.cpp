#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsg/dispersion.hpp"

using namespace qsg::dispersion;

namespace {

const Units u{0.5, 2.0, 1.0};

// k² from the shell solved by hand: e^{ωλ}k² = (2/(c²λ²))(cosh ωλ − 1) − (mc/ℏ)²
double k_oracle(double w, double m, const Units& v) {
  const double k2 = (2 / (v.c * v.c * v.lambda * v.lambda) * (std::cosh(w * v.lambda) - 1) - std::pow(m * v.c / v.hbar, 2)) *
                    std::exp(-w * v.lambda);
  return std::sqrt(k2);
}

}  // namespace

TEST_CASE("shell residual") {
  CHECK(shell_residual(0, 0, 0, u) == 0);
  for (double w : {0.1, 1.0, 4.0}) {
    const double k = (1 - std::exp(-w * u.lambda)) / (u.c * u.lambda);
    CHECK(std::abs(shell_residual(w, k, 0, u)) < 1e-12);
  }
  const Units small{1, 1, 1};
  const double w = 0.1, m = 0.05;
  const double kc = std::sqrt(w * w - m * m);
  const double r = std::abs(shell_residual(w, kc, m, small));
  CHECK(r > 1e-3);
  CHECK(r < 0.5);
}

TEST_CASE("wave number") {
  for (double w : {0.01, 0.3, 2.0, 9.0}) {
    CHECK(solve_k(w, 0, u) == doctest::Approx((1 - std::exp(-w * u.lambda)) / (u.c * u.lambda)).epsilon(1e-12));
    CHECK(solve_k(w + 3, 0.4, u) == doctest::Approx(k_oracle(w + 3, 0.4, u)).epsilon(1e-10));
  }
  const Units tiny{1e-8, 1, 1};
  CHECK(solve_k(2, 1, tiny) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));
  CHECK(solve_k(200, 0, u) == doctest::Approx(1 / (u.c * u.lambda)).epsilon(1e-12));
  CHECK_THROWS_AS(solve_k(0.1, 1, u), EvanescentMode);
  CHECK_THROWS(solve_k(-1, 0, u));
  Units neg = u;
  neg.allow_negative_frequency = true;
  CHECK_NOTHROW(solve_k(-0.5, 0, neg));
}

TEST_CASE("group velocity") {
  const Units unit{1, 1, 1};
  CHECK(group_velocity(0, 0, unit) == doctest::Approx(1));
  CHECK(group_velocity(0.01, 0, unit) == doctest::Approx(1.01005).epsilon(1e-5));
  for (double w : {0.2, 1.0, 3.0}) CHECK(group_velocity(w, 0, u) == doctest::Approx(u.c * std::exp(w * u.lambda)).epsilon(1e-8));
  // massive: against a centred difference of the closed form k(ω)
  const double w = 4, h = 1e-5;
  const double dkdw = (k_oracle(w + h, 0.4, u) - k_oracle(w - h, 0.4, u)) / (2 * h);
  CHECK(group_velocity(w, 0.4, u) == doctest::Approx(1 / dkdw).epsilon(1e-6));
}

TEST_CASE("time of flight") {
  CHECK(time_of_flight_difference(10, 1, 2) == doctest::Approx(5));
  CHECK(time_of_flight_difference(10, 2, 2) == 0);
}

TEST_CASE("sweep") {
  const auto pts = sweep(0, 3, 31, 0.4, u);
  REQUIRE(pts.size() == 31);
  CHECK(pts.front().omega == 0);
  CHECK(pts.back().omega == 3);
  CHECK(pts.front().evanescent);
  CHECK(std::isnan(pts.front().k));
  CHECK_FALSE(pts.back().evanescent);
  const auto massless = sweep(0, 3, 4, 0, u);
  CHECK(massless.front().k == 0);
}

TEST_CASE("property: massless group velocity grows and k stays bounded") {
  double prev_v = 0, prev_k = -1;
  for (int j = 0; j <= 200; ++j) {
    const double w = 0.1 * j;
    const double v = group_velocity(w, 0, u), k = solve_k(w, 0, u);
    CHECK(v > prev_v);
    CHECK(k >= prev_k);
    CHECK(k < 1 / (u.c * u.lambda));
    prev_v = v;
    prev_k = k;
  }
}
