#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "qsg/dispersion.hpp"

namespace qsg::dispersion {

namespace {

void check(double omega, const Units& u) {
  if (!(u.lambda >= 0) || !(u.c > 0) || !(u.hbar > 0)) throw std::invalid_argument("dispersion: need λ >= 0, c > 0, ℏ > 0");
  if (omega < 0 && !u.allow_negative_frequency)
    throw std::invalid_argument("dispersion: ω < 0 requested without allow_negative_frequency");
}

// (2/(c²λ²))(cosh ωλ − 1), written without cancellation; ω²/c² at λ = 0
double time_term(double omega, const Units& u) {
  if (u.lambda == 0) return omega * omega / (u.c * u.c);
  const double s = std::sinh(omega * u.lambda / 2);
  return 4 * s * s / (u.c * u.c * u.lambda * u.lambda);
}

double mass_term(double m, const Units& u) {
  const double q = m * u.c / u.hbar;
  return q * q;
}

}  // namespace

double shell_residual(double omega, double k, double m, const Units& u) {
  check(omega, u);
  const double a = -k * k * std::exp(omega * u.lambda);
  const double b = time_term(omega, u);
  const double c = -mass_term(m, u);
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  return scale == 0 ? 0 : (a + b + c) / scale;
}

double k_squared_closed(double omega, double m, const Units& u) {
  check(omega, u);
  if (u.lambda == 0) return omega * omega / (u.c * u.c) - mass_term(m, u);
  const double y = omega * u.lambda;
  const double p = -std::expm1(-y) / (u.c * u.lambda);
  return p * p - mass_term(m, u) * std::exp(-y);
}

double solve_k(double omega, double m, const Units& u) {
  check(omega, u);
  const double e = std::exp(omega * u.lambda);
  const double b = time_term(omega, u);
  const double mm = mass_term(m, u);
  const double scale = std::max({b, mm, std::numeric_limits<double>::min()});
  auto f = [&](double k) { return (-k * k * e + b - mm) / scale; };

  const double f0 = f(0);
  if (f0 < 0) throw EvanescentMode("solve_k: evanescent mode (k² < 0)", (b - mm) / e);
  if (f0 == 0) return 0;

  double hi = (u.lambda > 0 ? 1 / (u.c * u.lambda) : std::abs(omega) / u.c) + std::sqrt(mm) + 1e-300;
  while (f(hi) > 0) hi *= 2;

  boost::math::tools::eps_tolerance<double> tol(std::numeric_limits<double>::digits - 2);
  std::uintmax_t iters = 200;
  const auto [lo_k, hi_k] = boost::math::tools::toms748_solve(f, 0.0, hi, f0, f(hi), tol, iters);
  if (iters >= 200) throw std::runtime_error("solve_k: root finder did not converge");
  return (lo_k + hi_k) / 2;
}

double group_velocity(double omega, double m, const Units& u) {
  const double k = solve_k(omega, m, u);
  if (k == 0) return m == 0 ? u.c : 0.0;
  const double c2 = u.c * u.c;
  if (u.lambda == 0) return k * c2 / omega;
  const double y = omega * u.lambda;
  const double e = std::exp(y);
  return 2 * k * e / (-u.lambda * k * k * e + 2 / (c2 * u.lambda) * std::sinh(y));
}

double time_of_flight_difference(double L, double v1, double v2) { return L * (1 / v1 - 1 / v2); }

std::vector<DispersionPoint> sweep(double omega_min, double omega_max, std::size_t n, double m, const Units& u) {
  if (n < 1) throw std::invalid_argument("sweep: need at least one point");
  std::vector<DispersionPoint> out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t j = 0; j < n; ++j) {
    DispersionPoint p;
    p.omega = n == 1 ? omega_min : omega_min + (omega_max - omega_min) * static_cast<double>(j) / static_cast<double>(n - 1);
    p.m = m;
    try {
      p.k = solve_k(p.omega, m, u);
      p.vg = group_velocity(p.omega, m, u);
      p.residual = shell_residual(p.omega, p.k, m, u);
    } catch (const EvanescentMode&) {
      p.k = p.vg = nan;
      p.residual = nan;
      p.evanescent = true;
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace qsg::dispersion
