#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsg/effective.hpp"

namespace qsg::effective {

void PlanckUnits::validate() const {
  if (!(lambda > 0) || !(c > 0) || !(hbar > 0) || !(G > 0))
    throw std::invalid_argument("physical constants must be positive");
}

PlanckUnits si_units() {
  PlanckUnits u;
  u.c = 299792458.0;
  u.hbar = 1.054571817e-34;
  u.G = 6.67430e-11;
  u.lambda = std::sqrt(u.hbar * u.G / std::pow(u.c, 5));
  return u;
}

double mI_over_m_closed(double x) { return -std::expm1(-2 * x) / (2 * x); }
double mG_over_m_closed(double x) { return 2 * (x + std::expm1(-x)) / (x * std::sinh(x)); }
double V0_over_mc2_closed(double x) { return (x - 2 * std::sinh(x / 2)) / std::sinh(x); }

double mI_over_m(double x) {
  if (x < kSeriesThreshold) return 1 + x * (-1 + x * (2.0 / 3 + x * (-1.0 / 3 + x * (2.0 / 15))));
  return mI_over_m_closed(x);
}

double mG_over_m(double x) {
  if (x < kSeriesThreshold) return 1 + x * (-1.0 / 3 + x * (-1.0 / 12 + x * (7.0 / 180 + x * (1.0 / 120))));
  return mG_over_m_closed(x);
}

double V0_over_mc2(double x) {
  if (x < kSeriesThreshold) {
    const double x2 = x * x;
    return x2 * (-1.0 / 24 + x2 * (37.0 / 5760));
  }
  return V0_over_mc2_closed(x);
}

double mG_over_mI(double x) { return mG_over_m(x) / mI_over_m(x); }

double mI_over_mp(double x) { return x < kSeriesThreshold ? x * mI_over_m(x) : -std::expm1(-2 * x) / 2; }
double mG_over_mp(double x) { return x < kSeriesThreshold ? x * mG_over_m(x) : 2 * (x + std::expm1(-x)) / std::sinh(x); }
double V0_over_mpc2(double x) { return x * V0_over_mc2(x); }

EffectiveParams effective_params(double m, const PlanckUnits& u) {
  u.validate();
  if (!(m > 0)) throw std::invalid_argument("effective_params: m must be positive");
  EffectiveParams p;
  p.x = m / u.m_p();
  p.m_I = m * mI_over_m(p.x);
  p.m_G = m * mG_over_m(p.x);
  p.V0 = m * u.c * u.c * V0_over_mc2(p.x);
  return p;
}

std::vector<SeriesCoefficient> series_check() {
  // first-order Richardson on g(h) = (f(h) − 1)/h; second order on V/h²
  auto linear = [](double (*f)(double)) {
    const double h = 1e-3;
    auto g = [&](double x) { return (f(x) - 1) / x; };
    return 2 * g(h) - g(2 * h);
  };
  const double h = 1e-2;
  auto q = [](double x) { return V0_over_mc2_closed(x) / (x * x); };
  return {
      {"m_I", linear(mI_over_m_closed), -1.0},
      {"m_G", linear(mG_over_m_closed), -1.0 / 3},
      {"V0", (4 * q(h) - q(2 * h)) / 3, -1.0 / 24},
  };
}

double golden_section_min(double (*f)(double), double a, double b, double tol) {
  const double g = (std::sqrt(5.0) - 1) / 2;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  return (a + b) / 2;
}

namespace {

double neg_ratio(double x) { return -mG_over_mI(x); }

// Scan (0, x_max], then refine around the best grid point.
double scan_and_refine(double (*f)(double), double x_max, std::size_t n) {
  const double h = x_max / static_cast<double>(n);
  std::size_t best = 1;
  for (std::size_t j = 1; j <= n; ++j)
    if (f(j * h) < f(best * h)) best = j;
  const double lo = std::max(h * 1e-3, (static_cast<double>(best) - 1) * h);
  const double hi = std::min(x_max, (static_cast<double>(best) + 1) * h);
  return golden_section_min(f, lo, hi);
}

}  // namespace

Extrema extrema_report() {
  Extrema e;
  e.mI_at_10 = mI_over_mp(10);
  e.mI_at_50 = mI_over_mp(50);
  double prev = 0;
  for (int j = 1; j <= 10000; ++j) {
    const double v = mI_over_mp(j * 0.01);
    if (!(v >= prev)) e.mI_monotone = false;
    prev = v;
  }
  e.V0_argmin = scan_and_refine(V0_over_mpc2, 50, 5000);
  e.V0_min = V0_over_mpc2(e.V0_argmin);
  e.ratio_argmax = scan_and_refine(neg_ratio, 50, 5000);
  e.ratio_max = mG_over_mI(e.ratio_argmax);
  return e;
}

nlohmann::json to_json(const Extrema& e) {
  return {
      {"mI_over_mp_at_x10", e.mI_at_10},
      {"mI_over_mp_at_x50", e.mI_at_50},
      {"mI_sup_over_mp", e.mI_sup},
      {"mI_monotone", e.mI_monotone},
      {"V0_argmin_x", e.V0_argmin},
      {"V0_min_over_mpc2", e.V0_min},
      {"mG_over_mI_argmax_x", e.ratio_argmax},
      {"mG_over_mI_max", e.ratio_max},
      {"note", "the peak location (x ~ 1.19) and the peak value (~1.46) are reported separately; "
               "a peak 'around 1.5' matches the value, not the location"},
  };
}

std::vector<Figure1Row> figure1_data(double x_max, std::size_t n) {
  if (!(x_max > 0) || n == 0) throw std::invalid_argument("figure1_data: need x_max > 0 and n >= 1");
  std::vector<Figure1Row> rows;
  rows.reserve(n);
  for (std::size_t j = 1; j <= n; ++j) {
    const double x = x_max * static_cast<double>(j) / static_cast<double>(n);
    rows.push_back({x, mI_over_mp(x), mG_over_mp(x), V0_over_mpc2(x)});
  }
  return rows;
}

DarkEnergy dark_energy_estimate(double m_U_kg, double r_U_m) {
  if (m_U_kg < 0 || !(r_U_m > 0)) throw std::invalid_argument("dark_energy_estimate: need m_U >= 0, r_U > 0");
  DarkEnergy d;
  d.mass_density_kg_m3 = m_U_kg / (9 * r_U_m * r_U_m * r_U_m);
  d.mass_density_g_cm3 = d.mass_density_kg_m3 * 1e-3;
  d.sign = -1;
  d.caveat = "order-of-magnitude only: V0 has the wrong (negative) sign for dark energy, depends on the test "
             "particle mass, and it is not known whether it gravitates";
  return d;
}

}  // namespace qsg::effective
