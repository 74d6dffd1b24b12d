// Effective Newtonian parameters of the reduced Schrödinger equation
//   iℏΨ̇ = −(ℏ²/2m_I)∇²Ψ + (V₀ − GMm_G/r)Ψ
// as functions of x = m̃λ = mc²λ/ℏ = m/m_p.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace qsg::effective {

struct PlanckUnits {
  double lambda = 1;
  double c = 1;
  double hbar = 1;
  double G = 1;

  /// ℏ/(λc²), the mass with m̃λ = 1
  double m_p() const { return hbar / (lambda * c * c); }
  void validate() const;
};

/// SI constants with λ = Planck time.
PlanckUnits si_units();

struct EffectiveParams {
  double x = 0;
  double m_I = 0;
  double m_G = 0;
  double V0 = 0;
};

// Ratios per unit m (resp. mc²). Below x = 1e−4 the Taylor series is used.
double mI_over_m(double x);
double mG_over_m(double x);
double V0_over_mc2(double x);
// Closed forms only, no series switch.
double mI_over_m_closed(double x);
double mG_over_m_closed(double x);
double V0_over_mc2_closed(double x);
double mG_over_mI(double x);
// The same quantities per Planck mass (resp. m_pc²), i.e. x times the ratios,
// simplified so that no division by x is needed.
double mI_over_mp(double x);
double mG_over_mp(double x);
double V0_over_mpc2(double x);

inline constexpr double kSeriesThreshold = 1e-4;

EffectiveParams effective_params(double m, const PlanckUnits& u);

struct SeriesCoefficient {
  std::string name;
  double fitted;
  double expected;
};
/// Leading small-x coefficients fitted from the closed forms by Richardson
/// extrapolation: m_I/m ≈ 1 + a x, m_G/m ≈ 1 + b x, V₀/mc² ≈ c x².
std::vector<SeriesCoefficient> series_check();

struct Extrema {
  double mI_at_10 = 0;        // m_I/m_p at x = 10
  double mI_at_50 = 0;
  double mI_sup = 0.5;        // asymptote of (1 − e^{−2x})/2
  bool mI_monotone = true;    // on the scan grid over (0, 100]
  double V0_argmin = 0;
  double V0_min = 0;          // in m_p c²
  double ratio_argmax = 0;    // argmax of m_G/m_I
  double ratio_max = 0;
};
/// Scan of (0, 50] followed by golden-section refinement to 1e−8.
Extrema extrema_report();
nlohmann::json to_json(const Extrema& e);

/// Minimizer of f on [a, b] by golden-section search.
double golden_section_min(double (*f)(double), double a, double b, double tol = 1e-8);

struct Figure1Row {
  double x, mI_over_mp, mG_over_mp, V0_over_mpc2;
};
/// Rows at x_j = j·x_max/n, j = 1..n.
std::vector<Figure1Row> figure1_data(double x_max, std::size_t n);

struct DarkEnergy {
  double mass_density_kg_m3;   // |energy density|/c²
  double mass_density_g_cm3;
  int sign;                    // the energy density itself is negative
  std::string caveat;
};
/// |−(m_pc²/2)·(m_U/(4.5 m_p r_U³))|/c² = m_U/(9 r_U³), SI inputs.
DarkEnergy dark_energy_estimate(double m_U_kg, double r_U_m);

}  // namespace qsg::effective
