#include <algorithm>
#include <cmath>

#include "qsg/spectrum.hpp"
#include "qsg/waveops.hpp"

namespace qsg::spectrum {

namespace {

constexpr cplx I{0, 1};

double max_ratio(const std::vector<cplx>& a, const std::vector<cplx>& b, const std::vector<double>& phi) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]) / phi[i]);
  return m;
}

double max_ratio(const std::vector<cplx>& a, const std::vector<double>& phi) {
  return max_ratio(a, std::vector<cplx>(a.size()), phi);
}

void check(const ReductionInput& in) {
  if (!(in.m > 0) || !(in.gamma >= 0) || !(in.c > 0) || !(in.lambda > 0) || !(in.hbar > 0))
    throw std::invalid_argument("reduction: need m, c, λ, ℏ > 0 and γ >= 0");
  if (in.radii.empty()) throw std::invalid_argument("reduction: no radii");
  if (in.phi.kind() != geometry::RadialProfile::Kind::Closed)
    throw std::invalid_argument("reduction: the trial profile must be closed-form");
}

}  // namespace

std::vector<cplx> effective_residual(const ReductionInput& in) {
  check(in);
  effective::PlanckUnits u{in.lambda, in.c, in.hbar, 1.0};
  const effective::EffectiveParams e = effective::effective_params(in.m, u);
  const double GM = in.gamma * in.c * in.c / 2;
  std::vector<cplx> rho;
  for (double r : in.radii) {
    const cplx phi = in.phi(r);
    const cplx lap = in.phi.second_derivative(r) + 2.0 / r * in.phi.derivative(r);
    rho.push_back(in.hbar * in.Omega * phi + in.hbar * in.hbar / (2 * e.m_I) * lap - (e.V0 - GM * e.m_G / r) * phi);
  }
  return rho;
}

ReductionScales reduction_residual(const ReductionInput& in) {
  check(in);
  ReductionScales out;
  out.Omega = in.Omega;
  out.radii = in.radii;

  const double c2 = in.c * in.c;
  const double mt = in.m * c2 / in.hbar;  // m̃
  const double x = mt * in.lambda;
  const double zeta = std::exp(x);
  const double omega = mt + in.Omega;
  const double N = in.hbar * c2 * in.lambda / (2 * std::sinh(x));
  const double lam2 = in.lambda * in.lambda;
  if (std::abs(in.Omega) > 0.1 * mt) out.warnings.push_back("slow-variation assumption strained: |Ω| > 0.1 m̃");
  if (std::abs(in.Omega) * in.lambda > 0.1) out.warnings.push_back("slow-variation assumption strained: |Ω|λ > 0.1");

  // (i) full operator on ψ = φ(r) e^{−i(m̃+Ω)t}; the residual is a multiple of
  // the same mode, so its value at t = 0 is the coefficient.
  const waveops::SeparableField psi(in.phi, timeops::TimeFunction::mode(omega));
  const waveops::RadialField box = waveops::box_newton(psi, in.gamma, in.c, in.lambda, in.radii);
  out.warnings.insert(out.warnings.end(), box.warnings.begin(), box.warnings.end());

  // h(y) = y − 1 + e^{−y}
  const double h = x + std::expm1(-x);
  const double two_cosh_minus_one = 4 * std::sinh(x / 2) * std::sinh(x / 2);
  const double A_flat_coef = 2 * std::sinh(x) / in.lambda;  // (ζ − ζ⁻¹)/(iλ) = −i·this

  std::vector<double> phi_abs;
  for (std::size_t i = 0; i < in.radii.size(); ++i) {
    const double r = in.radii[i];
    const cplx phi = in.phi(r);
    const cplx lap = in.phi.second_derivative(r) + 2.0 / r * in.phi.derivative(r);
    phi_abs.push_back(std::abs(phi));

    out.rho_i.push_back(N * (box.values[i](0.0) - mt * mt / c2 * phi));

    const cplx A_flat = -I * A_flat_coef;
    const cplx A_gamma = -(in.gamma * zeta / r) * 2.0 * I * mt;
    const double B = mt * mt - two_cosh_minus_one / lam2 - (2 * in.gamma * zeta / r) * h / lam2;
    const cplx dPsi = -I * in.Omega;  // Ψ̇/Ψ
    auto stage_ii = [&](cplx A) { return N / c2 * (c2 * zeta * lap - A * dPsi * phi - B * phi); };
    out.rho_ii.push_back(stage_ii(A_flat + A_gamma));
    out.rho_ii_ablated.push_back(stage_ii(A_flat));
  }
  out.rho_iii = effective_residual(in);

  out.norm_i = max_ratio(out.rho_i, phi_abs);
  out.norm_ii = max_ratio(out.rho_ii, phi_abs);
  out.norm_iii = max_ratio(out.rho_iii, phi_abs);
  out.gap_i_ii = max_ratio(out.rho_i, out.rho_ii, phi_abs);
  out.gap_ii_iii = max_ratio(out.rho_ii, out.rho_iii, phi_abs);
  out.gap_i_iii = max_ratio(out.rho_i, out.rho_iii, phi_abs);
  out.gap_i_ii_ablated = max_ratio(out.rho_i, out.rho_ii_ablated, phi_abs);
  return out;
}

}  // namespace qsg::spectrum
