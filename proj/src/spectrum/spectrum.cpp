#include <algorithm>
#include <cmath>

#include <lapacke.h>

#include "qsg/spectrum.hpp"

namespace qsg::spectrum {

void HydrogenLike::validate() const {
  if (!(m_I > 0) || !(m_G > 0) || !(M >= 0) || !(G > 0) || !(hbar > 0))
    throw std::invalid_argument("hydrogen-like problem: masses, G and ℏ must be positive (M >= 0)");
}

BoundStateSpectrum bohr_oracle(const HydrogenLike& p, int n_max) {
  p.validate();
  BoundStateSpectrum s;
  const double k = p.GMmG();
  for (int n = 1; n <= n_max; ++n) {
    const double E = p.V0 - p.m_I * k * k / (2 * p.hbar * p.hbar * n * n);
    for (int l = 0; l < n; ++l) s.levels.push_back({n, l, E, Method::BohrOracle});
  }
  return s;
}

RadialSolution solve_radial(const HydrogenLike& p, int l, const RadialGrid& grid, int n_states) {
  p.validate();
  if (l < 0 || n_states < 1) throw std::invalid_argument("solve_radial: need l >= 0 and n_states >= 1");
  if (grid.nodes < 16) throw std::invalid_argument("solve_radial: grid too small");

  RadialSolution out;
  const int n_top = l + n_states;
  if (grid.r_max > 0) {
    out.r_max = grid.r_max;
  } else {
    if (p.M == 0) throw std::invalid_argument("solve_radial: r_max must be given when M = 0");
    out.r_max = p.bohr_radius() * std::max(20.0, 8.0 * n_top * n_top);
  }
  const std::size_t N = grid.nodes;
  out.h = out.r_max / static_cast<double>(N + 1);
  const double kin = p.hbar * p.hbar / (2 * p.m_I);
  const double cent = kin * l * (l + 1);

  std::vector<double> d(N), e(N, -kin / (out.h * out.h));
  out.r.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double r = out.h * static_cast<double>(i + 1);
    out.r[i] = r;
    d[i] = 2 * kin / (out.h * out.h) + cent / (r * r) + p.V0 - p.GMmG() / r;
  }

  const lapack_int want = std::min<lapack_int>(n_states, static_cast<lapack_int>(N));
  std::vector<double> w(N), z(N * static_cast<std::size_t>(want));
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(want));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dstevr(LAPACK_COL_MAJOR, 'V', 'I', static_cast<lapack_int>(N), d.data(), e.data(), 0.0,
                                         0.0, 1, want, 0.0, &found, w.data(), z.data(), static_cast<lapack_int>(N),
                                         isuppz.data());
  if (info != 0) throw std::runtime_error("solve_radial: LAPACKE_dstevr failed with info = " + std::to_string(info));

  for (lapack_int k = 0; k < found; ++k) {
    if (!(w[k] < p.V0)) break;  // not bound
    out.spectrum.levels.push_back({l + 1 + static_cast<int>(k), l, w[k], Method::Numeric});
    std::vector<double> u(z.begin() + k * static_cast<std::ptrdiff_t>(N), z.begin() + (k + 1) * static_cast<std::ptrdiff_t>(N));
    const double norm = std::sqrt(out.h);  // columns have unit 2-norm; rescale to Σu²h = 1
    for (auto& v : u) v /= norm;
    out.u.push_back(std::move(u));
  }
  return out;
}

CheckedSpectrum solve_radial_checked(const HydrogenLike& p, int l, const RadialGrid& grid, int n_states,
                                     double tolerance) {
  CheckedSpectrum c;
  c.coarse = solve_radial(p, l, grid, n_states);
  RadialGrid doubled = grid;
  doubled.r_max = c.coarse.r_max;
  doubled.nodes = 2 * grid.nodes + 1;  // halves h exactly
  c.fine = solve_radial(p, l, doubled, n_states);
  const std::size_t k = std::min(c.coarse.spectrum.levels.size(), c.fine.spectrum.levels.size());
  if (c.coarse.spectrum.levels.size() != c.fine.spectrum.levels.size())
    throw GridError("solve_radial: bound-state count changed under grid doubling", 1.0);
  for (std::size_t i = 0; i < k; ++i) {
    const double a = c.coarse.spectrum.levels[i].E - p.V0, b = c.fine.spectrum.levels[i].E - p.V0;
    c.max_drift = std::max(c.max_drift, std::abs(a - b) / std::abs(b));
  }
  if (c.max_drift > tolerance)
    throw GridError("solve_radial: eigenvalues drift by " + std::to_string(c.max_drift) + " under grid doubling",
                    c.max_drift);
  return c;
}

Virial virial_check(const HydrogenLike& p, int l, const RadialSolution& s, std::size_t level) {
  if (level >= s.u.size()) throw std::out_of_range("virial_check: no such level");
  const auto& u = s.u[level];
  const double kin = p.hbar * p.hbar / (2 * p.m_I);
  Virial v;
  double prev = 0;  // u(0) = 0
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double du = (u[i] - prev) / s.h;
    v.kinetic += kin * du * du * s.h + kin * l * (l + 1) * u[i] * u[i] / (s.r[i] * s.r[i]) * s.h;
    v.potential += -p.GMmG() * u[i] * u[i] / s.r[i] * s.h;
    prev = u[i];
  }
  v.kinetic += kin * prev * prev / s.h;  // last segment to u(r_max) = 0
  v.relative_error = std::abs(2 * v.kinetic + v.potential) / std::abs(v.potential);
  return v;
}

HydrogenLike from_effective(double m, double M, const effective::PlanckUnits& u) {
  const effective::EffectiveParams e = effective::effective_params(m, u);
  HydrogenLike p;
  p.m_I = e.m_I;
  p.m_G = e.m_G;
  p.V0 = e.V0;
  p.M = M;
  p.G = u.G;
  p.hbar = u.hbar;
  return p;
}

}  // namespace qsg::spectrum
