#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qsg/spectrum.hpp"
#include "qsg/verify.hpp"

using namespace qsg::spectrum;
using qsg::geometry::RadialProfile;

namespace {

HydrogenLike classical() {
  HydrogenLike p;
  p.m_I = p.m_G = 1;
  p.M = 1;
  return p;
}

double binding(const Level& l, const HydrogenLike& p) { return l.E - p.V0; }

}  // namespace

TEST_CASE("Bohr levels") {
  const HydrogenLike p = classical();
  const BoundStateSpectrum s = bohr_oracle(p, 3);
  REQUIRE(s.levels.size() == 6);  // 1 + 2 + 3
  CHECK(s.levels[0].E == doctest::Approx(-0.5));
  CHECK(s.levels[1].E == doctest::Approx(-0.125));
  CHECK(s.levels[1].E == s.levels[2].E);
  CHECK(s.levels[5].n == 3);
  CHECK(s.levels[5].l == 2);
  CHECK_THROWS(bohr_oracle(HydrogenLike{0, 1, 0, 1, 1, 1}, 2));
}

TEST_CASE("Bohr levels with the effective parameters at the Planck mass") {
  const qsg::effective::PlanckUnits u{1, 1, 1, 1};
  const HydrogenLike p = from_effective(1, 1, u);
  CHECK(p.V0 == doctest::Approx(-0.0359).epsilon(1e-2));
  const BoundStateSpectrum s = bohr_oracle(p, 2);
  const double scale = p.m_I * p.m_G * p.m_G;
  CHECK(s.levels[0].E - p.V0 == doctest::Approx(-0.5 * scale));
  CHECK(s.levels[1].E - p.V0 == doctest::Approx(-0.125 * scale));
}

TEST_CASE("radial solver against the Bohr levels") {
  const HydrogenLike p = classical();
  for (int l : {0, 1}) {
    const RadialSolution sol = solve_radial(p, l, {}, 3 - l);
    REQUIRE(sol.spectrum.levels.size() == static_cast<std::size_t>(3 - l));
    for (const auto& lv : sol.spectrum.levels) {
      const double want = -0.5 / (lv.n * lv.n);
      CHECK(std::abs(binding(lv, p) - want) <= 5e-3 * std::abs(want));
    }
  }
}

TEST_CASE("grid doubling") {
  const HydrogenLike p = classical();
  const CheckedSpectrum c = solve_radial_checked(p, 0, {}, 3);
  CHECK(c.max_drift <= 1e-3);
  for (const auto& lv : c.fine.spectrum.levels) {
    const double want = -0.5 / (lv.n * lv.n);
    CHECK(std::abs(binding(lv, p) - want) <= 1e-3 * std::abs(want));
  }
  CHECK_THROWS_AS(solve_radial_checked(p, 0, {60, 16}, 3), GridError);
}

TEST_CASE("virial theorem") {
  const HydrogenLike p = classical();
  const RadialSolution sol = solve_radial(p, 0, {}, 2);
  for (std::size_t k = 0; k < 2; ++k) CHECK(virial_check(p, 0, sol, k).relative_error < 1e-2);
  CHECK_THROWS(virial_check(p, 0, sol, 5));
}

TEST_CASE("no bound states without a central mass") {
  HydrogenLike p = classical();
  p.M = 0;
  CHECK(solve_radial(p, 0, {200, 2000}, 3).spectrum.levels.empty());
  CHECK_THROWS(solve_radial(p, 0, {}, 3));
}

TEST_CASE("property: Coulomb degeneracy and m_G dependence") {
  const HydrogenLike p = classical();
  const double e2s = solve_radial(p, 0, {}, 2).spectrum.levels[1].E;
  const double e2p = solve_radial(p, 1, {}, 1).spectrum.levels[0].E;
  CHECK(std::abs(e2s - e2p) <= 5e-3 * std::abs(e2p));
  double prev = 0;
  for (double mG : {0.5, 1.0, 1.5, 2.0}) {
    HydrogenLike q = p;
    q.m_G = mG;
    const double e = solve_radial(q, 0, {}, 1).spectrum.levels[0].E;
    CHECK(e < prev);
    prev = e;
  }
}

TEST_CASE("reduction: stage (iii) vanishes on the Bohr ground state") {
  ReductionInput in;
  const auto e = qsg::effective::effective_params(in.m, {in.lambda, in.c, in.hbar, 1.0});
  HydrogenLike q;
  q.m_I = e.m_I;
  q.m_G = e.m_G;
  q.V0 = e.V0;
  q.M = in.gamma * in.c * in.c / 2;
  const double a = q.bohr_radius();
  in.Omega = bohr_oracle(q, 1).levels.front().E / in.hbar;
  in.phi = RadialProfile::closed({{1.0, 0, 0, 1, 1 / a}});
  for (int j = 1; j <= 6; ++j) in.radii.push_back(a * 0.5 * j);
  const std::vector<cplx> rho = effective_residual(in);
  for (std::size_t i = 0; i < rho.size(); ++i)
    CHECK(std::abs(rho[i]) <= 1e-8 * std::abs(in.hbar * in.Omega * in.phi(in.radii[i])));
}

namespace {

ReductionScales reduction_at(double Omega, double a, double gamma, const std::vector<double>& radii) {
  ReductionInput in;
  in.gamma = gamma;
  in.Omega = Omega;
  in.phi = RadialProfile::closed({{1.0, 0, 0, 1, 1 / a}});
  in.radii = radii;
  return reduction_residual(in);
}

}  // namespace

TEST_CASE("reduction: the neglected terms are second order in the slow scales") {
  std::vector<double> gaps;
  for (double s : {1.0, 2.0, 4.0}) {
    std::vector<double> radii;
    for (int j = 1; j <= 10; ++j) radii.push_back(1e5 * s * 0.5 * j);
    gaps.push_back(reduction_at(1e-5 / s, 1e5 * s, 10, radii).gap_i_iii);
  }
  CHECK(gaps[0] / gaps[1] == doctest::Approx(4).epsilon(0.3));
  CHECK(gaps[1] / gaps[2] == doctest::Approx(4).epsilon(0.3));
}

TEST_CASE("reduction: dropping the γ/r drift term costs first order in γ/r") {
  std::vector<double> radii;
  for (int j = 0; j < 9; ++j) radii.push_back(1e5 * (1 + 0.5 * j));
  const std::vector<double> gammas = {1e2, 2e2, 4e2, 8e2};
  std::vector<double> excess;
  for (double g : gammas) {
    const ReductionScales r = reduction_at(1e-6, 2e5, g, radii);
    excess.push_back(r.gap_i_ii_ablated - r.gap_i_ii);
  }
  CHECK(qsg::verify::log_log_slope(gammas, excess) == doctest::Approx(1).epsilon(0.2));
}

TEST_CASE("reduction: warnings and input checks") {
  const ReductionScales r = reduction_at(0.5, 10, 1, {5, 10});
  CHECK_FALSE(r.warnings.empty());
  ReductionInput bad;
  CHECK_THROWS(reduction_residual(bad));  // no radii
}
