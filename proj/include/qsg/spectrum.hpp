// Bound states of
//   iℏΨ̇ = −(ℏ²/2m_I)∇²Ψ + (V₀ − GMm_G/r)Ψ
// and the residual laboratory for the nonrelativistic reduction that
// produces it from the noncommutative Klein–Gordon equation.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsg/effective.hpp"
#include "qsg/geometry.hpp"

namespace qsg::spectrum {

using cplx = std::complex<double>;

class GridError : public std::runtime_error {
 public:
  GridError(const std::string& what, double drift) : std::runtime_error(what), drift(drift) {}
  double drift;
};

struct HydrogenLike {
  double m_I = 1;
  double m_G = 1;
  double V0 = 0;
  double M = 1;
  double G = 1;
  double hbar = 1;

  double GMmG() const { return G * M * m_G; }
  /// ℏ²/(m_I G M m_G)
  double bohr_radius() const { return hbar * hbar / (m_I * GMmG()); }
  void validate() const;
};

enum class Method { Numeric, BohrOracle };

struct Level {
  int n = 0;
  int l = 0;
  double E = 0;
  Method method = Method::Numeric;
};

struct BoundStateSpectrum {
  std::vector<Level> levels;
};

/// E_n = V₀ − m_I(GMm_G)²/(2ℏ²n²) for n = 1..n_max and every ℓ < n.
BoundStateSpectrum bohr_oracle(const HydrogenLike& p, int n_max);

struct RadialGrid {
  double r_max = 0;       // 0: pick from the Bohr radius and n_states
  std::size_t nodes = 4000;
};

struct RadialSolution {
  BoundStateSpectrum spectrum;       // levels below V₀, n = ℓ+1, ℓ+2, ...
  std::vector<double> r;             // interior nodes
  std::vector<std::vector<double>> u;  // u = rR per level, unit norm on the grid
  double r_max = 0;
  double h = 0;
};

/// Lowest n_states eigenvalues of −(ℏ²/2m_I)d²/dr² + ℏ²ℓ(ℓ+1)/(2m_I r²) + V₀ − GMm_G/r
/// on u(0) = u(r_max) = 0, uniform grid, symmetric tridiagonal eigensolver.
RadialSolution solve_radial(const HydrogenLike& p, int l, const RadialGrid& grid, int n_states);

struct CheckedSpectrum {
  RadialSolution coarse, fine;  // fine: node count doubled
  double max_drift = 0;         // max relative change of (E − V₀)
};
/// solve_radial on the grid and on a doubled grid; throws GridError if the
/// relative drift of E − V₀ exceeds `tolerance`.
CheckedSpectrum solve_radial_checked(const HydrogenLike& p, int l, const RadialGrid& grid, int n_states,
                                     double tolerance = 1e-3);

struct Virial {
  double kinetic = 0;      // ⟨T⟩ including the centrifugal term
  double potential = 0;    // ⟨V − V₀⟩
  double relative_error = 0;  // |2⟨T⟩ + ⟨V − V₀⟩| / |⟨V − V₀⟩|
};
Virial virial_check(const HydrogenLike& p, int l, const RadialSolution& s, std::size_t level = 0);

/// Hydrogen-like parameters for a test mass m around M from effective_params.
HydrogenLike from_effective(double m, double M, const effective::PlanckUnits& u);

// ---------------------------------------------------------------------------
// reduction laboratory

struct ReductionInput {
  double m = 1e-3;
  double gamma = 10;     // 2GM/c²
  double c = 1;
  double lambda = 1;
  double hbar = 1;
  double Omega = 1e-5;   // slow frequency of Ψ = φ(r)e^{−iΩt}
  geometry::RadialProfile phi;  // closed form
  std::vector<double> radii;
};

/// Residual densities per radius, all divided by the common phase and
/// expressed in energy units (stage (iii) normalisation):
///  (i)   N(□_newton ψ − (m̃/c)²ψ) with ψ = Ψe^{−im̃t}, N = ℏc²λ/(2 sinh m̃λ)
///  (ii)  (N/c²)(c²ζ∇²φ − A·(−iΩ)φ − Bφ), the intermediate reduced equation
///  (iii) ℏΩφ + (ℏ²/2m_I)∇²φ − (V₀ − GMm_G/r)φ
/// `ii_ablated` drops the (γζ/r)2im̃ part of A.
struct ReductionScales {
  double Omega = 0;
  std::vector<double> radii;
  std::vector<cplx> rho_i, rho_ii, rho_ii_ablated, rho_iii;
  double norm_i = 0, norm_ii = 0, norm_iii = 0;  // max |ρ|/|φ|
  double gap_i_ii = 0, gap_ii_iii = 0, gap_i_iii = 0, gap_i_ii_ablated = 0;  // max |ρ_a − ρ_b|/|φ|
  std::vector<std::string> warnings;
};
ReductionScales reduction_residual(const ReductionInput& in);

/// Stage (iii) alone: ρ_iii on `radii` with the effective parameters of m.
std::vector<cplx> effective_residual(const ReductionInput& in);

}  // namespace qsg::spectrum
