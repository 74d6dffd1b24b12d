// Wave operators on separable fields (spatial part ⊗ TimeFunction):
//   constant β:   □ψ = ∇²ψ(t+iλ) + 2Δ₀^{β}ψ
//   varying β:    □ψ = Δ̄ψ(t+iλ) + 2Δ₀ψ,  Δ̄ = ∇² − (1/2β)β'∂_r,  Δ₀ with μ, ν
//   Newtonian:    □^{β=−1/c²}ψ + drift·∂_rψ(t+iλ) − (2γ/c²r)Δ₀^{hyb}ψ(t+iλ)
#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "qsg/geometry.hpp"
#include "qsg/timeops.hpp"

namespace qsg::waveops {

using cplx = std::complex<double>;
using timeops::TimeFunction;

/// e^{ik·x}
struct PlaneWave {
  std::array<double, 3> k{};
  double k2() const { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }
};

using Spatial = std::variant<PlaneWave, geometry::RadialProfile>;

struct SeparableTerm {
  Spatial space;
  TimeFunction time;
};

class SeparableField {
 public:
  SeparableField() = default;
  SeparableField(Spatial space, TimeFunction time) { add(std::move(space), std::move(time)); }

  void add(Spatial space, TimeFunction time);
  const std::vector<SeparableTerm>& terms() const { return terms_; }
  bool all_plane_waves() const;
  bool all_radial() const;

  SeparableField scaled(cplx k) const;
  SeparableField operator+(const SeparableField& o) const;

  /// ψ at (x, t); radial terms use r = |x|.
  cplx operator()(const std::array<double, 3>& x, cplx t) const;

 private:
  std::vector<SeparableTerm> terms_;
};

/// Values of an operator's output on a list of radii: one TimeFunction per radius.
struct RadialField {
  std::vector<double> r;
  std::vector<TimeFunction> values;
  std::vector<std::string> warnings;

  /// max over nodes and t samples of |a − b| / max(1, |a|)
  double max_difference(const RadialField& o, const std::vector<double>& t_samples = {0.0, 0.5, 1.0}) const;
  RadialField operator-(const RadialField& o) const;
};

struct ConstBeta {
  cplx beta;
};
struct GeneralBeta {
  geometry::MuNu profiles;
};
struct NewtonBeta {
  double gamma;
};

struct WaveOpConfig {
  double lambda = 1;
  double c = 1;
  std::variant<ConstBeta, GeneralBeta, NewtonBeta> variant = ConstBeta{-1.0};
};

/// Exact on plane-wave terms; every term must be a plane wave.
SeparableField box_const(const SeparableField& psi, cplx beta, double lambda);
/// Every term must be radial; results are reported at `radii`.
RadialField box_const(const SeparableField& psi, cplx beta, double lambda, const std::vector<double>& radii);
RadialField box_general(const SeparableField& psi, const geometry::MuNu& profiles, double lambda,
                        const std::vector<double>& radii);
RadialField box_newton(const SeparableField& psi, double gamma, double c, double lambda,
                       const std::vector<double>& radii);

/// □ψ − (mc/ℏ)²ψ
SeparableField kg_residual(const SeparableField& psi, const WaveOpConfig& cfg, double m, double hbar);
RadialField kg_residual(const SeparableField& psi, const WaveOpConfig& cfg, double m, double hbar,
                        const std::vector<double>& radii);

/// JSON bundle: each term carries its time part as a term list and its
/// spatial part either as a wave vector or as profile CSV text on `grid`.
nlohmann::json to_bundle(const SeparableField& psi, const std::vector<double>& grid);
SeparableField from_bundle(const nlohmann::json& j);

}  // namespace qsg::waveops
