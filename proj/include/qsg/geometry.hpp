// Radial profiles β(r), μ(r), ν(r), Φ(r), the μ/ν first-order system
//   r μ' + 2μ = β,   r ν' + ν = μ,
// the static metric g = (1/β)dt² + dx² and the weak-field checks.
#pragma once

#include <complex>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsg::geometry {

using cplx = std::complex<double>;

class SignatureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double max_residual)
      : std::runtime_error(what), max_residual(max_residual) {}
  double max_residual;
};

/// coef · r^power · ln(r/log_scale)^log_power · e^{−decay·r}, log_power ∈ {0, 1}.
struct ClosedTerm {
  cplx coef;
  double power = 0;
  unsigned log_power = 0;
  double log_scale = 1;
  double decay = 0;
};

/// Closed form (sum of ClosedTerm, evaluable anywhere r > 0) or sampled on a
/// strictly increasing positive grid of ≥ 16 nodes.
class RadialProfile {
 public:
  enum class Kind { Closed, Sampled };

  RadialProfile() = default;  // the zero closed profile
  static RadialProfile closed(std::vector<ClosedTerm> terms, nlohmann::json tag = nullptr);
  static RadialProfile constant(cplx c);
  static RadialProfile sampled(std::vector<double> r, std::vector<cplx> values, nlohmann::json tag = nullptr);

  Kind kind() const { return kind_; }
  const nlohmann::json& tag() const { return tag_; }
  const std::vector<ClosedTerm>& closed_terms() const { return terms_; }
  const std::vector<double>& grid() const { return r_; }
  const std::vector<cplx>& values() const { return v_; }

  /// Value and radial derivatives. Sampled profiles use three-point
  /// non-uniform differences at the nodes (one-sided at the ends) and linear
  /// interpolation between nodes.
  cplx operator()(double r) const;
  cplx derivative(double r) const;
  cplx second_derivative(double r) const;

  /// Closed profiles: exact sampling; sampled: interpolation.
  RadialProfile sample(const std::vector<double>& r) const;

  RadialProfile operator+(const RadialProfile& o) const;
  RadialProfile scaled(cplx k) const;

 private:
  enum class Order { Value, First, Second };
  cplx eval(double r, Order order) const;
  void check_radius(double r) const;

  Kind kind_ = Kind::Closed;
  nlohmann::json tag_;
  std::vector<ClosedTerm> terms_;
  std::vector<double> r_;
  std::vector<cplx> v_, d1_, d2_;
};

std::vector<double> log_grid(double r_min, double r_max, std::size_t n);
std::vector<double> uniform_grid(double r_min, double r_max, std::size_t n);

struct MuNu {
  RadialProfile beta, mu, nu;
};

/// Particular solutions for β = r^{−n}. n = 1 and 2 carry ln(r/log_scale).
MuNu mu_nu_closed(double n, double log_scale = 1.0);
/// β = −(1+γ/r)/c², μ = −(1/2+γ/r)/c², ν = −(1/2 − (γ/r)ln(γ/r))/c².
MuNu mu_nu_newton(double gamma, double c);

struct NumericMuNu {
  MuNu profiles;   // sampled on a log grid over [r_min, r_max]
  double max_residual;  // ODE residual of the sampled output, relative
};
/// Adaptive Dormand–Prince integration in s = ln r (relative tolerance 1e−11, no absolute floor),
/// pinned to μ(r_ref) = μ_ref, ν(r_ref) = ν_ref.
NumericMuNu mu_nu_numeric(const RadialProfile& beta, double r_ref, cplx mu_ref, cplx nu_ref, double r_min,
                          double r_max, std::size_t nodes = 200);

struct OdeResidual {
  double mu = 0;  // max |rμ'+2μ−β| / max(|rμ'|, |2μ|, |β|)
  double nu = 0;  // max |rν'+ν−μ| / max(|rν'|, |ν|, |μ|)
};
OdeResidual ode_residuals(const MuNu& p, const std::vector<double>& radii);

/// φ = √(−1/β); throws SignatureError where β ≥ 0.
class StaticMetric {
 public:
  explicit StaticMetric(RadialProfile beta) : beta_(std::move(beta)) {}
  const RadialProfile& beta() const { return beta_; }
  double phi(double r) const;
  /// Laplace–Beltrami of g on a time-independent radial f, in flux form
  /// (1/(r²φ)) d/dr(r² φ f') with central differences of step h.
  double laplace_beltrami(const RadialProfile& f, double r, double h) const;
  /// Δ̄f = f'' + (2/r)f' − (β'/2β)f' from the profiles' own derivatives.
  double delta_bar(const RadialProfile& f, double r) const;

 private:
  RadialProfile beta_;
};

struct WeakFieldReport {
  double max_ricci00 = 0;             // max |φ Δ̄φ|
  double max_laplacian_Phi = 0;       // max |Δ̄Φ|
  double max_relative_deviation = 0;  // max |φΔ̄φ − Δ̄Φ| / |Δ̄Φ| where Δ̄Φ ≠ 0
  double max_poisson_residual = 0;    // max |Δ̄Φ − 4πGρ|, divided by max|4πGρ| when ρ ≠ 0
  double max_Phi_over_c2 = 0;
  bool weak = true;                   // |Φ|/c² < 0.1 everywhere
};
/// β = −(1/c²)(1 − 2Φ/c²), φ = √(−1/β); radial finite differences on the
/// interior nodes of `grid`.
WeakFieldReport weak_field_check(const RadialProfile& Phi, const RadialProfile& rho, double c, double G,
                                 const std::vector<double>& grid);

/// Two-column CSV (r,value) preceded by a JSON header line with the tag.
void write_profile_csv(std::ostream& os, const RadialProfile& p, const std::vector<double>& grid);
RadialProfile read_profile_csv(std::istream& is);

}  // namespace qsg::geometry
