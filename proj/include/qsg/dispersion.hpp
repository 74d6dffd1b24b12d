// Plane-wave dispersion for the flat model β = −1/c²: modes e^{i(k·x) − iωt}
// on the deformed shell
//   −k² e^{ωλ} + (2/(c²λ²))(cosh ωλ − 1) − (mc/ℏ)² = 0.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace qsg::dispersion {

/// k² < 0: the mode does not propagate.
class EvanescentMode : public std::domain_error {
 public:
  EvanescentMode(const std::string& what, double k2) : std::domain_error(what), k2(k2) {}
  double k2;
};

struct Units {
  double lambda = 1;
  double c = 1;
  double hbar = 1;
  /// ω < 0 is rejected unless set (only ω > 0 is physically characterised).
  bool allow_negative_frequency = false;
};

/// Shell residual divided by its largest term (0 when all terms vanish).
double shell_residual(double omega, double k, double m, const Units& u);

/// (1−e^{−ωλ})²/(c²λ²) − (mc/ℏ)² e^{−ωλ}; the classical value at λ = 0.
double k_squared_closed(double omega, double m, const Units& u);

/// Non-negative root of the shell found by bracketing and TOMS 748.
/// Throws EvanescentMode when no real root exists.
double solve_k(double omega, double m, const Units& u);

/// dω/dk from implicit differentiation of the shell at the numeric root.
double group_velocity(double omega, double m, const Units& u);

/// L(1/v₁ − 1/v₂)
double time_of_flight_difference(double L, double v1, double v2);

struct DispersionPoint {
  double omega = 0;
  double k = 0;      // NaN in the evanescent regime
  double m = 0;
  double vg = 0;     // NaN in the evanescent regime
  double residual = 0;
  bool evanescent = false;
};

/// n points ω_j = ω_min + j(ω_max − ω_min)/(n−1).
std::vector<DispersionPoint> sweep(double omega_min, double omega_max, std::size_t n, double m, const Units& u);

}  // namespace qsg::dispersion
