// Imaginary-time shifts and the finite-difference time operators on the
// class of finite sums c·tᵖ·e^{st}.
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace qsg::timeops {

using cplx = std::complex<double>;

/// Profile values make Δ₀ singular (μ = 0 or μ + ν = 0).
class DegenerateProfile : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Term {
  cplx c;
  unsigned p = 0;
  cplx s;
};

/// Σ c·tᵖ·e^{st}. Terms with equal (p, s) are merged, zero terms dropped.
class TimeFunction {
 public:
  TimeFunction() = default;

  static TimeFunction constant(cplx c);
  static TimeFunction power(unsigned p, cplx c = 1.0);
  static TimeFunction exponential(cplx s, cplx c = 1.0);
  /// e^{−iωt}
  static TimeFunction mode(double omega, cplx c = 1.0);

  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(cplx c, unsigned p, cplx s);

  TimeFunction& operator+=(const TimeFunction& o);
  TimeFunction& operator-=(const TimeFunction& o);
  friend TimeFunction operator+(TimeFunction a, const TimeFunction& b) { return a += b; }
  friend TimeFunction operator-(TimeFunction a, const TimeFunction& b) { return a -= b; }
  friend TimeFunction operator*(const TimeFunction& a, const TimeFunction& b);
  TimeFunction scaled(cplx k) const;

  /// f(t + h) for complex h, exact on this class.
  TimeFunction shifted(cplx h) const;
  TimeFunction derivative() const;
  cplx operator()(cplx t) const;

  /// Max coefficient mismatch ≤ tol · max(1, largest coefficient).
  bool approx_equal(const TimeFunction& o, double tol = 1e-12) const;
  /// Largest |c| over the terms (0 for the zero function).
  double max_coeff() const;

  nlohmann::json to_json() const;
  static TimeFunction from_json(const nlohmann::json& j);

 private:
  std::vector<Term> terms_;
};

/// f(t + iλa). Requires λ ≥ 0.
TimeFunction shift(const TimeFunction& f, double a, double lambda);

/// (f(t) − f(t − iλ))/iλ. Requires λ > 0.
TimeFunction d0(const TimeFunction& f, double lambda);
/// (β/2)(f(t+iλ) + f(t−iλ) − 2f(t))/(iλ)²
TimeFunction delta0_const(const TimeFunction& f, double lambda, cplx beta);
/// (1/iλ)(∂_t − ∂₀)f
TimeFunction delta0_hybrid(const TimeFunction& f, double lambda);

struct PowerDelta0 {
  TimeFunction time_part;
  double radial_exponent;  // the full operator is r^{−radial_exponent} · time_part
};
/// Time part of Δ₀ for β = 1/rⁿ; n within 1e−9 of 1 or 2 uses the special forms.
PowerDelta0 delta0_power(const TimeFunction& f, double lambda, double n);

/// (νf(t+iλ) + μf(t−iλ(β/μ−1)) − (ν+μ)f(t+iλ(1−β/(ν+μ))))/(iλ)², evaluated
/// formally for complex μ, ν, β.
TimeFunction delta0_general(const TimeFunction& f, double lambda, cplx mu, cplx nu, cplx beta);

// Multipliers each operator applies to the pure mode e^{−iωt}.
struct OperatorSymbol {
  double omega;
  cplx value;
};
OperatorSymbol symbol_d0(double omega, double lambda);
OperatorSymbol symbol_delta0_const(double omega, double lambda, cplx beta);
OperatorSymbol symbol_delta0_hybrid(double omega, double lambda);
OperatorSymbol symbol_delta0_power(double omega, double lambda, double n);
OperatorSymbol symbol_delta0_general(double omega, double lambda, cplx mu, cplx nu, cplx beta);

enum class LimitOp { D0, Delta0Const, Delta0Hybrid };

struct ConvergenceReport {
  std::vector<double> lambdas;
  std::vector<double> errors;  // max over the t samples
  double order = 0;            // least-squares slope of log error vs log λ; +inf if all errors vanish
  bool exact = false;          // every error is zero
};

/// ‖op_λ f − classical f‖ on a real t grid for each λ, where the classical
/// counterparts are f′ (D0), (β/2)f̈ (Delta0Const) and f̈/2 (Delta0Hybrid).
ConvergenceReport classical_limit_check(LimitOp op, const TimeFunction& f, const std::vector<double>& lambdas,
                                        cplx beta = 1.0, const std::vector<double>& t_samples = {-1, -0.5, 0, 0.5, 1});

}  // namespace qsg::timeops
