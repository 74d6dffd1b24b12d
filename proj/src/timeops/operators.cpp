#include <algorithm>
#include <cmath>
#include <limits>

#include "qsg/timeops.hpp"

namespace qsg::timeops {

namespace {

constexpr cplx I{0, 1};
constexpr double kSpecialWindow = 1e-9;

void require_positive(double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("λ must be positive for finite-difference operators");
}

}  // namespace

TimeFunction shift(const TimeFunction& f, double a, double lambda) {
  if (lambda < 0) throw std::invalid_argument("shift: λ must be non-negative");
  return f.shifted(I * lambda * a);
}

TimeFunction d0(const TimeFunction& f, double lambda) {
  require_positive(lambda);
  return (f - f.shifted(-I * lambda)).scaled(1.0 / (I * lambda));
}

TimeFunction delta0_const(const TimeFunction& f, double lambda, cplx beta) {
  require_positive(lambda);
  const TimeFunction second = f.shifted(I * lambda) + f.shifted(-I * lambda) - f.scaled(2.0);
  return second.scaled(beta / 2.0 / ((I * lambda) * (I * lambda)));
}

TimeFunction delta0_hybrid(const TimeFunction& f, double lambda) {
  require_positive(lambda);
  return (f.derivative() - d0(f, lambda)).scaled(1.0 / (I * lambda));
}

PowerDelta0 delta0_power(const TimeFunction& f, double lambda, double n) {
  require_positive(lambda);
  if (std::abs(n - 1) < kSpecialWindow) return {delta0_hybrid(f.shifted(I * lambda), lambda), n};
  if (std::abs(n - 2) < kSpecialWindow) {
    const TimeFunction a = d0(f.shifted(2.0 * I * lambda), lambda);
    const TimeFunction b = f.shifted(I * lambda).derivative();
    return {(a - b).scaled(1.0 / (I * lambda)), n};
  }
  const TimeFunction num =
      f.shifted(I * lambda) + f.shifted(-I * lambda * (1 - n)).scaled(1 - n) - f.shifted(I * lambda * n).scaled(2 - n);
  return {num.scaled(1.0 / ((I * lambda) * (I * lambda) * (2 - n) * (1 - n))), n};
}

TimeFunction delta0_general(const TimeFunction& f, double lambda, cplx mu, cplx nu, cplx beta) {
  require_positive(lambda);
  if (mu == 0.0) throw DegenerateProfile("delta0_general: μ = 0");
  if (mu + nu == 0.0) throw DegenerateProfile("delta0_general: μ + ν = 0");
  const TimeFunction num = f.shifted(I * lambda).scaled(nu) + f.shifted(-I * lambda * (beta / mu - 1.0)).scaled(mu) -
                           f.shifted(I * lambda * (1.0 - beta / (nu + mu))).scaled(nu + mu);
  return num.scaled(1.0 / ((I * lambda) * (I * lambda)));
}

// Mode e^{−iωt}: f(t + iλa) = e^{ωλa} f.

OperatorSymbol symbol_d0(double omega, double lambda) {
  require_positive(lambda);
  return {omega, -std::expm1(-omega * lambda) / (I * lambda)};
}

OperatorSymbol symbol_delta0_const(double omega, double lambda, cplx beta) {
  require_positive(lambda);
  const double h = std::sinh(omega * lambda / 2);
  return {omega, -beta * 2.0 * h * h / (lambda * lambda)};
}

OperatorSymbol symbol_delta0_hybrid(double omega, double lambda) {
  // (1/iλ)(−iω − (1−e^{−ωλ})/(iλ)) = −(ωλ − 1 + e^{−ωλ})/λ²
  require_positive(lambda);
  const double y = omega * lambda;
  return {omega, -(y + std::expm1(-y)) / (lambda * lambda)};
}

OperatorSymbol symbol_delta0_power(double omega, double lambda, double n) {
  require_positive(lambda);
  const double y = omega * lambda;
  const OperatorSymbol d = symbol_d0(omega, lambda);
  if (std::abs(n - 1) < kSpecialWindow) return {omega, symbol_delta0_hybrid(omega, lambda).value * std::exp(y)};
  if (std::abs(n - 2) < kSpecialWindow)
    return {omega, (d.value * std::exp(2 * y) + I * omega * std::exp(y)) / (I * lambda)};
  const double num = std::exp(y) + (1 - n) * std::exp(-y * (1 - n)) - (2 - n) * std::exp(y * n);
  return {omega, num / (-(lambda * lambda) * (2 - n) * (1 - n))};
}

OperatorSymbol symbol_delta0_general(double omega, double lambda, cplx mu, cplx nu, cplx beta) {
  require_positive(lambda);
  if (mu == 0.0 || mu + nu == 0.0) throw DegenerateProfile("symbol_delta0_general: degenerate profile");
  const double y = omega * lambda;
  const cplx num = nu * std::exp(y) + mu * std::exp(-y * (beta / mu - 1.0)) - (nu + mu) * std::exp(y * (1.0 - beta / (nu + mu)));
  return {omega, -num / (lambda * lambda)};
}

ConvergenceReport classical_limit_check(LimitOp op, const TimeFunction& f, const std::vector<double>& lambdas,
                                        cplx beta, const std::vector<double>& t_samples) {
  ConvergenceReport rep;
  const TimeFunction f1 = f.derivative();
  const TimeFunction f2 = f1.derivative();
  for (double lam : lambdas) {
    TimeFunction err;
    switch (op) {
      case LimitOp::D0: err = d0(f, lam) - f1; break;
      case LimitOp::Delta0Const: err = delta0_const(f, lam, beta) - f2.scaled(beta / 2.0); break;
      case LimitOp::Delta0Hybrid: err = delta0_hybrid(f, lam) - f2.scaled(0.5); break;
    }
    double e = 0;
    for (double t : t_samples) e = std::max(e, std::abs(err(t)));
    rep.lambdas.push_back(lam);
    rep.errors.push_back(e);
  }
  rep.exact = std::all_of(rep.errors.begin(), rep.errors.end(), [](double e) { return e == 0.0; });
  if (rep.exact || rep.lambdas.size() < 2) {
    rep.order = std::numeric_limits<double>::infinity();
    return rep;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t k = 0;
  for (std::size_t i = 0; i < rep.lambdas.size(); ++i) {
    if (rep.errors[i] <= 0) continue;
    const double x = std::log(rep.lambdas[i]);
    const double y = std::log(rep.errors[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++k;
  }
  rep.order = k < 2 ? std::numeric_limits<double>::infinity() : (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return rep;
}

}  // namespace qsg::timeops
