#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "qsg/geometry.hpp"

namespace qsg::geometry {

namespace {

constexpr double kSpecialWindow = 1e-9;

nlohmann::json power_tag(double n, const char* which, double log_scale) {
  return {{"kind", "power"}, {"n", n}, {"profile", which}, {"log_scale", log_scale}};
}

nlohmann::json newton_tag(double gamma, double c, const char* which) {
  return {{"kind", "newton"}, {"gamma", gamma}, {"c", c}, {"profile", which}};
}

double rel(cplx resid, std::initializer_list<cplx> parts) {
  double scale = 0;
  for (cplx p : parts) scale = std::max(scale, std::abs(p));
  return scale == 0 ? std::abs(resid) : std::abs(resid) / scale;
}

}  // namespace

MuNu mu_nu_closed(double n, double log_scale) {
  if (!(log_scale > 0)) throw std::invalid_argument("mu_nu_closed: log scale must be positive");
  MuNu p;
  p.beta = RadialProfile::closed({{1.0, -n}}, power_tag(n, "beta", log_scale));
  if (std::abs(n - 1) < kSpecialWindow) {
    p.mu = RadialProfile::closed({{1.0, -1}}, power_tag(1, "mu", log_scale));
    p.nu = RadialProfile::closed({{1.0, -1, 1, log_scale}}, power_tag(1, "nu", log_scale));
  } else if (std::abs(n - 2) < kSpecialWindow) {
    // ν = −(1 + ln r)/r²; the sign is fixed by rν' + ν = μ.
    p.mu = RadialProfile::closed({{1.0, -2, 1, log_scale}}, power_tag(2, "mu", log_scale));
    p.nu = RadialProfile::closed({{-1.0, -2}, {-1.0, -2, 1, log_scale}}, power_tag(2, "nu", log_scale));
  } else {
    p.mu = RadialProfile::closed({{1 / (2 - n), -n}}, power_tag(n, "mu", log_scale));
    p.nu = RadialProfile::closed({{1 / ((2 - n) * (1 - n)), -n}}, power_tag(n, "nu", log_scale));
  }
  return p;
}

MuNu mu_nu_newton(double gamma, double c) {
  if (!(gamma > 0) || !(c > 0)) throw std::invalid_argument("mu_nu_newton: γ and c must be positive");
  const double k = 1 / (c * c);
  MuNu p;
  p.beta = RadialProfile::closed({{-k, 0}, {-k * gamma, -1}}, newton_tag(gamma, c, "beta"));
  p.mu = RadialProfile::closed({{-k / 2, 0}, {-k * gamma, -1}}, newton_tag(gamma, c, "mu"));
  // (γ/r) ln(γ/r) = −(γ/r) ln(r/γ)
  p.nu = RadialProfile::closed({{-k / 2, 0}, {-k * gamma, -1, 1, gamma}}, newton_tag(gamma, c, "nu"));
  return p;
}

NumericMuNu mu_nu_numeric(const RadialProfile& beta, double r_ref, cplx mu_ref, cplx nu_ref, double r_min,
                          double r_max, std::size_t nodes) {
  namespace odeint = boost::numeric::odeint;
  using State = std::array<double, 4>;  // Re μ, Im μ, Re ν, Im ν

  if (!(r_ref > 0)) throw std::invalid_argument("mu_nu_numeric: r_ref must be positive");
  const std::vector<double> grid = log_grid(r_min, r_max, nodes);

  // s = ln r:  dμ/ds = β − 2μ,  dν/ds = μ − ν
  auto rhs = [&](const State& y, State& dy, double s) {
    const cplx b = beta(std::exp(s));
    dy[0] = b.real() - 2 * y[0];
    dy[1] = b.imag() - 2 * y[1];
    dy[2] = y[0] - y[2];
    dy[3] = y[1] - y[3];
  };

  std::vector<cplx> mu(grid.size()), nu(grid.size());
  const double s_ref = std::log(r_ref);
  auto run = [&](std::vector<std::size_t> idx) {
    if (idx.empty()) return;
    std::vector<double> times{s_ref};
    for (std::size_t i : idx) times.push_back(std::log(grid[i]));
    State y{mu_ref.real(), mu_ref.imag(), nu_ref.real(), nu_ref.imag()};
    std::size_t k = 0;
    auto observe = [&](const State& st, double) {
      if (k > 0) {
        mu[idx[k - 1]] = {st[0], st[1]};
        nu[idx[k - 1]] = {st[2], st[3]};
      }
      ++k;
    };
    const double dt = times[1] > times[0] ? 1e-3 : -1e-3;
    auto stepper = odeint::make_dense_output(1e-20, 1e-11, odeint::runge_kutta_dopri5<State>());
    odeint::integrate_times(stepper, rhs, y, times.begin(), times.end(), dt, observe);
  };

  std::vector<std::size_t> up, down;
  for (std::size_t i = 0; i < grid.size(); ++i) (grid[i] >= r_ref ? up : down).push_back(i);
  std::reverse(down.begin(), down.end());
  run(up);
  run(down);

  for (std::size_t i = 0; i < grid.size(); ++i)
    if (!std::isfinite(std::abs(mu[i])) || !std::isfinite(std::abs(nu[i])))
      throw IntegrationError("mu_nu_numeric: non-finite solution", std::numeric_limits<double>::infinity());

  NumericMuNu out;
  const nlohmann::json tag = {{"kind", "numeric"}, {"r_ref", r_ref}};
  out.profiles.beta = beta.sample(grid);
  out.profiles.mu = RadialProfile::sampled(grid, mu, tag);
  out.profiles.nu = RadialProfile::sampled(grid, nu, tag);
  const std::vector<double> interior(grid.begin() + 1, grid.end() - 1);
  const OdeResidual res = ode_residuals(out.profiles, interior);
  out.max_residual = std::max(res.mu, res.nu);
  return out;
}

OdeResidual ode_residuals(const MuNu& p, const std::vector<double>& radii) {
  OdeResidual out;
  for (double r : radii) {
    const cplx b = p.beta(r), m = p.mu(r), n = p.nu(r);
    const cplx rm = r * p.mu.derivative(r), rn = r * p.nu.derivative(r);
    out.mu = std::max(out.mu, rel(rm + 2.0 * m - b, {rm, 2.0 * m, b}));
    out.nu = std::max(out.nu, rel(rn + n - m, {rn, n, m}));
  }
  return out;
}

double StaticMetric::phi(double r) const {
  const cplx b = beta_(r);
  if (!(b.real() < 0) || b.imag() != 0) throw SignatureError("static metric requires real β < 0 (Lorentzian signature)");
  return std::sqrt(-1 / b.real());
}

double StaticMetric::laplace_beltrami(const RadialProfile& f, double r, double h) const {
  auto flux = [&](double x, double fprime) { return x * x * phi(x) * fprime; };
  const double fm = f(r - h).real(), f0 = f(r).real(), fp = f(r + h).real();
  const double right = flux(r + h / 2, (fp - f0) / h);
  const double left = flux(r - h / 2, (f0 - fm) / h);
  return (right - left) / h / (r * r * phi(r));
}

double StaticMetric::delta_bar(const RadialProfile& f, double r) const {
  const double f1 = f.derivative(r).real(), f2 = f.second_derivative(r).real();
  const double b = beta_(r).real(), b1 = beta_.derivative(r).real();
  return f2 + (2 / r) * f1 - b1 / (2 * b) * f1;
}

WeakFieldReport weak_field_check(const RadialProfile& Phi, const RadialProfile& rho, double c, double G,
                                 const std::vector<double>& grid) {
  if (grid.size() < 16) throw std::invalid_argument("weak_field_check: grid needs at least 16 nodes");
  const double c2 = c * c;
  std::vector<cplx> Phi_v, phi_v;
  WeakFieldReport rep;
  for (double r : grid) {
    const double P = Phi(r).real();
    const double beta = -(1 / c2) * (1 - 2 * P / c2);
    if (!(beta < 0)) throw SignatureError("weak_field_check: β >= 0 at r = " + std::to_string(r));
    Phi_v.emplace_back(P);
    phi_v.emplace_back(std::sqrt(-1 / beta));
    rep.max_Phi_over_c2 = std::max(rep.max_Phi_over_c2, std::abs(P) / c2);
  }
  rep.weak = rep.max_Phi_over_c2 < 0.1;
  const RadialProfile Phi_s = RadialProfile::sampled(grid, Phi_v);
  const RadialProfile phi_s = RadialProfile::sampled(grid, phi_v);

  std::vector<double> lap(grid.size()), ricci(grid.size()), source(grid.size()), scale(grid.size());
  double max_source = 0, max_scale = 0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double r = grid[i];
    const double P1 = Phi_s.derivative(r).real(), P2 = Phi_s.second_derivative(r).real();
    lap[i] = P2 + 2 * P1 / r;
    scale[i] = std::abs(P2) + std::abs(2 * P1 / r);
    ricci[i] = phi_v[i].real() * (phi_s.second_derivative(r).real() + 2 * phi_s.derivative(r).real() / r);
    source[i] = 4 * M_PI * G * rho(r).real();
    max_source = std::max(max_source, std::abs(source[i]));
    max_scale = std::max(max_scale, scale[i]);
  }
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    rep.max_ricci00 = std::max(rep.max_ricci00, std::abs(ricci[i]));
    rep.max_laplacian_Phi = std::max(rep.max_laplacian_Phi, std::abs(lap[i]));
    // skip nodes where Δ̄Φ is pure cancellation noise
    if (std::abs(lap[i]) > 1e-6 * max_scale)
      rep.max_relative_deviation = std::max(rep.max_relative_deviation, std::abs(ricci[i] - lap[i]) / std::abs(lap[i]));
    const double p = std::abs(lap[i] - source[i]);
    rep.max_poisson_residual = std::max(rep.max_poisson_residual, max_source > 0 ? p / max_source : p);
  }
  return rep;
}

}  // namespace qsg::geometry
