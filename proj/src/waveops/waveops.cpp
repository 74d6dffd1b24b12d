#include <algorithm>
#include <cmath>
#include <sstream>

#include "qsg/waveops.hpp"

namespace qsg::waveops {

namespace {

constexpr cplx I{0, 1};
constexpr double kWeakFieldWarn = 0.3;

using geometry::RadialProfile;

const RadialProfile& radial_of(const SeparableTerm& t) {
  if (!std::holds_alternative<RadialProfile>(t.space))
    throw std::invalid_argument("radial wave operator applied to a plane-wave term");
  return std::get<RadialProfile>(t.space);
}

// ∇² of a radial function: φ'' + (2/r)φ'
cplx radial_laplacian(const RadialProfile& phi, double r) {
  return phi.second_derivative(r) + 2.0 / r * phi.derivative(r);
}

RadialField empty_field(const std::vector<double>& radii) {
  RadialField out;
  out.r = radii;
  out.values.resize(radii.size());
  return out;
}

}  // namespace

void SeparableField::add(Spatial space, TimeFunction time) {
  if (time.is_zero()) return;
  if (const auto* pw = std::get_if<PlaneWave>(&space)) {
    // plane waves with the same wave vector share one term
    for (auto it = terms_.begin(); it != terms_.end(); ++it) {
      const auto* other = std::get_if<PlaneWave>(&it->space);
      if (other && other->k == pw->k) {
        it->time += time;
        if (it->time.is_zero()) terms_.erase(it);
        return;
      }
    }
  }
  terms_.push_back({std::move(space), std::move(time)});
}

bool SeparableField::all_plane_waves() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return std::holds_alternative<PlaneWave>(t.space); });
}

bool SeparableField::all_radial() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return std::holds_alternative<RadialProfile>(t.space); });
}

SeparableField SeparableField::scaled(cplx k) const {
  SeparableField out;
  for (const auto& t : terms_) out.add(t.space, t.time.scaled(k));
  return out;
}

SeparableField SeparableField::operator+(const SeparableField& o) const {
  SeparableField out = *this;
  for (const auto& t : o.terms_) out.add(t.space, t.time);
  return out;
}

cplx SeparableField::operator()(const std::array<double, 3>& x, cplx t) const {
  cplx sum = 0;
  for (const auto& term : terms_) {
    cplx s;
    if (const auto* pw = std::get_if<PlaneWave>(&term.space)) {
      s = std::exp(I * (pw->k[0] * x[0] + pw->k[1] * x[1] + pw->k[2] * x[2]));
    } else {
      s = std::get<RadialProfile>(term.space)(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    }
    sum += s * term.time(t);
  }
  return sum;
}

double RadialField::max_difference(const RadialField& o, const std::vector<double>& t_samples) const {
  if (r != o.r) throw std::invalid_argument("RadialField: radii differ");
  double m = 0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (double t : t_samples) {
      const cplx a = values[i](t), b = o.values[i](t);
      m = std::max(m, std::abs(a - b) / std::max(1.0, std::abs(a)));
    }
  return m;
}

RadialField RadialField::operator-(const RadialField& o) const {
  if (r != o.r) throw std::invalid_argument("RadialField: radii differ");
  RadialField out = *this;
  for (std::size_t i = 0; i < r.size(); ++i) out.values[i] -= o.values[i];
  return out;
}

SeparableField box_const(const SeparableField& psi, cplx beta, double lambda) {
  SeparableField out;
  for (const auto& t : psi.terms()) {
    const auto* pw = std::get_if<PlaneWave>(&t.space);
    if (!pw) throw std::invalid_argument("box_const: exact form needs plane-wave terms; pass radii for radial terms");
    out.add(*pw, t.time.shifted(I * lambda).scaled(-pw->k2()) + timeops::delta0_const(t.time, lambda, beta).scaled(2.0));
  }
  return out;
}

RadialField box_const(const SeparableField& psi, cplx beta, double lambda, const std::vector<double>& radii) {
  RadialField out = empty_field(radii);
  for (const auto& t : psi.terms()) {
    const RadialProfile& phi = radial_of(t);
    const TimeFunction shifted = t.time.shifted(I * lambda);
    const TimeFunction d0 = timeops::delta0_const(t.time, lambda, beta).scaled(2.0);
    for (std::size_t i = 0; i < radii.size(); ++i)
      out.values[i] += shifted.scaled(radial_laplacian(phi, radii[i])) + d0.scaled(phi(radii[i]));
  }
  return out;
}

RadialField box_general(const SeparableField& psi, const geometry::MuNu& p, double lambda,
                        const std::vector<double>& radii) {
  RadialField out = empty_field(radii);
  for (const auto& t : psi.terms()) {
    const RadialProfile& phi = radial_of(t);
    const TimeFunction shifted = t.time.shifted(I * lambda);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      const cplx b = p.beta(r);
      const cplx delta_bar = radial_laplacian(phi, r) - p.beta.derivative(r) / (2.0 * b) * phi.derivative(r);
      TimeFunction d0;
      try {
        d0 = timeops::delta0_general(t.time, lambda, p.mu(r), p.nu(r), b);
      } catch (const timeops::DegenerateProfile& e) {
        throw timeops::DegenerateProfile(std::string(e.what()) + " at node " + std::to_string(i) + " (r = " +
                                         std::to_string(r) + ")");
      }
      out.values[i] += shifted.scaled(delta_bar) + d0.scaled(2.0 * phi(r));
    }
  }
  return out;
}

RadialField box_newton(const SeparableField& psi, double gamma, double c, double lambda,
                       const std::vector<double>& radii) {
  if (gamma < 0) throw std::invalid_argument("box_newton: γ must be non-negative");
  RadialField out = box_const(psi, -1.0 / (c * c), lambda, radii);
  for (double r : radii) {
    if (!(r > 0)) throw std::invalid_argument("box_newton: r = 0 is excluded");
    if (gamma / r > kWeakFieldWarn) {
      out.warnings.push_back("weak-field assumption strained: γ/r = " + std::to_string(gamma / r) + " at r = " +
                             std::to_string(r));
    }
  }
  if (gamma == 0) return out;
  for (const auto& t : psi.terms()) {
    const RadialProfile& phi = radial_of(t);
    const TimeFunction shifted = t.time.shifted(I * lambda);
    const TimeFunction hybrid = timeops::delta0_hybrid(shifted, lambda);
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      // −(1/2β)β' = +γ/(2r²(1+γ/r))
      const double drift = gamma / (2 * r * r * (1 + gamma / r));
      out.values[i] += shifted.scaled(drift * phi.derivative(r)) + hybrid.scaled(-2 * gamma / (c * c * r) * phi(r));
    }
  }
  return out;
}

SeparableField kg_residual(const SeparableField& psi, const WaveOpConfig& cfg, double m, double hbar) {
  const auto* cb = std::get_if<ConstBeta>(&cfg.variant);
  if (!cb) throw std::invalid_argument("kg_residual: plane-wave fields need the constant-β operator");
  const double mass = m * cfg.c / hbar;
  return box_const(psi, cb->beta, cfg.lambda) + psi.scaled(-mass * mass);
}

RadialField kg_residual(const SeparableField& psi, const WaveOpConfig& cfg, double m, double hbar,
                        const std::vector<double>& radii) {
  RadialField box;
  if (const auto* cb = std::get_if<ConstBeta>(&cfg.variant)) box = box_const(psi, cb->beta, cfg.lambda, radii);
  else if (const auto* gb = std::get_if<GeneralBeta>(&cfg.variant)) box = box_general(psi, gb->profiles, cfg.lambda, radii);
  else box = box_newton(psi, std::get<NewtonBeta>(cfg.variant).gamma, cfg.c, cfg.lambda, radii);

  const double mass = m * cfg.c / hbar;
  for (const auto& t : psi.terms()) {
    const RadialProfile& phi = radial_of(t);
    for (std::size_t i = 0; i < radii.size(); ++i) box.values[i] -= t.time.scaled(mass * mass * phi(radii[i]));
  }
  return box;
}

nlohmann::json to_bundle(const SeparableField& psi, const std::vector<double>& grid) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : psi.terms()) {
    nlohmann::json space;
    if (const auto* pw = std::get_if<PlaneWave>(&t.space)) {
      space["plane_wave"] = pw->k;
    } else {
      std::ostringstream csv;
      geometry::write_profile_csv(csv, std::get<RadialProfile>(t.space), grid);
      space["profile_csv"] = csv.str();
    }
    terms.push_back({{"space", space}, {"time", t.time.to_json()}});
  }
  return {{"terms", terms}};
}

SeparableField from_bundle(const nlohmann::json& j) {
  SeparableField out;
  for (const auto& t : j.at("terms")) {
    const auto& space = t.at("space");
    TimeFunction time = TimeFunction::from_json(t.at("time"));
    if (space.contains("plane_wave")) {
      out.add(PlaneWave{space["plane_wave"].get<std::array<double, 3>>()}, std::move(time));
    } else {
      std::istringstream csv(space.at("profile_csv").get<std::string>());
      out.add(geometry::read_profile_csv(csv), std::move(time));
    }
  }
  return out;
}

}  // namespace qsg::waveops
