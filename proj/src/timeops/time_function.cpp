#include <algorithm>
#include <cmath>

#include "qsg/timeops.hpp"

namespace qsg::timeops {

namespace {

bool same_exponent(cplx a, cplx b) {
  return std::abs(a - b) <= 1e-14 * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

double binomial(unsigned n, unsigned k) {
  double r = 1;
  for (unsigned j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

}  // namespace

TimeFunction TimeFunction::constant(cplx c) { return power(0, c); }

TimeFunction TimeFunction::power(unsigned p, cplx c) {
  TimeFunction f;
  f.add(c, p, 0.0);
  return f;
}

TimeFunction TimeFunction::exponential(cplx s, cplx c) {
  TimeFunction f;
  f.add(c, 0, s);
  return f;
}

TimeFunction TimeFunction::mode(double omega, cplx c) { return exponential(cplx(0, -omega), c); }

void TimeFunction::add(cplx c, unsigned p, cplx s) {
  if (c == 0.0) return;
  auto it = std::find_if(terms_.begin(), terms_.end(),
                         [&](const Term& t) { return t.p == p && same_exponent(t.s, s); });
  if (it == terms_.end()) {
    terms_.push_back({c, p, s});
    return;
  }
  it->c += c;
  if (it->c == 0.0) terms_.erase(it);
}

TimeFunction& TimeFunction::operator+=(const TimeFunction& o) {
  for (const auto& t : o.terms_) add(t.c, t.p, t.s);
  return *this;
}

TimeFunction& TimeFunction::operator-=(const TimeFunction& o) {
  for (const auto& t : o.terms_) add(-t.c, t.p, t.s);
  return *this;
}

TimeFunction operator*(const TimeFunction& a, const TimeFunction& b) {
  TimeFunction r;
  for (const auto& x : a.terms_)
    for (const auto& y : b.terms_) r.add(x.c * y.c, x.p + y.p, x.s + y.s);
  return r;
}

TimeFunction TimeFunction::scaled(cplx k) const {
  TimeFunction r;
  for (const auto& t : terms_) r.add(t.c * k, t.p, t.s);
  return r;
}

TimeFunction TimeFunction::shifted(cplx h) const {
  // c (t+h)^p e^{s(t+h)} = c e^{sh} Σ_j C(p,j) t^j h^{p−j} e^{st}
  TimeFunction r;
  for (const auto& t : terms_) {
    const cplx base = t.c * std::exp(t.s * h);
    cplx hk = 1;  // h^{p−j}, built up from j = p down; std::pow(0, 0) on complex is NaN
    for (unsigned j = t.p + 1; j-- > 0;) {
      r.add(base * binomial(t.p, j) * hk, j, t.s);
      hk *= h;
    }
  }
  return r;
}

TimeFunction TimeFunction::derivative() const {
  TimeFunction r;
  for (const auto& t : terms_) {
    if (t.p > 0) r.add(t.c * static_cast<double>(t.p), t.p - 1, t.s);
    r.add(t.c * t.s, t.p, t.s);
  }
  return r;
}

cplx TimeFunction::operator()(cplx t) const {
  cplx sum = 0;
  for (const auto& term : terms_) {
    cplx tp = 1;  // integer power; std::pow(0, 0) on complex is NaN
    for (unsigned k = 0; k < term.p; ++k) tp *= t;
    sum += term.c * tp * std::exp(term.s * t);
  }
  return sum;
}

double TimeFunction::max_coeff() const {
  double m = 0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.c));
  return m;
}

bool TimeFunction::approx_equal(const TimeFunction& o, double tol) const {
  const double scale = std::max({1.0, max_coeff(), o.max_coeff()});
  return (*this - o).max_coeff() <= tol * scale;
}

nlohmann::json TimeFunction::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& t : terms_) j.push_back({t.c.real(), t.c.imag(), t.p, t.s.real(), t.s.imag()});
  return j;
}

TimeFunction TimeFunction::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw std::invalid_argument("TimeFunction JSON must be an array of terms");
  TimeFunction f;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 5) throw std::invalid_argument("TimeFunction term must be [re c, im c, p, re s, im s]");
    f.add({t[0].get<double>(), t[1].get<double>()}, t[2].get<unsigned>(), {t[3].get<double>(), t[4].get<double>()});
  }
  return f;
}

}  // namespace qsg::timeops
