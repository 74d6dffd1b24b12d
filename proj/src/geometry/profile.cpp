#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qsg/geometry.hpp"
#include "qsg/io.hpp"

namespace qsg::geometry {

namespace {

// Derivative of order k (0, 1, 2) at x of the quadratic through three nodes.
template <class T>
T lagrange3(const double* xs, const T* ys, double x, int k) {
  T out{};
  for (int a = 0; a < 3; ++a) {
    const int b = (a + 1) % 3, c = (a + 2) % 3;
    const double den = (xs[a] - xs[b]) * (xs[a] - xs[c]);
    double w = 0;
    if (k == 0) w = (x - xs[b]) * (x - xs[c]) / den;
    else if (k == 1) w = ((x - xs[b]) + (x - xs[c])) / den;
    else w = 2 / den;
    out += w * ys[a];
  }
  return out;
}

}  // namespace

RadialProfile RadialProfile::closed(std::vector<ClosedTerm> terms, nlohmann::json tag) {
  for (const auto& t : terms)
    if (t.log_power > 1) throw std::invalid_argument("ClosedTerm: log_power must be 0 or 1");
  RadialProfile p;
  p.kind_ = Kind::Closed;
  p.terms_ = std::move(terms);
  p.tag_ = std::move(tag);
  return p;
}

RadialProfile RadialProfile::constant(cplx c) {
  return closed({ClosedTerm{c}}, {{"kind", "constant"}, {"value", {c.real(), c.imag()}}});
}

RadialProfile RadialProfile::sampled(std::vector<double> r, std::vector<cplx> values, nlohmann::json tag) {
  if (r.size() != values.size()) throw std::invalid_argument("sampled profile: grid and values differ in length");
  if (r.size() < 16) throw std::invalid_argument("sampled profile: at least 16 nodes required");
  if (!(r.front() > 0)) throw std::invalid_argument("sampled profile: radii must be positive");
  for (std::size_t i = 1; i < r.size(); ++i)
    if (!(r[i] > r[i - 1])) throw std::invalid_argument("sampled profile: grid must be strictly increasing");

  RadialProfile p;
  p.kind_ = Kind::Sampled;
  p.tag_ = tag.is_null() ? nlohmann::json{{"kind", "sampled"}} : std::move(tag);
  const std::size_t n = r.size();
  p.d1_.resize(n);
  p.d2_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = std::clamp<std::size_t>(i, 1, n - 2) - 1;
    p.d1_[i] = lagrange3(&r[j], &values[j], r[i], 1);
    p.d2_[i] = lagrange3(&r[j], &values[j], r[i], 2);
  }
  p.r_ = std::move(r);
  p.v_ = std::move(values);
  return p;
}

void RadialProfile::check_radius(double r) const {
  if (!(r > 0)) throw std::domain_error("radial profile evaluated at r <= 0");
  if (kind_ == Kind::Sampled) {
    const double slack = 1e-12 * r_.back();
    if (r < r_.front() - slack || r > r_.back() + slack)
      throw std::out_of_range("radial profile evaluated outside its sampled grid");
  }
}

cplx RadialProfile::eval(double r, Order order) const {
  check_radius(r);
  if (kind_ == Kind::Sampled) {
    const std::vector<cplx>& v = order == Order::Value ? v_ : order == Order::First ? d1_ : d2_;
    auto it = std::lower_bound(r_.begin(), r_.end(), r);
    if (it == r_.end()) return v.back();
    std::size_t i = static_cast<std::size_t>(it - r_.begin());
    if (*it == r || i == 0) return v[i];
    const double w = (r - r_[i - 1]) / (r_[i] - r_[i - 1]);
    return (1 - w) * v[i - 1] + w * v[i];
  }
  cplx sum = 0;
  for (const auto& t : terms_) {
    // A = r^p, B = ln(r/r0)^q, C = e^{−κr}
    const double p = t.power;
    const double A = std::pow(r, p), A1 = p * std::pow(r, p - 1), A2 = p * (p - 1) * std::pow(r, p - 2);
    double B = 1, B1 = 0, B2 = 0;
    if (t.log_power == 1) {
      B = std::log(r / t.log_scale);
      B1 = 1 / r;
      B2 = -1 / (r * r);
    }
    const double C = t.decay == 0 ? 1.0 : std::exp(-t.decay * r), C1 = -t.decay * C, C2 = t.decay * t.decay * C;
    double v = 0;
    switch (order) {
      case Order::Value: v = A * B * C; break;
      case Order::First: v = A1 * B * C + A * B1 * C + A * B * C1; break;
      case Order::Second:
        v = A2 * B * C + A * B2 * C + A * B * C2 + 2 * (A1 * B1 * C + A1 * B * C1 + A * B1 * C1);
        break;
    }
    sum += t.coef * v;
  }
  return sum;
}

cplx RadialProfile::operator()(double r) const { return eval(r, Order::Value); }
cplx RadialProfile::derivative(double r) const { return eval(r, Order::First); }
cplx RadialProfile::second_derivative(double r) const { return eval(r, Order::Second); }

RadialProfile RadialProfile::sample(const std::vector<double>& r) const {
  std::vector<cplx> v;
  v.reserve(r.size());
  for (double x : r) v.push_back((*this)(x));
  return sampled(r, std::move(v), tag_);
}

RadialProfile RadialProfile::operator+(const RadialProfile& o) const {
  if (kind_ == Kind::Closed && o.kind_ == Kind::Closed) {
    auto terms = terms_;
    terms.insert(terms.end(), o.terms_.begin(), o.terms_.end());
    return closed(std::move(terms), {{"kind", "sum"}, {"parts", {tag_, o.tag_}}});
  }
  const RadialProfile& base = kind_ == Kind::Sampled ? *this : o;
  std::vector<cplx> v;
  for (double x : base.r_) v.push_back((*this)(x) + o(x));
  return sampled(base.r_, std::move(v));
}

RadialProfile RadialProfile::scaled(cplx k) const {
  if (kind_ == Kind::Closed) {
    auto terms = terms_;
    for (auto& t : terms) t.coef *= k;
    return closed(std::move(terms), tag_);
  }
  std::vector<cplx> v = v_;
  for (auto& x : v) x *= k;
  return sampled(r_, std::move(v), tag_);
}

std::vector<double> log_grid(double r_min, double r_max, std::size_t n) {
  if (!(r_min > 0) || !(r_max > r_min) || n < 2) throw std::invalid_argument("log_grid: need 0 < r_min < r_max, n >= 2");
  std::vector<double> r(n);
  const double a = std::log(r_min), b = std::log(r_max);
  for (std::size_t i = 0; i < n; ++i) r[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  r.front() = r_min;
  r.back() = r_max;
  return r;
}

std::vector<double> uniform_grid(double r_min, double r_max, std::size_t n) {
  if (!(r_max > r_min) || n < 2) throw std::invalid_argument("uniform_grid: need r_min < r_max, n >= 2");
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) r[i] = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(n - 1);
  return r;
}

void write_profile_csv(std::ostream& os, const RadialProfile& p, const std::vector<double>& grid) {
  std::vector<cplx> vals;
  bool complex_values = false;
  for (double r : grid) {
    vals.push_back(p(r));
    if (vals.back().imag() != 0) complex_values = true;
  }
  os << p.tag().dump() << "\n";
  os << (complex_values ? "r,value,value_im\n" : "r,value\n");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    os << io::fmt(grid[i]) << "," << io::fmt(vals[i].real());
    if (complex_values) os << "," << io::fmt(vals[i].imag());
    os << "\n";
  }
}

RadialProfile read_profile_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("profile CSV: missing JSON header line");
  nlohmann::json tag = nlohmann::json::parse(line);
  if (!std::getline(is, line)) throw std::invalid_argument("profile CSV: missing column header");
  const bool complex_values = line == "r,value,value_im";
  if (!complex_values && line != "r,value") throw std::invalid_argument("profile CSV: unexpected column header '" + line + "'");
  std::vector<double> r;
  std::vector<cplx> v;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    std::getline(row, a, ',');
    std::getline(row, b, ',');
    if (complex_values) std::getline(row, c, ',');
    r.push_back(std::stod(a));
    v.emplace_back(std::stod(b), complex_values ? std::stod(c) : 0.0);
  }
  return RadialProfile::sampled(std::move(r), std::move(v), std::move(tag));
}

}  // namespace qsg::geometry
