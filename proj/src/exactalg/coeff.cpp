#include "qsg/exactalg.hpp"

#include <algorithm>
#include <numeric>

namespace qsg::exactalg {

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero()) throw AlgebraError("GaussianRational: division by zero");
  mpq_class norm = o.re_ * o.re_ + o.im_ * o.im_;
  *this *= o.conj();
  re_ /= norm;
  im_ /= norm;
  return *this;
}

std::string GaussianRational::to_string() const {
  const bool has_re = sgn(re_) != 0;
  const bool has_im = sgn(im_) != 0;
  if (!has_re && !has_im) return "(0)";
  if (!has_im) return "(" + re_.get_str() + ")";
  if (!has_re) return "(" + im_.get_str() + "i)";
  mpq_class mag = abs(im_);
  return "(" + re_.get_str() + (sgn(im_) < 0 ? " - " : " + ") + mag.get_str() + "i)";
}

// ---------------------------------------------------------------------------
// Coeff

Coeff::Coeff(GaussianRational c) {
  if (!c.is_zero()) terms_.emplace(Exponents{0, 0}, std::move(c));
}

Coeff Coeff::lambda(unsigned power) {
  Coeff c;
  c.terms_.emplace(Exponents{power, 0}, GaussianRational(1));
  return c;
}

Coeff Coeff::beta(unsigned power) {
  Coeff c;
  c.terms_.emplace(Exponents{0, power}, GaussianRational(1));
  return c;
}

void Coeff::add_term(Exponents e, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Coeff Coeff::operator-() const {
  Coeff r;
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Coeff& Coeff::operator+=(const Coeff& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Coeff& Coeff::operator-=(const Coeff& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Coeff operator*(const Coeff& a, const Coeff& b) {
  Coeff r;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_)
      r.add_term({ea.first + eb.first, ea.second + eb.second}, ca * cb);
  return r;
}

Coeff Coeff::pow(unsigned n) const {
  Coeff r(1);
  for (unsigned k = 0; k < n; ++k) r = r * *this;
  return r;
}

bool Coeff::divisible_by_lambda() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.first.first > 0; });
}

Coeff Coeff::divided_by_lambda() const {
  Coeff r;
  for (const auto& [e, c] : terms_) {
    if (e.first == 0) throw AlgebraError("Coeff: not divisible by λ");
    r.terms_.emplace(Exponents{e.first - 1, e.second}, c);
  }
  return r;
}

Coeff Coeff::at_lambda_zero() const {
  Coeff r;
  for (const auto& [e, c] : terms_)
    if (e.first == 0) r.terms_.emplace(e, c);
  return r;
}

// ---------------------------------------------------------------------------
// Monomial / NCElement

unsigned Monomial::degree() const { return std::accumulate(x.begin(), x.end(), t); }

NCElement NCElement::constant(unsigned dim, const Coeff& c) {
  NCElement e(dim);
  e.add_term(Monomial{std::vector<unsigned>(dim, 0), 0}, c);
  return e;
}

NCElement NCElement::monomial(const Monomial& m, const Coeff& c) {
  NCElement e(static_cast<unsigned>(m.x.size()));
  e.add_term(m, c);
  return e;
}

NCElement NCElement::x(unsigned dim, unsigned index, unsigned power) {
  if (index >= dim) throw AlgebraError("NCElement::x: index out of range");
  Monomial m{std::vector<unsigned>(dim, 0), 0};
  m.x[index] = power;
  return monomial(m);
}

NCElement NCElement::t(unsigned dim, unsigned power) {
  return monomial(Monomial{std::vector<unsigned>(dim, 0), power});
}

void NCElement::check_dim(unsigned d) const {
  if (d != dim_) throw AlgebraError("NCElement: spatial dimension mismatch");
}

void NCElement::add_term(const Monomial& m, const Coeff& c) {
  check_dim(static_cast<unsigned>(m.x.size()));
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NCElement NCElement::operator-() const {
  NCElement r(dim_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

NCElement& NCElement::operator+=(const NCElement& o) {
  check_dim(o.dim_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

NCElement& NCElement::operator-=(const NCElement& o) {
  check_dim(o.dim_);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

NCElement NCElement::scaled(const Coeff& k) const {
  NCElement r(dim_);
  for (const auto& [m, c] : terms_) r.add_term(m, c * k);
  return r;
}

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

NCElement NCElement::shifted_t(long k) const {
  // (t + iλk)^n = Σ_j C(n,j) t^j (iλk)^{n-j}
  const Coeff step = Coeff(GaussianRational(0, k)) * Coeff::lambda();
  NCElement r(dim_);
  for (const auto& [m, c] : terms_) {
    Coeff power(1);
    for (unsigned j = m.t + 1; j-- > 0;) {
      Monomial mj = m;
      mj.t = j;
      r.add_term(mj, c * power * Coeff(GaussianRational(mpq_class(binomial(m.t, j)))));
      power = power * step;
    }
  }
  return r;
}

NCElement NCElement::partial_x(unsigned index) const {
  if (index >= dim_) throw AlgebraError("partial_x: index out of range");
  NCElement r(dim_);
  for (const auto& [m, c] : terms_) {
    if (m.x[index] == 0) continue;
    Monomial mm = m;
    mm.x[index] -= 1;
    r.add_term(mm, c * Coeff(static_cast<long>(m.x[index])));
  }
  return r;
}

NCElement NCElement::divided_by_lambda() const {
  NCElement r(dim_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.divided_by_lambda());
  return r;
}

bool NCElement::divisible_by_lambda() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second.divisible_by_lambda(); });
}

NCElement NCElement::at_lambda_zero() const {
  NCElement r(dim_);
  for (const auto& [m, c] : terms_) r.add_term(m, c.at_lambda_zero());
  return r;
}

unsigned NCElement::degree() const {
  unsigned d = 0;
  for (const auto& kv : terms_) d = std::max(d, kv.first.degree());
  return d;
}

// ---------------------------------------------------------------------------
// NCOneForm

NCOneForm NCOneForm::basis(unsigned dim, Basis e, const NCElement& coefficient) {
  NCOneForm w(dim);
  w.add(e, coefficient);
  return w;
}

NCElement NCOneForm::component(Basis e) const {
  auto it = components_.find(e);
  return it == components_.end() ? NCElement(dim_) : it->second;
}

void NCOneForm::add(Basis e, const NCElement& f) {
  if (f.dim() != dim_) throw AlgebraError("NCOneForm: spatial dimension mismatch");
  if (e.kind == Basis::Kind::Dx && e.index >= dim_) throw AlgebraError("NCOneForm: dx index out of range");
  if (f.is_zero()) return;
  auto [it, inserted] = components_.try_emplace(e, f);
  if (!inserted) {
    it->second += f;
    if (it->second.is_zero()) components_.erase(it);
  }
}

NCOneForm NCOneForm::operator-() const {
  NCOneForm r(dim_);
  for (const auto& [e, f] : components_) r.components_.emplace(e, -f);
  return r;
}

NCOneForm& NCOneForm::operator+=(const NCOneForm& o) {
  for (const auto& [e, f] : o.components_) add(e, f);
  return *this;
}

NCOneForm& NCOneForm::operator-=(const NCOneForm& o) {
  for (const auto& [e, f] : o.components_) add(e, -f);
  return *this;
}

NCOneForm NCOneForm::scaled(const Coeff& c) const {
  NCOneForm r(dim_);
  for (const auto& [e, f] : components_) r.add(e, f.scaled(c));
  return r;
}

NCOneForm NCOneForm::divided_by_lambda() const {
  NCOneForm r(dim_);
  for (const auto& [e, f] : components_) r.add(e, f.divided_by_lambda());
  return r;
}

NCOneForm NCOneForm::at_lambda_zero() const {
  NCOneForm r(dim_);
  for (const auto& [e, f] : components_) r.add(e, f.at_lambda_zero());
  return r;
}

}  // namespace qsg::exactalg
