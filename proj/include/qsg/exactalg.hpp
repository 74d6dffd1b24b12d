// Exact normal-ordering engine for the bicrossproduct spacetime algebra
//
//   [x_i, x_j] = 0,   [x_i, t] = iλ x_i
//
// and its five-dimensional first-order calculus spanned by dx_i, dt, θ'
// with a formal central constant β in front of θ':
//
//   [dx_i, x_j] = iλ δ_ij θ'    [θ', x_i] = 0      [θ', t] = iλ θ'
//   [dx_i, t]   = 0             [x_i, dt] = iλ dx_i
//   [dt, t]     = iλβ θ' − iλ dt
//
// Coefficients live in ℚ(i)[λ, β]; nothing here touches floating point.
// Normal order: x's (sorted by index) left of t's, one-form basis rightmost.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace qsg::exactalg {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// a + b i with a, b rational.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }
  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "(3/2 + 1i)", "(-1i)", "(2)"; see docs/text_format.md.
  std::string to_string() const;

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

/// Polynomial in the formal central symbols λ and β over ℚ(i).
class Coeff {
 public:
  using Exponents = std::pair<unsigned, unsigned>;  // (power of λ, power of β)

  Coeff() = default;
  Coeff(GaussianRational c);  // NOLINT(google-explicit-constructor)
  Coeff(long c) : Coeff(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

  static Coeff lambda(unsigned power = 1);
  static Coeff beta(unsigned power = 1);
  static Coeff i_lambda() { return Coeff(GaussianRational::i()) * lambda(); }

  bool is_zero() const { return terms_.empty(); }
  const std::map<Exponents, GaussianRational>& terms() const { return terms_; }
  void add_term(Exponents e, const GaussianRational& c);

  Coeff operator-() const;
  Coeff& operator+=(const Coeff& o);
  Coeff& operator-=(const Coeff& o);
  friend Coeff operator+(Coeff a, const Coeff& b) { return a += b; }
  friend Coeff operator-(Coeff a, const Coeff& b) { return a -= b; }
  friend Coeff operator*(const Coeff& a, const Coeff& b);
  friend bool operator==(const Coeff& a, const Coeff& b) { return a.terms_ == b.terms_; }

  Coeff pow(unsigned n) const;
  bool divisible_by_lambda() const;
  /// Exact division by λ; throws AlgebraError if some term has no λ factor.
  Coeff divided_by_lambda() const;
  /// Substitute λ = 0.
  Coeff at_lambda_zero() const;

 private:
  std::map<Exponents, GaussianRational> terms_;
};

/// x_1^{a_1} ... x_d^{a_d} t^n (normal ordered).
struct Monomial {
  std::vector<unsigned> x;
  unsigned t = 0;

  unsigned degree() const;
  auto operator<=>(const Monomial&) const = default;
};

/// Canonical finite sum of coefficient × normal-ordered monomial.
class NCElement {
 public:
  explicit NCElement(unsigned dim = 3) : dim_(dim) {}

  static NCElement constant(unsigned dim, const Coeff& c);
  static NCElement monomial(const Monomial& m, const Coeff& c = Coeff(1));
  static NCElement x(unsigned dim, unsigned index, unsigned power = 1);
  static NCElement t(unsigned dim, unsigned power = 1);

  unsigned dim() const { return dim_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<Monomial, Coeff>& terms() const { return terms_; }
  void add_term(const Monomial& m, const Coeff& c);

  NCElement operator-() const;
  NCElement& operator+=(const NCElement& o);
  NCElement& operator-=(const NCElement& o);
  friend NCElement operator+(NCElement a, const NCElement& b) { return a += b; }
  friend NCElement operator-(NCElement a, const NCElement& b) { return a -= b; }
  friend bool operator==(const NCElement& a, const NCElement& b) {
    return a.dim_ == b.dim_ && a.terms_ == b.terms_;
  }

  NCElement scaled(const Coeff& c) const;
  /// Substitute t -> t + iλk in the normal-ordered symbol.
  NCElement shifted_t(long k) const;
  /// ∂/∂x_i of the normal-ordered symbol.
  NCElement partial_x(unsigned index) const;
  NCElement divided_by_lambda() const;
  bool divisible_by_lambda() const;
  NCElement at_lambda_zero() const;
  unsigned degree() const;

 private:
  void check_dim(unsigned d) const;
  unsigned dim_;
  std::map<Monomial, Coeff> terms_;
};

/// Basis one-forms, ordered dx_1 < ... < dx_d < dt < θ'.
struct Basis {
  enum class Kind : std::uint8_t { Dx, Dt, ThetaPrime };
  Kind kind = Kind::Dt;
  unsigned index = 0;  // only meaningful for Dx

  static Basis dx(unsigned i) { return {Kind::Dx, i}; }
  static Basis dt() { return {Kind::Dt, 0}; }
  static Basis theta_prime() { return {Kind::ThetaPrime, 0}; }

  auto operator<=>(const Basis&) const = default;
};

/// Σ f_e · e with every function coefficient to the left of its basis form.
class NCOneForm {
 public:
  explicit NCOneForm(unsigned dim = 3) : dim_(dim) {}
  static NCOneForm basis(unsigned dim, Basis e, const NCElement& coefficient);

  unsigned dim() const { return dim_; }
  bool is_zero() const { return components_.empty(); }
  const std::map<Basis, NCElement>& components() const { return components_; }
  /// Coefficient of e (zero element if absent).
  NCElement component(Basis e) const;
  void add(Basis e, const NCElement& f);

  NCOneForm operator-() const;
  NCOneForm& operator+=(const NCOneForm& o);
  NCOneForm& operator-=(const NCOneForm& o);
  friend NCOneForm operator+(NCOneForm a, const NCOneForm& b) { return a += b; }
  friend NCOneForm operator-(NCOneForm a, const NCOneForm& b) { return a -= b; }
  friend bool operator==(const NCOneForm& a, const NCOneForm& b) {
    return a.dim_ == b.dim_ && a.components_ == b.components_;
  }

  NCOneForm scaled(const Coeff& c) const;
  NCOneForm divided_by_lambda() const;
  NCOneForm at_lambda_zero() const;

 private:
  unsigned dim_;
  std::map<Basis, NCElement> components_;
};

/// One letter of an unordered word: a generator or a basis one-form.
struct Letter {
  enum class Kind : std::uint8_t { X, T, Dx, Dt, ThetaPrime };
  Kind kind = Kind::T;
  unsigned index = 0;

  static Letter x(unsigned i) { return {Kind::X, i}; }
  static Letter t() { return {Kind::T, 0}; }
  static Letter dx(unsigned i) { return {Kind::Dx, i}; }
  static Letter dt() { return {Kind::Dt, 0}; }
  static Letter theta_prime() { return {Kind::ThetaPrime, 0}; }

  bool is_form() const { return kind == Kind::Dx || kind == Kind::Dt || kind == Kind::ThetaPrime; }
  bool operator==(const Letter&) const = default;
};

using Word = std::vector<Letter>;
using NormalForm = std::variant<NCElement, NCOneForm>;

/// How normal_order picks the next reduction.
enum class Reduction {
  Fold,       // left-to-right product of already-normal prefixes
  Leftmost,   // rewrite the leftmost out-of-order adjacent pair
  Rightmost,  // rewrite the rightmost out-of-order adjacent pair
  Random,     // rewrite a uniformly chosen out-of-order pair
};

/// Multipliers on the right-hand sides of the defining relations. All are 1
/// for the genuine calculus; anything else is a deliberately broken model
/// (used by `verify --tamper`).
struct Relations {
  mpq_class x_t{1};         // [x_i, t]  = iλ·k x_i
  mpq_class dx_x{1};        // [dx_i, x_j] = iλ·k δ_ij θ'
  mpq_class theta_t{1};     // [θ', t]   = iλ·k θ'
  mpq_class x_dt{1};        // [x_i, dt] = iλ·k dx_i
  mpq_class dt_t_theta{1};  // [dt, t]   = iλβ·k θ' − ...
  mpq_class dt_t_dt{1};     // [dt, t]   = ... − iλ·k dt

  /// Names accepted by `tampered`: x-t, dx-x, theta-t, x-dt, dt-t-theta, dt-t-dt.
  static Relations tampered(const std::string& name, const mpq_class& factor);
};

/// Noncommutative algebra + first-order calculus in spatial dimension d.
class Calculus {
 public:
  explicit Calculus(unsigned dim = 3, Relations rel = {});

  unsigned dim() const { return dim_; }
  const Relations& relations() const { return rel_; }

  NCElement multiply(const NCElement& a, const NCElement& b) const;
  NCOneForm multiply(const NCOneForm& w, const NCElement& f) const;
  NCOneForm multiply(const NCElement& f, const NCOneForm& w) const;

  /// Normal-order coefficient × word. Rejects words with two or more
  /// one-form letters.
  NormalForm normal_order(const Word& word, const Coeff& coeff = Coeff(1),
                          Reduction strategy = Reduction::Fold,
                          std::uint64_t seed = 0) const;

  /// d via the graded Leibniz rule on each monomial's word, cross-checked
  /// against exterior_d_formula. Throws AlgebraError if the two disagree.
  NCOneForm exterior_d(const NCElement& psi) const;
  NCOneForm exterior_d_leibniz(const NCElement& psi) const;
  /// dψ = ∂_iψ dx_i + ∂₀ψ dt + (iλ/2) □ψ θ' with exact shift operators.
  NCOneForm exterior_d_formula(const NCElement& psi) const;

  /// (i/λ)[θ, ψ] with θ = dt − βθ'. Throws AlgebraError if the commutator
  /// is not divisible by λ.
  NCOneForm commutator_d(const NCElement& psi) const;

  /// θ = dt − βθ'.
  NCOneForm inner_form() const;

  // Exact time operators on normal-ordered symbols (constant β).
  NCElement d0(const NCElement& psi) const;
  NCElement delta0_const(const NCElement& psi) const;
  NCElement box_const(const NCElement& psi) const;

 private:
  NCElement times_generator(const NCElement& f, const Letter& g) const;
  NCOneForm times_generator(const NCOneForm& w, const Letter& g) const;
  NCOneForm multiply_word(NCOneForm w, const Word& word) const;
  NormalForm rewrite(const Word& word, const Coeff& coeff, Reduction strategy,
                     std::uint64_t seed) const;
  void check_letter(const Letter& l) const;

  unsigned dim_;
  Relations rel_;
};

/// Letters of a normal-ordered monomial: x_1^{a_1} ... x_d^{a_d} t^n.
Word word_of(const Monomial& m);

// Canonical text form (grammar in docs/text_format.md).
std::string to_string(const Coeff& c);
std::string to_string(const NCElement& e);
std::string to_string(const NCOneForm& w);
NCElement parse_element(const std::string& text, unsigned dim = 3);
NCOneForm parse_one_form(const std::string& text, unsigned dim = 3);

}  // namespace qsg::exactalg
