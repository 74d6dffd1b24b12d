#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qsg/exactalg.hpp"
#include "qsg/verify.hpp"

using namespace qsg::exactalg;

namespace {

// Oracles are written out by hand in the text form and parsed.
NCElement E(const char* s) { return parse_element(s); }
NCOneForm W(const char* s) { return parse_one_form(s); }

const Calculus calc(3);

}  // namespace

TEST_CASE("normal ordering of generator words") {
  CHECK(std::get<NCElement>(calc.normal_order({Letter::t(), Letter::x(0)})) == E("x1·t + (-1i)·λ·x1"));
  CHECK(std::get<NCElement>(calc.normal_order({Letter::x(1), Letter::x(0)})) == E("x1·x2"));
  CHECK(std::get<NCElement>(calc.normal_order({Letter::x(0), Letter::t()})) == E("x1·t"));
}

TEST_CASE("normal ordering moves forms to the right") {
  CHECK(std::get<NCOneForm>(calc.normal_order({Letter::dt(), Letter::t()})) ==
        W("t·dt + (-1i)·λ·dt + (1i)·λ·β·θ'"));
  CHECK(std::get<NCOneForm>(calc.normal_order({Letter::theta_prime(), Letter::t()})) == W("t·θ' + (1i)·λ·θ'"));
  CHECK(std::get<NCOneForm>(calc.normal_order({Letter::dx(0), Letter::x(0)})) == W("x1·dx1 + (1i)·λ·θ'"));
  CHECK(std::get<NCOneForm>(calc.normal_order({Letter::dt(), Letter::x(2)})) == W("x3·dt + (-1i)·λ·dx3"));
}

TEST_CASE("words with two one-forms are rejected") {
  CHECK_THROWS_AS(calc.normal_order({Letter::dt(), Letter::t(), Letter::dx(0)}), AlgebraError);
  CHECK_THROWS_AS(calc.normal_order({Letter::x(5)}), std::exception);
}

TEST_CASE("exterior derivative examples") {
  CHECK(calc.exterior_d(E("t")) == W("dt"));
  CHECK(calc.exterior_d(E("x1^2")) == W("(2)·x1·dx1 + (1i)·λ·θ'"));
  CHECK(calc.exterior_d(E("t^2")) == W("(2)·t·dt + (-1i)·λ·dt + (1i)·λ·β·θ'"));
  CHECK(calc.exterior_d(E("(5/3)")).is_zero());
}

TEST_CASE("commutator with the inner form") {
  CHECK(calc.commutator_d(E("x1")) == W("dx1"));
  CHECK(calc.commutator_d(E("t")) == W("dt"));
  CHECK(calc.commutator_d(E("1")).is_zero());
  CHECK(calc.inner_form() == W("dt + (-1)·β·θ'"));
}

TEST_CASE("Gaussian rational coefficients") {
  const GaussianRational a(1, 1), b(1, -1);
  CHECK(a * b == GaussianRational(2));
  CHECK((a / b) == GaussianRational::i());
  CHECK(Coeff::lambda().pow(2).divided_by_lambda() == Coeff::lambda());
  CHECK_THROWS_AS((Coeff::lambda() + Coeff(1)).divided_by_lambda(), AlgebraError);
  CHECK((Coeff::beta() + Coeff::lambda()).at_lambda_zero() == Coeff::beta());
}

TEST_CASE("text form") {
  const char* s = "(3/2 + 1i)·λ^2·β·x1^2·t^3";
  CHECK(to_string(E(s)) == s);
  CHECK(to_string(NCElement(3)) == "0");
  CHECK(E("x1*t") == E("x1·t"));
  CHECK(W("theta'") == W("θ'"));
  CHECK_THROWS(parse_element("t·x1"));  // not normal ordered
  CHECK_THROWS(parse_element("x1 +"));
  CHECK_THROWS(parse_one_form("dt·t"));
}

TEST_CASE("other dimensions") {
  const Calculus c1(1);
  CHECK(c1.exterior_d(parse_element("x1·t", 1)) == c1.exterior_d_formula(parse_element("x1·t", 1)));
  CHECK_THROWS(parse_element("x2", 1));
}

TEST_CASE("property: reduction order does not matter") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> len(1, 7), gen(0, 3), pos(0, 100);
  for (int k = 0; k < 60; ++k) {
    Word w;
    for (int j = len(rng); j > 0; --j) w.push_back(gen(rng) == 3 ? Letter::t() : Letter::x(static_cast<unsigned>(gen(rng) % 3)));
    if (k % 2 == 0) w.insert(w.begin() + pos(rng) % (w.size() + 1), k % 4 == 0 ? Letter::dt() : Letter::dx(1));
    const NormalForm ref = calc.normal_order(w);
    for (auto r : {Reduction::Leftmost, Reduction::Rightmost, Reduction::Random})
      CHECK(calc.normal_order(w, 1, r, static_cast<std::uint64_t>(k)) == ref);
  }
}

TEST_CASE("property: Leibniz, inner form and formula agree on monomials and random products") {
  for (const auto& m : qsg::verify::monomials_up_to(3, 4)) {
    const NCElement e = NCElement::monomial(m);
    const NCOneForm d = calc.exterior_d_leibniz(e);
    CHECK(d == calc.exterior_d_formula(e));
    CHECK(d == calc.commutator_d(e));
  }
  std::mt19937_64 rng(11);
  for (int k = 0; k < 40; ++k) {
    const NCElement a = qsg::verify::random_element(rng, 3, 2), b = qsg::verify::random_element(rng, 3, 2);
    CHECK(calc.exterior_d(calc.multiply(a, b)) ==
          calc.multiply(calc.exterior_d(a), b) + calc.multiply(a, calc.exterior_d(b)));
  }
}

TEST_CASE("property: classical limit of d is the gradient") {
  for (const auto& m : qsg::verify::monomials_up_to(3, 4)) {
    const NCElement e = NCElement::monomial(m);
    const NCOneForm d = calc.exterior_d(e);
    CHECK(d.component(Basis::theta_prime()).divisible_by_lambda());
    for (unsigned i = 0; i < 3; ++i) CHECK(d.component(Basis::dx(i)).at_lambda_zero() == e.partial_x(i));
  }
}

TEST_CASE("a tampered relation breaks the two routes apart") {
  const Calculus bad(3, Relations::tampered("dx-x", 2));
  CHECK_FALSE(bad.exterior_d_leibniz(E("x1^2")) == bad.exterior_d_formula(E("x1^2")));
  CHECK_THROWS_AS(bad.exterior_d(E("x1^2")), AlgebraError);
  CHECK_THROWS(Relations::tampered("no-such-relation", 2));
}
