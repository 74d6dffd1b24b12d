#include <algorithm>
#include <deque>
#include <optional>

#include "qsg/exactalg.hpp"

namespace qsg::exactalg {

namespace {

Coeff rational(const mpq_class& q) { return Coeff(GaussianRational(q)); }

// iλ·k
Coeff i_lambda_times(const mpq_class& k) { return Coeff(GaussianRational(0, k)) * Coeff::lambda(); }

// t -> t + h in every monomial of f.
NCElement shift_t_by(const NCElement& f, const Coeff& h) {
  NCElement r(f.dim());
  for (const auto& [m, c] : f.terms()) {
    Coeff hp(1);
    mpz_class binom = 1;
    for (unsigned k = 0; k <= m.t; ++k) {
      // term t^{n-k} h^k C(n,k)
      Monomial mk = m;
      mk.t = m.t - k;
      r.add_term(mk, c * hp * rational(mpq_class(binom)));
      hp = hp * h;
      binom = binom * (m.t - k) / (k + 1);
    }
  }
  return r;
}

Basis basis_of(const Letter& l) {
  switch (l.kind) {
    case Letter::Kind::Dx: return Basis::dx(l.index);
    case Letter::Kind::Dt: return Basis::dt();
    case Letter::Kind::ThetaPrime: return Basis::theta_prime();
    default: throw AlgebraError("basis_of: letter is not a one-form");
  }
}

// d of a single generator letter.
Basis differential_of(const Letter& l) {
  if (l.kind == Letter::Kind::X) return Basis::dx(l.index);
  if (l.kind == Letter::Kind::T) return Basis::dt();
  throw AlgebraError("differential_of: not a generator");
}

}  // namespace

Word word_of(const Monomial& m) {
  Word w;
  for (unsigned i = 0; i < m.x.size(); ++i)
    for (unsigned k = 0; k < m.x[i]; ++k) w.push_back(Letter::x(i));
  for (unsigned k = 0; k < m.t; ++k) w.push_back(Letter::t());
  return w;
}

Relations Relations::tampered(const std::string& name, const mpq_class& factor) {
  Relations r;
  if (name == "x-t") r.x_t = factor;
  else if (name == "dx-x") r.dx_x = factor;
  else if (name == "theta-t") r.theta_t = factor;
  else if (name == "x-dt") r.x_dt = factor;
  else if (name == "dt-t-theta") r.dt_t_theta = factor;
  else if (name == "dt-t-dt") r.dt_t_dt = factor;
  else throw AlgebraError("unknown relation name: " + name);
  return r;
}

Calculus::Calculus(unsigned dim, Relations rel) : dim_(dim), rel_(std::move(rel)) {
  if (dim == 0) throw AlgebraError("Calculus: spatial dimension must be positive");
}

void Calculus::check_letter(const Letter& l) const {
  if ((l.kind == Letter::Kind::X || l.kind == Letter::Kind::Dx) && l.index >= dim_)
    throw AlgebraError("letter index out of range");
}

NCOneForm Calculus::inner_form() const {
  NCOneForm theta(dim_);
  theta.add(Basis::dt(), NCElement::constant(dim_, Coeff(1)));
  theta.add(Basis::theta_prime(), NCElement::constant(dim_, -Coeff::beta()));
  return theta;
}

// f · g for a single generator g.
NCElement Calculus::times_generator(const NCElement& f, const Letter& g) const {
  check_letter(g);
  NCElement r(dim_);
  if (g.kind == Letter::Kind::T) {
    for (const auto& [m, c] : f.terms()) {
      Monomial mm = m;
      mm.t += 1;
      r.add_term(mm, c);
    }
    return r;
  }
  if (g.kind != Letter::Kind::X) throw AlgebraError("times_generator: not a generator");
  // t^n x_j = x_j (t − iλk)^n
  const Coeff back = -i_lambda_times(rel_.x_t);
  for (const auto& [m, c] : f.terms()) {
    Monomial mm = m;
    mm.x[g.index] += 1;
    mm.t = 0;
    NCElement tpart(dim_);
    Monomial tm{std::vector<unsigned>(dim_, 0), m.t};
    tpart.add_term(tm, c);
    const NCElement shifted = shift_t_by(tpart, back);
    for (const auto& [sm, sc] : shifted.terms()) {
      Monomial out = mm;
      out.t = sm.t;
      r.add_term(out, sc);
    }
  }
  return r;
}

// (Σ f_e e) · g for a single generator g.
NCOneForm Calculus::times_generator(const NCOneForm& w, const Letter& g) const {
  check_letter(g);
  NCOneForm r(dim_);
  for (const auto& [e, f] : w.components()) {
    const NCElement fg = times_generator(f, g);
    if (g.kind == Letter::Kind::X) {
      switch (e.kind) {
        case Basis::Kind::Dx:
          r.add(e, fg);
          if (e.index == g.index) r.add(Basis::theta_prime(), f.scaled(i_lambda_times(rel_.dx_x)));
          break;
        case Basis::Kind::Dt:
          r.add(e, fg);
          r.add(Basis::dx(g.index), f.scaled(-i_lambda_times(rel_.x_dt)));
          break;
        case Basis::Kind::ThetaPrime:
          r.add(e, fg);
          break;
      }
    } else {
      switch (e.kind) {
        case Basis::Kind::Dx:
          r.add(e, fg);
          break;
        case Basis::Kind::Dt:
          r.add(e, fg);
          r.add(e, f.scaled(-i_lambda_times(rel_.dt_t_dt)));
          r.add(Basis::theta_prime(), f.scaled(i_lambda_times(rel_.dt_t_theta) * Coeff::beta()));
          break;
        case Basis::Kind::ThetaPrime:
          r.add(e, fg);
          r.add(e, f.scaled(i_lambda_times(rel_.theta_t)));
          break;
      }
    }
  }
  return r;
}

NCOneForm Calculus::multiply_word(NCOneForm w, const Word& word) const {
  for (const auto& g : word) w = times_generator(w, g);
  return w;
}

NCElement Calculus::multiply(const NCElement& a, const NCElement& b) const {
  NCElement r(dim_);
  for (const auto& [m, c] : b.terms()) {
    NCElement acc = a;
    for (const auto& g : word_of(m)) acc = times_generator(acc, g);
    r += acc.scaled(c);
  }
  return r;
}

NCOneForm Calculus::multiply(const NCOneForm& w, const NCElement& f) const {
  NCOneForm r(dim_);
  for (const auto& [m, c] : f.terms()) r += multiply_word(w, word_of(m)).scaled(c);
  return r;
}

NCOneForm Calculus::multiply(const NCElement& f, const NCOneForm& w) const {
  NCOneForm r(dim_);
  for (const auto& [e, g] : w.components()) r.add(e, multiply(f, g));
  return r;
}

// ---------------------------------------------------------------------------
// normal ordering

NormalForm Calculus::normal_order(const Word& word, const Coeff& coeff, Reduction strategy,
                                  std::uint64_t seed) const {
  const auto forms = std::count_if(word.begin(), word.end(), [](const Letter& l) { return l.is_form(); });
  if (forms >= 2) throw AlgebraError("normal_order: words with two or more one-forms are not supported");
  for (const auto& l : word) check_letter(l);

  if (strategy != Reduction::Fold) return rewrite(word, coeff, strategy, seed);

  NCElement f = NCElement::constant(dim_, Coeff(1));
  std::optional<NCOneForm> w;
  for (const auto& l : word) {
    if (l.is_form()) {
      w = NCOneForm::basis(dim_, basis_of(l), f);
    } else if (w) {
      *w = times_generator(*w, l);
    } else {
      f = times_generator(f, l);
    }
  }
  if (w) return w->scaled(coeff);
  return f.scaled(coeff);
}

namespace {

struct WordTerm {
  Coeff coeff;
  Word word;
};

unsigned order_key(const Letter& l, unsigned dim) {
  switch (l.kind) {
    case Letter::Kind::X: return l.index;
    case Letter::Kind::T: return dim;
    default: return dim + 1;
  }
}

}  // namespace

NormalForm Calculus::rewrite(const Word& word, const Coeff& coeff, Reduction strategy,
                             std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  const bool has_form = std::any_of(word.begin(), word.end(), [](const Letter& l) { return l.is_form(); });

  std::deque<WordTerm> work{{coeff, word}};
  NCElement fn(dim_);
  NCOneForm form(dim_);

  std::vector<std::size_t> positions;
  while (!work.empty()) {
    WordTerm term = std::move(work.front());
    work.pop_front();
    if (term.coeff.is_zero()) continue;

    positions.clear();
    for (std::size_t p = 0; p + 1 < term.word.size(); ++p)
      if (order_key(term.word[p], dim_) > order_key(term.word[p + 1], dim_)) positions.push_back(p);

    if (positions.empty()) {
      Monomial m{std::vector<unsigned>(dim_, 0), 0};
      std::optional<Basis> basis;
      for (const auto& l : term.word) {
        if (l.kind == Letter::Kind::X) ++m.x[l.index];
        else if (l.kind == Letter::Kind::T) ++m.t;
        else basis = basis_of(l);
      }
      if (basis) form.add(*basis, NCElement::monomial(m, term.coeff));
      else fn.add_term(m, term.coeff);
      continue;
    }

    std::size_t p = positions.front();
    if (strategy == Reduction::Rightmost) p = positions.back();
    if (strategy == Reduction::Random)
      p = positions[std::uniform_int_distribution<std::size_t>(0, positions.size() - 1)(rng)];

    const Letter a = term.word[p];
    const Letter b = term.word[p + 1];
    std::vector<WordTerm> repl;
    auto emit = [&](const Coeff& c, std::initializer_list<Letter> letters) {
      repl.push_back({c, Word(letters)});
    };

    if (b.kind == Letter::Kind::X) {
      switch (a.kind) {
        case Letter::Kind::X: emit(Coeff(1), {b, a}); break;
        case Letter::Kind::T:
          emit(Coeff(1), {b, a});
          emit(-i_lambda_times(rel_.x_t), {b});
          break;
        case Letter::Kind::Dx:
          emit(Coeff(1), {b, a});
          if (a.index == b.index) emit(i_lambda_times(rel_.dx_x), {Letter::theta_prime()});
          break;
        case Letter::Kind::Dt:
          emit(Coeff(1), {b, a});
          emit(-i_lambda_times(rel_.x_dt), {Letter::dx(b.index)});
          break;
        case Letter::Kind::ThetaPrime: emit(Coeff(1), {b, a}); break;
      }
    } else if (b.kind == Letter::Kind::T) {
      switch (a.kind) {
        case Letter::Kind::Dx: emit(Coeff(1), {b, a}); break;
        case Letter::Kind::Dt:
          emit(Coeff(1), {b, a});
          emit(-i_lambda_times(rel_.dt_t_dt), {a});
          emit(i_lambda_times(rel_.dt_t_theta) * Coeff::beta(), {Letter::theta_prime()});
          break;
        case Letter::Kind::ThetaPrime:
          emit(Coeff(1), {b, a});
          emit(i_lambda_times(rel_.theta_t), {a});
          break;
        default: throw AlgebraError("rewrite: unexpected pair");
      }
    } else {
      throw AlgebraError("rewrite: unexpected pair");
    }

    for (auto& r : repl) {
      Word w(term.word.begin(), term.word.begin() + static_cast<std::ptrdiff_t>(p));
      w.insert(w.end(), r.word.begin(), r.word.end());
      w.insert(w.end(), term.word.begin() + static_cast<std::ptrdiff_t>(p) + 2, term.word.end());
      work.push_back({term.coeff * r.coeff, std::move(w)});
    }
  }
  if (has_form) return form;
  return fn;
}

// ---------------------------------------------------------------------------
// exterior derivative

NCOneForm Calculus::exterior_d_leibniz(const NCElement& psi) const {
  NCOneForm total(dim_);
  for (const auto& [m, c] : psi.terms()) {
    const Word w = word_of(m);
    NCElement prefix = NCElement::constant(dim_, Coeff(1));
    for (std::size_t j = 0; j < w.size(); ++j) {
      NCOneForm piece = NCOneForm::basis(dim_, differential_of(w[j]), prefix);
      piece = multiply_word(std::move(piece), Word(w.begin() + static_cast<std::ptrdiff_t>(j) + 1, w.end()));
      total += piece.scaled(c);
      prefix = times_generator(prefix, w[j]);
    }
  }
  return total;
}

NCElement Calculus::d0(const NCElement& psi) const {
  // (ψ(t) − ψ(t − iλ)) / iλ
  return (psi - psi.shifted_t(-1)).divided_by_lambda().scaled(Coeff(GaussianRational(0, -1)));
}

NCElement Calculus::delta0_const(const NCElement& psi) const {
  // (β/2)(ψ(t+iλ) + ψ(t−iλ) − 2ψ)/(iλ)²
  NCElement second = psi.shifted_t(1) + psi.shifted_t(-1) - psi.scaled(Coeff(2));
  return second.divided_by_lambda().divided_by_lambda().scaled(
      Coeff(GaussianRational(mpq_class(-1, 2))) * Coeff::beta());
}

NCElement Calculus::box_const(const NCElement& psi) const {
  NCElement lap(dim_);
  for (unsigned i = 0; i < dim_; ++i) lap += psi.partial_x(i).partial_x(i);
  return lap.shifted_t(1) + delta0_const(psi).scaled(Coeff(2));
}

NCOneForm Calculus::exterior_d_formula(const NCElement& psi) const {
  NCOneForm w(dim_);
  for (unsigned i = 0; i < dim_; ++i) w.add(Basis::dx(i), psi.partial_x(i));
  w.add(Basis::dt(), d0(psi));
  const Coeff half_i_lambda = Coeff(GaussianRational(0, mpq_class(1, 2))) * Coeff::lambda();
  w.add(Basis::theta_prime(), box_const(psi).scaled(half_i_lambda));
  return w;
}

NCOneForm Calculus::exterior_d(const NCElement& psi) const {
  NCOneForm a = exterior_d_leibniz(psi);
  if (!(a == exterior_d_formula(psi)))
    throw AlgebraError("exterior_d: Leibniz expansion and shift-operator formula disagree");
  return a;
}

NCOneForm Calculus::commutator_d(const NCElement& psi) const {
  const NCOneForm theta = inner_form();
  NCOneForm comm = multiply(theta, psi) - multiply(psi, theta);
  if (!std::all_of(comm.components().begin(), comm.components().end(),
                   [](const auto& kv) { return kv.second.divisible_by_lambda(); }))
    throw AlgebraError("commutator_d: [θ, ψ] not divisible by λ (rewrite engine inconsistency)");
  return comm.divided_by_lambda().scaled(Coeff(GaussianRational::i()));
}

}  // namespace qsg::exactalg
