#include <optional>
#include <sstream>

#include "qsg/exactalg.hpp"

namespace qsg::exactalg {

namespace {

constexpr const char* kDot = "\xC2\xB7";  // U+00B7

void append_power(std::string& out, const std::string& sym, unsigned p) {
  if (p == 0) return;
  out += kDot;
  out += sym;
  if (p > 1) out += "^" + std::to_string(p);
}

std::string monomial_text(const Monomial& m) {
  std::string s;
  for (unsigned i = 0; i < m.x.size(); ++i) append_power(s, "x" + std::to_string(i + 1), m.x[i]);
  append_power(s, "t", m.t);
  return s;
}

std::string basis_text(const Basis& b) {
  switch (b.kind) {
    case Basis::Kind::Dx: return "dx" + std::to_string(b.index + 1);
    case Basis::Kind::Dt: return "dt";
    case Basis::Kind::ThetaPrime: return "θ'";
  }
  return "";
}

// Terms in canonical order: monomial, then (λ, β) exponents.
void element_terms(const NCElement& e, const std::string& suffix, std::vector<std::string>& out) {
  for (const auto& [m, c] : e.terms()) {
    for (const auto& [ex, g] : c.terms()) {
      std::string s = g.to_string();
      append_power(s, "λ", ex.first);
      append_power(s, "β", ex.second);
      s += monomial_text(m);
      if (!suffix.empty()) s += std::string(kDot) + suffix;
      out.push_back(std::move(s));
    }
  }
}

std::string join(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) s += " + ";
    s += parts[k];
  }
  return s;
}

// ---------------------------------------------------------------------------
// parsing

struct ParsedTerm {
  Coeff coeff{1};
  Monomial mono;
  std::optional<Basis> basis;
};

[[noreturn]] void fail(const std::string& msg, const std::string& text) {
  throw AlgebraError("parse error: " + msg + " in \"" + text + "\"");
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

mpq_class parse_rational(const std::string& s, const std::string& ctx) {
  mpq_class q;
  const std::string t = trim(s);
  if (t.empty() || q.set_str(t, 10) != 0) fail("bad rational '" + t + "'", ctx);
  if (q.get_den() == 0) fail("zero denominator", ctx);
  q.canonicalize();
  return q;
}

// "(a)", "(bi)", "(a + bi)", "(a - bi)" with the parentheses already stripped.
GaussianRational parse_gaussian(const std::string& body, const std::string& ctx) {
  std::string s = trim(body);
  if (s.empty()) fail("empty coefficient", ctx);
  // find a binary +/- separating real and imaginary parts (not at position 0)
  std::size_t split = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] == ' ') split = k;
  auto imag = [&](std::string p) {
    p = trim(p);
    if (p.empty() || p.back() != 'i') fail("expected imaginary part ending in i", ctx);
    p.pop_back();
    p = trim(p);
    if (p.empty() || p == "+") return mpq_class(1);
    if (p == "-") return mpq_class(-1);
    return parse_rational(p, ctx);
  };
  if (split == std::string::npos) {
    if (s.back() == 'i') return {0, imag(s)};
    return {parse_rational(s, ctx), 0};
  }
  mpq_class re = parse_rational(s.substr(0, split), ctx);
  mpq_class im = imag(s.substr(split + 1));
  if (s[split] == '-') im = -im;
  return {re, im};
}

std::vector<std::string> split_top(const std::string& text, const std::string& sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    if (text[k] == '(') ++depth;
    else if (text[k] == ')') --depth;
    else if (depth == 0 && text.compare(k, sep.size(), sep) == 0) {
      parts.push_back(text.substr(start, k - start));
      start = k + sep.size();
      k += sep.size() - 1;
    }
  }
  parts.push_back(text.substr(start));
  return parts;
}

unsigned parse_exponent(const std::string& s, const std::string& ctx) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) fail("bad exponent", ctx);
  return static_cast<unsigned>(std::stoul(s));
}

unsigned parse_index(const std::string& s, unsigned dim, const std::string& ctx) {
  const unsigned i = parse_exponent(s, ctx);
  if (i == 0 || i > dim) fail("index out of range", ctx);
  return i - 1;
}

ParsedTerm parse_term(const std::string& raw, unsigned dim, const std::string& ctx) {
  std::string term = trim(raw);
  ParsedTerm out;
  out.mono.x.assign(dim, 0);
  if (term.empty()) fail("empty term", ctx);
  bool negate = false;
  if (term[0] == '-') {
    negate = true;
    term = trim(term.substr(1));
  }
  // normalise the separator to '*'
  std::string norm;
  for (std::size_t k = 0; k < term.size(); ++k) {
    if (term.compare(k, 2, kDot) == 0) {
      norm += '*';
      ++k;
    } else {
      norm += term[k];
    }
  }
  // generators must appear in normal order; key: x index, then t (dim)
  int last_key = -1;
  for (const auto& f0 : split_top(norm, "*")) {
    const std::string f = trim(f0);
    if (f.empty()) fail("empty factor", ctx);
    if (out.basis) fail("one-form must be the rightmost factor", ctx);
    if (f.front() == '(') {
      if (f.back() != ')') fail("unbalanced parentheses", ctx);
      out.coeff = out.coeff * Coeff(parse_gaussian(f.substr(1, f.size() - 2), ctx));
      continue;
    }
    if (f.find_first_not_of("0123456789/") == std::string::npos) {
      out.coeff = out.coeff * Coeff(GaussianRational(parse_rational(f, ctx)));
      continue;
    }
    std::string sym = f;
    unsigned p = 1;
    if (auto caret = f.find('^'); caret != std::string::npos) {
      sym = f.substr(0, caret);
      p = parse_exponent(f.substr(caret + 1), ctx);
    }
    if (sym == "λ" || sym == "lambda") {
      out.coeff = out.coeff * Coeff::lambda(p);
    } else if (sym == "β" || sym == "beta") {
      out.coeff = out.coeff * Coeff::beta(p);
    } else if (sym == "i") {
      out.coeff = out.coeff * Coeff(GaussianRational::i()).pow(p);
    } else if (sym == "t") {
      if (last_key > static_cast<int>(dim)) fail("t after t", ctx);
      last_key = static_cast<int>(dim) + 1;
      out.mono.t += p;
    } else if (sym.rfind("dx", 0) == 0 && p == 1 && f.find('^') == std::string::npos) {
      out.basis = Basis::dx(parse_index(sym.substr(2), dim, ctx));
    } else if (sym == "dt" && f.find('^') == std::string::npos) {
      out.basis = Basis::dt();
    } else if ((sym == "θ'" || sym == "theta'") && f.find('^') == std::string::npos) {
      out.basis = Basis::theta_prime();
    } else if (sym.size() > 1 && sym[0] == 'x') {
      const unsigned i = parse_index(sym.substr(1), dim, ctx);
      if (static_cast<int>(i) < last_key) fail("factors not in normal order (x's sorted, then t)", ctx);
      last_key = static_cast<int>(i);
      out.mono.x[i] += p;
    } else {
      fail("unknown factor '" + f + "'", ctx);
    }
  }
  if (negate) out.coeff = -out.coeff;
  return out;
}

std::vector<ParsedTerm> parse_terms(const std::string& text, unsigned dim) {
  std::vector<ParsedTerm> terms;
  const std::string body = trim(text);
  if (body.empty()) fail("empty input", text);
  if (body == "0") return terms;
  for (const auto& part : split_top(body, " + ")) terms.push_back(parse_term(part, dim, text));
  return terms;
}

}  // namespace

std::string to_string(const Coeff& c) {
  std::vector<std::string> parts;
  for (const auto& [ex, g] : c.terms()) {
    std::string s = g.to_string();
    append_power(s, "λ", ex.first);
    append_power(s, "β", ex.second);
    parts.push_back(std::move(s));
  }
  return join(parts);
}

std::string to_string(const NCElement& e) {
  std::vector<std::string> parts;
  element_terms(e, "", parts);
  return join(parts);
}

std::string to_string(const NCOneForm& w) {
  std::vector<std::string> parts;
  for (const auto& [b, f] : w.components()) element_terms(f, basis_text(b), parts);
  return join(parts);
}

NCElement parse_element(const std::string& text, unsigned dim) {
  NCElement e(dim);
  for (auto& t : parse_terms(text, dim)) {
    if (t.basis) fail("unexpected one-form in element", text);
    e.add_term(t.mono, t.coeff);
  }
  return e;
}

NCOneForm parse_one_form(const std::string& text, unsigned dim) {
  NCOneForm w(dim);
  for (auto& t : parse_terms(text, dim)) {
    if (!t.basis) fail("term without a basis one-form", text);
    w.add(*t.basis, NCElement::monomial(t.mono, t.coeff));
  }
  return w;
}

}  // namespace qsg::exactalg
