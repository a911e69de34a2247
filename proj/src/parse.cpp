#include "ccsym/parse.hpp"

#include <cctype>
#include <optional>

#include <fmt/format.h>

#include "ccsym/errors.hpp"

namespace ccsym {

namespace {

enum class Tok { number, ident, plus, minus, star, slash, caret, lparen, rparen, comma, end };

struct Token {
  Tok kind;
  std::size_t pos;
  std::string text;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      bool dot = false;
      while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || (s[i] == '.' && !dot))) {
        dot = dot || s[i] == '.';
        ++i;
      }
      const std::string text(s.substr(start, i - start));
      if (text == ".")
        throw ParseError("stray '.'", start);
      out.push_back({Tok::number, start, text});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
        ++i;
      out.push_back({Tok::ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok kind;
    switch (c) {
    case '+':
      kind = Tok::plus;
      break;
    case '-':
      kind = Tok::minus;
      break;
    case '*':
      kind = Tok::star;
      break;
    case '/':
      kind = Tok::slash;
      break;
    case '^':
      kind = Tok::caret;
      break;
    case '(':
      kind = Tok::lparen;
      break;
    case ')':
      kind = Tok::rparen;
      break;
    case ',':
      kind = Tok::comma;
      break;
    default:
      throw ParseError(fmt::format("unexpected character '{}'", c), start);
    }
    out.push_back({kind, start, std::string(1, c)});
    ++i;
  }
  out.push_back({Tok::end, s.size(), ""});
  return out;
}

mpq_class decimal_value(const std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos)
    return mpq_class(mpz_class(text));
  const std::string whole = text.substr(0, dot);
  const std::string frac = text.substr(dot + 1);
  mpz_class num(whole.empty() ? "0" : whole);
  mpz_class den = 1;
  for (char ch : frac) {
    num = num * 10 + (ch - '0');
    den *= 10;
  }
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

ExprPtr make(Expr::Kind kind, std::size_t pos, std::vector<ExprPtr> args = {}) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  e->position = pos;
  e->args = std::move(args);
  return e;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  ExprPtr expression() {
    ExprPtr left = term();
    while (peek().kind == Tok::plus || peek().kind == Tok::minus) {
      const Token op = next();
      ExprPtr right = term();
      left = make(op.kind == Tok::plus ? Expr::Kind::add : Expr::Kind::subtract, op.pos, {left, right});
    }
    return left;
  }

  Path path() {
    const Token head = expect(Tok::ident, "a path constructor");
    expect(Tok::lparen, "'('");
    const std::string& f = head.text;
    Path result = Path::point(0);
    if (f == "seg") {
      const Complex a = complex_arg();
      expect(Tok::comma, "','");
      const Complex b = complex_arg();
      result = Path::segment(a, b);
    } else if (f == "circle" || f == "arc") {
      const Complex c = complex_arg();
      expect(Tok::comma, "','");
      const double r = real_arg();
      if (!(r > 0))
        throw ParseError("radius must be positive", head.pos);
      double start = 0;
      if (f == "arc") {
        expect(Tok::comma, "','");
        start = real_arg();
        expect(Tok::comma, "','");
        const double sweep = real_arg();
        result = Path::arc(c, r, start, sweep);
      } else {
        if (accept(Tok::comma))
          start = real_arg();
        result = Path::circle(c, r, start);
      }
    } else if (f == "concat") {
      std::vector<Path> parts{path()};
      while (accept(Tok::comma))
        parts.push_back(path());
      try {
        result = Path::concat(parts);
      } catch (const GeometryError& e) {
        throw ParseError(e.what(), head.pos);
      }
    } else if (f == "rev") {
      result = path().reversed();
    } else if (f == "comm") {
      const Path a = path();
      expect(Tok::comma, "','");
      const Path b = path();
      try {
        result = Path::commutator(a, b);
      } catch (const GeometryError& e) {
        throw ParseError(e.what(), head.pos);
      }
    } else {
      throw ParseError(fmt::format("unknown path constructor '{}'", f), head.pos);
    }
    expect(Tok::rparen, "')'");
    return result;
  }

  void finish() {
    if (peek().kind != Tok::end)
      throw ParseError(fmt::format("unexpected '{}'", peek().text), peek().pos);
  }

private:
  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (peek().kind != k)
      return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(fmt::format("expected {}, found {}", what, peek().kind == Tok::end ? "end of input" : "'" + peek().text + "'"),
                       peek().pos);
    return next();
  }

  ExprPtr term() {
    ExprPtr left = unary();
    while (peek().kind == Tok::star || peek().kind == Tok::slash) {
      const Token op = next();
      ExprPtr right = unary();
      left = make(op.kind == Tok::star ? Expr::Kind::multiply : Expr::Kind::divide, op.pos, {left, right});
    }
    return left;
  }

  ExprPtr unary() {
    if (peek().kind == Tok::minus) {
      const Token op = next();
      return make(Expr::Kind::negate, op.pos, {unary()});
    }
    if (accept(Tok::plus))
      return unary();
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (peek().kind != Tok::caret)
      return base;
    const Token op = next();
    const bool paren = accept(Tok::lparen);
    bool negative = false;
    if (accept(Tok::minus))
      negative = true;
    else
      accept(Tok::plus);
    const Token n = expect(Tok::number, "an integer exponent");
    if (n.text.find('.') != std::string::npos || n.text.size() > 9)
      throw ParseError("exponent must be a small integer", n.pos);
    if (paren)
      expect(Tok::rparen, "')'");
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::power;
    e->position = op.pos;
    e->exponent = std::stol(n.text) * (negative ? -1 : 1);
    e->args = {base};
    return e;
  }

  ExprPtr atom() {
    const Token t = peek();
    switch (t.kind) {
    case Tok::number: {
      next();
      auto e = std::make_shared<Expr>();
      e->kind = Expr::Kind::number;
      e->position = t.pos;
      e->number = decimal_value(t.text);
      return e;
    }
    case Tok::ident: {
      next();
      auto e = std::make_shared<Expr>();
      e->position = t.pos;
      if (t.text == "x") {
        e->kind = Expr::Kind::variable;
      } else if (t.text == "i") {
        e->kind = Expr::Kind::imaginary;
      } else {
        e->kind = Expr::Kind::name;
        e->name = t.text;
      }
      return e;
    }
    case Tok::lparen: {
      next();
      ExprPtr inner = expression();
      expect(Tok::rparen, "')'");
      return inner;
    }
    case Tok::end:
      throw ParseError("unexpected end of input", t.pos);
    default:
      throw ParseError(fmt::format("unexpected '{}'", t.text), t.pos);
    }
  }

  Complex complex_arg() { return evaluate_scalar(*expression()).to_complex(); }

  double real_arg() {
    const std::size_t at = peek().pos;
    const ExactScalar s = evaluate_scalar(*expression());
    if (!s.is_real())
      throw ParseError("expected a real number", at);
    return s.real().get_d();
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Generic evaluation over a value domain D providing the arithmetic.
template <class D>
typename D::value eval_with(const Expr& e, const D& d) {
  using K = Expr::Kind;
  switch (e.kind) {
  case K::number:
    return d.scalar(ExactScalar(e.number), e.position);
  case K::imaginary:
    return d.scalar(ExactScalar::imaginary_unit(), e.position);
  case K::variable:
    return d.variable(e.position);
  case K::name:
    return d.name(e.name, e.position);
  case K::negate:
    return d.neg(eval_with(*e.args[0], d));
  case K::add:
    return d.add(eval_with(*e.args[0], d), eval_with(*e.args[1], d));
  case K::subtract:
    return d.sub(eval_with(*e.args[0], d), eval_with(*e.args[1], d));
  case K::multiply:
    return d.mul(eval_with(*e.args[0], d), eval_with(*e.args[1], d));
  case K::divide:
    return d.div(eval_with(*e.args[0], d), eval_with(*e.args[1], d), e.args[1]->position);
  case K::power:
    return d.pow(eval_with(*e.args[0], d), e.exponent, e.position);
  }
  throw ParseError("malformed expression", e.position);
}

// Runs f, turning library errors into ParseErrors at pos.
template <class F>
auto at_position(std::size_t pos, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(err.what(), pos);
  }
}

struct ScalarDomain {
  using value = ExactScalar;
  value scalar(ExactScalar s, std::size_t) const { return s; }
  value variable(std::size_t pos) const { throw ParseError("'x' is not allowed in a constant", pos); }
  value name(const std::string& n, std::size_t pos) const {
    throw ParseError(fmt::format("unknown name '{}' in a constant", n), pos);
  }
  value neg(value a) const { return -a; }
  value add(value a, const value& b) const { return a + b; }
  value sub(value a, const value& b) const { return a - b; }
  value mul(value a, const value& b) const { return a * b; }
  value div(value a, const value& b, std::size_t pos) const {
    if (b.is_zero())
      throw ParseError("division by zero", pos);
    return a / b;
  }
  value pow(value a, long n, std::size_t pos) const {
    if (n < 0) {
      if (a.is_zero())
        throw ParseError("division by zero", pos);
      a = ExactScalar(1) / a;
      n = -n;
    }
    ExactScalar r(1);
    for (long k = 0; k < n; ++k)
      r *= a;
    return r;
  }
};

struct ElementDomain {
  using value = ExactElement;
  AlgebraPtr alg;
  value scalar(ExactScalar s, std::size_t) const { return ExactElement(alg, std::move(s)); }
  value variable(std::size_t pos) const { throw ParseError("'x' is not allowed in an algebra element", pos); }
  value name(const std::string& n, std::size_t pos) const {
    if (!alg->generator_index(n))
      throw ParseError(fmt::format("unknown generator '{}'", n), pos);
    return ExactElement::generator(alg, n);
  }
  value neg(value a) const { return -a; }
  value add(value a, const value& b) const { return a + b; }
  value sub(value a, const value& b) const { return a - b; }
  value mul(const value& a, const value& b) const { return a * b; }
  value div(const value& a, const value& b, std::size_t pos) const {
    return at_position(pos, [&] { return a * invert(b); });
  }
  value pow(const value& a, long n, std::size_t pos) const {
    return at_position(pos, [&] { return ccsym::pow(a, n); });
  }
};

struct SeriesDomain {
  using value = ExactSeries;
  AlgebraPtr alg;
  int trunc;
  value scalar(ExactScalar s, std::size_t) const { return ExactSeries::constant(ExactElement(alg, std::move(s)), trunc); }
  value variable(std::size_t) const { return ExactSeries::monomial(ExactElement(alg, 1), 1, trunc); }
  value name(const std::string& n, std::size_t pos) const {
    return ExactSeries::constant(ElementDomain{alg}.name(n, pos), trunc);
  }
  value neg(const value& a) const { return -a; }
  value add(const value& a, const value& b) const { return a + b; }
  value sub(const value& a, const value& b) const { return a - b; }
  value mul(const value& a, const value& b) const { return a * b; }
  value div(const value& a, const value& b, std::size_t pos) const {
    return at_position(pos, [&] { return a * invert(b); });
  }
  value pow(const value& a, long n, std::size_t pos) const {
    return at_position(pos, [&] { return ccsym::pow(a, n); });
  }
};

bool vanishes_mod_nilpotents(const ExactPolynomial& p) {
  for (const auto& c : p.reduction())
    if (!c.is_zero())
      return false;
  return true;
}

// Quotient of polynomials, kept unreduced until the end.
struct Fraction {
  ExactPolynomial num, den;
};

struct FractionDomain {
  using value = Fraction;
  AlgebraPtr alg;
  ExactPolynomial constant(const ExactElement& c) const { return ExactPolynomial::constant(c); }
  value scalar(ExactScalar s, std::size_t) const {
    return {constant(ExactElement(alg, std::move(s))), constant(ExactElement(alg, 1))};
  }
  value variable(std::size_t) const {
    return {ExactPolynomial::variable_power(alg, 1), constant(ExactElement(alg, 1))};
  }
  value name(const std::string& n, std::size_t pos) const {
    return {constant(ElementDomain{alg}.name(n, pos)), constant(ExactElement(alg, 1))};
  }
  value neg(const value& a) const { return {a.num * ExactElement(alg, -1), a.den}; }
  value add(const value& a, const value& b) const {
    if (a.den == b.den)
      return {a.num + b.num, a.den};
    return {a.num * b.den + b.num * a.den, a.den * b.den};
  }
  value sub(const value& a, const value& b) const { return add(a, neg(b)); }
  value mul(const value& a, const value& b) const { return {a.num * b.num, a.den * b.den}; }
  value div(const value& a, const value& b, std::size_t pos) const {
    if (vanishes_mod_nilpotents(b.num))
      throw ParseError("division by a function that vanishes identically modulo the nilpotents", pos);
    return {a.num * b.den, a.den * b.num};
  }
  value pow(const value& a, long n, std::size_t pos) const {
    value base = a;
    if (n < 0) {
      if (vanishes_mod_nilpotents(a.num))
        throw ParseError("negative power of a function that vanishes identically modulo the nilpotents", pos);
      base = {a.den, a.num};
      n = -n;
    }
    value r{constant(ExactElement(alg, 1)), constant(ExactElement(alg, 1))};
    for (long k = 0; k < n; ++k)
      r = mul(r, base);
    return r;
  }
};

std::optional<ExactScalar> try_scalar(const Expr& e) {
  try {
    return evaluate_scalar(e);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

// Roots suggested by subexpressions x - c, x + c, c - x and c + x.
void collect_candidates(const Expr& e, std::vector<ExactScalar>& out) {
  using K = Expr::Kind;
  if ((e.kind == K::add || e.kind == K::subtract) && e.args.size() == 2) {
    const Expr& l = *e.args[0];
    const Expr& r = *e.args[1];
    if (l.kind == K::variable)
      if (auto c = try_scalar(r))
        out.push_back(e.kind == K::subtract ? *c : -*c);
    if (r.kind == K::variable)
      if (auto c = try_scalar(l))
        out.push_back(e.kind == K::subtract ? *c : -*c);
  }
  for (const auto& a : e.args)
    collect_candidates(*a, out);
}

} // namespace

ExprPtr parse_expression(std::string_view text) {
  Parser p(text);
  ExprPtr e = p.expression();
  p.finish();
  return e;
}

ExactScalar evaluate_scalar(const Expr& e) { return eval_with(e, ScalarDomain{}); }

ExactElement evaluate_element(const Expr& e, const AlgebraPtr& algebra) {
  return eval_with(e, ElementDomain{algebra});
}

ExactSeries evaluate_series(const Expr& e, const AlgebraPtr& algebra, int trunc_order) {
  return eval_with(e, SeriesDomain{algebra, trunc_order});
}

RationalFunction evaluate_function(const Expr& e, const AlgebraPtr& algebra) {
  const Fraction fr = eval_with(e, FractionDomain{algebra});
  std::vector<ExactScalar> candidates{ExactScalar(0)};
  collect_candidates(e, candidates);
  return at_position(e.position, [&] {
    return RationalFunction::from_polynomial(fr.num, candidates) /
           RationalFunction::from_polynomial(fr.den, candidates);
  });
}

ExactScalar parse_scalar(std::string_view text) { return evaluate_scalar(*parse_expression(text)); }

ExactElement parse_element(std::string_view text, const AlgebraPtr& algebra) {
  return evaluate_element(*parse_expression(text), algebra);
}

ExactSeries parse_series(std::string_view text, const AlgebraPtr& algebra, int trunc_order) {
  return evaluate_series(*parse_expression(text), algebra, trunc_order);
}

RationalFunction parse_function(std::string_view text, const AlgebraPtr& algebra) {
  return evaluate_function(*parse_expression(text), algebra);
}

SpherePoint parse_point(std::string_view text) {
  std::string_view t = text;
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front())))
    t.remove_prefix(1);
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
    t.remove_suffix(1);
  if (t == "inf" || t == "oo" || t == "infinity")
    return SpherePoint::infinity();
  return SpherePoint(parse_scalar(text));
}

double parse_real(std::string_view text) {
  const ExactScalar s = parse_scalar(text);
  if (!s.is_real())
    throw ParseError("expected a real number", 0);
  return s.real().get_d();
}

Path parse_path(std::string_view text) {
  Parser p(text);
  Path result = p.path();
  p.finish();
  return result;
}

} // namespace ccsym
