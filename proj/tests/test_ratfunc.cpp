#include <gtest/gtest.h>

#include <random>

#include "ccsym/errors.hpp"
#include "ccsym/ratfunc.hpp"
#include "support.hpp"

using namespace ccsym;
using namespace ccsym::testing;

namespace {

ExactPolynomial poly(const AlgebraPtr& a, std::vector<ExactElement> c) { return ExactPolynomial(a, std::move(c)); }

RationalFunction linear(const AlgebraPtr& a, const ExactElement& root) {
  return RationalFunction::from_polynomial(ExactPolynomial::linear(root));
}

RationalFunction x_fn(const AlgebraPtr& a) { return RationalFunction::variable(a); }

RationalFunction random_function(const AlgebraPtr& a, std::mt19937_64& rng) {
  static const std::vector<ExactScalar> roots{q(0), q(1), q(-1), q(2), q(1, 2), gq(0, 1, 1, 1), gq(1, 1, -1, 2)};
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  std::uniform_int_distribution<int> count(0, 3), mult(-2, 2);
  std::bernoulli_distribution coin(0.5);
  RationalFunction f = RationalFunction::constant(random_element(a, rng, true));
  for (int k = count(rng); k > 0; --k) {
    const int m = mult(rng);
    if (m == 0)
      continue;
    ExactElement root = constant(a, roots[pick(rng)]);
    if (coin(rng))
      root += random_nilpotent(a, rng);
    f = f * linear(a, root).pow(m);
  }
  if (coin(rng)) {
    auto p = poly(a, {constant(a, 1), random_nilpotent(a, rng), random_nilpotent(a, rng)});
    f = f * RationalFunction::from_polynomial(p).pow(coin(rng) ? 1 : -1);
  }
  return f;
}

ExactScalar random_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n(-7, 7);
  return ExactScalar(mpq_class(n(rng), 3), mpq_class(n(rng), 5));
}

bool in_support(const RationalFunction& f, const ExactScalar& z) {
  for (const auto& fac : f.factors())
    if (fac.root == z)
      return true;
  return false;
}

} // namespace

TEST(RationalFunction, EvalExamples) {
  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  auto f = linear(n2, -eps) / linear(n2, constant(n2, 1));
  EXPECT_EQ(f.eval(q(2)), constant(n2, 2) + eps);
  EXPECT_EQ(x_fn(n2).eval(q(-1, 2)), constant(n2, q(-1, 2)));
  auto g = linear(n2, -eps);
  EXPECT_EQ(g.eval(q(1)), constant(n2, 1) + eps);
  EXPECT_EQ(invert(g.eval(q(1))), constant(n2, 1) - eps);
  EXPECT_THROW(f.eval(q(1)), DomainError);
  EXPECT_THROW(g.eval(q(0)), DomainError);
}

TEST(RationalFunction, DlogExamples) {
  auto triv = Algebra::trivial();
  EXPECT_EQ(x_fn(triv).dlog_eval(q(2)), constant(triv, q(1, 2)));
  auto h = x_fn(triv) / linear(triv, constant(triv, 1));
  EXPECT_EQ(h.dlog_eval(q(2)), constant(triv, q(-1, 2)));
  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  EXPECT_EQ(linear(n2, -eps).dlog_eval(q(1)), constant(n2, 1) - eps);
  auto fe = linear(n2, -eps).dlog_eval(std::complex<double>(1, 0));
  EXPECT_NEAR(std::abs(fe.coeff(0) - 1.0), 0, 1e-15);
  EXPECT_NEAR(std::abs(fe.coeff(1) + 1.0), 0, 1e-15);
}

TEST(RationalFunction, SupportExamples) {
  auto triv = Algebra::trivial();
  auto f = x_fn(triv) / linear(triv, constant(triv, 1));
  auto g = linear(triv, constant(triv, 2));
  std::vector<SpherePoint> expected{q(0), q(1), q(2), SpherePoint::infinity()};
  EXPECT_EQ(support(f, g), expected);

  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  std::vector<SpherePoint> expected2{q(0), q(1), SpherePoint::infinity()};
  EXPECT_EQ(support(linear(n2, -eps), linear(n2, constant(n2, 1))), expected2);

  // Exact cancellation with a constant nilpotent perturbation leaves nothing.
  auto one = linear(n2, constant(n2, 1));
  auto flat = one * one.inverse() * RationalFunction::constant(constant(n2, 1) + eps);
  EXPECT_TRUE(flat.factors().empty());
  EXPECT_TRUE(support(flat, flat).empty());
  // A non-constant perturbation lives at infinity.
  auto pert = RationalFunction::from_polynomial(poly(n2, {constant(n2, 1), eps}));
  EXPECT_EQ(support(pert, pert), std::vector<SpherePoint>{SpherePoint::infinity()});
}

TEST(RationalFunction, ExpandExamples) {
  auto triv = Algebra::trivial();
  auto geo = linear(triv, constant(triv, 1)).inverse() * RationalFunction::constant(constant(triv, -1));
  auto s = geo.expand_at(q(0), 3);
  EXPECT_EQ(s.trunc_order(), 3);
  for (int e = 0; e < 3; ++e)
    EXPECT_EQ(s.coeff(e), constant(triv, 1));

  auto at_inf = x_fn(triv).expand_at(SpherePoint::infinity(), 5);
  EXPECT_EQ(at_inf.terms().size(), 1u);
  EXPECT_EQ(at_inf.terms()[0].first, -1);

  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  auto xe = linear(n2, -eps).expand_at(q(0), 2);
  EXPECT_EQ(xe.coeff(0), eps);
  EXPECT_EQ(xe.coeff(1), constant(n2, 1));
  EXPECT_EQ(valuation(xe), 1);

  // (x - 1)^-1 at s = 1 is y^-1 exactly.
  auto pole = linear(triv, constant(triv, 1)).inverse().expand_at(q(1), 4);
  EXPECT_EQ(pole.terms().size(), 1u);
  EXPECT_EQ(pole.terms()[0].first, -1);
}

TEST(RationalFunction, FromPolynomial) {
  auto triv = Algebra::trivial();
  auto f = RationalFunction::from_polynomial(poly(triv, {constant(triv, -1), constant(triv, 0), constant(triv, 1)}));
  ASSERT_EQ(f.factors().size(), 2u);
  EXPECT_EQ(f.factors()[0].root, q(-1));
  EXPECT_EQ(f.factors()[1].root, q(1));

  auto g = RationalFunction::from_polynomial(poly(triv, {constant(triv, 1), constant(triv, 0), constant(triv, 1)}));
  ASSERT_EQ(g.factors().size(), 2u);
  EXPECT_EQ(g.factors()[0].root, gq(0, 1, -1, 1));

  auto cube = RationalFunction::from_polynomial(
      poly(triv, {constant(triv, q(1, 27)), constant(triv, q(-1, 3)), constant(triv, 1), constant(triv, -1)}));
  ASSERT_EQ(cube.factors().size(), 1u);
  EXPECT_EQ(cube.factors()[0].multiplicity, 1);
  EXPECT_EQ(cube.factors()[0].local.degree(), 3);
  EXPECT_EQ(cube.factors()[0].root, q(1, 3));
  EXPECT_EQ(cube.scale(), constant(triv, -1));

  EXPECT_THROW(RationalFunction::from_polynomial(poly(triv, {constant(triv, -2), constant(triv, 0), constant(triv, 1)})),
               DomainError);

  auto n3 = Algebra::make({"eps", "delta"}, 3);
  auto eps = gen(n3, "eps");
  auto delta = gen(n3, "delta");
  // (x - 1 - eps)^2 (x + delta) (1 + eps*delta x^3), multiplied out.
  auto a = ExactPolynomial::linear(constant(n3, 1) + eps);
  auto b = ExactPolynomial::linear(-delta);
  auto c = poly(n3, {constant(n3, 1), constant(n3, 0), constant(n3, 0), eps * delta});
  auto p = a * a * b * c;
  auto h = RationalFunction::from_polynomial(p);
  EXPECT_EQ(h.degree(), 3);
  EXPECT_EQ(h.as_fraction().first, p);
  for (const auto& z : {q(3), q(-2), gq(1, 2, 1, 3)})
    EXPECT_EQ(h.eval(z), p.eval(z));
}

TEST(RationalFunctionProperties, ArithmeticMatchesPointwise) {
  std::mt19937_64 rng(2024);
  auto alg = Algebra::make({"eps", "delta"}, 3);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    auto f = random_function(alg, rng);
    auto g = random_function(alg, rng);
    std::optional<RationalFunction> sum;
    try {
      sum = f + g;
    } catch (const NotInvertible&) {
      continue;
    } catch (const DomainError&) {
      // The reduction of the sum has irrational roots.
      continue;
    }
    ++checked;
    auto prod = f * g;
    auto quot = f / g;
    for (int k = 0; k < 4; ++k) {
      const ExactScalar z = random_point(rng);
      if (in_support(f, z) || in_support(g, z) || in_support(*sum, z))
        continue;
      EXPECT_EQ(sum->eval(z), f.eval(z) + g.eval(z)) << f.str() << " + " << g.str();
      EXPECT_EQ(prod.eval(z), f.eval(z) * g.eval(z));
      EXPECT_EQ(quot.eval(z), f.eval(z) * invert(g.eval(z)));
      EXPECT_EQ(prod.dlog_eval(z), f.dlog_eval(z) + g.dlog_eval(z));
    }
  }
  EXPECT_GT(checked, 10);
}

TEST(RationalFunction, SumsWithRationalRoots) {
  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  auto x = RationalFunction::variable(n2);
  auto one = RationalFunction::constant(constant(n2, 1));
  // x + eps, 1 - x, x^-1 + 1 = (x + 1)/x, and x - eps*x^2.
  auto a = x + RationalFunction::constant(constant(n2, 1) + eps) - one;
  EXPECT_EQ(a.factors().size(), 1u);
  EXPECT_EQ(a.factors()[0].local, ExactPolynomial::linear(-eps));
  auto b = one - x;
  EXPECT_EQ(b.eval(q(3)), constant(n2, -2));
  auto c = x.inverse() + one;
  EXPECT_EQ(c.degree(), 0);
  EXPECT_EQ(c.eval(q(2)), constant(n2, q(3, 2)));
  auto d = x - x.pow(2) * RationalFunction::constant(constant(n2, 1) + eps) + x.pow(2);
  EXPECT_EQ(d.degree(), 1);
  EXPECT_EQ(d.eval(q(2)), constant(n2, 2) - eps * constant(n2, 4));
  EXPECT_TRUE(d.nontrivial_at_infinity());
}

TEST(RationalFunctionProperties, DivisorHasDegreeZero) {
  std::mt19937_64 rng(77);
  for (auto alg : {Algebra::trivial(), Algebra::make({"eps"}, 2), Algebra::make({"eps", "delta"}, 3)}) {
    for (int trial = 0; trial < 25; ++trial) {
      auto f = random_function(alg, rng);
      int total = 0;
      for (const auto& s : support(f, f))
        total += valuation(f.expand_at(s, 12));
      EXPECT_EQ(total, 0) << f.str();
    }
  }
}

TEST(RationalFunctionProperties, LocalExpansionMatchesEvaluation) {
  std::mt19937_64 rng(31);
  auto alg = Algebra::make({"eps"}, 3);
  const ExactScalar h = q(1, 20);
  for (int trial = 0; trial < 20; ++trial) {
    auto f = random_function(alg, rng);
    auto pts = support(f, f);
    pts.push_back(q(5));
    for (const auto& s : pts) {
      double previous = 1e300;
      for (int T : {6, 12, 24}) {
        auto series = f.expand_at(s, T);
        ExactElement sum(alg);
        const ExactScalar step = s.is_infinity() ? ExactScalar(1) / (ExactScalar(20) + h) : h;
        const ExactScalar z = s.is_infinity() ? ExactScalar(20) + h : s.value() + h;
        for (const auto& [e, c] : series.terms())
          sum += c * pow(ExactElement(alg, step), e);
        const double err = max_abs(widen(sum - f.eval(z)));
        EXPECT_LT(err, previous * 1.0001 + 1e-14);
        previous = err;
      }
      EXPECT_LT(previous, 1e-12) << f.str() << " at " << s.str() << "\n" << f.expand_at(s, 12).str();
    }
  }
}

TEST(RationalFunctionProperties, DlogMatchesFiniteDifference) {
  std::mt19937_64 rng(5);
  auto alg = Algebra::make({"eps", "delta"}, 3);
  const double step = 1e-5;
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_function(alg, rng);
    const ExactScalar zq = random_point(rng);
    if (in_support(f, zq))
      continue;
    const std::complex<double> z = zq.to_complex();
    auto near_pole = false;
    for (const auto& fac : f.factors())
      near_pole = near_pole || std::abs(fac.root.to_complex() - z) < 0.2;
    if (near_pole)
      continue;
    auto ratio = f.eval(z + step) * invert(f.eval(z - step));
    auto fd = log_unit(ratio) / FloatScalar(2 * step);
    EXPECT_LT(max_abs_diff(fd, f.dlog_eval(z)), 1e-6) << f.str();
    EXPECT_LT(max_abs_diff(f.dlog_eval(z), widen(f.dlog_eval(zq))), 1e-12);
  }
}
