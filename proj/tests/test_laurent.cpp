#include <gtest/gtest.h>

#include <random>

#include "ccsym/errors.hpp"
#include "ccsym/laurent.hpp"
#include "support.hpp"

using namespace ccsym;
using namespace ccsym::testing;

namespace {

// Brute-force convolution on a dense window, used as the product oracle.
ExactSeries brute_product(const ExactSeries& f, const ExactSeries& g, int lo, int hi) {
  ExactSeries r(f.algebra(), hi);
  for (int e = lo; e < hi; ++e) {
    ExactElement acc(f.algebra());
    for (int i = f.lower_bound(); i <= e - g.lower_bound(); ++i)
      acc += f.coeff(i) * g.coeff(e - i);
    r.set_coeff(e, acc);
  }
  return r;
}

} // namespace

TEST(LaurentMul, Examples) {
  auto triv = Algebra::trivial();
  auto one = constant(triv, 1);
  EXPECT_EQ((x_power(triv, 1) * x_power(triv, -1)).terms(), ExactSeries::constant(one).terms());

  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  auto f = series(n2, {{1, constant(n2, 1)}, {0, eps}}, 10);
  auto g = series(n2, {{1, constant(n2, 1)}, {0, -eps}}, 10);
  auto prod = f * g;
  EXPECT_TRUE(prod.agrees_with(brute_product(f, g, 0, 10), 10));
  EXPECT_EQ(prod.terms().size(), 1u);
  EXPECT_EQ(prod.terms()[0].first, 2);

  // (1 - x) * (1 + x + x^2 + ...) = 1 up to the truncation.
  ExactSeries geo(triv, 8);
  for (int e = 0; e < 8; ++e)
    geo.set_coeff(e, one);
  auto r = series(triv, {{0, one}, {1, -one}}, kUnbounded) * geo;
  EXPECT_EQ(r.trunc_order(), 8);
  EXPECT_EQ(r.terms().size(), 1u);
  EXPECT_EQ(r.coeff(0), one);
}

TEST(LaurentMul, TruncationBookkeeping) {
  auto triv = Algebra::trivial();
  auto one = constant(triv, 1);
  auto f = series(triv, {{-2, one}, {0, one}}, 5);
  auto g = series(triv, {{1, one}}, 7);
  // Unknown x^5 of f meets x^1 of g; unknown x^7 of g meets x^-2 of f.
  EXPECT_EQ((f * g).trunc_order(), 5);
  EXPECT_THROW((f * g).coeff(5), TruncationError);
}

TEST(LaurentInvert, Examples) {
  auto triv = Algebra::trivial();
  auto one = constant(triv, 1);
  auto inv_x = invert(x_power(triv, 1, 10));
  EXPECT_EQ(inv_x.terms().size(), 1u);
  EXPECT_EQ(inv_x.terms()[0].first, -1);

  auto geo = invert(series(triv, {{0, one}, {1, -one}}, 6));
  EXPECT_EQ(geo.trunc_order(), 6);
  for (int e = 0; e < 6; ++e)
    EXPECT_EQ(geo.coeff(e), one);

  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  auto f = series(n2, {{1, constant(n2, 1)}, {0, eps}}, 12);
  auto inv = invert(f);
  EXPECT_EQ(inv.coeff(-1), constant(n2, 1));
  EXPECT_EQ(inv.coeff(-2), -eps);
  EXPECT_TRUE(inv.coeff(-3).is_zero());
  auto back = f * inv;
  for (int e = back.lower_bound(); e < back.trunc_order(); ++e)
    EXPECT_EQ(back.coeff(e), e == 0 ? constant(n2, 1) : ExactElement(n2)) << "exponent " << e;

  EXPECT_THROW(invert(series(n2, {{0, eps}}, 5)), NotInvertible);
}

TEST(LaurentValuation, Examples) {
  auto triv = Algebra::trivial();
  EXPECT_EQ(valuation(series(triv, {{-2, constant(triv, 3)}, {1, constant(triv, 1)}}, 5)), -2);
  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  EXPECT_EQ(valuation(series(n2, {{1, constant(n2, 1)}, {0, eps}}, 5)), 1);
  EXPECT_EQ(valuation(series(n2, {{-5, eps}, {0, constant(n2, 1)}, {1, constant(n2, 1)}}, 5)), 0);
  EXPECT_THROW(valuation(series(n2, {{-1, eps}}, 5)), NotInvertible);
}

TEST(LaurentFactorize, Examples) {
  auto triv = Algebra::trivial();
  auto F = factorize(series(triv, {{3, constant(triv, 5)}}, 10));
  EXPECT_EQ(F.nu, 3);
  EXPECT_EQ(F.a0, constant(triv, 5));
  EXPECT_TRUE(F.neg_factors.empty());
  EXPECT_TRUE(F.pos_factors.empty());

  auto G = factorize(series(triv, {{0, constant(triv, 1)}, {1, constant(triv, -1)}}, 10));
  EXPECT_EQ(G.nu, 0);
  EXPECT_EQ(G.a0, constant(triv, 1));
  ASSERT_EQ(G.pos_factors.size(), 1u);
  EXPECT_EQ(G.pos_factors.at(1), constant(triv, 1));

  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  auto f = series(n2, {{1, constant(n2, 1)}, {0, eps}}, 10);
  auto H = factorize(f);
  EXPECT_EQ(H.nu, 1);
  EXPECT_EQ(H.a0, constant(n2, 1));
  ASSERT_EQ(H.neg_factors.size(), 1u);
  EXPECT_EQ(H.neg_factors.at(-1), -eps);
  EXPECT_TRUE(H.pos_factors.empty());
  auto back = reconstruct(H);
  EXPECT_TRUE(back.agrees_with(f, back.trunc_order()));
}

TEST(LaurentFactorize, Errors) {
  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  EXPECT_THROW(factorize(series(n2, {{0, eps}}, 4)), NotInvertible);
  // Valuation 3 with truncation 3: a0 is not determined.
  auto triv = Algebra::trivial();
  auto tight = series(triv, {{2, constant(triv, 1)}}, 3);
  EXPECT_NO_THROW(factorize(tight));
  EXPECT_THROW(factorize(series(n2, {{-3, eps}, {0, constant(n2, 1)}}, 2)), TruncationError);
}

TEST(LaurentReconstruct, Examples) {
  auto n2 = Algebra::make({"eps"}, 2);
  auto eps = gen(n2, "eps");
  CanonicalFactorization<ExactScalar> F(n2);
  F.nu = 1;
  F.neg_factors.emplace(-1, -eps);
  F.trunc_order = 10;
  auto f = reconstruct(F);
  EXPECT_EQ(f.coeff(1), constant(n2, 1));
  EXPECT_EQ(f.coeff(0), eps);
  EXPECT_EQ(f.terms().size(), 2u);

  auto triv = Algebra::trivial();
  CanonicalFactorization<ExactScalar> C(triv);
  C.a0 = constant(triv, 2);
  C.trunc_order = 6;
  auto c = reconstruct(C);
  EXPECT_EQ(c.terms().size(), 1u);
  EXPECT_EQ(c.coeff(0), constant(triv, 2));

  CanonicalFactorization<ExactScalar> P(triv);
  P.pos_factors.emplace(1, constant(triv, 1));
  P.pos_factors.emplace(2, constant(triv, 1));
  P.trunc_order = 8;
  auto p = reconstruct(P);
  // (1 - x)(1 - x^2) = 1 - x - x^2 + x^3
  std::vector<long> expected{1, -1, -1, 1, 0, 0, 0, 0};
  for (int e = 0; e < 8; ++e)
    EXPECT_EQ(p.coeff(e), constant(triv, expected[static_cast<std::size_t>(e)]));
}

TEST(LaurentProperties, RoundTripUniquenessAndValuation) {
  std::mt19937_64 rng(99);
  std::vector<AlgebraPtr> algebras{Algebra::trivial(), Algebra::make({"eps"}, 2), Algebra::make({"eps"}, 3),
                                   Algebra::make({"eps", "delta"}, 3)};
  std::uniform_int_distribution<int> nu_dist(-3, 3), depth_dist(0, 3);
  for (int trial = 0; trial < 80; ++trial) {
    const auto& alg = algebras[static_cast<std::size_t>(trial) % algebras.size()];
    const int nu = nu_dist(rng);
    auto f = random_series(alg, rng, nu, depth_dist(rng), nu + 30);
    auto F = factorize(f);
    EXPECT_EQ(F.nu, nu);
    for (const auto& [j, a] : F.neg_factors) {
      EXPECT_FALSE(a.is_unit());
      EXPECT_TRUE(pow(a, alg->truncation_degree()).is_zero());
    }
    auto back = reconstruct(F);
    ASSERT_GT(back.trunc_order(), nu);
    EXPECT_TRUE(back.agrees_with(f, back.trunc_order())) << f.str() << "\n" << F.str();

    // Uniqueness: refactoring the reconstruction returns the same data on
    // the range both determine.
    auto F2 = factorize(back);
    EXPECT_EQ(F2.nu, F.nu);
    EXPECT_EQ(F2.a0, F.a0);
    EXPECT_EQ(F2.neg_factors, F.neg_factors);
    for (const auto& [j, a] : F2.pos_factors)
      EXPECT_EQ(F.factor(j), a);
    for (const auto& [j, a] : F.pos_factors)
      if (j < F2.trunc_order - F2.nu)
        EXPECT_EQ(F2.factor(j), a);

    auto g = random_series(alg, rng, nu_dist(rng), depth_dist(rng), 12);
    EXPECT_EQ(valuation(f * g), valuation(f) + valuation(g));
  }
}

TEST(LaurentProperties, InverseMultipliesToOne) {
  std::mt19937_64 rng(7);
  auto alg = Algebra::make({"eps", "delta"}, 3);
  for (int trial = 0; trial < 30; ++trial) {
    auto f = random_series(alg, rng, trial % 5 - 2, 2, 10);
    auto prod = f * invert(f);
    ASSERT_GT(prod.trunc_order(), 0);
    for (int e = prod.lower_bound(); e < prod.trunc_order(); ++e)
      EXPECT_EQ(prod.coeff(e), e == 0 ? constant(alg, 1) : ExactElement(alg));
  }
}
