#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ccsym/errors.hpp"
#include "ccsym/verify.hpp"
#include "support.hpp"

using namespace ccsym;
using namespace ccsym::testing;

namespace {

const Complex kTwoPiI{0, 2 * std::numbers::pi};

QuadratureConfig config(int steps, double tol) {
  QuadratureConfig cfg;
  cfg.steps_per_segment = steps;
  cfg.tolerance = tol;
  return cfg;
}

AlgebraPtr dual() { return Algebra::make({"eps"}, 2); }

RationalFunction x_fn(const AlgebraPtr& a) { return RationalFunction::variable(a); }
// x - root, for any root including nilpotent shifts.
RationalFunction x_minus(const ExactElement& root) {
  return RationalFunction::from_polynomial(ExactPolynomial::linear(root));
}
RationalFunction c_fn(const AlgebraPtr& a, const ExactElement& c) { return RationalFunction::constant(c); }
RationalFunction c_fn(const AlgebraPtr& a, long c) { return RationalFunction::constant(ExactElement(a, c)); }

FloatElement fconst(const AlgebraPtr& a, Complex c) { return FloatElement(a, c); }

FloatElement dual_value(const AlgebraPtr& a, Complex unit_part, Complex eps_part) {
  FloatElement e(a, unit_part);
  e.set_coeff(1, eps_part);
  return e;
}

// Random factored function with roots among a fixed set of Gaussian integers,
// optionally shifted by nilpotents, times a unit scale.
RationalFunction random_factored(const AlgebraPtr& a, std::mt19937_64& rng, bool nilpotent_roots) {
  static const std::vector<ExactScalar> roots{q(0), q(1), q(-1), q(2), q(-2), gq(0, 1, 1, 1), gq(0, 1, -1, 1)};
  std::uniform_int_distribution<std::size_t> pick(0, roots.size() - 1);
  std::uniform_int_distribution<int> count(1, 3), mult(-2, 2);
  std::bernoulli_distribution coin(0.5);
  RationalFunction f = RationalFunction::constant(random_element(a, rng, true));
  for (int k = count(rng); k > 0; --k) {
    const int m = mult(rng);
    if (m == 0)
      continue;
    ExactElement root = constant(a, roots[pick(rng)]);
    if (nilpotent_roots && coin(rng))
      root += random_nilpotent(a, rng);
    f = f * RationalFunction::from_polynomial(ExactPolynomial::linear(root)).pow(m);
  }
  return f;
}

} // namespace

TEST(ClosedForms, WindingPowers) {
  for (int r : {1, 2, 3}) {
    const auto rep = winding_power_check(r, 0.5, config(1024, 1e-8));
    EXPECT_TRUE(rep.pass) << rep.text();
  }
  EXPECT_THROW(winding_power_check(0, 0.5, config(16, 1e-8)), DomainError);
}

TEST(ClosedForms, ResidueWinding) {
  auto a = Algebra::trivial();
  const RationalFunction x = x_fn(a);
  const RationalFunction f = x.pow(2) / (x - c_fn(a, 3));
  const auto rep = residue_winding_check(f, q(0), 1, config(1024, 1e-8));
  EXPECT_TRUE(rep.pass) << rep.text();
  EXPECT_NEAR(rep.lhs_value->coeff(0).imag(), 4 * std::numbers::pi, 1e-8);
  EXPECT_THROW(residue_winding_check(f, q(0), 4, config(64, 1e-8)), GeometryError);

  // Nilpotent perturbation of the roots leaves the count unchanged.
  auto n2 = dual();
  const RationalFunction g = x_minus(gen(n2, "eps")).pow(3) / (x_fn(n2) - c_fn(n2, 1));
  const auto rep2 = residue_winding_check(g, q(0), 0.5, config(1024, 1e-8));
  EXPECT_TRUE(rep2.pass) << rep2.text();
}

TEST(ClosedForms, LogBinomial) {
  auto a = Algebra::trivial();
  const auto rep = log_binomial_check(-1, fconst(a, 0.2), 0.5, config(1024, 1e-7));
  EXPECT_TRUE(rep.pass) << rep.text();
  EXPECT_LT(std::abs(rep.lhs_value->coeff(0) - kTwoPiI * std::log(0.6)), 1e-7);

  auto n2 = dual();
  const auto nil = log_binomial_check(-1, dual_value(n2, 0, 0.2), 0.5, config(1024, 1e-7));
  EXPECT_TRUE(nil.pass) << nil.text();
  EXPECT_LT(std::abs(nil.lhs_value->coeff(1) + kTwoPiI * 0.4), 1e-7);

  EXPECT_THROW(log_binomial_check(1, fconst(a, 0.2), 5, config(64, 1e-7)), DomainError);
}

TEST(ClosedForms, BinomialPairs) {
  auto a = Algebra::trivial();
  const auto same = binomial_pair_check(1, 2, fconst(a, 0.2), fconst(a, 0.3), 1, config(1024, 1e-8));
  EXPECT_TRUE(same.pass) << same.text();
  EXPECT_LE(max_abs(*same.lhs_value), 1e-8);

  const auto opposite = binomial_pair_check(1, -1, fconst(a, 0.2), fconst(a, 0.3), 1, config(1024, 1e-7));
  EXPECT_TRUE(opposite.pass) << opposite.text();
  EXPECT_LT(std::abs(opposite.lhs_value->coeff(0) - kTwoPiI * std::log(0.94)), 1e-7);

  const auto shared = binomial_pair_check(2, -2, fconst(a, 0.2), fconst(a, 0.3), 1, config(1024, 1e-6));
  EXPECT_TRUE(shared.pass) << shared.text();
  EXPECT_LT(std::abs(shared.lhs_value->coeff(0) - 2.0 * kTwoPiI * std::log(0.94)), 1e-6);

  // Swapping the sign pattern flips the sign of the prefactor.
  const auto flipped = binomial_pair_check(-1, 1, fconst(a, 0.3), fconst(a, 0.2), 1, config(1024, 1e-7));
  EXPECT_TRUE(flipped.pass) << flipped.text();
  EXPECT_LT(std::abs(flipped.lhs_value->coeff(0) + kTwoPiI * std::log(0.94)), 1e-7);

  // Different gcd and magnitudes.
  const auto mixed = binomial_pair_check(2, -3, fconst(a, 0.5), fconst(a, 0.25), 0.9, config(2048, 1e-7));
  EXPECT_TRUE(mixed.pass) << mixed.text();
}

TEST(ClosedForms, EndpointLog) {
  auto n2 = dual();
  const RationalFunction f = (x_minus(-gen(n2, "eps"))) * (x_fn(n2) - c_fn(n2, 2)).pow(-2);
  for (const SpherePoint& s : {SpherePoint(q(0)), SpherePoint(q(2)), SpherePoint::infinity()}) {
    const auto rep = endpoint_log_check(f, s, gq(-1, 2, 1, 3), 0.25, config(512, 1e-9));
    EXPECT_TRUE(rep.pass) << rep.text();
  }
}

TEST(LocalLoopSymbol, DualNumberExample) {
  auto n2 = dual();
  const ExactElement eps = gen(n2, "eps");
  const RationalFunction f = x_minus(-eps);
  const RationalFunction g = c_fn(n2, 1) - x_fn(n2);
  const auto rep = main_theorem_check(f, g, SpherePoint(q(0)), q(-1, 2), 0.25, config(1024, 1e-6));
  EXPECT_TRUE(rep.pass) << rep.text();
  // Hand value: g(P) / (1 + eps) at P = -1/2.
  const FloatElement expected = dual_value(n2, 1.5, -1.5);
  EXPECT_LE(max_abs_diff(*rep.rhs_value, expected), 1e-15);
  EXPECT_LE(max_abs_diff(*rep.lhs_value, expected), 1e-6);
}

TEST(LocalLoopSymbol, ResidueFieldExamples) {
  auto a = Algebra::trivial();
  const RationalFunction x = x_fn(a);
  const auto one = main_theorem_check(x, c_fn(a, 1) - x, SpherePoint(q(0)), q(-1, 2), 0.25, config(1024, 1e-6));
  EXPECT_TRUE(one.pass) << one.text();
  EXPECT_NEAR(one.rhs_value->coeff(0).real(), 1.5, 1e-15);

  const auto two = main_theorem_check(x, x, SpherePoint(q(0)), q(-1), 0.25, config(1024, 1e-6));
  EXPECT_TRUE(two.pass) << two.text();
  EXPECT_NEAR(two.rhs_value->coeff(0).real(), -1, 1e-15);
}

TEST(LocalLoopSymbol, EverySupportPointIncludingInfinity) {
  auto n2 = dual();
  const ExactElement eps = gen(n2, "eps");
  const RationalFunction f = (x_minus(-eps)) * (x_fn(n2) - c_fn(n2, 2)).pow(-1);
  const RationalFunction g = (x_fn(n2) - c_fn(n2, 1)).pow(2) * c_fn(n2, constant(n2, 3) + eps);
  const ExactScalar base = gq(-1, 2, 1, 2);
  for (const auto& s : support(f, g)) {
    const double radius = s.is_infinity() ? 0.2 : 0.3;
    const auto rep = main_theorem_check(f, g, s, base, radius, config(1024, 1e-6));
    EXPECT_TRUE(rep.pass) << rep.text();
  }
}

TEST(LocalLoopSymbol, RejectsLoopsEnclosingOtherPoints) {
  auto a = Algebra::trivial();
  const RationalFunction x = x_fn(a);
  EXPECT_THROW(main_theorem_check(x, c_fn(a, 1) - x, SpherePoint(q(0)), q(-2), 1.5, config(64, 1e-6)),
               GeometryError);
}

TEST(LocalLoopSymbol, DeviationShrinksUnderStepDoubling) {
  auto n2 = dual();
  auto a = Algebra::trivial();
  struct Case {
    RationalFunction f, g;
    ExactScalar base;
  };
  const std::vector<Case> cases{
      {x_minus(-gen(n2, "eps")), c_fn(n2, 1) - x_fn(n2), q(-1, 2)},
      {x_fn(a), c_fn(a, 1) - x_fn(a), q(-1, 2)},
      {x_fn(a), x_fn(a), q(-1)},
  };
  for (const auto& c : cases) {
    double prev = std::numeric_limits<double>::infinity();
    for (int steps : {2, 4, 8, 16, 32}) {
      const auto rep = main_theorem_check(c.f, c.g, SpherePoint(q(0)), c.base, 0.25, config(steps, 1e-6));
      // Below 1e-13 the deviation is roundoff and no longer tracks the step.
      EXPECT_LE(rep.deviation, std::max(2 * prev, 1e-13)) << steps;
      prev = rep.deviation;
    }
  }
}

TEST(Weil, Examples) {
  auto a = Algebra::trivial();
  auto n2 = dual();
  const RationalFunction x = x_fn(a);
  for (const auto& [f, g] : std::vector<std::pair<RationalFunction, RationalFunction>>{
           {x, c_fn(a, 1) - x}, {x.pow(2), x.pow(3)}, {x_minus(-gen(n2, "eps")), x_fn(n2) - c_fn(n2, 1)}}) {
    const auto rep = weil_reciprocity_check(f, g, 8);
    EXPECT_TRUE(rep.pass) << rep.text();
    EXPECT_EQ(rep.lhs, "1");
    EXPECT_EQ(rep.deviation, 0);
  }
}

TEST(Weil, LocalSymbolsOfPowers) {
  auto a = Algebra::trivial();
  const RationalFunction x = x_fn(a);
  const auto rep = weil_reciprocity_check(x.pow(2), x.pow(3), 8);
  // Local values (-1)^6 at 0 and at infinity.
  ASSERT_EQ(rep.inputs.size(), 5u);
  EXPECT_EQ(rep.inputs[3].second, "1");
  EXPECT_EQ(rep.inputs[4].second, "1");
}

TEST(Weil, RandomFactoredPairsAreExact) {
  std::mt19937_64 rng(2024);
  for (const auto& alg : {Algebra::trivial(), dual(), Algebra::make({"eps"}, 3), Algebra::make({"eps", "delta"}, 2)}) {
    for (int trial = 0; trial < 25; ++trial) {
      const RationalFunction f = random_factored(alg, rng, true);
      const RationalFunction g = random_factored(alg, rng, true);
      const auto rep = weil_reciprocity_check(f, g, 16);
      EXPECT_TRUE(rep.pass) << rep.text();
    }
  }
}

TEST(Weil, InsufficientTruncationIsReported) {
  auto n2 = dual();
  const ExactElement eps = gen(n2, "eps");
  const RationalFunction f = x_minus(-eps);
  const RationalFunction g = (x_fn(n2) - c_fn(n2, 1)).pow(2);
  EXPECT_THROW(weil_reciprocity_check(f, g, 2), TruncationError);
}

TEST(Bilinear, Examples) {
  auto a = Algebra::trivial();
  auto n2 = dual();
  const RationalFunction x = x_fn(a);
  const auto cfg = config(1024, 1e-6);
  const auto one = bilinear_reciprocity_check(x, c_fn(a, 1) - x, q(-2), cfg);
  EXPECT_TRUE(one.pass) << one.text();
  const auto two = bilinear_reciprocity_check(x, x, q(-2), cfg);
  EXPECT_TRUE(two.pass) << two.text();
  const auto three =
      bilinear_reciprocity_check(x_minus(-gen(n2, "eps")), x_fn(n2) - c_fn(n2, 1), q(-2), cfg);
  EXPECT_TRUE(three.pass) << three.text();
}

TEST(Bilinear, LoopSystemWindsOncePerPoint) {
  const std::vector<SpherePoint> pts{SpherePoint(q(0)), SpherePoint(q(1)), SpherePoint(q(2)), SpherePoint(gq(0, 1, 1, 1)),
                                     SpherePoint::infinity()};
  const LoopSystem sys = reciprocity_loops(pts, q(-2));
  ASSERT_EQ(sys.loops.size(), pts.size());
  for (std::size_t i = 0; i < sys.loops.size(); ++i) {
    EXPECT_TRUE(sys.loops[i].is_closed(1e-9));
    if (i > 0)
      EXPECT_LT(sys.angles[i - 1], sys.angles[i]);
  }
  EXPECT_THROW(reciprocity_loops({SpherePoint(q(0))}, q(0)), GeometryError);
}

TEST(Bilinear, RandomFunctionsSumToZero) {
  std::mt19937_64 rng(77);
  auto n2 = dual();
  int checked = 0;
  for (int trial = 0; trial < 6; ++trial) {
    const RationalFunction f = random_factored(n2, rng, true);
    const RationalFunction g = random_factored(n2, rng, true);
    if (support(f, g).empty())
      continue;
    const auto rep = bilinear_reciprocity_check(f, g, gq(1, 3, 1, 2), config(1024, 1e-6));
    EXPECT_TRUE(rep.pass) << rep.text();
    ++checked;
  }
  EXPECT_GE(checked, 4);
}

TEST(Commutator, Examples) {
  auto a = Algebra::trivial();
  const auto cfg = config(1024, 1e-8);
  const Path alpha = Path::circle(0, 0.5);
  const Path beta = Path::circle(1, 0.5, 0.5);
  const Form w0 = Form::simple_pole(a, 0);
  const Form w1 = Form::simple_pole(a, 1);

  const auto both = commutator_quadratic_check(alpha, beta, w0, w1, cfg);
  EXPECT_TRUE(both.pass) << both.text();
  EXPECT_LT(std::abs(both.rhs_value->coeff(0) - kTwoPiI * kTwoPiI), 1e-8);

  const auto same = commutator_quadratic_check(alpha, alpha, w0, w1, cfg);
  EXPECT_TRUE(same.pass) << same.text();
  EXPECT_LT(max_abs(*same.rhs_value), 1e-12);

  const auto one_form = commutator_quadratic_check(alpha, beta, w0, w0, cfg);
  EXPECT_TRUE(one_form.pass) << one_form.text();
  EXPECT_LT(max_abs(*one_form.lhs_value), 1e-8);

  EXPECT_THROW(commutator_quadratic_check(alpha, Path::circle(1, 0.25), w0, w1, cfg), GeometryError);
}

TEST(ChenIdentities, SuitePasses) {
  const auto reports = chen_identity_suite(config(1024, 1e-8));
  ASSERT_EQ(reports.size(), 4u);
  for (const auto& rep : reports)
    EXPECT_TRUE(rep.pass) << rep.text();
}

TEST(ChenIdentities, WrongPathCountIsRejected) {
  auto a = Algebra::trivial();
  const Form w = Form::dz(a);
  EXPECT_THROW(chen_identity_check(ChenIdentity::composition, w, w, {Path::segment(0, 1)}, config(16, 1e-8)),
               DomainError);
  EXPECT_THROW(chen_identity_check(ChenIdentity::homotopy, w, w, {Path::segment(0, 1), Path::segment(0, 2)},
                                   config(16, 1e-8)),
               GeometryError);
}

TEST(Reports, JsonCarriesSchemaFields) {
  const auto rep = winding_power_check(2, 0.5, config(256, 1e-8));
  const std::string js = rep.json();
  for (const char* key : {"check_id", "inputs", "lhs", "rhs", "deviation", "tolerance", "pass", "runtime_ms"})
    EXPECT_NE(js.find(std::string("\"") + key + "\""), std::string::npos) << key;
  EXPECT_NE(rep.text().find("result: PASS"), std::string::npos);
  // Same flags, same numbers.
  const auto again = winding_power_check(2, 0.5, config(256, 1e-8));
  EXPECT_EQ(rep.deviation, again.deviation);
  EXPECT_EQ(rep.lhs, again.lhs);
}
