#include <gtest/gtest.h>

#include <random>

#include "ccsym/errors.hpp"
#include "ccsym/parse.hpp"
#include "support.hpp"

using namespace ccsym;
using namespace ccsym::testing;

namespace {

std::size_t error_position(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.position();
  }
  ADD_FAILURE() << "no ParseError";
  return std::string::npos;
}

} // namespace

TEST(Parse, ScalarLiterals) {
  EXPECT_EQ(parse_scalar("1/2"), q(1, 2));
  EXPECT_EQ(parse_scalar("0.25"), q(1, 4));
  EXPECT_EQ(parse_scalar(".5"), q(1, 2));
  EXPECT_EQ(parse_scalar("-3/4+2*i"), gq(-3, 4, 2, 1));
  EXPECT_EQ(parse_scalar("i^2"), q(-1));
  EXPECT_EQ(parse_scalar("2^-2"), q(1, 4));
  EXPECT_EQ(parse_scalar("2^(-2)"), q(1, 4));
}

TEST(Parse, Precedence) {
  EXPECT_EQ(parse_scalar("-2^2"), q(-4));
  EXPECT_EQ(parse_scalar("2*-3"), q(-6));
  EXPECT_EQ(parse_scalar("1-2-3"), q(-4));
  EXPECT_EQ(parse_scalar("12/2/3"), q(2));
  EXPECT_EQ(parse_scalar("1+2*3"), q(7));
  EXPECT_EQ(parse_scalar("(1+2)*3"), q(9));
}

TEST(Parse, Elements) {
  auto a = Algebra::make({"eps", "delta"}, 3);
  const auto eps = gen(a, "eps"), delta = gen(a, "delta");
  EXPECT_EQ(parse_element("1+eps*delta", a), constant(a, 1) + eps * delta);
  EXPECT_EQ(parse_element("(1+eps)^-1", a), constant(a, 1) - eps + eps * eps);
  EXPECT_EQ(parse_element("eps^3", a), ExactElement(a));
}

TEST(Parse, Series) {
  auto a = Algebra::make({"eps"}, 2);
  const auto eps = gen(a, "eps");
  const ExactSeries s = parse_series("x^-2*(1-eps*x^-1)*(1-x)", a, kUnbounded);
  EXPECT_EQ(s.coeff(-3), -eps);
  EXPECT_EQ(s.coeff(-2), constant(a, 1) + eps);
  EXPECT_EQ(s.coeff(-1), constant(a, -1));
  EXPECT_EQ(s.coeff(0), ExactElement(a));

  const ExactSeries geo = parse_series("1/(1-x)", a, 3);
  EXPECT_EQ(geo.trunc_order(), 3);
  for (int e = 0; e < 3; ++e)
    EXPECT_EQ(geo.coeff(e), constant(a, 1));
}

TEST(Parse, Functions) {
  auto a = Algebra::make({"eps"}, 2);
  const auto eps = gen(a, "eps");
  const RationalFunction f = parse_function("(x+eps)*(x-1)^-1", a);
  EXPECT_EQ(f.eval(q(2)), constant(a, 2) + eps);
  EXPECT_EQ(f.degree(), 0);

  const RationalFunction g = parse_function("x^2*(x-3)^-1", Algebra::trivial());
  const auto pts = support(g, g);
  ASSERT_EQ(pts.size(), 3u);
  EXPECT_EQ(pts[0], SpherePoint(q(0)));
  EXPECT_EQ(pts[1], SpherePoint(q(3)));
  EXPECT_TRUE(pts[2].is_infinity());

  const RationalFunction h = parse_function("2*(x-1/2)^2", Algebra::trivial());
  EXPECT_EQ(h.degree(), 2);
  EXPECT_EQ(h.eval(q(3, 2)), constant(Algebra::trivial(), 2));

  // Perturbation with trivial reduction has no divisor.
  const RationalFunction p = parse_function("(1+eps*x)/(1-eps*x^2)", a);
  EXPECT_TRUE(support(p, p).empty() || (support(p, p).size() == 1 && support(p, p)[0].is_infinity()));
  EXPECT_EQ(p.eval(q(1)), constant(a, 1) + eps * constant(a, 2));
}

TEST(Parse, Points) {
  EXPECT_TRUE(parse_point("inf").is_infinity());
  EXPECT_TRUE(parse_point(" oo ").is_infinity());
  EXPECT_EQ(parse_point("-1/2").value(), q(-1, 2));
  EXPECT_DOUBLE_EQ(parse_real("1/4"), 0.25);
  EXPECT_THROW(parse_real("i"), ParseError);
}

TEST(Parse, Paths) {
  const Path c = parse_path("circle(0, 1/2)");
  EXPECT_TRUE(c.is_closed());
  EXPECT_NEAR(std::abs(c.start() - Complex(0.5, 0)), 0, 1e-15);

  const Path loop = parse_path("concat(seg(-2,-1/2), circle(0,1/2,1/2), seg(-1/2,-2))");
  EXPECT_TRUE(loop.is_closed(1e-12));
  EXPECT_EQ(loop.segments().size(), 3u);

  const Path r = parse_path("rev(seg(0, 1+i))");
  EXPECT_NEAR(std::abs(r.start() - Complex(1, 1)), 0, 1e-15);

  const Path k = parse_path("comm(circle(0,1/2), circle(1,1/2,1/2))");
  EXPECT_TRUE(k.is_closed(1e-12));

  const Path arc = parse_path("arc(0, 1, 0, 1/4)");
  EXPECT_NEAR(std::abs(arc.end() - Complex(0, 1)), 0, 1e-15);
}

TEST(Parse, ErrorsCarryPositions) {
  auto a = Algebra::make({"eps"}, 2);
  EXPECT_EQ(error_position([] { parse_scalar("1+"); }), 2u);
  EXPECT_EQ(error_position([] { parse_scalar("(1-2"); }), 4u);
  EXPECT_EQ(error_position([] { parse_scalar("1 $ 2"); }), 2u);
  EXPECT_EQ(error_position([] { parse_scalar("2^1.5"); }), 2u);
  EXPECT_EQ(error_position([] { parse_scalar("1/0"); }), 2u);
  EXPECT_EQ(error_position([] { parse_scalar("3*x"); }), 2u);
  EXPECT_EQ(error_position([&] { parse_element("1+delta", a); }), 2u);
  EXPECT_EQ(error_position([&] { parse_element("1/eps", a); }), 2u);
  EXPECT_EQ(error_position([&] { parse_function("(x-1)/eps", a); }), 6u);
  EXPECT_EQ(error_position([] { parse_scalar("1 2"); }), 2u);
  EXPECT_EQ(error_position([] { parse_path("circle(0)"); }), 8u);
  EXPECT_EQ(error_position([] { parse_path("square(0,1)"); }), 0u);
  EXPECT_EQ(error_position([] { parse_path("concat(seg(0,1), seg(2,3))"); }), 0u);
  EXPECT_EQ(error_position([] { parse_path("circle(0, -1)"); }), 0u);
}

TEST(Parse, PrintedValuesParseBack) {
  std::mt19937_64 rng(5);
  auto a = Algebra::make({"eps", "delta"}, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const ExactScalar s = random_scalar(rng);
    EXPECT_EQ(parse_scalar(s.str()), s) << s.str();
    const ExactElement e = random_element(a, rng, trial % 2 == 0);
    EXPECT_EQ(parse_element(e.str(), a), e) << e.str();
  }
}
