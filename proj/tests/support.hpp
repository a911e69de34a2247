#pragma once

#include <random>
#include <string>
#include <vector>

#include "ccsym/algebra.hpp"
#include "ccsym/laurent.hpp"

namespace ccsym::testing {

inline ExactScalar q(long num, long den = 1) { return ExactScalar::ratio(num, den); }
inline ExactScalar gq(long re_num, long re_den, long im_num, long im_den) {
  return ExactScalar(mpq_class(re_num, re_den), mpq_class(im_num, im_den));
}

inline ExactElement constant(const AlgebraPtr& a, ExactScalar c) { return ExactElement(a, std::move(c)); }
inline ExactElement gen(const AlgebraPtr& a, const std::string& name) { return ExactElement::generator(a, name); }

/// Series from (exponent, coefficient) pairs.
inline ExactSeries series(const AlgebraPtr& a, std::vector<std::pair<int, ExactElement>> terms, int trunc) {
  ExactSeries s(a, trunc);
  for (auto& [e, c] : terms)
    s.set_coeff(e, s.coeff(e) + c);
  return s;
}

inline ExactSeries x_power(const AlgebraPtr& a, int e, int trunc = kUnbounded) {
  return ExactSeries::monomial(ExactElement(a, 1), e, trunc);
}

/// Small Gaussian rationals; about a third are real integers.
inline ExactScalar random_scalar(std::mt19937_64& rng, bool allow_zero = true) {
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3), kind(0, 2);
  for (;;) {
    ExactScalar s;
    switch (kind(rng)) {
    case 0:
      s = ExactScalar(num(rng));
      break;
    case 1:
      s = q(num(rng), den(rng));
      break;
    default:
      s = ExactScalar(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
      break;
    }
    if (allow_zero || !s.is_zero())
      return s;
  }
}

inline ExactElement random_element(const AlgebraPtr& a, std::mt19937_64& rng, bool unit) {
  ExactElement e(a);
  std::bernoulli_distribution keep(0.6);
  for (std::size_t i = 0; i < a->dimension(); ++i)
    if (i > 0 && keep(rng))
      e.set_coeff(i, random_scalar(rng));
  if (unit)
    e.set_coeff(0, random_scalar(rng, false));
  return e;
}

inline ExactElement random_nilpotent(const AlgebraPtr& a, std::mt19937_64& rng) {
  return random_element(a, rng, false);
}

/// Invertible series with valuation nu, nilpotent coefficients down to
/// nu - depth, and sparse random higher coefficients, truncated at trunc.
inline ExactSeries random_series(const AlgebraPtr& a, std::mt19937_64& rng, int nu, int depth, int trunc) {
  ExactSeries s(a, trunc);
  std::bernoulli_distribution keep(0.5);
  for (int e = nu - depth; e < trunc; ++e) {
    if (e < nu) {
      if (keep(rng))
        s.set_coeff(e, random_nilpotent(a, rng));
    } else if (e == nu) {
      s.set_coeff(e, random_element(a, rng, true));
    } else if (keep(rng) && e < nu + 6) {
      s.set_coeff(e, random_element(a, rng, keep(rng)));
    }
  }
  return s;
}

} // namespace ccsym::testing
