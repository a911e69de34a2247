#include "ccsym/symbol.hpp"

#include <fmt/format.h>

#include <numeric>

#include "ccsym/errors.hpp"

namespace ccsym {

template <Scalar S>
SymbolValue<S>::SymbolValue(Element<S> value) : value_(std::move(value)) {
  if (!value_.is_unit())
    throw NotInvertible("symbol value is not a unit");
}

int required_positive_range(int truncation_degree, int partner_neg_depth) {
  return (truncation_degree - 1) * partner_neg_depth + 1;
}

namespace {

template <Scalar S>
void require_positive_range(const CanonicalFactorization<S>& F, int bound) {
  if (F.trunc_order == kUnbounded)
    return;
  if (F.trunc_order - F.nu < bound)
    throw TruncationError(fmt::format("symbol needs positive factors below x^{} but only {} are known", bound,
                                      F.trunc_order - F.nu - 1));
}

// prod over j > 0 and k with partner_neg[-k] != 0 of (1 - pos_j^{k/d} neg_{-k}^{j/d})^d.
template <Scalar S>
Element<S> cross_product(const CanonicalFactorization<S>& pos, const CanonicalFactorization<S>& neg) {
  const AlgebraPtr& alg = pos.algebra;
  const int n = alg->truncation_degree();
  Element<S> acc(alg, S(1));
  for (const auto& [minus_k, b] : neg.neg_factors) {
    const int k = -minus_k;
    for (const auto& [j, a] : pos.pos_factors) {
      if (j > (n - 1) * k)
        break;
      const int d = std::gcd(j, k);
      Element<S> y = pow(a, k / d) * pow(b, j / d);
      if (y.is_zero())
        continue;
      acc *= pow(Element<S>(alg, S(1)) - y, d);
    }
  }
  return acc;
}

} // namespace

template <Scalar S>
SymbolValue<S> cc_symbol(const CanonicalFactorization<S>& f, const CanonicalFactorization<S>& g) {
  require_same_algebra(f.algebra, g.algebra);
  const int n = f.algebra->truncation_degree();
  require_positive_range(f, required_positive_range(n, g.neg_depth()));
  require_positive_range(g, required_positive_range(n, f.neg_depth()));

  Element<S> num = pow(f.a0, g.nu) * cross_product(f, g);
  Element<S> den = pow(g.a0, f.nu) * cross_product(g, f);
  Element<S> value = num * invert(den);
  if ((static_cast<long>(f.nu) * g.nu) % 2 != 0)
    value = -value;
  return SymbolValue<S>(std::move(value));
}

template <Scalar S>
SymbolValue<S> cc_symbol_series(const LaurentSeries<S>& f, const LaurentSeries<S>& g) {
  require_same_algebra(f.algebra(), g.algebra());
  const bool exact_input = f.trunc_order() == kUnbounded || g.trunc_order() == kUnbounded;
  if (!exact_input)
    return cc_symbol(factorize(f), factorize(g));

  // Finite Laurent polynomials generally have infinitely many positive
  // factors; cut them off far enough out that the formula never reads the cut.
  const int n = f.algebra()->truncation_degree();
  const int reach = std::max(0, -f.lower_bound()) + std::max(0, -g.lower_bound()) +
                    std::max(0, f.upper_bound()) + std::max(0, g.upper_bound());
  int extra = n * reach + 8;
  for (int attempt = 0;; ++attempt) {
    auto cut = [extra](const LaurentSeries<S>& s) {
      return s.trunc_order() == kUnbounded ? s.truncated(s.upper_bound() + extra) : s;
    };
    try {
      return cc_symbol(factorize(cut(f)), factorize(cut(g)));
    } catch (const TruncationError&) {
      if (attempt >= 6)
        throw;
      extra *= 2;
    }
  }
}

template <Scalar S>
S tame_symbol(const LaurentSeries<S>& f, const LaurentSeries<S>& g) {
  require_same_algebra(f.algebra(), g.algebra());
  if (f.algebra()->truncation_degree() != 1)
    throw SignatureMismatch("tame symbol needs the trivial algebra (degree 1)");
  const int nf = valuation(f);
  const int ng = valuation(g);
  const S lf = f.coeff(nf).coeff(0);
  const S lg = g.coeff(ng).coeff(0);
  S value = pow(Element<S>(f.algebra(), lf), ng).coeff(0) / pow(Element<S>(f.algebra(), lg), nf).coeff(0);
  if ((static_cast<long>(nf) * ng) % 2 != 0)
    value = -value;
  return value;
}

template <Scalar S>
SymbolValue<S> steinberg_value(const LaurentSeries<S>& f) {
  const auto one = LaurentSeries<S>::constant(Element<S>(f.algebra(), S(1)));
  const LaurentSeries<S> g = one - f;
  valuation(g);
  return cc_symbol_series(f, g);
}

template <Scalar S>
SymbolValue<S> scaled_pair_value(const LaurentSeries<S>& f, const Element<S>& c) {
  if (!c.is_unit())
    throw NotInvertible("scale factor is not a unit");
  return cc_symbol_series(f, f * c);
}

#define CCSYM_INSTANTIATE(S)                                                                          \
  template class SymbolValue<S>;                                                                      \
  template SymbolValue<S> cc_symbol(const CanonicalFactorization<S>&, const CanonicalFactorization<S>&); \
  template SymbolValue<S> cc_symbol_series(const LaurentSeries<S>&, const LaurentSeries<S>&);          \
  template S tame_symbol(const LaurentSeries<S>&, const LaurentSeries<S>&);                           \
  template SymbolValue<S> steinberg_value(const LaurentSeries<S>&);                                   \
  template SymbolValue<S> scaled_pair_value(const LaurentSeries<S>&, const Element<S>&);

CCSYM_INSTANTIATE(ExactScalar)
CCSYM_INSTANTIATE(FloatScalar)

} // namespace ccsym
