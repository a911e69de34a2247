#pragma once

#include "ccsym/laurent.hpp"

namespace ccsym {

/// Value of a symbol: a unit of the coefficient algebra.
template <Scalar S>
class SymbolValue {
public:
  /// Throws NotInvertible unless value is a unit.
  explicit SymbolValue(Element<S> value);

  const Element<S>& value() const { return value_; }
  std::string str() const { return value_.str(); }

  friend bool operator==(const SymbolValue& a, const SymbolValue& b) { return a.value_ == b.value_; }

private:
  Element<S> value_;
};

/// Double-product formula on two factorizations. Throws TruncationError when
/// a positive factor the product needs lies beyond either truncation order.
template <Scalar S>
SymbolValue<S> cc_symbol(const CanonicalFactorization<S>& f, const CanonicalFactorization<S>& g);

template <Scalar S>
SymbolValue<S> cc_symbol_series(const LaurentSeries<S>& f, const LaurentSeries<S>& g);

/// (-1)^{nu(f) nu(g)} f^{nu(g)} / g^{nu(f)} at x = 0, for the trivial algebra.
template <Scalar S>
S tame_symbol(const LaurentSeries<S>& f, const LaurentSeries<S>& g);

/// Symbol of f against 1 - f.
template <Scalar S>
SymbolValue<S> steinberg_value(const LaurentSeries<S>& f);

/// Symbol of f against c f for a unit c.
template <Scalar S>
SymbolValue<S> scaled_pair_value(const LaurentSeries<S>& f, const Element<S>& c);

/// Smallest positive-factor range 0 < j < bound that cc_symbol reads from
/// one side, given the other side's negative depth.
int required_positive_range(int truncation_degree, int partner_neg_depth);

} // namespace ccsym
