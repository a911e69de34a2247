#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ccsym/algebra.hpp"

namespace ccsym {

/// Truncation order standing in for "every coefficient is known" (finite
/// Laurent polynomials).
inline constexpr int kUnbounded = 1 << 28;

/// Laurent series sum c_e x^e over an Algebra. Coefficients below
/// lower_bound() are zero; exponents >= trunc_order() are unknown.
template <Scalar S>
class LaurentSeries {
public:
  LaurentSeries(AlgebraPtr algebra, int trunc_order);

  static LaurentSeries monomial(const Element<S>& coeff, int exponent, int trunc_order = kUnbounded);
  static LaurentSeries constant(const Element<S>& coeff, int trunc_order = kUnbounded) {
    return monomial(coeff, 0, trunc_order);
  }

  const AlgebraPtr& algebra() const { return algebra_; }
  int trunc_order() const { return trunc_; }
  /// Lowest exponent with a nonzero coefficient (trunc_order() for zero).
  int lower_bound() const { return first_; }
  /// One past the highest stored exponent.
  int upper_bound() const { return first_ + static_cast<int>(c_.size()); }
  bool is_zero() const { return c_.empty(); }

  /// Throws TruncationError for e >= trunc_order().
  Element<S> coeff(int e) const;
  void set_coeff(int e, const Element<S>& value);
  std::vector<std::pair<int, Element<S>>> terms() const;

  /// Drops everything at exponents >= t (t must not exceed trunc_order()).
  LaurentSeries truncated(int t) const;
  /// Multiplication by x^k.
  LaurentSeries shifted(int k) const;

  LaurentSeries& operator+=(const LaurentSeries& o);
  LaurentSeries& operator-=(const LaurentSeries& o);
  LaurentSeries& operator*=(const Element<S>& c);
  friend LaurentSeries operator+(LaurentSeries a, const LaurentSeries& b) { return a += b; }
  friend LaurentSeries operator-(LaurentSeries a, const LaurentSeries& b) { return a -= b; }
  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) { return a.times(b); }
  friend LaurentSeries operator*(LaurentSeries a, const Element<S>& c) { return a *= c; }
  friend LaurentSeries operator-(const LaurentSeries& a) { return a * Element<S>(a.algebra_, S(-1)); }
  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.trunc_ == b.trunc_ && a.first_ == b.first_ && a.c_ == b.c_;
  }

  /// Cauchy product; the result's trunc_order is the tightest one the
  /// operands determine.
  LaurentSeries times(const LaurentSeries& o) const;

  /// Agreement on every exponent below min(t, both truncation orders).
  bool agrees_with(const LaurentSeries& o, int t) const;

  std::string str(const std::string& var = "x") const;

private:
  void normalize();
  Element<S>& slot(int e);

  AlgebraPtr algebra_;
  int trunc_;
  int first_;
  std::vector<Element<S>> c_;
};

using ExactSeries = LaurentSeries<ExactScalar>;

/// f = a0 x^nu prod_{j<0} (1 - a_j x^j) prod_{j>0} (1 - a_j x^j), with a0 a
/// unit and a_j nilpotent for j < 0. Positive factors are known for
/// 0 < j < trunc_order - nu; only nonzero a_j are stored.
template <Scalar S>
struct CanonicalFactorization {
  explicit CanonicalFactorization(AlgebraPtr alg) : algebra(alg), a0(alg, S(1)) {}

  AlgebraPtr algebra;
  int nu = 0;
  Element<S> a0;
  std::map<int, Element<S>> neg_factors;
  std::map<int, Element<S>> pos_factors;
  int trunc_order = kUnbounded;

  /// Element a_j (zero when absent); j = 0 gives a0.
  Element<S> factor(int j) const;
  /// Largest k with a_{-k} != 0, or 0.
  int neg_depth() const { return neg_factors.empty() ? 0 : -neg_factors.begin()->first; }

  friend bool operator==(const CanonicalFactorization& a, const CanonicalFactorization& b) {
    return a.nu == b.nu && a.a0 == b.a0 && a.neg_factors == b.neg_factors &&
           a.pos_factors == b.pos_factors && a.trunc_order == b.trunc_order;
  }

  std::string str() const;
};

/// Smallest exponent whose coefficient is a unit; throws NotInvertible when
/// every known coefficient is nilpotent.
template <Scalar S>
int valuation(const LaurentSeries<S>& f);

template <Scalar S>
LaurentSeries<S> invert(const LaurentSeries<S>& f);

template <Scalar S>
LaurentSeries<S> pow(const LaurentSeries<S>& f, long n);

/// Unique product decomposition. Throws NotInvertible for series outside
/// A((x))^x and TruncationError when too few coefficients are known to fix a0.
template <Scalar S>
CanonicalFactorization<S> factorize(const LaurentSeries<S>& f);

/// Expands the product. The result is exact below
/// F.trunc_order + (lowest exponent of the negative part).
template <Scalar S>
LaurentSeries<S> reconstruct(const CanonicalFactorization<S>& F);

extern template class LaurentSeries<ExactScalar>;
extern template class LaurentSeries<FloatScalar>;
extern template struct CanonicalFactorization<ExactScalar>;
extern template struct CanonicalFactorization<FloatScalar>;

} // namespace ccsym
