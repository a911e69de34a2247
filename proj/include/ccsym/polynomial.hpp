#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ccsym/algebra.hpp"

namespace ccsym {

/// Polynomial in one variable with coefficients in an Algebra, stored in
/// ascending order without trailing zero coefficients.
template <Scalar S>
class Polynomial {
public:
  explicit Polynomial(AlgebraPtr algebra) : algebra_(std::move(algebra)) {}
  Polynomial(AlgebraPtr algebra, std::vector<Element<S>> coeffs);

  static Polynomial constant(const Element<S>& c);
  /// x - root
  static Polynomial linear(const Element<S>& root);
  static Polynomial variable_power(AlgebraPtr algebra, int n);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<Element<S>>& coeffs() const { return coeffs_; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  Element<S> coeff(int k) const;

  Element<S> eval(const S& z) const;
  Element<S> eval(const Element<S>& z) const;
  Polynomial derivative() const;
  /// p(s + y) as a polynomial in y.
  Polynomial taylor_shift(const S& s) const;
  /// Coefficientwise image in the residue field.
  std::vector<S> reduction() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) { return a.times(b); }
  friend Polynomial operator*(Polynomial a, const Element<S>& c) { return a.scaled(c); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  Polynomial times(const Polynomial& o) const;
  Polynomial scaled(const Element<S>& c) const;

  /// Long division by a monic divisor: *this = q * divisor + r, deg r < deg divisor.
  std::pair<Polynomial, Polynomial> divmod_monic(const Polynomial& divisor) const;

  std::string str(const std::string& var = "x") const;

private:
  void trim();

  AlgebraPtr algebra_;
  std::vector<Element<S>> coeffs_;
};

Polynomial<FloatScalar> widen(const Polynomial<ExactScalar>& p);

extern template class Polynomial<ExactScalar>;
extern template class Polynomial<FloatScalar>;

} // namespace ccsym
