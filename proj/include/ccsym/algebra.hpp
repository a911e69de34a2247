#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ccsym/scalar.hpp"

namespace ccsym {

using Exponents = std::vector<int>;

/// The local artinian algebra C[g_1, ..., g_k] / (all monomials of total
/// degree >= N). Monomials are indexed densely; index 0 is the unit monomial.
/// Basis order is by total degree, then by exponent vector with the first
/// generator most significant (so `eps` precedes `delta` for gens=eps,delta).
class Algebra {
public:
  Algebra(std::vector<std::string> generators, int truncation_degree);

  static std::shared_ptr<const Algebra> make(std::vector<std::string> generators, int truncation_degree);
  /// The residue field C itself (no generators, N = 1).
  static std::shared_ptr<const Algebra> trivial();

  const std::vector<std::string>& generators() const { return generators_; }
  int truncation_degree() const { return degree_; }
  std::size_t dimension() const { return basis_.size(); }
  bool is_trivial() const { return basis_.size() == 1; }

  const Exponents& exponents(std::size_t index) const { return basis_[index]; }
  int total_degree(std::size_t index) const { return total_[index]; }
  std::optional<std::size_t> find(const Exponents& e) const;
  std::optional<std::size_t> generator_index(std::string_view name) const;

  /// Basis index of the product of two monomials, or -1 if it is truncated.
  std::int32_t product(std::size_t i, std::size_t j) const { return table_[i * basis_.size() + j]; }

  struct Term {
    std::uint32_t left, right, result;
  };
  /// Every pair of monomials with a surviving product.
  const std::vector<Term>& product_terms() const { return terms_; }

  /// e.g. `1`, `eps`, `eps^2*delta`.
  std::string monomial_name(std::size_t index) const;

  bool same_as(const Algebra& other) const;

private:
  std::vector<std::string> generators_;
  int degree_;
  std::vector<Exponents> basis_;
  std::vector<int> total_;
  std::vector<std::int32_t> table_;
  std::vector<Term> terms_;
};

using AlgebraPtr = std::shared_ptr<const Algebra>;

/// Throws SignatureMismatch unless both pointers describe the same algebra.
void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b);

enum class ScalarBackend { exact, floating };

/// Textual form `gens=eps,delta;degree=3;scalars=exact|float`.
struct AlgebraSignature {
  AlgebraPtr algebra;
  ScalarBackend backend = ScalarBackend::exact;
};

AlgebraSignature parse_algebra_signature(std::string_view text);
std::string to_string(const AlgebraSignature& signature);

/// Element of an Algebra with coefficients in S (exact Gaussian rationals or
/// complex doubles). Storage is dense over the monomial basis, so two elements
/// compare equal exactly when every coefficient does.
template <Scalar S>
class Element {
public:
  using scalar_type = S;

  explicit Element(AlgebraPtr algebra);
  Element(AlgebraPtr algebra, S constant);

  static Element generator(AlgebraPtr algebra, std::string_view name);
  static Element monomial(AlgebraPtr algebra, const Exponents& exponents, S coeff);

  const AlgebraPtr& algebra() const { return algebra_; }
  const std::vector<S>& coeffs() const { return coeffs_; }
  const S& coeff(std::size_t index) const { return coeffs_[index]; }
  void set_coeff(std::size_t index, S value) { coeffs_[index] = std::move(value); }

  /// Image in the residue field.
  const S& reduce() const { return coeffs_[0]; }
  bool is_zero() const;
  bool is_unit() const { return !ScalarTraits<S>::is_zero(coeffs_[0]); }
  bool in_maximal_ideal() const { return !is_unit(); }

  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Element& o);
  Element& operator*=(const S& s);
  Element& operator/=(const S& s);

  /// this += a * b, without a temporary.
  void add_product(const Element& a, const Element& b);

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b) {
    Element r(a.algebra_);
    r.add_product(a, b);
    return r;
  }
  friend Element operator*(Element a, const S& s) { return a *= s; }
  friend Element operator*(const S& s, Element a) { return a *= s; }
  friend Element operator/(Element a, const S& s) { return a /= s; }
  friend Element operator-(Element a) {
    for (auto& c : a.coeffs_)
      c = -c;
    return a;
  }
  friend bool operator==(const Element& a, const Element& b) {
    return a.algebra_->same_as(*b.algebra_) && a.coeffs_ == b.coeffs_;
  }

  /// Terms sorted in basis order, e.g. `3/2-3/2*eps`.
  std::string str() const;

private:
  AlgebraPtr algebra_;
  std::vector<S> coeffs_;
};

using ExactElement = Element<ExactScalar>;
using FloatElement = Element<FloatScalar>;

template <Scalar S>
S reduce(const Element<S>& a) {
  return a.reduce();
}

/// Multiplicative inverse of a unit; throws NotInvertible otherwise.
template <Scalar S>
Element<S> invert(const Element<S>& a);

/// log(1 - a) = -sum a^k / k for a in the maximal ideal.
template <Scalar S>
Element<S> log1m(const Element<S>& a);

/// sum a^n / n!. Exact elements must lie in the maximal ideal; floating ones
/// are split as exp(reduce(a)) * exp(a - reduce(a)).
template <Scalar S>
Element<S> exp(const Element<S>& a);

/// Integer power; negative exponents require a unit.
template <Scalar S>
Element<S> pow(const Element<S>& a, long n);

FloatElement widen(const ExactElement& a);

/// Principal logarithm of a floating unit.
FloatElement log_unit(const FloatElement& a);

/// Largest modulus of a coefficient difference.
double max_abs_diff(const FloatElement& a, const FloatElement& b);
double max_abs(const FloatElement& a);

extern template class Element<ExactScalar>;
extern template class Element<FloatScalar>;

} // namespace ccsym
