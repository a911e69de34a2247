#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <string>

#include <gmpxx.h>

namespace ccsym {

/// Complex number with exact rational real and imaginary parts.
class GaussianRational {
public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}
  GaussianRational(mpq_class re, mpq_class im = 0);

  static GaussianRational ratio(long num, long den) { return GaussianRational(mpq_class(num, den)); }
  static GaussianRational imaginary_unit() { return GaussianRational(0, 1); }

  const mpq_class& real() const { return re_; }
  const mpq_class& imag() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  /// |z|^2, exact.
  mpq_class norm() const { return re_ * re_ + im_ * im_; }
  GaussianRational conj() const { return GaussianRational(re_, -im_); }
  /// Nearest doubles when numerator and denominator are exact in a double.
  std::complex<double> to_complex() const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return GaussianRational(-a.re_, -a.im_); }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// `p/q`, `r/s*i` or `p/q+r/s*i`; integers print without a denominator.
  std::string str() const;

private:
  void canonicalize();

  mpq_class re_ = 0;
  mpq_class im_ = 0;
};

/// Orders finite points by real part, then imaginary part.
bool operator<(const GaussianRational& a, const GaussianRational& b);

/// Exact conversion of a finite double to a rational.
mpq_class exact_rational(double value);
/// Double nearest to q when numerator and denominator have at most 53 bits,
/// otherwise GMP's truncated conversion.
double to_double(const mpq_class& q);

using ExactScalar = GaussianRational;
using FloatScalar = std::complex<double>;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
  static constexpr bool exact = true;
  static bool is_zero(const ExactScalar& s) { return s.is_zero(); }
  static ExactScalar ratio(long num, long den) { return ExactScalar::ratio(num, den); }
  static std::complex<double> to_complex(const ExactScalar& s) { return s.to_complex(); }
  static std::string format(const ExactScalar& s) { return s.str(); }
};

template <>
struct ScalarTraits<FloatScalar> {
  static constexpr bool exact = false;
  static bool is_zero(const FloatScalar& s) { return s.real() == 0.0 && s.imag() == 0.0; }
  static FloatScalar ratio(long num, long den) { return {double(num) / double(den), 0.0}; }
  static std::complex<double> to_complex(const FloatScalar& s) { return s; }
  static std::string format(const FloatScalar& s);
};

template <class S>
concept Scalar = requires(const S& a, const S& b) {
  { a + b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { a / b } -> std::convertible_to<S>;
  { ScalarTraits<S>::is_zero(a) } -> std::same_as<bool>;
};

/// Widening conversion used when exact data enters the numerical engine.
inline FloatScalar widen(const ExactScalar& s) { return s.to_complex(); }
inline FloatScalar widen(const FloatScalar& s) { return s; }

} // namespace ccsym
