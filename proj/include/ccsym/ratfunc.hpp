#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ccsym/laurent.hpp"
#include "ccsym/polynomial.hpp"

namespace ccsym {

/// A finite Gaussian-rational point or infinity.
class SpherePoint {
public:
  SpherePoint(ExactScalar z) : z_(std::move(z)) {}
  static SpherePoint infinity() { return SpherePoint(); }

  bool is_infinity() const { return !z_.has_value(); }
  /// Throws DomainError at infinity.
  const ExactScalar& value() const;
  std::string str() const;

  friend bool operator==(const SpherePoint& a, const SpherePoint& b) { return a.z_ == b.z_; }
  /// Finite points by real then imaginary part; infinity last.
  friend bool operator<(const SpherePoint& a, const SpherePoint& b);

private:
  SpherePoint() = default;
  std::optional<ExactScalar> z_;
};

using ExactPolynomial = Polynomial<ExactScalar>;
using FloatPolynomial = Polynomial<FloatScalar>;

/// Rational function on the sphere with coefficients in an Algebra, kept as
///   scale * prod local_i^{m_i} * perturbation_num / perturbation_den
/// where each local_i is monic with reduction (x - root_i)^{deg local_i} and
/// both perturbation polynomials reduce to 1.
class RationalFunction {
public:
  struct Factor {
    ExactScalar root;
    int multiplicity;
    ExactPolynomial local;
  };

  static RationalFunction constant(const ExactElement& c);
  /// The coordinate function x.
  static RationalFunction variable(AlgebraPtr algebra);
  /// scale * prod (x - root)^m.
  static RationalFunction from_roots(const ExactElement& scale, const std::vector<std::pair<ExactScalar, int>>& roots);
  /// Splits p into local factors, trying the candidate roots first. Throws
  /// NotInvertible when p reduces to 0 and DomainError when its reduction has
  /// a root that is not a Gaussian rational.
  static RationalFunction from_polynomial(const ExactPolynomial& p, const std::vector<ExactScalar>& candidates = {});

  const AlgebraPtr& algebra() const { return algebra_; }
  const ExactElement& scale() const { return scale_; }
  const std::vector<Factor>& factors() const { return factors_; }
  const ExactPolynomial& perturbation_num() const { return pert_num_; }
  const ExactPolynomial& perturbation_den() const { return pert_den_; }

  /// Sum of multiplicity times degree over the factors (degree of the reduction).
  int degree() const;
  /// Whether the expansion at infinity can carry nilpotent structure beyond
  /// the pole or zero of the reduction there.
  bool nontrivial_at_infinity() const;

  /// Throws DomainError at a zero or pole of the reduction.
  ExactElement eval(const ExactScalar& z) const;
  FloatElement eval(std::complex<double> z) const;
  /// f'(z) / f(z).
  ExactElement dlog_eval(const ExactScalar& z) const;
  FloatElement dlog_eval(std::complex<double> z) const;

  /// Laurent expansion in x - s, or in u = 1/x at infinity, with the given
  /// truncation order.
  ExactSeries expand_at(const SpherePoint& s, int trunc_order) const;

  RationalFunction pow(int n) const;
  RationalFunction inverse() const { return pow(-1); }

  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) { return a * b.inverse(); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a);

  /// Numerator and denominator polynomials with the scale in the numerator.
  std::pair<ExactPolynomial, ExactPolynomial> as_fraction() const;

  std::string str() const;

private:
  explicit RationalFunction(AlgebraPtr algebra);
  void normalize();

  AlgebraPtr algebra_;
  ExactElement scale_;
  std::vector<Factor> factors_;
  ExactPolynomial pert_num_;
  ExactPolynomial pert_den_;

  struct FloatFactor {
    std::complex<double> root;
    int multiplicity;
    FloatPolynomial local;
    FloatPolynomial local_derivative;
  };
  FloatElement float_scale_;
  std::vector<FloatFactor> float_factors_;
  FloatPolynomial float_num_, float_num_derivative_;
  FloatPolynomial float_den_, float_den_derivative_;
};

/// Sorted union of the finite roots of both functions, with infinity last
/// when either has nonzero degree or nilpotent structure there.
std::vector<SpherePoint> support(const RationalFunction& f, const RationalFunction& g);

/// Exact roots of a nonzero Gaussian-rational polynomial (ascending
/// coefficients) with multiplicities. Candidates are tried first; the rest
/// are located numerically and kept only after exact verification. Throws
/// DomainError if some root is not recovered.
std::vector<std::pair<ExactScalar, int>> exact_roots(std::vector<ExactScalar> coeffs,
                                                     const std::vector<ExactScalar>& candidates = {});

} // namespace ccsym
