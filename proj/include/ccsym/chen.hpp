#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ccsym/algebra.hpp"
#include "ccsym/ratfunc.hpp"

namespace ccsym {

using Complex = std::complex<double>;

struct LineSegment {
  Complex from;
  Complex to;
};

/// center + radius * exp(i (start + sweep t)), angles in radians.
struct ArcSegment {
  Complex center;
  double radius;
  double start;
  double sweep;
};

using PathSegment = std::variant<LineSegment, ArcSegment>;

Complex point_at(const PathSegment& s, double t);
Complex velocity_at(const PathSegment& s, double t);
/// Euclidean distance from z to the image of the segment.
double distance_to(const PathSegment& s, Complex z);

/// Piecewise-smooth path; every segment is parametrized over [0, 1].
class Path {
public:
  /// The constant path at z.
  static Path point(Complex z);
  static Path segment(Complex from, Complex to);
  /// Arc starting at angle start_turns (in full turns) sweeping sweep_turns;
  /// a negative sweep runs clockwise.
  static Path arc(Complex center, double radius, double start_turns, double sweep_turns);
  /// Full counterclockwise loop based at center + radius * exp(2 pi i base_turns).
  static Path circle(Complex center, double radius, double base_turns = 0);
  /// Throws GeometryError unless consecutive paths chain to 1e-12.
  static Path concat(const std::vector<Path>& parts);
  static Path commutator(const Path& alpha, const Path& beta);

  Path reversed() const;

  Complex start() const { return start_; }
  Complex end() const;
  bool is_closed(double tol = 1e-12) const { return std::abs(end() - start_) <= tol; }
  const std::vector<PathSegment>& segments() const { return segments_; }
  double distance_to(Complex z) const;
  std::string str() const;

  friend Path operator*(const Path& a, const Path& b) { return concat({a, b}); }

private:
  Complex start_;
  std::vector<PathSegment> segments_;
};

/// Meromorphic 1-form w(z) dz with A-valued coefficient and declared poles.
class Form {
public:
  Form(AlgebraPtr algebra, std::function<FloatElement(Complex)> coefficient, std::vector<Complex> poles,
       std::string name);

  static Form dz(AlgebraPtr algebra);
  /// dz / (z - c).
  static Form simple_pole(AlgebraPtr algebra, Complex c);
  /// df / f.
  static Form dlog(const RationalFunction& f);
  /// d(1 - a z^n) / (1 - a z^n) for integer n != 0.
  static Form dlog_binomial(const FloatElement& a, int n);

  const AlgebraPtr& algebra() const { return algebra_; }
  FloatElement operator()(Complex z) const { return coefficient_(z); }
  const std::vector<Complex>& poles() const { return poles_; }
  const std::string& name() const { return name_; }

private:
  AlgebraPtr algebra_;
  std::function<FloatElement(Complex)> coefficient_;
  std::vector<Complex> poles_;
  std::string name_;
};

struct QuadratureConfig {
  int steps_per_segment = 1024;
  double tolerance = 1e-8;
  /// Paths closer than this to a declared pole are rejected.
  double exclusion_radius = 1e-6;

  /// Throws DomainError on nonpositive values.
  void validate() const;
};

using Word = std::vector<int>;

/// Truncated series in noncommuting letters A_0..A_{n-1} with coefficients
/// in a floating Algebra, keeping words of length <= max_length.
class WordSeries {
public:
  /// The series 1.
  WordSeries(AlgebraPtr algebra, int alphabet_size, int max_length);

  /// exp(sum x_i A_i).
  static WordSeries exp_linear(AlgebraPtr algebra, const std::vector<FloatElement>& x, int max_length);

  const AlgebraPtr& algebra() const { return algebra_; }
  int alphabet_size() const { return n_; }
  int max_length() const { return max_len_; }

  const FloatElement& coeff(const Word& w) const { return c_[index(w)]; }
  void set_coeff(const Word& w, FloatElement v) { c_[index(w)] = std::move(v); }
  /// Every word of length <= max_length, shortest first.
  std::vector<Word> words() const;

  WordSeries times(const WordSeries& o) const;
  friend WordSeries operator*(const WordSeries& a, const WordSeries& b) { return a.times(b); }

  /// Largest coefficient difference over all words.
  double max_abs_diff(const WordSeries& o) const;
  /// Largest violation of the shuffle relation over word pairs that fit.
  double shuffle_defect() const;

private:
  std::size_t index(const Word& w) const;
  std::size_t level_offset(int len) const { return offsets_[static_cast<std::size_t>(len)]; }

  AlgebraPtr algebra_;
  int n_;
  int max_len_;
  std::vector<std::size_t> offsets_;
  std::vector<std::size_t> powers_;
  std::vector<FloatElement> c_;
};

/// Throws GeometryError when the path comes within the exclusion radius of a
/// pole of any form.
void require_clear_of_poles(const std::vector<Form>& forms, const Path& path, const QuadratureConfig& cfg);

/// Composite three-point Gauss-Legendre quadrature of the pullback.
FloatElement line_integral(const Form& form, const Path& path, const QuadratureConfig& cfg);

/// Solution of dF = F sum_i A_i forms[i] along the path with F(start) = 1.
WordSeries transport(const std::vector<Form>& forms, const Path& path, int max_length, const QuadratureConfig& cfg);

/// Integral of forms[0] o forms[1] o ... along the path (first form innermost).
FloatElement iterated_integral(const std::vector<Form>& forms, const Path& path, const QuadratureConfig& cfg);

} // namespace ccsym
