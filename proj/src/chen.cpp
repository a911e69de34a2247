#include "ccsym/chen.hpp"

#include <fmt/format.h>

#include <cmath>
#include <numbers>

#include "ccsym/errors.hpp"

namespace ccsym {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string fmt_complex(Complex z) { return fmt::format("{}{:+}i", z.real(), z.imag()); }

} // namespace

Complex point_at(const PathSegment& s, double t) {
  return std::visit(overloaded{[t](const LineSegment& l) { return l.from + (l.to - l.from) * t; },
                               [t](const ArcSegment& a) {
                                 return a.center + std::polar(a.radius, a.start + a.sweep * t);
                               }},
                    s);
}

Complex velocity_at(const PathSegment& s, double t) {
  return std::visit(overloaded{[](const LineSegment& l) { return l.to - l.from; },
                               [t](const ArcSegment& a) {
                                 return Complex(0, a.sweep) * std::polar(a.radius, a.start + a.sweep * t);
                               }},
                    s);
}

double distance_to(const PathSegment& s, Complex z) {
  return std::visit(
      overloaded{[z](const LineSegment& l) {
                   const Complex d = l.to - l.from;
                   const double len2 = std::norm(d);
                   double t = len2 == 0 ? 0 : ((z - l.from) * std::conj(d)).real() / len2;
                   t = std::clamp(t, 0.0, 1.0);
                   return std::abs(z - (l.from + d * t));
                 },
                 [z](const ArcSegment& a) {
                   const Complex rel = z - a.center;
                   const double to_circle = std::abs(std::abs(rel) - a.radius);
                   if (std::abs(a.sweep) >= kTwoPi || std::abs(rel) == 0)
                     return to_circle;
                   double theta = std::arg(rel) - a.start;
                   if (a.sweep < 0)
                     theta = -theta;
                   theta = std::fmod(theta, kTwoPi);
                   if (theta < 0)
                     theta += kTwoPi;
                   if (theta <= std::abs(a.sweep))
                     return to_circle;
                   return std::min(std::abs(z - point_at(a, 0)), std::abs(z - point_at(a, 1)));
                 }},
      s);
}

Path Path::point(Complex z) {
  Path p;
  p.start_ = z;
  return p;
}

Path Path::segment(Complex from, Complex to) {
  Path p = point(from);
  p.segments_.push_back(LineSegment{from, to});
  return p;
}

Path Path::arc(Complex center, double radius, double start_turns, double sweep_turns) {
  if (!(radius > 0))
    throw GeometryError("arc radius must be positive");
  const ArcSegment a{center, radius, kTwoPi * start_turns, kTwoPi * sweep_turns};
  Path p = point(point_at(a, 0));
  p.segments_.push_back(a);
  return p;
}

Path Path::circle(Complex center, double radius, double base_turns) { return arc(center, radius, base_turns, 1.0); }

Path Path::concat(const std::vector<Path>& parts) {
  if (parts.empty())
    throw GeometryError("cannot concatenate an empty list of paths");
  Path r = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    const Complex gap = parts[i].start_ - r.end();
    if (std::abs(gap) > 1e-12 * std::max(1.0, std::abs(r.end())))
      throw GeometryError(fmt::format("paths do not chain: {} then {}", fmt_complex(r.end()),
                                      fmt_complex(parts[i].start_)));
    r.segments_.insert(r.segments_.end(), parts[i].segments_.begin(), parts[i].segments_.end());
  }
  return r;
}

Path Path::commutator(const Path& alpha, const Path& beta) {
  return concat({alpha, beta, alpha.reversed(), beta.reversed()});
}

Path Path::reversed() const {
  Path r = point(end());
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it)
    r.segments_.push_back(std::visit(overloaded{[](const LineSegment& l) -> PathSegment {
                                                  return LineSegment{l.to, l.from};
                                                },
                                                [](const ArcSegment& a) -> PathSegment {
                                                  return ArcSegment{a.center, a.radius, a.start + a.sweep, -a.sweep};
                                                }},
                                     *it));
  return r;
}

Complex Path::end() const { return segments_.empty() ? start_ : point_at(segments_.back(), 1.0); }

double Path::distance_to(Complex z) const {
  double d = std::abs(z - start_);
  for (const auto& s : segments_)
    d = std::min(d, ccsym::distance_to(s, z));
  return d;
}

std::string Path::str() const {
  if (segments_.empty())
    return "point(" + fmt_complex(start_) + ")";
  std::string out;
  for (const auto& s : segments_) {
    if (!out.empty())
      out += " * ";
    out += std::visit(overloaded{[](const LineSegment& l) {
                                   return fmt::format("seg({}, {})", fmt_complex(l.from), fmt_complex(l.to));
                                 },
                                 [](const ArcSegment& a) {
                                   return fmt::format("arc({}, {}, {} turns from {} turns)", fmt_complex(a.center),
                                                      a.radius, a.sweep / kTwoPi, a.start / kTwoPi);
                                 }},
                      s);
  }
  return out;
}

Form::Form(AlgebraPtr algebra, std::function<FloatElement(Complex)> coefficient, std::vector<Complex> poles,
           std::string name)
    : algebra_(std::move(algebra)), coefficient_(std::move(coefficient)), poles_(std::move(poles)),
      name_(std::move(name)) {}

Form Form::dz(AlgebraPtr algebra) {
  return Form(algebra, [algebra](Complex) { return FloatElement(algebra, 1.0); }, {}, "dz");
}

Form Form::simple_pole(AlgebraPtr algebra, Complex c) {
  return Form(
      algebra, [algebra, c](Complex z) { return FloatElement(algebra, 1.0 / (z - c)); }, {c},
      "dz/(z-(" + fmt_complex(c) + "))");
}

Form Form::dlog(const RationalFunction& f) {
  std::vector<Complex> poles;
  for (const auto& fac : f.factors())
    poles.push_back(fac.root.to_complex());
  return Form(
      f.algebra(), [f](Complex z) { return f.dlog_eval(z); }, std::move(poles), "dlog(" + f.str() + ")");
}

Form Form::dlog_binomial(const FloatElement& a, int n) {
  if (n == 0)
    throw DomainError("binomial form needs a nonzero exponent");
  const AlgebraPtr alg = a.algebra();
  std::vector<Complex> poles;
  if (n < 0)
    poles.push_back(0);
  const Complex a0 = a.reduce();
  if (a0 != 0.0) {
    // Roots of 1 - a0 z^n.
    const Complex target = n > 0 ? 1.0 / a0 : a0;
    const int m = std::abs(n);
    for (int k = 0; k < m; ++k)
      poles.push_back(std::polar(std::pow(std::abs(target), 1.0 / m), (std::arg(target) + kTwoPi * k) / m));
  }
  return Form(
      alg,
      [alg, a, n](Complex z) {
        const Complex zn = std::pow(z, n);
        const FloatElement w = FloatElement(alg, 1.0) - a * zn;
        return a * (-static_cast<double>(n) * zn / z) * invert(w);
      },
      std::move(poles), fmt::format("dlog(1-({})*z^{})", a.str(), n));
}

void QuadratureConfig::validate() const {
  if (steps_per_segment < 1)
    throw DomainError("steps per segment must be at least 1");
  if (!(tolerance > 0))
    throw DomainError("tolerance must be positive");
  if (!(exclusion_radius > 0))
    throw DomainError("exclusion radius must be positive");
}

WordSeries::WordSeries(AlgebraPtr algebra, int alphabet_size, int max_length)
    : algebra_(std::move(algebra)), n_(alphabet_size), max_len_(max_length) {
  if (n_ < 1 || max_len_ < 0)
    throw DomainError("word series needs a nonempty alphabet and a nonnegative length");
  std::size_t p = 1, off = 0;
  for (int len = 0; len <= max_len_ + 1; ++len) {
    powers_.push_back(p);
    offsets_.push_back(off);
    off += p;
    p *= static_cast<std::size_t>(n_);
  }
  c_.assign(offsets_[static_cast<std::size_t>(max_len_ + 1)], FloatElement(algebra_));
  c_[0] = FloatElement(algebra_, 1.0);
}

WordSeries WordSeries::exp_linear(AlgebraPtr algebra, const std::vector<FloatElement>& x, int max_length) {
  WordSeries r(algebra, static_cast<int>(x.size()), max_length);
  const std::size_t n = x.size();
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t prev = r.level_offset(len - 1), cur = r.level_offset(len);
    const double inv = 1.0 / len;
    for (std::size_t w = 0; w < r.powers_[static_cast<std::size_t>(len - 1)]; ++w) {
      const FloatElement scaled = r.c_[prev + w] * FloatScalar(inv);
      for (std::size_t i = 0; i < n; ++i)
        r.c_[cur + w * n + i] = scaled * x[i];
    }
  }
  return r;
}

std::size_t WordSeries::index(const Word& w) const {
  if (static_cast<int>(w.size()) > max_len_)
    throw DomainError("word longer than the series truncation");
  std::size_t idx = 0;
  for (int letter : w) {
    if (letter < 0 || letter >= n_)
      throw DomainError("letter outside the alphabet");
    idx = idx * static_cast<std::size_t>(n_) + static_cast<std::size_t>(letter);
  }
  return level_offset(static_cast<int>(w.size())) + idx;
}

std::vector<Word> WordSeries::words() const {
  std::vector<Word> out{Word{}};
  std::size_t begin = 0;
  for (int len = 1; len <= max_len_; ++len) {
    const std::size_t end = out.size();
    for (std::size_t k = begin; k < end; ++k)
      for (int i = 0; i < n_; ++i) {
        Word w = out[k];
        w.push_back(i);
        out.push_back(std::move(w));
      }
    begin = end;
  }
  return out;
}

WordSeries WordSeries::times(const WordSeries& o) const {
  require_same_algebra(algebra_, o.algebra_);
  if (n_ != o.n_ || max_len_ != o.max_len_)
    throw DomainError("word series shapes differ");
  WordSeries r(algebra_, n_, max_len_);
  r.c_[0] = FloatElement(algebra_);
  for (int a = 0; a <= max_len_; ++a)
    for (std::size_t iu = 0; iu < powers_[static_cast<std::size_t>(a)]; ++iu) {
      const FloatElement& u = c_[level_offset(a) + iu];
      if (u.is_zero())
        continue;
      for (int b = 0; a + b <= max_len_; ++b) {
        const std::size_t nb = powers_[static_cast<std::size_t>(b)];
        const std::size_t base = level_offset(a + b) + iu * nb;
        const std::size_t ob = o.level_offset(b);
        for (std::size_t iv = 0; iv < nb; ++iv)
          r.c_[base + iv].add_product(u, o.c_[ob + iv]);
      }
    }
  return r;
}

double WordSeries::max_abs_diff(const WordSeries& o) const {
  if (n_ != o.n_ || max_len_ != o.max_len_)
    throw DomainError("word series shapes differ");
  double d = 0;
  for (std::size_t k = 0; k < c_.size(); ++k)
    d = std::max(d, ccsym::max_abs_diff(c_[k], o.c_[k]));
  return d;
}

namespace {

void shuffles(const Word& u, std::size_t i, const Word& v, std::size_t j, Word& acc, std::vector<Word>& out) {
  if (i == u.size() && j == v.size()) {
    out.push_back(acc);
    return;
  }
  if (i < u.size()) {
    acc.push_back(u[i]);
    shuffles(u, i + 1, v, j, acc, out);
    acc.pop_back();
  }
  if (j < v.size()) {
    acc.push_back(v[j]);
    shuffles(u, i, v, j + 1, acc, out);
    acc.pop_back();
  }
}

} // namespace

double WordSeries::shuffle_defect() const {
  double worst = 0;
  const auto all = words();
  for (const auto& u : all)
    for (const auto& v : all) {
      if (u.empty() || v.empty() || static_cast<int>(u.size() + v.size()) > max_len_)
        continue;
      std::vector<Word> sh;
      Word acc;
      shuffles(u, 0, v, 0, acc, sh);
      FloatElement sum(algebra_);
      for (const auto& w : sh)
        sum += coeff(w);
      worst = std::max(worst, ccsym::max_abs_diff(sum, coeff(u) * coeff(v)));
    }
  return worst;
}

void require_clear_of_poles(const std::vector<Form>& forms, const Path& path, const QuadratureConfig& cfg) {
  for (const auto& form : forms)
    for (const Complex& p : form.poles()) {
      const double d = path.distance_to(p);
      if (d <= cfg.exclusion_radius)
        throw GeometryError(fmt::format("path passes within {:.3g} of the pole {} of {}", d, fmt_complex(p),
                                        form.name()));
    }
}

FloatElement line_integral(const Form& form, const Path& path, const QuadratureConfig& cfg) {
  cfg.validate();
  require_clear_of_poles({form}, path, cfg);
  static const double node = std::sqrt(0.6) / 2;
  static const double nodes[3] = {0.5 - node, 0.5, 0.5 + node};
  static const double weights[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};
  FloatElement acc(form.algebra());
  const double h = 1.0 / cfg.steps_per_segment;
  for (const auto& seg : path.segments())
    for (int k = 0; k < cfg.steps_per_segment; ++k)
      for (int q = 0; q < 3; ++q) {
        const double t = (k + nodes[q]) * h;
        acc += form(point_at(seg, t)) * (velocity_at(seg, t) * (weights[q] * h));
      }
  return acc;
}

WordSeries transport(const std::vector<Form>& forms, const Path& path, int max_length, const QuadratureConfig& cfg) {
  cfg.validate();
  if (max_length < 1)
    throw DomainError("transport needs words of length at least 1");
  if (forms.empty())
    throw DomainError("transport needs at least one form");
  const AlgebraPtr& alg = forms.front().algebra();
  for (const auto& f : forms)
    require_same_algebra(alg, f.algebra());
  require_clear_of_poles(forms, path, cfg);

  // Commutator-free fourth-order Magnus step at the two Gauss nodes.
  static const double shift = std::sqrt(3.0) / 6;
  static const double c1 = 0.5 - shift, c2 = 0.5 + shift;
  static const double w1 = 0.25 + shift, w2 = 0.25 - shift;

  const std::size_t n = forms.size();
  WordSeries F(alg, static_cast<int>(n), max_length);
  const double h = 1.0 / cfg.steps_per_segment;
  std::vector<FloatElement> m1(n, FloatElement(alg)), m2(n, FloatElement(alg)), e(n, FloatElement(alg));
  for (const auto& seg : path.segments())
    for (int k = 0; k < cfg.steps_per_segment; ++k) {
      const double t1 = (k + c1) * h, t2 = (k + c2) * h;
      const Complex z1 = point_at(seg, t1), z2 = point_at(seg, t2);
      const Complex v1 = velocity_at(seg, t1) * h, v2 = velocity_at(seg, t2) * h;
      for (std::size_t i = 0; i < n; ++i) {
        m1[i] = forms[i](z1) * v1;
        m2[i] = forms[i](z2) * v2;
      }
      for (std::size_t i = 0; i < n; ++i)
        e[i] = m1[i] * FloatScalar(w1) + m2[i] * FloatScalar(w2);
      F = F * WordSeries::exp_linear(alg, e, max_length);
      for (std::size_t i = 0; i < n; ++i)
        e[i] = m1[i] * FloatScalar(w2) + m2[i] * FloatScalar(w1);
      F = F * WordSeries::exp_linear(alg, e, max_length);
    }
  return F;
}

FloatElement iterated_integral(const std::vector<Form>& forms, const Path& path, const QuadratureConfig& cfg) {
  if (forms.empty())
    throw DomainError("iterated integral needs at least one form");
  Word w;
  for (std::size_t i = 0; i < forms.size(); ++i)
    w.push_back(static_cast<int>(i));
  return transport(forms, path, static_cast<int>(forms.size()), cfg).coeff(w);
}

} // namespace ccsym
