#include "ccsym/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <fmt/format.h>

#include "ccsym/errors.hpp"

namespace ccsym {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2 * std::numbers::pi;
const Complex kTwoPiI{0, kTwoPi};

FloatElement constant(const AlgebraPtr& alg, Complex c) { return FloatElement(alg, c); }

std::string fmt_complex(Complex z) { return ScalarTraits<FloatScalar>::format(z); }

std::string fmt_double(double v) { return fmt::format("{}", v); }

std::string cfg_str(const QuadratureConfig& cfg) {
  return fmt::format("steps={}, tol={}", cfg.steps_per_segment, cfg.tolerance);
}

// Valuation of the reduction of f at a finite point.
int order_at(const RationalFunction& f, const ExactScalar& z) {
  int nu = 0;
  for (const auto& fac : f.factors())
    if (fac.root == z)
      nu += fac.multiplicity * fac.local.degree();
  return nu;
}

Complex unit_direction(Complex d) {
  const double m = std::abs(d);
  return m == 0 ? Complex(1, 0) : d / m;
}

double turns_of(Complex d) { return std::arg(d) / kTwoPi; }

} // namespace

CheckReport winding_power_check(int r, double radius, const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  if (r < 1)
    throw DomainError("winding power needs r >= 1");
  if (!(radius > 0))
    throw DomainError("radius must be positive");
  rep.check_id = "winding-power";
  rep.inputs = {{"r", std::to_string(r)}, {"radius", fmt_double(radius)}, {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;

  const AlgebraPtr alg = Algebra::trivial();
  const std::vector<Form> forms(static_cast<std::size_t>(r), Form::simple_pole(alg, 0));
  const FloatElement lhs = iterated_integral(forms, Path::circle(0, radius), cfg);
  Complex expected = 1;
  for (int k = 1; k <= r; ++k)
    expected *= kTwoPiI / static_cast<double>(k);
  const FloatElement rhs = constant(alg, expected);
  rep.set_sides(lhs, rhs);
  // Relative, since (2 pi i)^r / r! grows with r.
  rep.deviation /= std::abs(expected);
  rep.pass = rep.deviation <= rep.tolerance;
  return rep;
}

CheckReport residue_winding_check(const RationalFunction& f, const ExactScalar& center, double radius,
                                  const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  if (!(radius > 0))
    throw DomainError("radius must be positive");
  const Complex c = center.to_complex();
  for (const auto& fac : f.factors())
    if (!(fac.root == center) && std::abs(fac.root.to_complex() - c) <= radius)
      throw GeometryError(fmt::format("circle of radius {} about {} also encloses {}", radius, center.str(),
                                      fac.root.str()));
  rep.check_id = "residue-winding";
  rep.inputs = {{"f", f.str()}, {"center", center.str()}, {"radius", fmt_double(radius)},
                {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;
  const FloatElement lhs = line_integral(Form::dlog(f), Path::circle(c, radius), cfg);
  rep.set_sides(lhs, constant(f.algebra(), kTwoPiI * static_cast<double>(order_at(f, center))));
  return rep;
}

CheckReport log_binomial_check(int n, const FloatElement& a, double radius, const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  if (n == 0)
    throw DomainError("exponent must be nonzero");
  if (!(radius > 0))
    throw DomainError("radius must be positive");
  const double rn = std::pow(radius, n);
  if (!(std::abs(a.reduce()) * rn < 1))
    throw DomainError(fmt::format("|a| radius^n = {} must be below 1", std::abs(a.reduce()) * rn));
  rep.check_id = "log-binomial";
  rep.inputs = {{"n", std::to_string(n)}, {"a", a.str()}, {"radius", fmt_double(radius)},
                {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;

  const AlgebraPtr& alg = a.algebra();
  const std::vector<Form> forms{Form::simple_pole(alg, 0), Form::dlog_binomial(a, n)};
  const FloatElement lhs = iterated_integral(forms, Path::circle(0, radius), cfg);
  const FloatElement rhs = log_unit(constant(alg, 1) - a * Complex(rn)) * kTwoPiI;
  rep.set_sides(lhs, rhs);
  return rep;
}

CheckReport binomial_pair_check(int j, int k, const FloatElement& a, const FloatElement& b, double radius,
                                const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  if (j == 0 || k == 0)
    throw DomainError("exponents must be nonzero");
  if (!(radius > 0))
    throw DomainError("radius must be positive");
  require_same_algebra(a.algebra(), b.algebra());
  if (!(std::abs(a.reduce()) * std::pow(radius, j) < 1) || !(std::abs(b.reduce()) * std::pow(radius, k) < 1))
    throw DomainError("the binomials must satisfy |a| radius^j < 1 and |b| radius^k < 1");
  rep.check_id = "binomial-pair";
  rep.inputs = {{"j", std::to_string(j)}, {"k", std::to_string(k)}, {"a", a.str()}, {"b", b.str()},
                {"radius", fmt_double(radius)}, {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;

  const AlgebraPtr& alg = a.algebra();
  const std::vector<Form> forms{Form::dlog_binomial(a, j), Form::dlog_binomial(b, k)};
  const FloatElement lhs = iterated_integral(forms, Path::circle(0, radius), cfg);
  FloatElement rhs(alg);
  if (static_cast<long>(j) * k < 0) {
    const int d = std::gcd(j, k);
    const FloatElement t = pow(a, std::abs(k) / d) * pow(b, std::abs(j) / d);
    rhs = log_unit(constant(alg, 1) - t) * (kTwoPiI * static_cast<double>(j > 0 ? d : -d));
  }
  rep.set_sides(lhs, rhs);
  return rep;
}

namespace {

// Point at local distance radius from s in the direction of base.
Complex near_point(const SpherePoint& s, Complex base, double radius) {
  if (s.is_infinity()) {
    const double big = 1 / radius;
    if (std::abs(base) >= big)
      throw GeometryError(fmt::format("base point lies outside |x| = {}", big));
    return big * unit_direction(base);
  }
  const Complex c = s.value().to_complex();
  const Complex d = base - c;
  if (std::abs(d) <= radius)
    throw GeometryError(fmt::format("base point lies within {} of {}", radius, s.str()));
  return c + radius * unit_direction(d);
}

} // namespace

CheckReport endpoint_log_check(const RationalFunction& f, const SpherePoint& center, const ExactScalar& base,
                               double radius, const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  if (!(radius > 0))
    throw DomainError("radius must be positive");
  const Complex p = base.to_complex();
  const Complex e = near_point(center, p, radius);
  rep.check_id = "endpoint-log";
  rep.inputs = {{"f", f.str()}, {"s", center.str()}, {"base", base.str()}, {"radius", fmt_double(radius)},
                {"endpoint", fmt_complex(e)}, {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;
  const FloatElement integral = line_integral(Form::dlog(f), Path::segment(p, e), cfg);
  rep.set_sides(exp(integral), f.eval(e) * invert(f.eval(p)));
  return rep;
}

Path local_loop(const SpherePoint& s, Complex base, double radius) {
  const Complex e = near_point(s, base, radius);
  if (s.is_infinity())
    return Path::concat({Path::segment(base, e), Path::arc(0, 1 / radius, turns_of(e), -1), Path::segment(e, base)});
  const Complex c = s.value().to_complex();
  return Path::concat({Path::segment(base, e), Path::circle(c, radius, turns_of(e - c)), Path::segment(e, base)});
}

double default_loop_radius(const RationalFunction& f, const RationalFunction& g, const SpherePoint& s,
                           const ExactScalar& base) {
  const Complex p = base.to_complex();
  if (s.is_infinity()) {
    double far = std::abs(p);
    for (const auto& t : support(f, g))
      if (!t.is_infinity())
        far = std::max(far, std::abs(t.value().to_complex()));
    return far == 0 ? 1 : 1 / (3 * far);
  }
  const Complex c = s.value().to_complex();
  double near = std::abs(p - c);
  for (const auto& t : support(f, g))
    if (!t.is_infinity() && !(t == s))
      near = std::min(near, std::abs(t.value().to_complex() - c));
  if (near == 0)
    throw GeometryError("base point lies on the support");
  return near / 3;
}

CheckReport main_theorem_check(const RationalFunction& f, const RationalFunction& g, const SpherePoint& s,
                               const ExactScalar& base, double radius, const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  require_same_algebra(f.algebra(), g.algebra());
  if (!(radius > 0))
    throw DomainError("radius must be positive");
  const Complex p = base.to_complex();

  for (const auto& t : support(f, g)) {
    if (t == s || t.is_infinity())
      continue;
    const Complex z = t.value().to_complex();
    const bool inside = s.is_infinity() ? std::abs(z) >= 1 / radius : std::abs(z - s.value().to_complex()) <= radius;
    if (inside)
      throw GeometryError(fmt::format("the loop around {} also encloses {}", s.str(), t.str()));
  }
  rep.check_id = "main-theorem";
  rep.inputs = {{"f", f.str()}, {"g", g.str()}, {"s", s.str()}, {"base", base.str()},
                {"radius", fmt_double(radius)}, {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;

  const Path loop = local_loop(s, p, radius);
  const FloatElement integral = iterated_integral({Form::dlog(f), Form::dlog(g)}, loop, cfg);
  const FloatElement lhs = exp(integral * (1.0 / kTwoPiI));

  int trunc = 8;
  for (;;) {
    try {
      const ExactSeries fs = f.expand_at(s, trunc);
      const ExactSeries gs = g.expand_at(s, trunc);
      const ExactElement symbol = cc_symbol(factorize(fs), factorize(gs)).value();
      const int nf = valuation(fs);
      const int ng = valuation(gs);
      const ExactElement rhs = symbol * pow(g.eval(base), nf) * pow(f.eval(base), -ng);
      rep.inputs.emplace_back("local symbol", symbol.str());
      rep.inputs.emplace_back("trunc", std::to_string(trunc));
      rep.set_sides(lhs, widen(rhs));
      return rep;
    } catch (const TruncationError&) {
      if (trunc >= 1024)
        throw;
      trunc *= 2;
    }
  }
}

CheckReport weil_reciprocity_check(const RationalFunction& f, const RationalFunction& g, int trunc_order) {
  CheckReport rep;
  ReportTimer timer(rep);
  require_same_algebra(f.algebra(), g.algebra());
  if (trunc_order < 1)
    throw DomainError("truncation order must be positive");
  rep.check_id = "weil-reciprocity";
  rep.inputs = {{"f", f.str()}, {"g", g.str()}, {"trunc", std::to_string(trunc_order)}};
  rep.tolerance = 0;

  ExactElement product(f.algebra(), 1);
  for (const auto& s : support(f, g)) {
    const ExactElement local =
        cc_symbol_series(f.expand_at(s, trunc_order), g.expand_at(s, trunc_order)).value();
    rep.inputs.emplace_back("symbol at " + s.str(), local.str());
    product *= local;
  }
  const ExactElement one(f.algebra(), 1);
  const bool exact = product == one;
  double dev = max_abs_diff(widen(product), widen(one));
  if (!exact && dev == 0)
    dev = std::numeric_limits<double>::min();
  rep.set_sides(product.str(), one.str(), exact ? 0.0 : dev);
  rep.lhs_value = widen(product);
  rep.rhs_value = widen(one);
  return rep;
}

namespace {

struct Piece {
  Complex a, b;
};

bool segments_cross(const Piece& p, const Piece& q) {
  auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const Complex r = p.b - p.a, s = q.b - q.a;
  const double den = cross(r, s);
  if (std::abs(den) < 1e-300)
    return false;
  const double t = cross(q.a - p.a, s) / den;
  const double u = cross(q.a - p.a, r) / den;
  return t >= 0 && t <= 1 && u >= 0 && u <= 1;
}

double point_segment_distance(Complex z, const Piece& p) {
  const Complex d = p.b - p.a;
  const double len2 = std::norm(d);
  double t = len2 == 0 ? 0 : ((z - p.a) * std::conj(d)).real() / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(z - (p.a + t * d));
}

// Polyline approximation of a tether, with a tiny stub at the base removed so
// that tethers sharing the base point do not register as crossing there.
std::vector<Piece> polyline(const Path& tether, double stub) {
  std::vector<Piece> out;
  for (const auto& seg : tether.segments()) {
    const int n = std::holds_alternative<LineSegment>(seg) ? 1 : 96;
    for (int i = 0; i < n; ++i)
      out.push_back({point_at(seg, double(i) / n), point_at(seg, double(i + 1) / n)});
  }
  if (!out.empty()) {
    Piece& first = out.front();
    const double len = std::abs(first.b - first.a);
    if (len > stub)
      first.a += (first.b - first.a) * (stub / len);
  }
  return out;
}

double winding_number(const Path& loop, Complex z) {
  double total = 0;
  for (const auto& seg : loop.segments()) {
    const int n = 512;
    Complex prev = point_at(seg, 0) - z;
    for (int i = 1; i <= n; ++i) {
      const Complex cur = point_at(seg, double(i) / n) - z;
      total += std::arg(cur / prev);
      prev = cur;
    }
  }
  return total / kTwoPi;
}

double wrap_angle(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0 ? a + kTwoPi : a;
}

struct Layout {
  std::vector<Path> tethers;
  std::vector<Path> loops;
  std::vector<double> angles;
};

// Tether from p leaving at angle psi, running out to radius r about p, then
// along the circle about p back to angle theta.
Path bent_tether(Complex p, double psi, double theta, double r) {
  const Complex out = p + std::polar(r, psi);
  double sweep = theta - psi;
  while (sweep > kPi)
    sweep -= kTwoPi;
  while (sweep < -kPi)
    sweep += kTwoPi;
  if (std::abs(sweep) < 1e-15)
    return Path::segment(p, out);
  return Path::segment(p, out) * Path::arc(p, r, psi / kTwoPi, sweep / kTwoPi);
}

bool tether_clear(const std::vector<Piece>& poly, const std::vector<Complex>& centers, std::size_t own, double rho,
                  const std::vector<std::vector<Piece>>& placed) {
  for (std::size_t m = 0; m < centers.size(); ++m) {
    if (m == own)
      continue;
    for (const auto& piece : poly)
      if (point_segment_distance(centers[m], piece) <= 1.25 * rho)
        return false;
  }
  for (const auto& other : placed)
    for (const auto& a : poly)
      for (const auto& b : other)
        if (segments_cross(a, b))
          return false;
  return true;
}

std::optional<Layout> try_layout(const std::vector<Complex>& finite, bool with_infinity, Complex p, double rho,
                                 double big) {
  const std::size_t n = finite.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return std::abs(finite[a] - p) < std::abs(finite[b] - p); });

  const double stub = 1e-9 * std::max(1.0, std::abs(p));
  std::vector<std::vector<Piece>> placed;
  std::vector<double> used;
  Layout out;
  std::vector<std::pair<double, std::size_t>> slots;

  auto angle_free = [&](double psi) {
    for (double u : used) {
      double d = std::abs(wrap_angle(psi) - wrap_angle(u));
      if (std::min(d, kTwoPi - d) < 1e-6)
        return false;
    }
    return true;
  };

  constexpr int kTries = 180;
  for (std::size_t idx : order) {
    const Complex s = finite[idx];
    const double dist = std::abs(s - p);
    const double theta = std::arg(s - p);
    const double r = dist - rho;
    const double step = std::asin(std::min(1.0, rho / dist));
    bool done = false;
    for (int t = 0; t <= kTries && !done; ++t) {
      for (int sign : {1, -1}) {
        if (t == 0 && sign < 0)
          continue;
        const double psi = theta + sign * t * step;
        if (std::abs(psi - theta) >= kPi || !angle_free(psi))
          continue;
        const Path tether = bent_tether(p, psi, theta, r);
        const auto poly = polyline(tether, stub);
        if (!tether_clear(poly, finite, idx, rho, placed))
          continue;
        const Complex e = tether.end();
        const Path loop = tether * Path::circle(s, rho, turns_of(e - s)) * tether.reversed();
        placed.push_back(poly);
        used.push_back(psi);
        out.tethers.push_back(tether);
        out.loops.push_back(loop);
        out.angles.push_back(wrap_angle(psi));
        done = true;
        break;
      }
    }
    if (!done)
      return std::nullopt;
  }

  if (with_infinity) {
    // Middle of the widest angular gap first, then nearby directions.
    std::vector<double> sorted = used;
    for (auto& a : sorted)
      a = wrap_angle(a);
    std::sort(sorted.begin(), sorted.end());
    double phi0 = 0;
    if (!sorted.empty()) {
      double best = -1;
      for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double a = sorted[i];
        const double b = i + 1 < sorted.size() ? sorted[i + 1] : sorted[0] + kTwoPi;
        if (b - a > best) {
          best = b - a;
          phi0 = (a + b) / 2;
        }
      }
    }
    bool done = false;
    for (int t = 0; t <= 2 * kTries && !done; ++t) {
      for (int sign : {1, -1}) {
        if (t == 0 && sign < 0)
          continue;
        const double phi = phi0 + sign * t * (kPi / (2 * kTries));
        if (!angle_free(phi))
          continue;
        // Exit point of the ray from p at angle phi on |x| = big.
        const Complex dir = std::polar(1.0, phi);
        const double pd = (p * std::conj(dir)).real();
        const double len = -pd + std::sqrt(pd * pd - std::norm(p) + big * big);
        const Path tether = Path::segment(p, p + len * dir);
        const auto poly = polyline(tether, stub);
        if (!tether_clear(poly, finite, finite.size(), rho, placed))
          continue;
        const Complex e = tether.end();
        const Path loop = tether * Path::arc(0, big, turns_of(e), -1) * tether.reversed();
        out.tethers.push_back(tether);
        out.loops.push_back(loop);
        out.angles.push_back(wrap_angle(phi));
        done = true;
        break;
      }
    }
    if (!done)
      return std::nullopt;
  }
  return out;
}

} // namespace

LoopSystem reciprocity_loops(const std::vector<SpherePoint>& support, const ExactScalar& base) {
  const Complex p = base.to_complex();
  std::vector<Complex> finite;
  std::vector<SpherePoint> finite_points;
  bool with_infinity = false;
  for (const auto& s : support) {
    if (s.is_infinity()) {
      with_infinity = true;
      continue;
    }
    if (s.value() == base)
      throw GeometryError("base point lies on the support");
    finite.push_back(s.value().to_complex());
    finite_points.push_back(s);
  }
  if (finite.empty() && !with_infinity)
    return {};

  double min_gap = std::numeric_limits<double>::infinity();
  double max_mod = std::abs(p);
  for (std::size_t i = 0; i < finite.size(); ++i) {
    min_gap = std::min(min_gap, std::abs(finite[i] - p));
    max_mod = std::max(max_mod, std::abs(finite[i]));
    for (std::size_t j = i + 1; j < finite.size(); ++j)
      min_gap = std::min(min_gap, std::abs(finite[i] - finite[j]));
  }
  const double big = 3 * max_mod;

  double rho = min_gap / 3;
  for (int attempt = 0; attempt < 8; ++attempt, rho /= 2) {
    auto layout = try_layout(finite, with_infinity, p, rho, big);
    if (!layout)
      continue;
    // Loops were built nearest point first, infinity last.
    std::vector<SpherePoint> pts;
    {
      std::vector<std::size_t> order(finite.size());
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(),
                [&](std::size_t a, std::size_t b) { return std::abs(finite[a] - p) < std::abs(finite[b] - p); });
      for (auto i : order)
        pts.push_back(finite_points[i]);
      if (with_infinity)
        pts.push_back(SpherePoint::infinity());
    }

    bool ok = true;
    for (std::size_t l = 0; l < layout->loops.size() && ok; ++l)
      for (std::size_t m = 0; m < finite.size() && ok; ++m) {
        const bool own = !pts[l].is_infinity() && pts[l].value().to_complex() == finite[m];
        const double w = winding_number(layout->loops[l], finite[m]);
        const double want = own ? 1 : (pts[l].is_infinity() ? -1 : 0);
        ok = std::abs(w - want) < 1e-6;
      }
    if (!ok)
      continue;

    // Counterclockwise by departure angle; the product is then trivial.
    std::vector<std::size_t> idx(pts.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return layout->angles[a] < layout->angles[b]; });
    LoopSystem sys;
    for (auto i : idx) {
      sys.points.push_back(pts[i]);
      sys.loops.push_back(layout->loops[i]);
      sys.angles.push_back(layout->angles[i]);
    }
    return sys;
  }
  throw GeometryError("no collision-free loop layout found around the support");
}

CheckReport bilinear_reciprocity_check(const RationalFunction& f, const RationalFunction& g, const ExactScalar& base,
                                       const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  require_same_algebra(f.algebra(), g.algebra());
  rep.check_id = "bilinear-reciprocity";
  rep.inputs = {{"f", f.str()}, {"g", g.str()}, {"base", base.str()}, {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;

  const LoopSystem sys = reciprocity_loops(support(f, g), base);
  std::string order;
  for (const auto& s : sys.points)
    order += (order.empty() ? "" : ", ") + s.str();
  rep.inputs.emplace_back("loop order", order);

  const std::vector<Form> forms{Form::dlog(f), Form::dlog(g)};
  WordSeries total(f.algebra(), 2, 2);
  for (const auto& loop : sys.loops)
    total = total * transport(forms, loop, 2, cfg);
  rep.set_sides(total.coeff({0, 1}), FloatElement(f.algebra()));
  return rep;
}

CheckReport commutator_quadratic_check(const Path& alpha, const Path& beta, const Form& w1, const Form& w2,
                                       const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  require_same_algebra(w1.algebra(), w2.algebra());
  const double tol = 1e-12 * std::max(1.0, std::abs(alpha.start()));
  if (!alpha.is_closed(tol) || !beta.is_closed(tol) || std::abs(alpha.start() - beta.start()) > tol)
    throw GeometryError("commutator paths must be loops with a common base point");
  rep.check_id = "commutator-quadratic";
  rep.inputs = {{"alpha", alpha.str()}, {"beta", beta.str()}, {"w1", w1.name()}, {"w2", w2.name()},
                {"quadrature", cfg_str(cfg)}};
  rep.tolerance = cfg.tolerance;

  const FloatElement lhs = iterated_integral({w1, w2}, Path::commutator(alpha, beta), cfg);
  const FloatElement rhs = line_integral(w1, alpha, cfg) * line_integral(w2, beta, cfg) -
                           line_integral(w1, beta, cfg) * line_integral(w2, alpha, cfg);
  rep.set_sides(lhs, rhs);
  return rep;
}

namespace {

const char* identity_name(ChenIdentity kind) {
  switch (kind) {
  case ChenIdentity::shuffle:
    return "shuffle";
  case ChenIdentity::reversal:
    return "reversal";
  case ChenIdentity::composition:
    return "composition";
  case ChenIdentity::homotopy:
    return "homotopy";
  }
  return "?";
}

} // namespace

CheckReport chen_identity_check(ChenIdentity kind, const Form& w1, const Form& w2, const std::vector<Path>& paths,
                                const QuadratureConfig& cfg) {
  CheckReport rep;
  ReportTimer timer(rep);
  cfg.validate();
  require_same_algebra(w1.algebra(), w2.algebra());
  const std::size_t needed = kind == ChenIdentity::shuffle || kind == ChenIdentity::reversal ? 1 : 2;
  if (paths.size() != needed)
    throw DomainError(fmt::format("{} check takes {} path(s), got {}", identity_name(kind), needed, paths.size()));
  rep.check_id = std::string("chen-") + identity_name(kind);
  rep.inputs = {{"w1", w1.name()}, {"w2", w2.name()}};
  for (std::size_t i = 0; i < paths.size(); ++i)
    rep.inputs.emplace_back(fmt::format("path{}", i + 1), paths[i].str());
  rep.inputs.emplace_back("quadrature", cfg_str(cfg));
  rep.tolerance = cfg.tolerance;

  const Path& g = paths[0];
  switch (kind) {
  case ChenIdentity::shuffle: {
    const FloatElement lhs = line_integral(w1, g, cfg) * line_integral(w2, g, cfg);
    const FloatElement rhs = iterated_integral({w1, w2}, g, cfg) + iterated_integral({w2, w1}, g, cfg);
    rep.set_sides(lhs, rhs);
    break;
  }
  case ChenIdentity::reversal:
    rep.set_sides(iterated_integral({w1, w2}, g, cfg), iterated_integral({w2, w1}, g.reversed(), cfg));
    break;
  case ChenIdentity::composition: {
    const Path& h = paths[1];
    const FloatElement lhs = iterated_integral({w1, w2}, g * h, cfg);
    const FloatElement rhs = iterated_integral({w1, w2}, g, cfg) + line_integral(w1, g, cfg) * line_integral(w2, h, cfg) +
                             iterated_integral({w1, w2}, h, cfg);
    rep.set_sides(lhs, rhs);
    break;
  }
  case ChenIdentity::homotopy: {
    const Path& h = paths[1];
    const double tol = 1e-12 * std::max({1.0, std::abs(g.start()), std::abs(g.end())});
    if (std::abs(g.start() - h.start()) > tol || std::abs(g.end() - h.end()) > tol)
      throw GeometryError("homotopic paths must share their endpoints");
    const WordSeries a = transport({w1, w2}, g, 2, cfg);
    const WordSeries b = transport({w1, w2}, h, 2, cfg);
    rep.set_sides(a.coeff({0, 1}), b.coeff({0, 1}));
    rep.deviation = std::max(rep.deviation, a.max_abs_diff(b));
    rep.pass = rep.deviation <= rep.tolerance;
    break;
  }
  }
  return rep;
}

std::vector<CheckReport> chen_identity_suite(const QuadratureConfig& cfg) {
  const AlgebraPtr alg = Algebra::make({"eps"}, 2);
  const ExactElement eps = ExactElement::generator(alg, "eps");
  const ExactElement one(alg, 1);
  const RationalFunction x = RationalFunction::variable(alg);
  // x + eps and 1 - x.
  const RationalFunction f = RationalFunction::from_polynomial(ExactPolynomial::linear(-eps));
  const RationalFunction g = RationalFunction::constant(one) - x;
  const Form w1 = Form::dlog(f);
  const Form w2 = Form::dlog(g);

  const Complex base(-0.9, 0);
  auto lasso = [&](double r) {
    return Path::concat({Path::segment(base, -r), Path::circle(0, r, 0.5), Path::segment(-r, base)});
  };

  std::vector<CheckReport> out;
  out.push_back(chen_identity_check(ChenIdentity::shuffle, w1, w2, {Path::arc(0, 0.5, 0.1, 0.7)}, cfg));
  out.push_back(chen_identity_check(ChenIdentity::reversal, w1, w2,
                                    {Path::segment(Complex(-1, -1), Complex(0.5, -0.5)) * Path::arc(0, std::sqrt(0.5), -0.125, 0.5)},
                                    cfg));
  out.push_back(chen_identity_check(ChenIdentity::composition, w1, w2,
                                    {Path::arc(0, 0.5, 0, 0.4), Path::arc(0, 0.5, 0.4, 0.6)}, cfg));
  out.push_back(chen_identity_check(ChenIdentity::homotopy, w1, w2, {lasso(0.3), lasso(0.7)}, cfg));
  return out;
}

} // namespace ccsym
