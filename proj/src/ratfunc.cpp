#include "ccsym/ratfunc.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ccsym/errors.hpp"

namespace ccsym {

const ExactScalar& SpherePoint::value() const {
  if (!z_)
    throw DomainError("the point at infinity has no finite value");
  return *z_;
}

std::string SpherePoint::str() const { return z_ ? z_->str() : "inf"; }

bool operator<(const SpherePoint& a, const SpherePoint& b) {
  if (a.is_infinity() || b.is_infinity())
    return !a.is_infinity() && b.is_infinity();
  return *a.z_ < *b.z_;
}

namespace {

using GPoly = std::vector<ExactScalar>;

void trim(GPoly& p) {
  while (!p.empty() && p.back().is_zero())
    p.pop_back();
}

ExactScalar eval(const GPoly& p, const ExactScalar& z) {
  ExactScalar r;
  for (auto it = p.rbegin(); it != p.rend(); ++it)
    r = r * z + *it;
  return r;
}

GPoly derivative(const GPoly& p) {
  GPoly d;
  for (std::size_t k = 1; k < p.size(); ++k)
    d.push_back(p[k] * ExactScalar(static_cast<long>(k)));
  trim(d);
  return d;
}

// p = q * d + r over the Gaussian rationals.
std::pair<GPoly, GPoly> divmod(GPoly p, const GPoly& d) {
  trim(p);
  if (d.empty())
    throw DomainError("polynomial division by zero");
  if (p.size() < d.size())
    return {{}, p};
  GPoly q(p.size() - d.size() + 1);
  const ExactScalar lead = d.back();
  for (std::size_t k = p.size(); k-- >= d.size();) {
    const ExactScalar c = p[k] / lead;
    q[k - (d.size() - 1)] = c;
    if (c.is_zero())
      continue;
    for (std::size_t i = 0; i < d.size(); ++i)
      p[k - (d.size() - 1) + i] -= c * d[i];
  }
  p.resize(d.size() - 1);
  trim(p);
  trim(q);
  return {q, p};
}

GPoly monic_gcd(GPoly a, GPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  const ExactScalar lead = a.back();
  for (auto& c : a)
    c /= lead;
  return a;
}

// Best continued-fraction approximation within a relative tolerance.
mpq_class rationalize(double x) {
  const double tol = 1e-10 * std::max(1.0, std::abs(x));
  mpz_class h0 = 1, h1 = 0, k0 = 0, k1 = 1;
  double frac = x;
  mpq_class best(0);
  for (int step = 0; step < 40; ++step) {
    const double a = std::floor(frac);
    const mpz_class ai(a);
    mpz_class h = ai * h0 + h1, k = ai * k0 + k1;
    h1 = h0;
    h0 = h;
    k1 = k0;
    k0 = k;
    best = mpq_class(h, k);
    best.canonicalize();
    if (std::abs(best.get_d() - x) <= tol || k > 100000000)
      break;
    const double rest = frac - a;
    if (rest == 0.0)
      break;
    frac = 1.0 / rest;
  }
  return best;
}

std::vector<std::complex<double>> numeric_roots(const GPoly& p) {
  const std::size_t n = p.size() - 1;
  std::vector<std::complex<double>> c(p.size());
  const std::complex<double> lead = p.back().to_complex();
  for (std::size_t k = 0; k < p.size(); ++k)
    c[k] = p[k].to_complex() / lead;
  auto value = [&](std::complex<double> z) {
    std::complex<double> r = 0;
    for (std::size_t k = c.size(); k-- > 0;)
      r = r * z + c[k];
    return r;
  };
  double radius = 0;
  for (std::size_t k = 0; k < n; ++k)
    radius = std::max(radius, std::abs(c[k]));
  radius += 1;
  std::vector<std::complex<double>> z(n);
  for (std::size_t k = 0; k < n; ++k)
    z[k] = std::polar(radius, 0.4 + 2 * M_PI * static_cast<double>(k) / static_cast<double>(n));
  for (int iter = 0; iter < 2000; ++iter) {
    double change = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::complex<double> den = 1;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i)
          den *= z[i] - z[j];
      if (den == 0.0)
        den = 1e-300;
      const std::complex<double> step = value(z[i]) / den;
      z[i] -= step;
      change = std::max(change, std::abs(step));
    }
    if (change < 1e-15 * radius)
      break;
  }
  return z;
}

} // namespace

std::vector<std::pair<ExactScalar, int>> exact_roots(std::vector<ExactScalar> coeffs,
                                                     const std::vector<ExactScalar>& candidates) {
  trim(coeffs);
  if (coeffs.empty())
    throw DomainError("the zero polynomial has no finite root set");
  std::map<ExactScalar, int> found;
  auto deflate = [&](const ExactScalar& r) {
    bool any = false;
    while (coeffs.size() > 1 && eval(coeffs, r).is_zero()) {
      coeffs = divmod(coeffs, GPoly{-r, ExactScalar(1)}).first;
      ++found[r];
      any = true;
    }
    return any;
  };
  deflate(ExactScalar(0));
  for (const auto& r : candidates)
    deflate(r);
  while (coeffs.size() > 1) {
    if (coeffs.size() == 2) {
      deflate(-coeffs[0] / coeffs[1]);
      continue;
    }
    const GPoly squarefree = divmod(coeffs, monic_gcd(coeffs, derivative(coeffs))).first;
    bool progress = false;
    for (const auto& z : numeric_roots(squarefree)) {
      const ExactScalar r(rationalize(z.real()), rationalize(z.imag()));
      progress = deflate(r) || progress;
    }
    if (!progress)
      throw DomainError("polynomial has roots that are not Gaussian rationals");
  }
  return {found.begin(), found.end()};
}

namespace {

ExactPolynomial one_poly(const AlgebraPtr& alg) { return ExactPolynomial::constant(ExactElement(alg, 1)); }

ExactPolynomial power(const ExactPolynomial& p, int n) {
  ExactPolynomial r = one_poly(p.algebra());
  for (int k = 0; k < n; ++k)
    r = r * p;
  return r;
}

ExactPolynomial linear_power(const AlgebraPtr& alg, const ExactScalar& root, int d) {
  return power(ExactPolynomial::linear(ExactElement(alg, root)), d);
}

// p = h * w with h monic, h reducing to (x - r)^e and w(r) a unit.
std::pair<ExactPolynomial, ExactPolynomial> split_root(const ExactPolynomial& p, const ExactScalar& r, int e) {
  const AlgebraPtr& alg = p.algebra();
  const ExactPolynomial ps = p.taylor_shift(r);
  ExactPolynomial h = ExactPolynomial::variable_power(alg, e);
  ExactPolynomial w = ps.divmod_monic(h).first;
  const int limit = 4 * alg->truncation_degree() + 8;
  for (int iter = 0;; ++iter) {
    const ExactPolynomial err = ps - h * w;
    if (err.is_zero())
      break;
    if (iter >= limit)
      throw Error("root factor splitting did not converge");
    // Inverse of w modulo y^e.
    std::vector<ExactElement> inv;
    const ExactElement w0_inv = invert(w.coeff(0));
    for (int n = 0; n < e; ++n) {
      ExactElement acc = n == 0 ? ExactElement(alg, 1) : ExactElement(alg);
      for (int k = 1; k <= n; ++k)
        acc -= w.coeff(k) * inv[static_cast<std::size_t>(n - k)];
      inv.push_back(acc * w0_inv);
    }
    std::vector<ExactElement> delta(static_cast<std::size_t>(e), ExactElement(alg));
    for (int n = 0; n < e; ++n)
      for (int k = 0; k <= n; ++k)
        delta[static_cast<std::size_t>(n)].add_product(err.coeff(k), inv[static_cast<std::size_t>(n - k)]);
    h += ExactPolynomial(alg, std::move(delta));
    w = ps.divmod_monic(h).first;
  }
  const ExactScalar back = -r;
  return {h.taylor_shift(back), w.taylor_shift(back)};
}

bool same_poly(const ExactPolynomial& a, const ExactPolynomial& b) { return a == b; }

} // namespace

RationalFunction::RationalFunction(AlgebraPtr algebra)
    : algebra_(algebra), scale_(algebra, 1), pert_num_(one_poly(algebra)), pert_den_(one_poly(algebra)),
      float_scale_(algebra, 1.0), float_num_(algebra), float_num_derivative_(algebra), float_den_(algebra),
      float_den_derivative_(algebra) {}

RationalFunction RationalFunction::constant(const ExactElement& c) {
  if (!c.is_unit())
    throw NotInvertible("constant function must be a unit");
  RationalFunction f(c.algebra());
  f.scale_ = c;
  f.normalize();
  return f;
}

RationalFunction RationalFunction::variable(AlgebraPtr algebra) {
  return from_roots(ExactElement(algebra, 1), {{ExactScalar(0), 1}});
}

RationalFunction RationalFunction::from_roots(const ExactElement& scale,
                                              const std::vector<std::pair<ExactScalar, int>>& roots) {
  RationalFunction f = constant(scale);
  for (const auto& [r, m] : roots)
    f.factors_.push_back({r, m, linear_power(f.algebra_, r, 1)});
  f.normalize();
  return f;
}

RationalFunction RationalFunction::from_polynomial(const ExactPolynomial& p,
                                                   const std::vector<ExactScalar>& candidates) {
  const AlgebraPtr& alg = p.algebra();
  const auto red = p.reduction();
  if (red.empty())
    throw NotInvertible("polynomial reduces to zero");
  RationalFunction f(alg);
  ExactPolynomial rest = p;
  for (const auto& [r, e] : exact_roots(red, candidates)) {
    auto [h, w] = split_root(rest, r, e);
    f.factors_.push_back({r, 1, std::move(h)});
    rest = std::move(w);
  }
  f.scale_ = rest.coeff(0);
  f.pert_num_ = rest.scaled(invert(f.scale_));
  f.normalize();
  return f;
}

void RationalFunction::normalize() {
  std::vector<Factor> merged;
  for (auto& fac : factors_) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const Factor& m) {
      return m.root == fac.root && same_poly(m.local, fac.local);
    });
    if (it == merged.end())
      merged.push_back(std::move(fac));
    else
      it->multiplicity += fac.multiplicity;
  }
  std::erase_if(merged, [](const Factor& m) { return m.multiplicity == 0; });
  std::sort(merged.begin(), merged.end(), [](const Factor& a, const Factor& b) {
    if (!(a.root == b.root))
      return a.root < b.root;
    return a.local.str() < b.local.str();
  });
  factors_ = std::move(merged);
  if (pert_num_ == pert_den_)
    pert_num_ = pert_den_ = one_poly(algebra_);

  float_scale_ = widen(scale_);
  float_factors_.clear();
  for (const auto& fac : factors_) {
    FloatPolynomial local = widen(fac.local);
    FloatPolynomial d = local.derivative();
    float_factors_.push_back({fac.root.to_complex(), fac.multiplicity, std::move(local), std::move(d)});
  }
  float_num_ = widen(pert_num_);
  float_num_derivative_ = float_num_.derivative();
  float_den_ = widen(pert_den_);
  float_den_derivative_ = float_den_.derivative();
}

int RationalFunction::degree() const {
  int d = 0;
  for (const auto& fac : factors_)
    d += fac.multiplicity * fac.local.degree();
  return d;
}

bool RationalFunction::nontrivial_at_infinity() const {
  if (degree() != 0 || !pert_num_.is_constant() || !pert_den_.is_constant())
    return true;
  return std::any_of(factors_.begin(), factors_.end(), [&](const Factor& fac) {
    return !(fac.local == linear_power(algebra_, fac.root, fac.local.degree()));
  });
}

ExactElement RationalFunction::eval(const ExactScalar& z) const {
  ExactElement v = scale_;
  for (const auto& fac : factors_) {
    const ExactElement lv = fac.local.eval(z);
    if (!lv.is_unit())
      throw DomainError("evaluation at a zero or pole: " + z.str());
    v *= ccsym::pow(lv, fac.multiplicity);
  }
  return v * pert_num_.eval(z) * invert(pert_den_.eval(z));
}

FloatElement RationalFunction::eval(std::complex<double> z) const {
  FloatElement v = float_scale_;
  for (const auto& fac : float_factors_) {
    const FloatElement lv = fac.local.eval(z);
    if (!lv.is_unit())
      throw DomainError("evaluation at a zero or pole");
    v *= ccsym::pow(lv, fac.multiplicity);
  }
  return v * float_num_.eval(z) * invert(float_den_.eval(z));
}

ExactElement RationalFunction::dlog_eval(const ExactScalar& z) const {
  ExactElement acc(algebra_);
  for (const auto& fac : factors_) {
    const ExactElement lv = fac.local.eval(z);
    if (!lv.is_unit())
      throw DomainError("evaluation at a zero or pole: " + z.str());
    acc += fac.local.derivative().eval(z) * invert(lv) * ExactScalar(fac.multiplicity);
  }
  acc += pert_num_.derivative().eval(z) * invert(pert_num_.eval(z));
  acc -= pert_den_.derivative().eval(z) * invert(pert_den_.eval(z));
  return acc;
}

FloatElement RationalFunction::dlog_eval(std::complex<double> z) const {
  FloatElement acc(algebra_);
  for (const auto& fac : float_factors_) {
    const FloatElement lv = fac.local.eval(z);
    if (!lv.is_unit())
      throw DomainError("evaluation at a zero or pole");
    acc += fac.local_derivative.eval(z) * invert(lv) * FloatScalar(fac.multiplicity);
  }
  if (!float_num_.is_constant())
    acc += float_num_derivative_.eval(z) * invert(float_num_.eval(z));
  if (!float_den_.is_constant())
    acc -= float_den_derivative_.eval(z) * invert(float_den_.eval(z));
  return acc;
}

ExactSeries RationalFunction::expand_at(const SpherePoint& s, int trunc_order) const {
  auto to_series = [&](const ExactPolynomial& p, int window) {
    ExactSeries r(algebra_, window);
    if (s.is_infinity()) {
      for (int k = 0; k <= p.degree(); ++k)
        if (-k < window)
          r.set_coeff(-k, p.coeff(k));
    } else {
      const ExactPolynomial q = p.taylor_shift(s.value());
      for (int k = 0; k <= q.degree() && k < window; ++k)
        r.set_coeff(k, q.coeff(k));
    }
    return r;
  };
  int window = trunc_order + 8;
  for (int attempt = 0; attempt < 30; ++attempt) {
    ExactSeries r = ExactSeries::constant(scale_);
    for (const auto& fac : factors_)
      r = r * ccsym::pow(to_series(fac.local, window), fac.multiplicity);
    if (!pert_num_.is_constant() || !(pert_num_.coeff(0) == ExactElement(algebra_, 1)))
      r = r * to_series(pert_num_, window);
    if (!pert_den_.is_constant() || !(pert_den_.coeff(0) == ExactElement(algebra_, 1)))
      r = r * invert(to_series(pert_den_, window));
    if (r.trunc_order() >= trunc_order)
      return r.truncated(trunc_order);
    window += trunc_order - r.trunc_order() + 8;
  }
  throw TruncationError("expansion did not reach the requested order");
}

RationalFunction RationalFunction::pow(int n) const {
  RationalFunction base = *this;
  if (n < 0) {
    base.scale_ = invert(scale_);
    for (auto& fac : base.factors_)
      fac.multiplicity = -fac.multiplicity;
    std::swap(base.pert_num_, base.pert_den_);
    n = -n;
  }
  RationalFunction r(algebra_);
  r.scale_ = ccsym::pow(base.scale_, n);
  for (auto fac : base.factors_) {
    fac.multiplicity *= n;
    r.factors_.push_back(std::move(fac));
  }
  r.pert_num_ = power(base.pert_num_, n);
  r.pert_den_ = power(base.pert_den_, n);
  r.normalize();
  return r;
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  require_same_algebra(a.algebra_, b.algebra_);
  RationalFunction r = a;
  r.scale_ *= b.scale_;
  r.factors_.insert(r.factors_.end(), b.factors_.begin(), b.factors_.end());
  r.pert_num_ = a.pert_num_ * b.pert_num_;
  r.pert_den_ = a.pert_den_ * b.pert_den_;
  r.normalize();
  return r;
}

std::pair<ExactPolynomial, ExactPolynomial> RationalFunction::as_fraction() const {
  ExactPolynomial num = pert_num_.scaled(scale_);
  ExactPolynomial den = pert_den_;
  for (const auto& fac : factors_) {
    if (fac.multiplicity > 0)
      num = num * power(fac.local, fac.multiplicity);
    else
      den = den * power(fac.local, -fac.multiplicity);
  }
  return {num, den};
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  require_same_algebra(a.algebra_, b.algebra_);
  const auto [na, da] = a.as_fraction();
  const auto [nb, db] = b.as_fraction();
  std::vector<ExactScalar> candidates;
  for (const auto* f : {&a, &b})
    for (const auto& fac : f->factors_)
      candidates.push_back(fac.root);
  const ExactPolynomial num = na * db + nb * da;
  if (num.reduction().empty())
    throw NotInvertible("sum reduces to zero");

  RationalFunction den(a.algebra_);
  for (const auto* f : {&a, &b})
    for (const auto& fac : f->factors_)
      if (fac.multiplicity < 0)
        den.factors_.push_back({fac.root, -fac.multiplicity, fac.local});
  den.pert_num_ = a.pert_den_ * b.pert_den_;
  den.normalize();
  return RationalFunction::from_polynomial(num, candidates) / den;
}

RationalFunction operator-(const RationalFunction& a) {
  RationalFunction r = a;
  r.scale_ = -a.scale_;
  r.normalize();
  return r;
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }

std::string RationalFunction::str() const {
  std::string s;
  auto append = [&](const std::string& part) {
    if (!s.empty())
      s += "*";
    s += part;
  };
  const bool unit_scale = scale_ == ExactElement(algebra_, 1);
  if (!unit_scale || (factors_.empty() && pert_num_.is_constant() && pert_den_.is_constant()))
    append("(" + scale_.str() + ")");
  for (const auto& fac : factors_) {
    std::string part = "(" + fac.local.str() + ")";
    if (fac.multiplicity != 1)
      part += "^" + (fac.multiplicity < 0 ? "(" + std::to_string(fac.multiplicity) + ")"
                                           : std::to_string(fac.multiplicity));
    append(part);
  }
  if (!(pert_num_ == one_poly(algebra_)))
    append("(" + pert_num_.str() + ")");
  if (!(pert_den_ == one_poly(algebra_)))
    append("(" + pert_den_.str() + ")^(-1)");
  return s;
}

std::vector<SpherePoint> support(const RationalFunction& f, const RationalFunction& g) {
  require_same_algebra(f.algebra(), g.algebra());
  std::vector<SpherePoint> pts;
  for (const auto* h : {&f, &g})
    for (const auto& fac : h->factors())
      pts.emplace_back(fac.root);
  if (f.nontrivial_at_infinity() || g.nontrivial_at_infinity())
    pts.push_back(SpherePoint::infinity());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

} // namespace ccsym
