#include "ccsym/laurent.hpp"

#include <algorithm>

#include "ccsym/errors.hpp"

namespace ccsym {

template <Scalar S>
LaurentSeries<S>::LaurentSeries(AlgebraPtr algebra, int trunc_order)
    : algebra_(std::move(algebra)), trunc_(trunc_order), first_(trunc_order) {}

template <Scalar S>
LaurentSeries<S> LaurentSeries<S>::monomial(const Element<S>& coeff, int exponent, int trunc_order) {
  LaurentSeries r(coeff.algebra(), trunc_order);
  if (exponent < trunc_order)
    r.set_coeff(exponent, coeff);
  return r;
}

template <Scalar S>
void LaurentSeries<S>::normalize() {
  std::size_t lead = 0;
  while (lead < c_.size() && c_[lead].is_zero())
    ++lead;
  if (lead > 0) {
    c_.erase(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(lead));
    first_ += static_cast<int>(lead);
  }
  while (!c_.empty() && c_.back().is_zero())
    c_.pop_back();
  if (c_.empty())
    first_ = trunc_;
}

template <Scalar S>
Element<S>& LaurentSeries<S>::slot(int e) {
  if (c_.empty()) {
    first_ = e;
    c_.emplace_back(algebra_);
    return c_.front();
  }
  if (e < first_) {
    c_.insert(c_.begin(), static_cast<std::size_t>(first_ - e), Element<S>(algebra_));
    first_ = e;
  } else if (e >= upper_bound()) {
    c_.resize(static_cast<std::size_t>(e - first_ + 1), Element<S>(algebra_));
  }
  return c_[static_cast<std::size_t>(e - first_)];
}

template <Scalar S>
Element<S> LaurentSeries<S>::coeff(int e) const {
  if (e >= trunc_)
    throw TruncationError("coefficient of x^" + std::to_string(e) + " lies beyond the truncation order " +
                          std::to_string(trunc_));
  if (e < first_ || e >= upper_bound())
    return Element<S>(algebra_);
  return c_[static_cast<std::size_t>(e - first_)];
}

template <Scalar S>
void LaurentSeries<S>::set_coeff(int e, const Element<S>& value) {
  require_same_algebra(algebra_, value.algebra());
  if (e >= trunc_)
    throw TruncationError("cannot set a coefficient beyond the truncation order");
  if (value.is_zero() && (e < first_ || e >= upper_bound()))
    return;
  slot(e) = value;
  normalize();
}

template <Scalar S>
std::vector<std::pair<int, Element<S>>> LaurentSeries<S>::terms() const {
  std::vector<std::pair<int, Element<S>>> out;
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (!c_[k].is_zero())
      out.emplace_back(first_ + static_cast<int>(k), c_[k]);
  return out;
}

template <Scalar S>
LaurentSeries<S> LaurentSeries<S>::truncated(int t) const {
  if (t > trunc_)
    throw TruncationError("cannot raise a truncation order");
  LaurentSeries r(algebra_, t);
  if (!c_.empty() && first_ < t) {
    r.first_ = first_;
    r.c_.assign(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(c_.size()), t - first_));
    r.normalize();
  }
  return r;
}

template <Scalar S>
LaurentSeries<S> LaurentSeries<S>::shifted(int k) const {
  LaurentSeries r = *this;
  r.first_ += k;
  if (trunc_ != kUnbounded)
    r.trunc_ += k;
  if (r.c_.empty())
    r.first_ = r.trunc_;
  return r;
}

template <Scalar S>
LaurentSeries<S>& LaurentSeries<S>::operator+=(const LaurentSeries& o) {
  require_same_algebra(algebra_, o.algebra_);
  const int t = std::min(trunc_, o.trunc_);
  *this = truncated(t);
  for (std::size_t k = 0; k < o.c_.size(); ++k) {
    int e = o.first_ + static_cast<int>(k);
    if (e >= t)
      break;
    if (!o.c_[k].is_zero())
      slot(e) += o.c_[k];
  }
  normalize();
  return *this;
}

template <Scalar S>
LaurentSeries<S>& LaurentSeries<S>::operator-=(const LaurentSeries& o) {
  return *this += -o;
}

template <Scalar S>
LaurentSeries<S>& LaurentSeries<S>::operator*=(const Element<S>& c) {
  for (auto& x : c_)
    x = x * c;
  normalize();
  return *this;
}

template <Scalar S>
LaurentSeries<S> LaurentSeries<S>::times(const LaurentSeries& o) const {
  require_same_algebra(algebra_, o.algebra_);
  // Unknown terms of one factor first reach x^(T_f + low_g).
  constexpr long inf = 1L << 40;
  const long from_this = trunc_ == kUnbounded ? inf : static_cast<long>(trunc_) + o.first_;
  const long from_other = o.trunc_ == kUnbounded ? inf : static_cast<long>(o.trunc_) + first_;
  const int t = static_cast<int>(std::clamp<long>(std::min(from_this, from_other), -kUnbounded, kUnbounded));
  LaurentSeries r(algebra_, t);
  if (c_.empty() || o.c_.empty())
    return r;
  const int lo = first_ + o.first_;
  const int hi = std::min(upper_bound() + o.upper_bound() - 1, t);
  if (hi <= lo)
    return r;
  r.first_ = lo;
  r.c_.assign(static_cast<std::size_t>(hi - lo), Element<S>(algebra_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero())
      continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      const std::size_t k = i + j;
      if (k >= r.c_.size())
        break;
      r.c_[k].add_product(c_[i], o.c_[j]);
    }
  }
  r.normalize();
  return r;
}

template <Scalar S>
bool LaurentSeries<S>::agrees_with(const LaurentSeries& o, int t) const {
  const int bound = std::min({t, trunc_, o.trunc_});
  const int lo = std::min(first_, o.first_);
  for (int e = lo; e < bound; ++e)
    if (!(coeff(e) == o.coeff(e)))
      return false;
  return true;
}

template <Scalar S>
std::string LaurentSeries<S>::str(const std::string& var) const {
  std::string out;
  for (const auto& [e, c] : terms()) {
    if (!out.empty())
      out += " + ";
    out += "(" + c.str() + ")";
    if (e != 0)
      out += "*" + var + (e != 1 ? "^" + std::to_string(e) : "");
  }
  if (out.empty())
    out = "0";
  if (trunc_ != kUnbounded)
    out += " + O(" + var + "^" + std::to_string(trunc_) + ")";
  return out;
}

// ---------------------------------------------------------------------------

template <Scalar S>
int valuation(const LaurentSeries<S>& f) {
  for (const auto& [e, c] : f.terms())
    if (c.is_unit())
      return e;
  throw NotInvertible("series has no unit coefficient below its truncation order; its reduction vanishes");
}

namespace {

template <Scalar S>
int nilpotency(const AlgebraPtr& a) {
  return a->truncation_degree();
}

// Product restricted to exponents below `window`, ignoring truncation
// bookkeeping (callers know both operands exactly on the relevant range).
template <Scalar S>
LaurentSeries<S> window_product(const LaurentSeries<S>& a, const LaurentSeries<S>& b, int window) {
  LaurentSeries<S> r(a.algebra(), window);
  const auto ta = a.terms();
  const auto tb = b.terms();
  std::map<int, Element<S>> acc;
  for (const auto& [ea, ca] : ta) {
    for (const auto& [eb, cb] : tb) {
      if (ea + eb >= window)
        break;
      auto it = acc.try_emplace(ea + eb, a.algebra()).first;
      it->second.add_product(ca, cb);
    }
  }
  for (auto& [e, c] : acc)
    r.set_coeff(e, c);
  return r;
}

// sum_{k < N} (a x^j)^k: the exact inverse of 1 - a x^j for nilpotent a.
template <Scalar S>
LaurentSeries<S> nilpotent_geometric(const Element<S>& a, int j) {
  LaurentSeries<S> r = LaurentSeries<S>::constant(Element<S>(a.algebra(), S(1)));
  Element<S> power(a.algebra(), S(1));
  for (int k = 1; k < nilpotency<S>(a.algebra()); ++k) {
    power = power * a;
    if (power.is_zero())
      break;
    r.set_coeff(j * k, power);
  }
  return r;
}

// sum_{k < N} (1 - p)^k for a Laurent polynomial p with p - 1 nilpotent.
template <Scalar S>
LaurentSeries<S> invert_unipotent(const LaurentSeries<S>& p) {
  const Element<S> one(p.algebra(), S(1));
  LaurentSeries<S> n = LaurentSeries<S>::constant(one) - p;
  LaurentSeries<S> r = LaurentSeries<S>::constant(one);
  LaurentSeries<S> power = r;
  for (int k = 1; k < nilpotency<S>(p.algebra()); ++k) {
    power = power * n;
    if (power.is_zero())
      break;
    r += power;
  }
  return r;
}

// In-place division of a power series (exponents >= 0, known below t) by
// 1 - a x^j, j > 0: W_e = V_e + a W_{e-j}.
template <Scalar S>
std::vector<Element<S>> divide_positive_factor(std::vector<Element<S>> v, const Element<S>& a, int j) {
  for (std::size_t e = static_cast<std::size_t>(j); e < v.size(); ++e)
    if (!v[e - static_cast<std::size_t>(j)].is_zero())
      v[e].add_product(a, v[e - static_cast<std::size_t>(j)]);
  return v;
}

} // namespace

template <Scalar S>
LaurentSeries<S> invert(const LaurentSeries<S>& f) {
  const int nu = valuation(f);
  const AlgebraPtr& alg = f.algebra();
  const int n = nilpotency<S>(alg);
  const Element<S> lead = f.coeff(nu);
  const Element<S> lead_inv = invert(lead);
  if (f.terms().size() == 1)
    return LaurentSeries<S>::monomial(lead_inv, -nu, f.trunc_order() == kUnbounded ? kUnbounded : f.trunc_order() - 2 * nu);

  // f = lead x^nu (1 + h)
  LaurentSeries<S> h = f.shifted(-nu) * lead_inv;
  h.set_coeff(0, Element<S>(alg));
  const int t_h = h.trunc_order();
  const int depth = std::min(0, h.lower_bound());
  // Unknown terms of h can be pulled down by at most N-1 nilpotent factors.
  const int known = t_h == kUnbounded ? kUnbounded : t_h + (n - 1) * depth;
  const int window = known == kUnbounded ? kUnbounded : known - (n - 1) * depth;
  if (known == kUnbounded)
    throw TruncationError("cannot invert an untruncated series; truncate it first");

  const Element<S> one(alg, S(1));
  LaurentSeries<S> minus_h = -h;
  LaurentSeries<S> inv = LaurentSeries<S>::constant(one, window);
  LaurentSeries<S> power = LaurentSeries<S>::constant(one, window);
  for (int guard = 0;; ++guard) {
    power = window_product(power, minus_h, window);
    if (power.is_zero())
      break;
    inv += power;
    if (guard > 4 * (window - depth * n) + 64)
      throw Error("series inversion failed to converge");
  }
  LaurentSeries<S> r = inv.truncated(std::min(known, window)) * lead_inv;
  return r.shifted(-nu);
}

template <Scalar S>
LaurentSeries<S> pow(const LaurentSeries<S>& f, long n) {
  LaurentSeries<S> base = n < 0 ? invert(f) : f;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  LaurentSeries<S> r = LaurentSeries<S>::constant(Element<S>(f.algebra(), S(1)));
  while (e > 0) {
    if (e & 1UL)
      r = r * base;
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return r;
}

template <Scalar S>
CanonicalFactorization<S> factorize(const LaurentSeries<S>& f) {
  const AlgebraPtr& alg = f.algebra();
  const int nu = valuation(f);
  const Element<S> one(alg, S(1));
  const LaurentSeries<S> g = f.shifted(-nu);

  // Phase 1: peel factors (1 - a x^j), j < 0, off the sub-valuation tail.
  // Each pass pushes the tail one step deeper into the m-adic filtration.
  LaurentSeries<S> neg_part = LaurentSeries<S>::constant(one);
  LaurentSeries<S> cur = g;
  for (int guard = 0; cur.lower_bound() < 0; ++guard) {
    if (guard > 100000)
      throw Error("negative factor peeling did not terminate");
    if (cur.trunc_order() <= 0)
      throw TruncationError("too few coefficients to separate the negative factors");
    const int e = cur.lower_bound();
    const Element<S> alpha = -(cur.coeff(e) * invert(cur.coeff(0)));
    if (alpha.is_unit())
      throw NotInvertible("series has a unit coefficient below its valuation");
    LaurentSeries<S> factor = LaurentSeries<S>::constant(one);
    factor.set_coeff(e, -alpha);
    neg_part = neg_part * factor;
    cur = g * invert_unipotent(neg_part);
  }

  CanonicalFactorization<S> F(alg);
  F.nu = nu;

  // Read off a_{-j} from the negative part, smallest j first.
  LaurentSeries<S> rest = neg_part;
  while (rest.lower_bound() < 0) {
    int j = 0;
    for (const auto& [e, c] : rest.terms()) {
      if (e < 0)
        j = -e;
    }
    const Element<S> a = -rest.coeff(-j);
    F.neg_factors.emplace(-j, a);
    rest = rest * nilpotent_geometric(a, -j);
  }

  // Phase 2: a0 * prod_{j>0} (1 - a_j x^j) = g / neg_part, matched bottom-up.
  const LaurentSeries<S> unit_part = g * invert_unipotent(neg_part);
  const int t = unit_part.trunc_order();
  if (t <= 0)
    throw TruncationError("too few coefficients to determine the leading unit");
  if (unit_part.lower_bound() < 0)
    throw Error("internal: negative part was not fully removed");
  F.a0 = unit_part.coeff(0);
  F.trunc_order = t == kUnbounded ? kUnbounded : t + nu;
  if (t == kUnbounded)
    throw TruncationError("cannot factor an untruncated series; truncate it first");

  const Element<S> a0_inv = invert(F.a0);
  std::vector<Element<S>> v(static_cast<std::size_t>(t), Element<S>(alg));
  for (int e = 0; e < t; ++e)
    v[static_cast<std::size_t>(e)] = unit_part.coeff(e) * a0_inv;
  for (int j = 1; j < t; ++j) {
    const Element<S> a = -v[static_cast<std::size_t>(j)];
    if (a.is_zero())
      continue;
    F.pos_factors.emplace(j, a);
    v = divide_positive_factor(std::move(v), a, j);
  }
  return F;
}

template <Scalar S>
LaurentSeries<S> reconstruct(const CanonicalFactorization<S>& F) {
  const AlgebraPtr& alg = F.algebra;
  const Element<S> one(alg, S(1));
  LaurentSeries<S> neg_part = LaurentSeries<S>::constant(one);
  for (const auto& [j, a] : F.neg_factors) {
    LaurentSeries<S> factor = LaurentSeries<S>::constant(one);
    factor.set_coeff(j, -a);
    neg_part = neg_part * factor;
  }

  const int t_pos = F.trunc_order == kUnbounded ? kUnbounded : F.trunc_order - F.nu;
  LaurentSeries<S> pos_part(alg, t_pos);
  if (t_pos > 0) {
    if (t_pos == kUnbounded) {
      pos_part = LaurentSeries<S>::constant(one);
      for (const auto& [j, a] : F.pos_factors) {
        LaurentSeries<S> factor = LaurentSeries<S>::constant(one);
        factor.set_coeff(j, -a);
        pos_part = pos_part * factor;
      }
    } else {
      std::vector<Element<S>> v(static_cast<std::size_t>(t_pos), Element<S>(alg));
      v[0] = one;
      for (const auto& [j, a] : F.pos_factors) {
        if (j >= t_pos)
          continue;
        for (int e = t_pos - 1; e >= j; --e)
          if (!v[static_cast<std::size_t>(e - j)].is_zero())
            v[static_cast<std::size_t>(e)] -= a * v[static_cast<std::size_t>(e - j)];
      }
      for (int e = 0; e < t_pos; ++e)
        pos_part.set_coeff(e, v[static_cast<std::size_t>(e)]);
    }
  }
  return (neg_part * pos_part * F.a0).shifted(F.nu);
}

template <Scalar S>
Element<S> CanonicalFactorization<S>::factor(int j) const {
  if (j == 0)
    return a0;
  const auto& m = j < 0 ? neg_factors : pos_factors;
  auto it = m.find(j);
  return it == m.end() ? Element<S>(algebra) : it->second;
}

template <Scalar S>
std::string CanonicalFactorization<S>::str() const {
  std::string out = "nu=" + std::to_string(nu) + "; a0=" + a0.str();
  out += "; neg:";
  for (const auto& [j, a] : neg_factors)
    out += " a" + std::to_string(j) + "=" + a.str();
  out += "; pos:";
  for (const auto& [j, a] : pos_factors)
    out += " a" + std::to_string(j) + "=" + a.str();
  if (trunc_order != kUnbounded)
    out += "; trunc=" + std::to_string(trunc_order);
  return out;
}

template class LaurentSeries<ExactScalar>;
template class LaurentSeries<FloatScalar>;
template struct CanonicalFactorization<ExactScalar>;
template struct CanonicalFactorization<FloatScalar>;

#define CCSYM_INSTANTIATE(S)                                                  \
  template int valuation(const LaurentSeries<S>&);                            \
  template LaurentSeries<S> invert(const LaurentSeries<S>&);                  \
  template LaurentSeries<S> pow(const LaurentSeries<S>&, long);               \
  template CanonicalFactorization<S> factorize(const LaurentSeries<S>&);      \
  template LaurentSeries<S> reconstruct(const CanonicalFactorization<S>&);

CCSYM_INSTANTIATE(ExactScalar)
CCSYM_INSTANTIATE(FloatScalar)

#undef CCSYM_INSTANTIATE

} // namespace ccsym
