#include "ccsym/polynomial.hpp"

#include "ccsym/errors.hpp"

namespace ccsym {

template <Scalar S>
Polynomial<S>::Polynomial(AlgebraPtr algebra, std::vector<Element<S>> coeffs)
    : algebra_(std::move(algebra)), coeffs_(std::move(coeffs)) {
  for (const auto& c : coeffs_)
    require_same_algebra(algebra_, c.algebra());
  trim();
}

template <Scalar S>
Polynomial<S> Polynomial<S>::constant(const Element<S>& c) {
  return Polynomial(c.algebra(), {c});
}

template <Scalar S>
Polynomial<S> Polynomial<S>::linear(const Element<S>& root) {
  return Polynomial(root.algebra(), {-root, Element<S>(root.algebra(), S(1))});
}

template <Scalar S>
Polynomial<S> Polynomial<S>::variable_power(AlgebraPtr algebra, int n) {
  std::vector<Element<S>> c(static_cast<std::size_t>(n) + 1, Element<S>(algebra));
  c.back() = Element<S>(algebra, S(1));
  return Polynomial(algebra, std::move(c));
}

template <Scalar S>
void Polynomial<S>::trim() {
  while (!coeffs_.empty() && coeffs_.back().is_zero())
    coeffs_.pop_back();
}

template <Scalar S>
Element<S> Polynomial<S>::coeff(int k) const {
  if (k < 0 || k > degree())
    return Element<S>(algebra_);
  return coeffs_[static_cast<std::size_t>(k)];
}

template <Scalar S>
Element<S> Polynomial<S>::eval(const S& z) const {
  Element<S> r(algebra_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r *= z;
    r += *it;
  }
  return r;
}

template <Scalar S>
Element<S> Polynomial<S>::eval(const Element<S>& z) const {
  Element<S> r(algebra_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    r = r * z;
    r += *it;
  }
  return r;
}

template <Scalar S>
Polynomial<S> Polynomial<S>::derivative() const {
  std::vector<Element<S>> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d.push_back(coeffs_[k] * S(static_cast<long>(k)));
  return Polynomial(algebra_, std::move(d));
}

template <Scalar S>
Polynomial<S> Polynomial<S>::taylor_shift(const S& s) const {
  // Repeated synthetic division by (x - s).
  std::vector<Element<S>> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t k = n - 1; k > i; --k)
      c[k - 1] += c[k] * s;
  return Polynomial(algebra_, std::move(c));
}

template <Scalar S>
std::vector<S> Polynomial<S>::reduction() const {
  std::vector<S> r;
  for (const auto& c : coeffs_)
    r.push_back(c.reduce());
  while (!r.empty() && ScalarTraits<S>::is_zero(r.back()))
    r.pop_back();
  return r;
}

template <Scalar S>
Polynomial<S>& Polynomial<S>::operator+=(const Polynomial& o) {
  require_same_algebra(algebra_, o.algebra_);
  if (coeffs_.size() < o.coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), Element<S>(algebra_));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
    coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

template <Scalar S>
Polynomial<S>& Polynomial<S>::operator-=(const Polynomial& o) {
  require_same_algebra(algebra_, o.algebra_);
  if (coeffs_.size() < o.coeffs_.size())
    coeffs_.resize(o.coeffs_.size(), Element<S>(algebra_));
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k)
    coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

template <Scalar S>
Polynomial<S> Polynomial<S>::times(const Polynomial& o) const {
  require_same_algebra(algebra_, o.algebra_);
  if (is_zero() || o.is_zero())
    return Polynomial(algebra_);
  std::vector<Element<S>> c(coeffs_.size() + o.coeffs_.size() - 1, Element<S>(algebra_));
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
      c[i + j].add_product(coeffs_[i], o.coeffs_[j]);
  return Polynomial(algebra_, std::move(c));
}

template <Scalar S>
Polynomial<S> Polynomial<S>::scaled(const Element<S>& s) const {
  std::vector<Element<S>> c;
  for (const auto& x : coeffs_)
    c.push_back(x * s);
  return Polynomial(algebra_, std::move(c));
}

template <Scalar S>
std::pair<Polynomial<S>, Polynomial<S>> Polynomial<S>::divmod_monic(const Polynomial& divisor) const {
  const int d = divisor.degree();
  if (d < 0 || !(divisor.coeffs_.back() == Element<S>(algebra_, S(1))))
    throw DomainError("divisor is not monic");
  std::vector<Element<S>> rem = coeffs_;
  if (degree() < d)
    return {Polynomial(algebra_), *this};
  std::vector<Element<S>> quot(static_cast<std::size_t>(degree() - d + 1), Element<S>(algebra_));
  for (int k = degree(); k >= d; --k) {
    Element<S> lead = rem[static_cast<std::size_t>(k)];
    if (lead.is_zero())
      continue;
    quot[static_cast<std::size_t>(k - d)] = lead;
    for (int i = 0; i <= d; ++i)
      rem[static_cast<std::size_t>(k - d + i)] -= lead * divisor.coeffs_[static_cast<std::size_t>(i)];
  }
  rem.erase(rem.begin() + d, rem.end());
  return {Polynomial(algebra_, std::move(quot)), Polynomial(algebra_, std::move(rem))};
}

template <Scalar S>
std::string Polynomial<S>::str(const std::string& var) const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero())
      continue;
    if (!out.empty())
      out += " + ";
    out += "(" + coeffs_[k].str() + ")";
    if (k > 0)
      out += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return out.empty() ? "0" : out;
}

Polynomial<FloatScalar> widen(const Polynomial<ExactScalar>& p) {
  std::vector<FloatElement> c;
  for (const auto& x : p.coeffs())
    c.push_back(widen(x));
  return Polynomial<FloatScalar>(p.algebra(), std::move(c));
}

template class Polynomial<ExactScalar>;
template class Polynomial<FloatScalar>;

} // namespace ccsym
