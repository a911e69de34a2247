#include "ccsym/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>

#include "ccsym/errors.hpp"

namespace ccsym {

namespace {

// Exponent vectors of total degree `d` over `k` generators, first generator
// most significant, largest first.
void compositions(int d, std::size_t k, Exponents& current, std::size_t pos, std::vector<Exponents>& out) {
  if (pos + 1 == k) {
    current[pos] = d;
    out.push_back(current);
    return;
  }
  for (int e = d; e >= 0; --e) {
    current[pos] = e;
    compositions(d - e, k, current, pos + 1, out);
  }
}

bool valid_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos)
    return {};
  auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

} // namespace

Algebra::Algebra(std::vector<std::string> generators, int truncation_degree)
    : generators_(std::move(generators)), degree_(truncation_degree) {
  if (degree_ < 1)
    throw DomainError("truncation degree must be at least 1");
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (!valid_identifier(g))
      throw DomainError("invalid generator name '" + g + "'");
    if (g == "x" || g == "i" || g == "u")
      throw DomainError("generator name '" + g + "' is reserved");
    if (!seen.insert(g).second)
      throw DomainError("duplicate generator name '" + g + "'");
  }

  const std::size_t k = generators_.size();
  basis_.push_back(Exponents(k, 0));
  if (k > 0) {
    Exponents cur(k, 0);
    for (int d = 1; d < degree_; ++d)
      compositions(d, k, cur, 0, basis_);
  }
  for (const auto& e : basis_)
    total_.push_back(std::accumulate(e.begin(), e.end(), 0));

  std::map<Exponents, std::size_t> index;
  for (std::size_t i = 0; i < basis_.size(); ++i)
    index.emplace(basis_[i], i);

  const std::size_t dim = basis_.size();
  table_.assign(dim * dim, -1);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      if (total_[i] + total_[j] >= degree_)
        continue;
      Exponents e(k);
      for (std::size_t g = 0; g < k; ++g)
        e[g] = basis_[i][g] + basis_[j][g];
      auto it = index.find(e);
      if (it == index.end())
        continue;
      table_[i * dim + j] = static_cast<std::int32_t>(it->second);
      terms_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j),
                        static_cast<std::uint32_t>(it->second)});
    }
  }
}

AlgebraPtr Algebra::make(std::vector<std::string> generators, int truncation_degree) {
  return std::make_shared<const Algebra>(std::move(generators), truncation_degree);
}

AlgebraPtr Algebra::trivial() {
  static const AlgebraPtr field = make({}, 1);
  return field;
}

std::optional<std::size_t> Algebra::find(const Exponents& e) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    if (basis_[i] == e)
      return i;
  return std::nullopt;
}

std::optional<std::size_t> Algebra::generator_index(std::string_view name) const {
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    if (generators_[g] != name)
      continue;
    Exponents e(generators_.size(), 0);
    e[g] = 1;
    return find(e);
  }
  return std::nullopt;
}

std::string Algebra::monomial_name(std::size_t index) const {
  if (total_[index] == 0)
    return "1";
  std::string out;
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    int e = basis_[index][g];
    if (e == 0)
      continue;
    if (!out.empty())
      out += '*';
    out += generators_[g];
    if (e > 1)
      out += '^' + std::to_string(e);
  }
  return out;
}

bool Algebra::same_as(const Algebra& other) const {
  return this == &other || (degree_ == other.degree_ && generators_ == other.generators_);
}

void require_same_algebra(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a != b && !a->same_as(*b))
    throw SignatureMismatch("operands belong to different algebras");
}

AlgebraSignature parse_algebra_signature(std::string_view text) {
  std::vector<std::string> gens;
  int degree = 1;
  ScalarBackend backend = ScalarBackend::exact;
  std::set<std::string> keys;

  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find(';', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string item = trim(text.substr(start, end - start));
    start = end + 1;
    if (item.empty())
      continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw DomainError("algebra signature item '" + item + "' lacks '='");
    std::string key = trim(item.substr(0, eq));
    std::string value = trim(item.substr(eq + 1));
    if (!keys.insert(key).second)
      throw DomainError("algebra signature repeats key '" + key + "'");
    if (key == "gens") {
      std::size_t s = 0;
      while (s <= value.size() && !value.empty()) {
        auto c = value.find(',', s);
        if (c == std::string::npos)
          c = value.size();
        gens.push_back(trim(std::string_view(value).substr(s, c - s)));
        s = c + 1;
      }
    } else if (key == "degree") {
      try {
        std::size_t used = 0;
        degree = std::stoi(value, &used);
        if (used != value.size())
          throw std::invalid_argument(value);
      } catch (const std::exception&) {
        throw DomainError("algebra degree '" + value + "' is not an integer");
      }
    } else if (key == "scalars") {
      if (value == "exact")
        backend = ScalarBackend::exact;
      else if (value == "float")
        backend = ScalarBackend::floating;
      else
        throw DomainError("unknown scalar backend '" + value + "'");
    } else {
      throw DomainError("unknown algebra signature key '" + key + "'");
    }
  }
  return {Algebra::make(std::move(gens), degree), backend};
}

std::string to_string(const AlgebraSignature& signature) {
  std::string gens;
  for (const auto& g : signature.algebra->generators())
    gens += (gens.empty() ? "" : ",") + g;
  return "gens=" + gens + ";degree=" + std::to_string(signature.algebra->truncation_degree()) +
         ";scalars=" + (signature.backend == ScalarBackend::exact ? "exact" : "float");
}

// ---------------------------------------------------------------------------

template <Scalar S>
Element<S>::Element(AlgebraPtr algebra) : algebra_(std::move(algebra)), coeffs_(algebra_->dimension()) {}

template <Scalar S>
Element<S>::Element(AlgebraPtr algebra, S constant) : Element(std::move(algebra)) {
  coeffs_[0] = std::move(constant);
}

template <Scalar S>
Element<S> Element<S>::generator(AlgebraPtr algebra, std::string_view name) {
  bool known = false;
  for (const auto& g : algebra->generators())
    known = known || g == name;
  if (!known)
    throw DomainError("unknown generator '" + std::string(name) + "'");
  Element r(algebra);
  // With N = 1 every generator is already zero.
  if (auto idx = algebra->generator_index(name))
    r.coeffs_[*idx] = S(1);
  return r;
}

template <Scalar S>
Element<S> Element<S>::monomial(AlgebraPtr algebra, const Exponents& exponents, S coeff) {
  if (exponents.size() != algebra->generators().size())
    throw DomainError("exponent vector has the wrong length");
  Element r(algebra);
  if (auto idx = algebra->find(exponents))
    r.coeffs_[*idx] = std::move(coeff);
  return r;
}

template <Scalar S>
bool Element<S>::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const S& c) { return ScalarTraits<S>::is_zero(c); });
}

template <Scalar S>
Element<S>& Element<S>::operator+=(const Element& o) {
  require_same_algebra(algebra_, o.algebra_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!ScalarTraits<S>::is_zero(o.coeffs_[i]))
      coeffs_[i] += o.coeffs_[i];
  return *this;
}

template <Scalar S>
Element<S>& Element<S>::operator-=(const Element& o) {
  require_same_algebra(algebra_, o.algebra_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (!ScalarTraits<S>::is_zero(o.coeffs_[i]))
      coeffs_[i] -= o.coeffs_[i];
  return *this;
}

template <Scalar S>
void Element<S>::add_product(const Element& a, const Element& b) {
  require_same_algebra(algebra_, a.algebra_);
  require_same_algebra(algebra_, b.algebra_);
  if (coeffs_.size() == 1) {
    coeffs_[0] += a.coeffs_[0] * b.coeffs_[0];
    return;
  }
  for (const auto& t : algebra_->product_terms()) {
    const S& x = a.coeffs_[t.left];
    if (ScalarTraits<S>::is_zero(x))
      continue;
    const S& y = b.coeffs_[t.right];
    if (ScalarTraits<S>::is_zero(y))
      continue;
    coeffs_[t.result] += x * y;
  }
}

template <Scalar S>
Element<S>& Element<S>::operator*=(const Element& o) {
  Element r(algebra_);
  r.add_product(*this, o);
  coeffs_ = std::move(r.coeffs_);
  return *this;
}

template <Scalar S>
Element<S>& Element<S>::operator*=(const S& s) {
  for (auto& c : coeffs_)
    if (!ScalarTraits<S>::is_zero(c))
      c *= s;
  return *this;
}

template <Scalar S>
Element<S>& Element<S>::operator/=(const S& s) {
  if (ScalarTraits<S>::is_zero(s))
    throw NotInvertible("division of an algebra element by zero");
  for (auto& c : coeffs_)
    if (!ScalarTraits<S>::is_zero(c))
      c /= s;
  return *this;
}

template <Scalar S>
std::string Element<S>::str() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const S& c = coeffs_[i];
    if (ScalarTraits<S>::is_zero(c))
      continue;
    std::string term;
    if (i == 0) {
      term = ScalarTraits<S>::format(c);
    } else {
      std::string name = algebra_->monomial_name(i);
      std::string cs = ScalarTraits<S>::format(c);
      if (cs == "1")
        term = name;
      else if (cs == "-1")
        term = "-" + name;
      else if (ScalarTraits<S>::to_complex(c).imag() != 0.0 && ScalarTraits<S>::to_complex(c).real() != 0.0)
        term = "(" + cs + ")*" + name;
      else
        term = cs + "*" + name;
    }
    if (!out.empty() && term.front() != '-')
      out += '+';
    out += term;
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------

template <Scalar S>
Element<S> invert(const Element<S>& a) {
  if (!a.is_unit())
    throw NotInvertible("element " + a.str() + " is not a unit");
  // a = a0 (1 + n) with n nilpotent; a^-1 = a0^-1 sum (-n)^k.
  const S inv0 = S(1) / a.reduce();
  Element<S> n = a * inv0;
  n.set_coeff(0, S(0));
  Element<S> result(a.algebra(), S(1));
  Element<S> term(a.algebra(), S(1));
  for (int k = 1; k < a.algebra()->truncation_degree(); ++k) {
    term = term * n;
    term = -term;
    if (term.is_zero())
      break;
    result += term;
  }
  return result * inv0;
}

template <Scalar S>
Element<S> log1m(const Element<S>& a) {
  if (!a.in_maximal_ideal())
    throw DomainError("log(1 - a) requires a in the maximal ideal, got a = " + a.str());
  Element<S> result(a.algebra());
  Element<S> power = a;
  for (long k = 1; k < a.algebra()->truncation_degree() && !power.is_zero(); ++k) {
    result -= power * ScalarTraits<S>::ratio(1, k);
    power = power * a;
  }
  return result;
}

namespace {

template <Scalar S>
Element<S> exp_nilpotent(const Element<S>& a) {
  Element<S> result(a.algebra(), S(1));
  Element<S> term(a.algebra(), S(1));
  for (long n = 1; n < a.algebra()->truncation_degree(); ++n) {
    term = term * a;
    term *= ScalarTraits<S>::ratio(1, n);
    if (term.is_zero())
      break;
    result += term;
  }
  return result;
}

} // namespace

template <Scalar S>
Element<S> exp(const Element<S>& a) {
  if constexpr (ScalarTraits<S>::exact) {
    if (!a.in_maximal_ideal())
      throw DomainError("exact exponential requires an argument in the maximal ideal, got " + a.str());
    return exp_nilpotent(a);
  } else {
    Element<S> nil = a;
    nil.set_coeff(0, S(0));
    return exp_nilpotent(nil) * std::exp(a.reduce());
  }
}

template <Scalar S>
Element<S> pow(const Element<S>& a, long n) {
  Element<S> base = n < 0 ? invert(a) : a;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Element<S> result(a.algebra(), S(1));
  while (e > 0) {
    if (e & 1UL)
      result = result * base;
    e >>= 1;
    if (e > 0)
      base = base * base;
  }
  return result;
}

FloatElement widen(const ExactElement& a) {
  FloatElement r(a.algebra());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    r.set_coeff(i, a.coeff(i).to_complex());
  return r;
}

FloatElement log_unit(const FloatElement& a) {
  if (!a.is_unit())
    throw NotInvertible("logarithm of a non-unit " + a.str());
  const FloatScalar a0 = a.reduce();
  // a = a0 (1 - m) with m = 1 - a / a0.
  FloatElement m = FloatElement(a.algebra(), 1.0) - a / a0;
  m.set_coeff(0, 0.0);
  FloatElement r = log1m(m);
  r.set_coeff(0, std::log(a0));
  return r;
}

double max_abs_diff(const FloatElement& a, const FloatElement& b) {
  require_same_algebra(a.algebra(), b.algebra());
  double d = 0.0;
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    d = std::max(d, std::abs(a.coeff(i) - b.coeff(i)));
  return d;
}

double max_abs(const FloatElement& a) {
  double d = 0.0;
  for (const auto& c : a.coeffs())
    d = std::max(d, std::abs(c));
  return d;
}

template class Element<ExactScalar>;
template class Element<FloatScalar>;

#define CCSYM_INSTANTIATE(S)                           \
  template Element<S> invert(const Element<S>&);       \
  template Element<S> log1m(const Element<S>&);        \
  template Element<S> exp(const Element<S>&);          \
  template Element<S> pow(const Element<S>&, long);

CCSYM_INSTANTIATE(ExactScalar)
CCSYM_INSTANTIATE(FloatScalar)

#undef CCSYM_INSTANTIATE

} // namespace ccsym
