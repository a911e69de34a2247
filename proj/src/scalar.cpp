#include "ccsym/scalar.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace ccsym {

GaussianRational::GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {
  canonicalize();
}

void GaussianRational::canonicalize() {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  if (sgn(im_) == 0 && sgn(o.im_) == 0) {
    re_ *= o.re_;
    return *this;
  }
  mpq_class re = re_ * o.re_ - im_ * o.im_;
  mpq_class im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) {
  if (o.is_zero())
    throw std::domain_error("division by zero");
  if (sgn(o.im_) == 0) {
    re_ /= o.re_;
    im_ /= o.re_;
    return *this;
  }
  mpq_class n = o.norm();
  *this *= o.conj();
  re_ /= n;
  im_ /= n;
  return *this;
}

namespace {

std::string rational_str(const mpq_class& q) {
  if (q.get_den() == 1)
    return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

} // namespace

std::string GaussianRational::str() const {
  if (sgn(im_) == 0)
    return rational_str(re_);
  std::string im;
  if (im_ == 1)
    im = "i";
  else if (im_ == -1)
    im = "-i";
  else
    im = rational_str(im_) + "*i";
  if (sgn(re_) == 0)
    return im;
  return rational_str(re_) + (sgn(im_) > 0 ? "+" : "") + im;
}

bool operator<(const GaussianRational& a, const GaussianRational& b) {
  if (a.real() != b.real())
    return a.real() < b.real();
  return a.imag() < b.imag();
}

double to_double(const mpq_class& q) {
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 53 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 53)
    return num.get_d() / den.get_d();
  return q.get_d();
}

std::complex<double> GaussianRational::to_complex() const { return {to_double(re_), to_double(im_)}; }

mpq_class exact_rational(double value) {
  if (!std::isfinite(value))
    throw std::domain_error("non-finite value has no rational form");
  mpq_class q(value);
  q.canonicalize();
  return q;
}

std::string ScalarTraits<FloatScalar>::format(const FloatScalar& s) {
  if (s.imag() == 0.0)
    return fmt::format("{}", s.real());
  if (s.real() == 0.0)
    return fmt::format("{}*i", s.imag());
  return fmt::format("{}{}{}*i", s.real(), s.imag() < 0 ? "" : "+", s.imag());
}

} // namespace ccsym
