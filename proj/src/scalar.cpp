#include "qreflect/scalar.hpp"

#include <cmath>
#include <cstdio>

namespace qreflect {

std::string to_string(Mode mode) { return mode == Mode::exact ? "exact" : "float"; }

Rational make_rational(long num, long den) {
  if (den == 0) throw math_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (r.set_str(text, 10) != 0) throw math_error("malformed rational: '" + text + "'");
  if (r.get_den() == 0) throw math_error("rational with zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

const Rational& Scalar::rat() const {
  if (!is_exact()) throw mode_error("rat() on a float scalar");
  return std::get<Rational>(v_);
}

Complex Scalar::cplx() const {
  if (is_exact()) throw mode_error("cplx() on an exact scalar");
  return std::get<Complex>(v_);
}

Scalar Scalar::to_float() const {
  if (!is_exact()) return *this;
  return floating(Complex(std::get<Rational>(v_).get_d(), 0.0));
}

bool Scalar::is_zero() const {
  if (is_exact()) return sgn(std::get<Rational>(v_)) == 0;
  return std::get<Complex>(v_) == Complex(0.0, 0.0);
}

bool Scalar::is_one() const {
  if (is_exact()) return std::get<Rational>(v_) == 1;
  return std::get<Complex>(v_) == Complex(1.0, 0.0);
}

double Scalar::abs() const {
  if (is_exact()) return std::fabs(std::get<Rational>(v_).get_d());
  return std::abs(std::get<Complex>(v_));
}

Scalar Scalar::operator-() const {
  if (is_exact()) return exact(Rational(-std::get<Rational>(v_)));
  return floating(-std::get<Complex>(v_));
}

namespace {

void check_modes(const Scalar& a, const Scalar& b, const char* op) {
  if (a.mode() != b.mode())
    throw mode_error(std::string("mode mismatch in '") + op + "': " + to_string(a.mode()) +
                     " vs " + to_string(b.mode()));
}

}  // namespace

Scalar& Scalar::operator+=(const Scalar& o) {
  check_modes(*this, o, "+");
  if (is_exact())
    std::get<Rational>(v_) += std::get<Rational>(o.v_);
  else
    std::get<Complex>(v_) += std::get<Complex>(o.v_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  check_modes(*this, o, "-");
  if (is_exact())
    std::get<Rational>(v_) -= std::get<Rational>(o.v_);
  else
    std::get<Complex>(v_) -= std::get<Complex>(o.v_);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  check_modes(*this, o, "*");
  if (is_exact())
    std::get<Rational>(v_) *= std::get<Rational>(o.v_);
  else
    std::get<Complex>(v_) *= std::get<Complex>(o.v_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  check_modes(*this, o, "/");
  if (o.is_zero()) throw math_error("division by zero");
  if (is_exact())
    std::get<Rational>(v_) /= std::get<Rational>(o.v_);
  else
    std::get<Complex>(v_) /= std::get<Complex>(o.v_);
  return *this;
}

bool Scalar::operator==(const Scalar& o) const {
  check_modes(*this, o, "==");
  if (is_exact()) return std::get<Rational>(v_) == std::get<Rational>(o.v_);
  return std::get<Complex>(v_) == std::get<Complex>(o.v_);
}

Scalar Scalar::inv() const {
  if (is_zero()) throw math_error("inverse of zero");
  return one(mode()) / *this;
}

Scalar Scalar::pow(long e) const {
  if (e == 0) return one(mode());
  if (is_zero()) {
    if (e < 0) throw math_error("zero to a negative power");
    return zero(mode());
  }
  Scalar base = e < 0 ? inv() : *this;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  Scalar acc = one(mode());
  while (k > 0) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return acc;
}

Scalar Scalar::pow_general(const Scalar& e) const {
  if (is_exact() || e.is_exact()) throw mode_error("pow_general requires float operands");
  return floating(std::pow(cplx(), e.cplx()));
}

std::string Scalar::str() const {
  if (is_exact()) return std::get<Rational>(v_).get_str();
  Complex z = std::get<Complex>(v_);
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
    return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

Scalar qnum(long n, const Scalar& q) {
  if (q.is_zero()) throw math_error("qnum at q = 0");
  if (n == 0) return Scalar::zero(q.mode());
  if (n < 0) return -qnum(-n, q);
  Scalar acc = Scalar::zero(q.mode());
  Scalar term = q.pow(n - 1);
  const Scalar qinv2 = q.pow(-2);
  for (long k = 0; k < n; ++k) {
    acc += term;
    if (k + 1 < n) term *= qinv2;
  }
  return acc;
}

Scalar poch_ratio(const Scalar& alpha, const Scalar& base, long n) {
  const Mode mode = alpha.mode();
  if (base.mode() != mode) throw mode_error("poch_ratio operands in different modes");
  Scalar acc = Scalar::one(mode);
  if (n >= 0) {
    Scalar p = Scalar::one(mode);
    for (long j = 0; j < n; ++j) {
      Scalar factor = Scalar::one(mode) - alpha * p;
      if (factor.is_zero())
        throw vanishing_factor("poch_ratio: vanishing factor at j = " + std::to_string(j));
      acc *= factor;
      p *= base;
    }
    return acc.inv();
  }
  if (base.is_zero()) throw math_error("poch_ratio with negative n at base = 0");
  const Scalar binv = base.inv();
  Scalar p = Scalar::one(mode);
  for (long j = 1; j <= -n; ++j) {
    p *= binv;
    acc *= Scalar::one(mode) - alpha * p;
  }
  return acc;
}

namespace {

Scalar integer_as(Mode mode, long k) {
  return mode == Mode::exact ? Scalar::exact(k) : Scalar::floating(static_cast<double>(k));
}

}  // namespace

Scalar gamma_ratio(const Scalar& z, long n) {
  const Mode mode = z.mode();
  Scalar acc = Scalar::one(mode);
  if (n >= 0) {
    for (long j = 0; j < n; ++j) acc *= z + integer_as(mode, j);
    return acc;
  }
  for (long j = 1; j <= -n; ++j) {
    Scalar factor = z - integer_as(mode, j);
    if (factor.is_zero())
      throw vanishing_factor("gamma_ratio: vanishing factor at j = " + std::to_string(j));
    acc *= factor;
  }
  return acc.inv();
}

}  // namespace qreflect
