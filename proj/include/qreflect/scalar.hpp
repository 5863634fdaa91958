#pragma once

#include <gmpxx.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <variant>

namespace qreflect {

using Rational = mpq_class;
using Complex = std::complex<double>;

enum class Mode { exact, floating };

std::string to_string(Mode mode);

/// Mixing exact and floating operands in one expression.
struct mode_error : std::logic_error {
  using std::logic_error::logic_error;
};

/// Domain errors: division by zero, zero to a negative power, ...
struct math_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A Pochhammer/Gamma ratio hit a vanishing factor for the requested
/// parameters.  Callers that use random parameters catch this and redraw.
struct vanishing_factor : math_error {
  using math_error::math_error;
};

/// Canonicalized rational from a numerator/denominator pair.
Rational make_rational(long num, long den = 1);

/// Parses "41", "-3/7", ... and canonicalizes.  Throws math_error on a zero
/// denominator or malformed input.
Rational parse_rational(const std::string& text);

/// Dual-mode scalar: an exact GMP rational or a complex double.  Arithmetic
/// requires both operands in the same mode; promotion is only ever explicit
/// through to_float().
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}

  static Scalar exact(long num, long den = 1) { return Scalar(make_rational(num, den)); }
  static Scalar exact(const Rational& r) { return Scalar(r); }
  static Scalar floating(Complex z) { return Scalar(z); }
  static Scalar floating(double x) { return Scalar(Complex(x, 0.0)); }
  static Scalar zero(Mode mode) { return mode == Mode::exact ? exact(0) : floating(0.0); }
  static Scalar one(Mode mode) { return mode == Mode::exact ? exact(1) : floating(1.0); }

  Mode mode() const { return std::holds_alternative<Rational>(v_) ? Mode::exact : Mode::floating; }
  bool is_exact() const { return mode() == Mode::exact; }

  const Rational& rat() const;
  Complex cplx() const;

  Scalar to_float() const;

  bool is_zero() const;
  bool is_one() const;
  double abs() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  /// Exact equality in exact mode; bitwise complex equality in float mode.
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  Scalar inv() const;

  /// Integer power; e < 0 requires a nonzero base.
  Scalar pow(long e) const;

  /// General power for float mode (used only by exploratory float paths).
  Scalar pow_general(const Scalar& e) const;

  std::string str() const;

 private:
  explicit Scalar(Rational r) : v_(std::move(r)) {}
  explicit Scalar(Complex z) : v_(z) {}

  std::variant<Rational, Complex> v_;
};

/// Balanced q-integer q^{n-1} + q^{n-3} + ... + q^{1-n} (= n at q = 1).
Scalar qnum(long n, const Scalar& q);

/// Finite Pochhammer ratio:
///   n >= 0 -> 1 / prod_{j=0}^{n-1} (1 - alpha * base^j)
///   n <  0 -> prod_{j=1}^{|n|} (1 - alpha * base^{-j})
/// Throws vanishing_factor if a factor in a denominator position vanishes.
Scalar poch_ratio(const Scalar& alpha, const Scalar& base, long n);

/// Finite Gamma ratio:
///   n >= 0 -> prod_{j=0}^{n-1} (z + j)
///   n <  0 -> 1 / prod_{j=1}^{|n|} (z - j)
/// Throws vanishing_factor if a factor in a denominator position vanishes.
Scalar gamma_ratio(const Scalar& z, long n);

}  // namespace qreflect
