#pragma once

#include <mpfr.h>

#include <complex>
#include <string>

#include "polysemi/rational.hpp"

namespace polysemi {

// RAII handle for an mpfr_t. Binary operations round to the lower of the two
// operand precisions.
class BigFloat {
 public:
  explicit BigFloat(long precision = 128);
  BigFloat(long precision, double v);
  BigFloat(long precision, const Rational& q);
  BigFloat(long precision, long v);
  static BigFloat from_string(long precision, const std::string& text);
  static BigFloat pi(long precision);

  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  BigFloat& operator=(BigFloat&& o) noexcept;
  ~BigFloat();

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }
  BigFloat with_precision(long precision) const;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits = 0) const;

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
  BigFloat operator-() const;

  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

  friend BigFloat abs(const BigFloat& a);
  friend BigFloat sqrt(const BigFloat& a);
  friend BigFloat log(const BigFloat& a);
  friend BigFloat exp(const BigFloat& a);
  friend BigFloat atan2(const BigFloat& y, const BigFloat& x);
  friend BigFloat hypot(const BigFloat& a, const BigFloat& b);
  friend void sin_cos(const BigFloat& a, BigFloat& s, BigFloat& c);

 private:
  mpfr_t v_;
};

struct BigComplexContext;

// Complex number with arbitrary-precision real and imaginary parts.
class BigComplex {
 public:
  using context_type = BigComplexContext;
  static constexpr bool exact = false;

  explicit BigComplex(long precision = 128) : re_(precision), im_(precision) {}
  BigComplex(BigFloat re, BigFloat im);
  BigComplex(long precision, std::complex<double> z)
      : re_(precision, z.real()), im_(precision, z.imag()) {}
  BigComplex(long precision, const Rational& re, const Rational& im = 0)
      : re_(precision, re), im_(precision, im) {}

  // exp(2 pi i * num / den)
  static BigComplex unit_root(long precision, long num, long den);
  static BigComplex polar(const BigFloat& modulus, const BigFloat& angle);

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }
  long precision() const { return re_.precision() < im_.precision() ? re_.precision() : im_.precision(); }
  context_type context() const;
  BigComplex with_precision(long precision) const {
    return {re_.with_precision(precision), im_.with_precision(precision)};
  }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  BigComplex& operator+=(const BigComplex& o);
  BigComplex& operator-=(const BigComplex& o);
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

  friend BigComplex operator+(BigComplex a, const BigComplex& b) { return a += b; }
  friend BigComplex operator-(BigComplex a, const BigComplex& b) { return a -= b; }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b);
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
  BigComplex operator-() const { return {-re_, -im_}; }

  // Bitwise equality of the stored values.
  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  BigComplex inverse() const;
  BigFloat abs() const { return hypot(re_, im_); }
  BigFloat arg() const { return atan2(im_, re_); }
  BigComplex log() const;
  BigComplex exp() const;

  double abs_double() const { return abs().to_double(); }
  std::complex<double> to_cd() const { return {re_.to_double(), im_.to_double()}; }
  std::string to_string(int digits = 0) const;
  // Bit-exact text, used as a hash key. Numeric callers never rely on it
  // for equality decisions.
  void append_canonical(std::string& out) const;

 private:
  BigFloat re_;
  BigFloat im_;
};

struct BigComplexContext {
  long precision = 128;

  BigComplex zero() const { return BigComplex(precision); }
  BigComplex one() const { return BigComplex(precision, Rational(1)); }
  BigComplex from_int(long v) const { return BigComplex(precision, Rational(v)); }
  BigComplex from_rational(const Rational& q) const { return BigComplex(precision, q); }
  friend bool operator==(const BigComplexContext&, const BigComplexContext&) = default;
  std::string describe() const { return "bigcomplex(" + std::to_string(precision) + ")"; }
};

inline BigComplexContext BigComplex::context() const { return {precision()}; }

// Mixed precision is allowed; the result context takes the lower precision.
inline BigComplexContext combine(const BigComplexContext& a, const BigComplexContext& b) {
  return {a.precision < b.precision ? a.precision : b.precision};
}

BigComplex pow(const BigComplex& z, long n);

}  // namespace polysemi
