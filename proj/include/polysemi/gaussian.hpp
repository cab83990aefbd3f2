#pragma once

#include <complex>
#include <string>

#include "polysemi/rational.hpp"

namespace polysemi {

struct GaussianContext;

// Exact element re + im*i of Q(i).
class GaussianRational {
 public:
  using context_type = GaussianContext;
  static constexpr bool exact = true;

  GaussianRational() = default;
  GaussianRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianRational(long v) : re_(v), im_(0) {}

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& real() const { return re_; }
  const Rational& imag() const { return im_; }
  context_type context() const;

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    *this = *this * o;
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    *this = *this * o.inverse();
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
    // Real operands are by far the common case in the property suites.
    if (a.is_real()) {
      if (b.is_real()) return {Rational(a.re_ * b.re_), Rational(0)};
      return {Rational(a.re_ * b.re_), Rational(a.re_ * b.im_)};
    }
    if (b.is_real()) return {Rational(a.re_ * b.re_), Rational(a.im_ * b.re_)};
    return {Rational(a.re_ * b.re_ - a.im_ * b.im_), Rational(a.re_ * b.im_ + a.im_ * b.re_)};
  }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  GaussianRational operator-() const { return {Rational(-re_), Rational(-im_)}; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  GaussianRational inverse() const;
  GaussianRational conj() const { return {re_, Rational(-im_)}; }
  Rational norm() const { return re_ * re_ + im_ * im_; }

  double abs_double() const { return std::abs(to_cd()); }
  std::complex<double> to_cd() const { return {re_.get_d(), im_.get_d()}; }
  std::string to_string() const;
  void append_canonical(std::string& out) const;

 private:
  Rational re_{0};
  Rational im_{0};
};

struct GaussianContext {
  GaussianRational zero() const { return {}; }
  GaussianRational one() const { return GaussianRational(1); }
  GaussianRational from_int(long v) const { return GaussianRational(v); }
  GaussianRational from_rational(const Rational& q) const { return GaussianRational(q); }
  friend bool operator==(const GaussianContext&, const GaussianContext&) { return true; }
  std::string describe() const { return "gaussian"; }
};

inline GaussianContext GaussianRational::context() const { return {}; }

inline GaussianContext combine(const GaussianContext& a, const GaussianContext&) { return a; }

}  // namespace polysemi
