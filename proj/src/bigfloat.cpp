#include "polysemi/bigfloat.hpp"

#include <algorithm>

#include "polysemi/errors.hpp"

namespace polysemi {

namespace {

mpfr_prec_t clamp_prec(long p) { return static_cast<mpfr_prec_t>(std::max<long>(p, MPFR_PREC_MIN)); }

long min_prec(const BigFloat& a, const BigFloat& b) { return std::min(a.precision(), b.precision()); }

}  // namespace

BigFloat::BigFloat(long precision) {
  mpfr_init2(v_, clamp_prec(precision));
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(long precision, double v) {
  mpfr_init2(v_, clamp_prec(precision));
  mpfr_set_d(v_, v, MPFR_RNDN);
}

BigFloat::BigFloat(long precision, const Rational& q) {
  mpfr_init2(v_, clamp_prec(precision));
  mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(long precision, long v) {
  mpfr_init2(v_, clamp_prec(precision));
  mpfr_set_si(v_, v, MPFR_RNDN);
}

BigFloat BigFloat::from_string(long precision, const std::string& text) {
  BigFloat r(precision);
  if (mpfr_set_str(r.v_, text.c_str(), 10, MPFR_RNDN) != 0)
    throw InputError("malformed floating literal '" + text + "'");
  return r;
}

BigFloat BigFloat::pi(long precision) {
  BigFloat r(precision);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& o) noexcept {
  // Steal the limbs; the source keeps a null limb pointer and is only valid
  // for destruction or assignment afterwards.
  v_[0] = o.v_[0];
  o.v_[0]._mpfr_d = nullptr;
}

BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this == &o) return *this;
  if (v_[0]._mpfr_d == nullptr)
    mpfr_init2(v_, mpfr_get_prec(o.v_));
  else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_))
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& o) noexcept {
  if (this == &o) return *this;
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  v_[0] = o.v_[0];
  o.v_[0]._mpfr_d = nullptr;
  return *this;
}

BigFloat::~BigFloat() {
  if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
}

BigFloat BigFloat::with_precision(long precision) const {
  BigFloat r(precision);
  mpfr_set(r.v_, v_, MPFR_RNDN);
  return r;
}

std::string BigFloat::to_string(int digits) const {
  if (mpfr_nan_p(v_)) return "nan";
  if (mpfr_inf_p(v_)) return sign() < 0 ? "-inf" : "inf";
  if (is_zero()) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(std::max(digits, 0)), v_, MPFR_RNDN);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string sign_part;
  if (s.front() == '-') {
    sign_part = "-";
    s.erase(s.begin());
  }
  while (s.size() > 1 && s.back() == '0') s.pop_back();
  std::string out = sign_part + s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  if (exp10 - 1 != 0) out += "e" + std::to_string(static_cast<long>(exp10 - 1));
  return out;
}

BigFloat& BigFloat::operator+=(const BigFloat& o) { return *this = *this + o; }
BigFloat& BigFloat::operator-=(const BigFloat& o) { return *this = *this - o; }
BigFloat& BigFloat::operator*=(const BigFloat& o) { return *this = *this * o; }
BigFloat& BigFloat::operator/=(const BigFloat& o) { return *this = *this / o; }

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(precision());
  mpfr_neg(r.v_, v_, MPFR_RNDN);
  return r;
}

BigFloat abs(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_abs(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat sqrt(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat log(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_log(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat exp(const BigFloat& a) {
  BigFloat r(a.precision());
  mpfr_exp(r.v_, a.v_, MPFR_RNDN);
  return r;
}

BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r(min_prec(y, x));
  mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(min_prec(a, b));
  mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
  return r;
}

void sin_cos(const BigFloat& a, BigFloat& s, BigFloat& c) {
  s = BigFloat(a.precision());
  c = BigFloat(a.precision());
  mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
}

BigComplex::BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.precision() != im_.precision()) {
    const long p = std::min(re_.precision(), im_.precision());
    re_ = re_.with_precision(p);
    im_ = im_.with_precision(p);
  }
}

BigComplex BigComplex::unit_root(long precision, long num, long den) {
  BigFloat angle = BigFloat::pi(precision + 16) * BigFloat(precision + 16, 2 * num) /
                   BigFloat(precision + 16, den);
  BigFloat s(precision), c(precision);
  sin_cos(angle, s, c);
  return {c.with_precision(precision), s.with_precision(precision)};
}

BigComplex BigComplex::polar(const BigFloat& modulus, const BigFloat& angle) {
  BigFloat s(angle.precision()), c(angle.precision());
  sin_cos(angle, s, c);
  return {modulus * c, modulus * s};
}

BigComplex& BigComplex::operator+=(const BigComplex& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

BigComplex& BigComplex::operator-=(const BigComplex& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

BigComplex operator*(const BigComplex& a, const BigComplex& b) {
  const long p = std::min(a.precision(), b.precision());
  BigComplex r(p);
  // Single rounding for each of ac - bd and ad + bc.
  mpfr_fmms(r.re_.get(), a.re_.get(), b.re_.get(), a.im_.get(), b.im_.get(), MPFR_RNDN);
  mpfr_fmma(r.im_.get(), a.re_.get(), b.im_.get(), a.im_.get(), b.re_.get(), MPFR_RNDN);
  return r;
}

BigComplex BigComplex::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero in BigComplex");
  const long p = precision();
  BigFloat n(p);
  mpfr_fmma(n.get(), re_.get(), re_.get(), im_.get(), im_.get(), MPFR_RNDN);
  return {re_ / n, -im_ / n};
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) { return a * b.inverse(); }

BigComplex BigComplex::log() const { return {polysemi::log(abs()), arg()}; }

BigComplex BigComplex::exp() const { return polar(polysemi::exp(re_), im_); }

std::string BigComplex::to_string(int digits) const {
  if (im_.is_zero()) return re_.to_string(digits);
  std::string im = im_.to_string(digits);
  if (re_.is_zero()) return im + "i";
  std::string s = re_.to_string(digits);
  if (im.front() != '-') s.push_back('+');
  return s + im + "i";
}

void BigComplex::append_canonical(std::string& out) const {
  out += re_.to_string();
  out.push_back(',');
  out += im_.to_string();
  out.push_back(';');
}

BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return pow(z.inverse(), -n);
  BigComplex result(z.precision(), Rational(1));
  BigComplex base = z;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace polysemi
