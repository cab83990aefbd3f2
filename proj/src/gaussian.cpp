#include "polysemi/gaussian.hpp"

#include "polysemi/errors.hpp"

namespace polysemi {

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero in Q(i)");
  if (is_real()) return GaussianRational(Rational(1 / re_));
  const Rational n = norm();
  return {Rational(re_ / n), Rational(-im_ / n)};
}

namespace {

std::string imag_part(const Rational& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return polysemi::to_string(im) + "i";
}

}  // namespace

std::string GaussianRational::to_string() const {
  if (is_real()) return polysemi::to_string(re_);
  if (sgn(re_) == 0) return imag_part(im_);
  std::string s = polysemi::to_string(re_);
  if (sgn(im_) > 0) s.push_back('+');
  return s + imag_part(im_);
}

void GaussianRational::append_canonical(std::string& out) const {
  polysemi::append_canonical(out, re_);
  polysemi::append_canonical(out, im_);
}

}  // namespace polysemi
