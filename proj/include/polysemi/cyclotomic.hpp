#pragma once

#include <complex>
#include <string>
#include <vector>

#include "polysemi/rational.hpp"

namespace polysemi {

struct CyclotomicContext;

int euler_phi(int m);

// Integer coefficients of the m-th cyclotomic polynomial, ascending, monic.
const std::vector<BigInt>& cyclotomic_polynomial(int m);

// Exact element of Q(zeta_m), zeta_m = exp(2 pi i / m), stored as the
// coefficient vector on the power basis 1, zeta, ..., zeta^(phi(m)-1).
// Always reduced, so equality is componentwise.
class Cyclotomic {
 public:
  using context_type = CyclotomicContext;
  static constexpr bool exact = true;

  Cyclotomic() : order_(1), c_(1, Rational(0)) {}
  Cyclotomic(int order, std::vector<Rational> coeffs);
  Cyclotomic(int order, const Rational& q);

  static Cyclotomic zeta(int order, long power = 1);

  int order() const { return order_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  context_type context() const;

  bool is_zero() const;
  bool is_rational() const;

  Cyclotomic& operator+=(const Cyclotomic& o);
  Cyclotomic& operator-=(const Cyclotomic& o);
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }
  Cyclotomic& operator/=(const Cyclotomic& o) { return *this = *this * o.inverse(); }

  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
  Cyclotomic operator-() const;

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    return a.order_ == b.order_ && a.c_ == b.c_;
  }

  Cyclotomic inverse() const;

  double abs_double() const { return std::abs(to_cd()); }
  std::complex<double> to_cd() const;
  std::string to_string() const;
  void append_canonical(std::string& out) const;

 private:
  void check_same_field(const Cyclotomic& o) const;

  int order_;
  std::vector<Rational> c_;
};

struct CyclotomicContext {
  int order = 1;

  Cyclotomic zero() const { return Cyclotomic(order, Rational(0)); }
  Cyclotomic one() const { return Cyclotomic(order, Rational(1)); }
  Cyclotomic from_int(long v) const { return Cyclotomic(order, Rational(v)); }
  Cyclotomic from_rational(const Rational& q) const { return Cyclotomic(order, q); }
  Cyclotomic zeta(long power = 1) const { return Cyclotomic::zeta(order, power); }
  friend bool operator==(const CyclotomicContext&, const CyclotomicContext&) = default;
  std::string describe() const { return "cyclotomic(" + std::to_string(order) + ")"; }
};

inline CyclotomicContext Cyclotomic::context() const { return {order_}; }

CyclotomicContext combine(const CyclotomicContext& a, const CyclotomicContext& b);

}  // namespace polysemi
