#pragma once

// Generic scalar-field helpers shared by the series, polynomial and
// decision layers. Every scalar type S provides: S::context_type, S::exact,
// context(), is_zero(), arithmetic, inverse(), abs_double(), to_cd(),
// to_string() and append_canonical().

#include <cmath>
#include <complex>
#include <concepts>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polysemi/bigfloat.hpp"
#include "polysemi/cyclotomic.hpp"
#include "polysemi/gaussian.hpp"

namespace polysemi {

template <class S>
concept ScalarField = requires(const S& a, const S& b, std::string& out) {
  typename S::context_type;
  { S::exact } -> std::convertible_to<bool>;
  { a.context() } -> std::same_as<typename S::context_type>;
  { a + b } -> std::same_as<S>;
  { a - b } -> std::same_as<S>;
  { a * b } -> std::same_as<S>;
  { -a } -> std::same_as<S>;
  { a.inverse() } -> std::same_as<S>;
  { a.is_zero() } -> std::convertible_to<bool>;
  { a.abs_double() } -> std::convertible_to<double>;
  { a.to_cd() };
  { a.to_string() } -> std::convertible_to<std::string>;
  a.append_canonical(out);
};

template <class S>
inline constexpr bool is_exact_v = S::exact;

BigComplex to_big_complex(const GaussianRational& s, long precision);
BigComplex to_big_complex(const Cyclotomic& s, long precision);
inline BigComplex to_big_complex(const BigComplex& s, long precision) { return s.with_precision(precision); }

template <ScalarField S>
S power(const S& a, long n) {
  if (n < 0) return power(a.inverse(), -n);
  S result = a.context().one();
  S base = a;
  while (n > 0) {
    if (n & 1) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

// Exact fields compare exactly; BigComplex compares |a - b| <= tol.
template <ScalarField S>
bool approx_equal(const S& a, const S& b, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return a == b;
  } else {
    return (a - b).abs_double() <= tol;
  }
}

template <ScalarField S>
bool approx_zero(const S& a, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return a.is_zero();
  } else {
    return a.abs_double() <= tol;
  }
}

// The finite cyclic group of roots of unity inside an exact field.
template <class S>
struct UnitGroup {
  long order;
  S generator;
};

UnitGroup<GaussianRational> unit_group(const GaussianContext& ctx);
UnitGroup<Cyclotomic> unit_group(const CyclotomicContext& ctx);

// Writes s = g^t * q with g the unit-group generator and q > 0 rational.
struct UnitRationalSplit {
  long unit_exponent;
  Rational modulus;
};
std::optional<UnitRationalSplit> split_unit_rational(const GaussianRational& s);
std::optional<UnitRationalSplit> split_unit_rational(const Cyclotomic& s);

BigComplex principal_root(const BigComplex& a, long n);

// Solutions of x^n = a. Exact fields: best effort, finds every root of the
// form (root of unity) * (positive rational). BigComplex: all n roots,
// principal branch first.
template <ScalarField S>
std::vector<S> roots_in_field(const S& a, long n);

// Least l <= max_order with s^l == 1 (exact fields only).
template <ScalarField S>
std::optional<long> exact_unity_order(const S& s, long max_order) {
  static_assert(is_exact_v<S>);
  if (s.is_zero()) return std::nullopt;
  const S one = s.context().one();
  S acc = s;
  for (long l = 1; l <= max_order; ++l) {
    if (acc == one) return l;
    acc = acc * s;
  }
  return std::nullopt;
}

template <>
std::vector<GaussianRational> roots_in_field(const GaussianRational& a, long n);
template <>
std::vector<Cyclotomic> roots_in_field(const Cyclotomic& a, long n);
template <>
std::vector<BigComplex> roots_in_field(const BigComplex& a, long n);

// BigComplex test: ||s| - 1| <= tol, then continued-fraction candidates for
// arg(s) / 2pi; returns the least denominator l <= max_order with
// |s^l - 1| <= tol.
std::optional<long> numeric_unity_order(const BigComplex& s, long max_order, double tol);

template <ScalarField S>
std::optional<long> root_of_unity_order(const S& s, long max_order, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return exact_unity_order(s, max_order);
  } else {
    return numeric_unity_order(s, max_order, tol);
  }
}

// exponent e in [0, l) with s = exp(2 pi i e / l); s must be an l-th root of unity.
template <ScalarField S>
long unity_exponent(const S& s, long l) {
  const double turns = std::arg(s.to_cd()) / (2.0 * 3.14159265358979323846);
  long e = static_cast<long>(std::llround(turns * static_cast<double>(l))) % l;
  return e < 0 ? e + l : e;
}

}  // namespace polysemi
