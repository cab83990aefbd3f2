#include "polysemi/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

#include "polysemi/errors.hpp"

namespace polysemi {

BigComplex to_big_complex(const GaussianRational& s, long precision) {
  return BigComplex(precision, s.real(), s.imag());
}

BigComplex to_big_complex(const Cyclotomic& s, long precision) {
  BigComplex acc(precision);
  const auto& c = s.coeffs();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (sgn(c[k]) == 0) continue;
    BigComplex term = BigComplex::unit_root(precision, static_cast<long>(k), s.order());
    acc += BigComplex(precision, c[k]) * term;
  }
  return acc;
}

UnitGroup<GaussianRational> unit_group(const GaussianContext&) { return {4, GaussianRational::i()}; }

UnitGroup<Cyclotomic> unit_group(const CyclotomicContext& ctx) {
  if (ctx.order % 2 == 0) return {ctx.order, ctx.zeta(1)};
  return {2L * ctx.order, -ctx.zeta(1)};
}

std::optional<UnitRationalSplit> split_unit_rational(const GaussianRational& s) {
  if (s.is_zero()) return std::nullopt;
  if (s.is_real()) return UnitRationalSplit{sgn(s.real()) > 0 ? 0L : 2L, abs(s.real())};
  if (sgn(s.real()) == 0) return UnitRationalSplit{sgn(s.imag()) > 0 ? 1L : 3L, abs(s.imag())};
  return std::nullopt;
}

std::optional<UnitRationalSplit> split_unit_rational(const Cyclotomic& s) {
  if (s.is_zero()) return std::nullopt;
  const auto group = unit_group(s.context());
  // s * g^(W - t) rational and positive  <=>  s = g^t * q.
  const Cyclotomic g_inv = power(group.generator, group.order - 1);
  Cyclotomic probe = s;
  for (long t = 0; t < group.order; ++t) {
    if (probe.is_rational() && sgn(probe.coeffs()[0]) > 0) return UnitRationalSplit{t, probe.coeffs()[0]};
    probe = probe * g_inv;
  }
  return std::nullopt;
}

BigComplex principal_root(const BigComplex& a, long n) {
  if (n <= 0) throw PreconditionError("root index must be positive");
  if (a.is_zero()) return a;
  if (n == 1) return a;
  const long p = a.precision();
  BigComplex l = a.log();
  BigFloat inv_n = BigFloat(p, 1L) / BigFloat(p, n);
  return BigComplex(l.real() * inv_n, l.imag() * inv_n).exp();
}

namespace {

// Modular inverse of a mod m (gcd(a, m) = 1).
long inverse_mod(long a, long m) {
  long t = 0, new_t = 1, r = m, new_r = ((a % m) + m) % m;
  while (new_r != 0) {
    const long q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  if (r > 1) throw InvariantViolation("inverse_mod: not invertible");
  return t < 0 ? t + m : t;
}

template <class S>
std::vector<S> exact_roots(const S& a, long n) {
  if (n <= 0) throw PreconditionError("root index must be positive");
  if (a.is_zero() || n == 1) return {a};
  const auto split = split_unit_rational(a);
  if (!split) return {};
  const auto q = exact_root(split->modulus, static_cast<unsigned long>(n));
  if (!q) return {};
  const auto group = unit_group(a.context());
  const long w = group.order;
  // Solve n * s = t (mod w).
  const long g = gcd_l(n, w);
  if (split->unit_exponent % g != 0) return {};
  const long w_g = w / g;
  const long s0 = w_g == 1 ? 0 : (split->unit_exponent / g) % w_g * inverse_mod((n / g) % w_g, w_g) % w_g;
  std::vector<S> roots;
  for (long k = 0; k < g; ++k) roots.push_back(power(group.generator, s0 + k * w_g) * a.context().from_rational(*q));
  // Principal branch first: closest argument to Arg(a) / n, ties to the
  // counter-clockwise side.
  const double target = std::arg(a.to_cd()) / static_cast<double>(n);
  auto distance = [&](const S& r) {
    double d = std::arg(r.to_cd()) - target;
    d = std::remainder(d, 2.0 * std::numbers::pi);
    return std::abs(d) - 1e-12 * (d > 0 ? 1.0 : 0.0);
  };
  std::stable_sort(roots.begin(), roots.end(), [&](const S& x, const S& y) { return distance(x) < distance(y); });
  return roots;
}

BigInt round_to_integer(const BigFloat& x) {
  BigFloat h = x;
  mpfr_rint(h.get(), x.get(), MPFR_RNDN);
  BigInt out;
  mpfr_get_z(out.get_mpz_t(), h.get(), MPFR_RNDN);
  return out;
}

// Roots of a in Q(i) beyond the unit-times-rational case. With D the common
// denominator of a, D r is a Gaussian integer, so it is recovered by rounding
// a numeric root and checked exactly.
std::vector<GaussianRational> gaussian_roots(const GaussianRational& a, long n) {
  const BigInt d = lcm(a.real().get_den(), a.imag().get_den());
  const long bits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2) + mpz_sizeinbase(a.real().get_num().get_mpz_t(), 2) +
                                      mpz_sizeinbase(a.imag().get_num().get_mpz_t(), 2)) +
                    128;
  const BigComplex big = to_big_complex(a, bits);
  const BigComplex r0 = principal_root(big, n);
  const BigFloat scale(bits, Rational(d));
  for (long k = 0; k < n; ++k) {
    const BigComplex r = k == 0 ? r0 : r0 * BigComplex::unit_root(bits, k, n);
    Rational re(round_to_integer(r.real() * scale), d), im(round_to_integer(r.imag() * scale), d);
    re.canonicalize();
    im.canonicalize();
    const GaussianRational c(re, im);
    if (power(c, n) != a) continue;
    std::vector<GaussianRational> roots;
    GaussianRational u(1);
    for (long t = 0; t < 4; ++t, u = u * GaussianRational::i())
      if (power(u, n) == GaussianRational(1)) roots.push_back(u * c);
    return roots;
  }
  return {};
}

}  // namespace

template <>
std::vector<GaussianRational> roots_in_field(const GaussianRational& a, long n) {
  auto roots = exact_roots(a, n);
  if (!roots.empty() || a.is_zero()) return roots;
  roots = gaussian_roots(a, n);
  const double target = std::arg(a.to_cd()) / static_cast<double>(n);
  auto distance = [&](const GaussianRational& r) {
    double d = std::remainder(std::arg(r.to_cd()) - target, 2.0 * std::numbers::pi);
    return std::abs(d) - 1e-12 * (d > 0 ? 1.0 : 0.0);
  };
  std::stable_sort(roots.begin(), roots.end(), [&](const auto& x, const auto& y) { return distance(x) < distance(y); });
  return roots;
}


template <>
std::vector<Cyclotomic> roots_in_field(const Cyclotomic& a, long n) {
  return exact_roots(a, n);
}

template <>
std::vector<BigComplex> roots_in_field(const BigComplex& a, long n) {
  const BigComplex r = principal_root(a, n);
  std::vector<BigComplex> roots{r};
  for (long k = 1; k < n; ++k) roots.push_back(r * BigComplex::unit_root(a.precision(), k, n));
  return roots;
}

std::optional<long> numeric_unity_order(const BigComplex& s, long max_order, double tol) {
  if (s.is_zero()) return std::nullopt;
  if (std::abs(s.abs_double() - 1.0) > tol) return std::nullopt;
  const BigComplex one(s.precision(), Rational(1));
  auto lands = [&](long l) { return (pow(s, l) - one).abs_double() <= tol; };
  // Continued fraction of x = arg(s) / 2pi in [0, 1).
  const BigFloat two_pi = BigFloat::pi(s.precision()) * BigFloat(s.precision(), 2L);
  double x = (s.arg() / two_pi).to_double();
  if (x < 0) x += 1.0;
  long k_prev = 1, k = 0;  // denominators of the convergents
  double rest = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_fl = std::floor(rest);
    if (a_fl > static_cast<double>(max_order)) break;
    const long k_next = static_cast<long>(a_fl) * k + k_prev;
    if (k_next > max_order) break;
    k_prev = k;
    k = k_next;
    if (lands(k)) return k;
    const double frac = rest - a_fl;
    if (frac < 1e-300) break;
    rest = 1.0 / frac;
  }
  return std::nullopt;
}

}  // namespace polysemi
