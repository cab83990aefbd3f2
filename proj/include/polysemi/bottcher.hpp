#pragma once

// Böttcher coordinates at infinity, handled through the coordinate w = 1/z.
// For a polynomial P of degree n the germ p(w) = 1/P(1/w) lies in w^n F[[w]];
// the Böttcher function beta(z) = b z + ... with beta o P = beta^n becomes
// psi(w) = 1/beta(1/w) = c w + ..., c = 1/b, and psi o p = psi^n.

#include <cmath>
#include <string>
#include <vector>

#include "polysemi/errors.hpp"
#include "polysemi/polynomial.hpp"
#include "polysemi/series.hpp"

namespace polysemi {

// Germ of w -> 1/p(1/w) at 0, known through index trunc.
template <ScalarField S>
TruncatedSeries<S> to_zero_coordinate(const Polynomial<S>& p, long trunc) {
  if (p.degree() < 1) throw PreconditionError("to_zero_coordinate needs degree >= 1");
  const long n = p.degree();
  const auto& ctx = p.context();
  TruncatedSeries<S> out(ctx, trunc);
  if (trunc < n) return out;
  // 1/P(1/w) = w^n / (a_n + a_{n-1} w + ... + a_0 w^n)
  std::vector<S> rev(static_cast<std::size_t>(n) + 1, ctx.zero());
  for (long k = 0; k <= n; ++k) rev[static_cast<std::size_t>(k)] = p.coeff(n - k);
  const auto inv = reciprocal(TruncatedSeries<S>(ctx, std::move(rev), trunc - n));
  for (long i = 0; i <= trunc - n; ++i) out.set(i + n, inv[i]);
  return out;
}

template <ScalarField S>
double default_tolerance(const typename S::context_type& ctx) {
  if constexpr (is_exact_v<S>) {
    (void)ctx;
    return 0.0;
  } else {
    return std::ldexp(1.0, static_cast<int>(-ctx.precision / 2));
  }
}

namespace detail {

// BigComplex work runs with extra guard bits; exact scalars pass through.
inline constexpr long kGuardBits = 64;

template <ScalarField S>
typename S::context_type widen_ctx(const typename S::context_type& ctx, long extra) {
  if constexpr (is_exact_v<S>) {
    (void)extra;
    return ctx;
  } else {
    return {ctx.precision + extra};
  }
}

template <ScalarField S>
S widen_scalar(const S& x, long extra) {
  if constexpr (is_exact_v<S>) {
    (void)extra;
    return x;
  } else {
    return x.with_precision(x.precision() + extra);
  }
}

template <ScalarField S>
Polynomial<S> widen(const Polynomial<S>& p, long extra) {
  std::vector<S> c;
  for (const auto& x : p.coeffs()) c.push_back(widen_scalar(x, extra));
  return Polynomial<S>(widen_ctx<S>(p.context(), extra), std::move(c));
}

template <ScalarField S>
TruncatedSeries<S> widen(const TruncatedSeries<S>& s, long extra) {
  std::vector<S> c;
  for (const auto& x : s.coeffs()) c.push_back(widen_scalar(x, extra));
  return TruncatedSeries<S>(widen_ctx<S>(s.context(), extra), std::move(c), s.trunc());
}

}  // namespace detail

template <ScalarField S>
struct BottcherData {
  Polynomial<S> base;
  TruncatedSeries<S> psi;  // BigComplex: carries kGuardBits beyond the base precision
  long branch_index = 0;
  S beta_leading;       // b with b^(n-1) = lead(base); psi[1] = 1/b
  double residual = 0;  // max |(psi o p - psi^n)_i| within the horizon
  long residual_horizon = 0;
  double tolerance = 0;
};

// Solves psi o p = psi^n one coefficient at a time. The branch selects the
// (n-1)-th root b of the leading coefficient (principal root first).
template <ScalarField S>
BottcherData<S> bottcher_series(const Polynomial<S>& base, long trunc, long branch = 0, double tol = -1) {
  const long n = base.degree();
  if (n < 2) throw PreconditionError("bottcher_series needs degree >= 2");
  if (trunc < 2) throw PreconditionError("bottcher_series needs trunc >= 2");
  if (tol < 0) tol = default_tolerance<S>(base.context());
  const long guard = is_exact_v<S> ? 0 : detail::kGuardBits;
  const Polynomial<S> wide = detail::widen(base, guard);
  const auto& ctx = wide.context();

  const auto roots = roots_in_field(wide.lead(), n - 1);
  if (roots.empty())
    throw PreconditionError("the (n-1)-th root of the leading coefficient is not in the scalar field");
  const long count = static_cast<long>(roots.size());
  const long idx = ((branch % count) + count) % count;
  const S b = roots[static_cast<std::size_t>(idx)];
  const S c = b.inverse();
  const S c_pow_n_inv = power(c, n).inverse();
  const S inv_n = ctx.from_rational(Rational(1, n));

  // psi = c w (1 + f_1 w + f_2 w^2 + ...), v = (1 + f)^n.
  const long top = trunc + n - 1;
  const auto p = to_zero_coordinate(wide, top);
  std::vector<TruncatedSeries<S>> p_pow{p};  // p_pow[j] = p^(j+1)
  while ((static_cast<long>(p_pow.size()) + 1) * n <= top) p_pow.push_back(mul(p_pow.back(), p));

  std::vector<S> f(static_cast<std::size_t>(trunc), ctx.zero());
  std::vector<S> v(static_cast<std::size_t>(trunc), ctx.zero());
  f[0] = ctx.one();
  v[0] = ctx.one();
  for (long m = 1; m < trunc; ++m) {
    S lhs = ctx.zero();
    for (long k = 0; k < m && (k + 1) * n <= n + m; ++k) {
      const S& pk = p_pow[static_cast<std::size_t>(k)][n + m];
      if (!pk.is_zero() && !f[static_cast<std::size_t>(k)].is_zero()) lhs += f[static_cast<std::size_t>(k)] * pk;
    }
    lhs = lhs * c;
    S partial = ctx.zero();
    for (long k = 1; k < m; ++k) {
      const S& fk = f[static_cast<std::size_t>(k)];
      const S& vk = v[static_cast<std::size_t>(m - k)];
      if (fk.is_zero() || vk.is_zero()) continue;
      partial += fk * vk * ctx.from_int((n + 1) * k - m);
    }
    partial = partial * ctx.from_rational(Rational(1, m));
    f[static_cast<std::size_t>(m)] = (lhs * c_pow_n_inv - partial) * inv_n;
    v[static_cast<std::size_t>(m)] = f[static_cast<std::size_t>(m)] * ctx.from_int(n) + partial;
  }

  TruncatedSeries<S> psi_wide(ctx, trunc);
  for (long m = 0; m < trunc; ++m) psi_wide.set(m + 1, c * f[static_cast<std::size_t>(m)]);
  // psi keeps the guard bits: rounding it back is amplified by psi^{-1}.
  BottcherData<S> bd{base, psi_wide, idx, detail::widen_scalar(b, -guard), 0.0, 0, tol};
  const auto lhs = compose(psi_wide, p);
  const auto rhs = pow(psi_wide, n);
  bd.residual_horizon = std::min(lhs.trunc(), rhs.trunc());
  for (long i = 0; i <= bd.residual_horizon; ++i) bd.residual = std::max(bd.residual, (lhs[i] - rhs[i]).abs_double());
  if (bd.residual > tol)
    throw ConstructionFailed("Böttcher functional-equation residual " + std::to_string(bd.residual) +
                                 " exceeds tolerance " + std::to_string(tol),
                             bd.residual);
  return bd;
}

// psi o p o psi^{-1}, the generator p read in the Böttcher coordinate of the base.
template <ScalarField S>
TruncatedSeries<S> conjugate_generator(const BottcherData<S>& bd, const Polynomial<S>& p) {
  if (p.degree() < 2) throw PreconditionError("conjugate_generator needs degree >= 2");
  const long guard = is_exact_v<S> ? 0 : detail::kGuardBits;
  const auto psi = detail::widen(bd.psi, guard);
  long extra = guard;
  if constexpr (!is_exact_v<S>) extra = psi.context().precision - p.context().precision;
  const auto inv = comp_inverse(psi);
  const auto av = to_zero_coordinate(detail::widen(p, extra), psi.trunc() + p.degree());
  return detail::widen(compose(psi, compose(av, inv)), -guard);
}

template <ScalarField S>
struct MonomialityResult {
  bool is_monomial = false;
  long order = 0;
  S leading;
  double max_tail = 0;
  long horizon = 0;
};

template <ScalarField S>
MonomialityResult<S> monomiality_test(const TruncatedSeries<S>& q, double tol) {
  const auto ord = q.order();
  if (!ord || *ord < 2) throw PreconditionError("monomiality_test needs Ord0 >= 2");
  if (q.trunc() < 2 * *ord)
    throw InconclusiveError("horizon " + std::to_string(q.trunc()) + " is shorter than 2*Ord0 = " +
                            std::to_string(2 * *ord));
  MonomialityResult<S> r{false, *ord, q[*ord], 0.0, q.trunc()};
  for (long i = *ord + 1; i <= q.trunc(); ++i) r.max_tail = std::max(r.max_tail, q[i].abs_double());
  if constexpr (is_exact_v<S>) {
    r.is_monomial = r.max_tail == 0.0;
    for (long i = *ord + 1; i <= q.trunc() && r.is_monomial; ++i) r.is_monomial = q[i].is_zero();
  } else {
    r.is_monomial = r.max_tail <= tol;
  }
  return r;
}

}  // namespace polysemi
