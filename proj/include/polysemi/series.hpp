#pragma once

// Truncated formal power series at 0. A series carries coefficients
// 0..trunc(); everything above trunc() is unknown, not zero. Operations
// attach the largest index up to which their output is exact.

#include <algorithm>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "polysemi/errors.hpp"
#include "polysemi/field.hpp"

namespace polysemi {

template <ScalarField S>
class TruncatedSeries {
 public:
  using scalar_type = S;
  using context_type = typename S::context_type;

  TruncatedSeries(context_type ctx, long trunc) : ctx_(std::move(ctx)) {
    if (trunc < 0) throw PreconditionError("truncation order must be non-negative");
    c_.assign(static_cast<std::size_t>(trunc) + 1, ctx_.zero());
  }

  // Coefficients beyond trunc are dropped, missing ones are zero.
  TruncatedSeries(context_type ctx, std::vector<S> coeffs, long trunc) : TruncatedSeries(std::move(ctx), trunc) {
    const std::size_t n = std::min(coeffs.size(), c_.size());
    for (std::size_t i = 0; i < n; ++i) c_[i] = std::move(coeffs[i]);
  }

  static TruncatedSeries monomial(const context_type& ctx, const S& coeff, long power, long trunc) {
    TruncatedSeries r(ctx, trunc);
    if (power <= trunc) r.c_[static_cast<std::size_t>(power)] = coeff;
    return r;
  }

  static TruncatedSeries identity(const context_type& ctx, long trunc) {
    return monomial(ctx, ctx.one(), 1, trunc);
  }

  long trunc() const { return static_cast<long>(c_.size()) - 1; }
  const context_type& context() const { return ctx_; }
  const std::vector<S>& coeffs() const { return c_; }

  const S& operator[](long i) const { return c_[static_cast<std::size_t>(i)]; }
  void set(long i, S v) {
    if (i < 0 || i > trunc()) throw PreconditionError("series index outside the truncation horizon");
    c_[static_cast<std::size_t>(i)] = std::move(v);
  }

  // Index of the first nonzero coefficient, or nullopt if none is known.
  std::optional<long> order() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return static_cast<long>(i);
    return std::nullopt;
  }

  // Explicit reduction of the horizon; extending is refused.
  TruncatedSeries with_trunc(long n) const {
    if (n > trunc()) throw PreconditionError("cannot extend a truncation horizon");
    TruncatedSeries r(ctx_, n);
    for (long i = 0; i <= n; ++i) r.c_[static_cast<std::size_t>(i)] = c_[static_cast<std::size_t>(i)];
    return r;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }

  TruncatedSeries scaled(const S& k) const {
    TruncatedSeries r = *this;
    for (auto& x : r.c_)
      if (!x.is_zero()) x = x * k;
    return r;
  }

  // "a*z^2+b*z^5 + O(z^N+1)"
  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].to_string() + ")";
      if (i > 0) s += "*z^" + std::to_string(i);
    }
    if (s.empty()) s = "0";
    return s + " + O(z^" + std::to_string(trunc() + 1) + ")";
  }

 private:
  context_type ctx_;
  std::vector<S> c_;
};

namespace detail {

template <class Ctx>
Ctx combine_ctx(const Ctx& a, const Ctx& b) {
  return combine(a, b);
}

// Cauchy product restricted to indices 0..horizon, skipping zero terms.
template <ScalarField S>
std::vector<S> product_coeffs(const std::vector<S>& a, const std::vector<S>& b, long horizon,
                              const typename S::context_type& ctx) {
  std::vector<S> out(static_cast<std::size_t>(horizon) + 1, ctx.zero());
  const long na = std::min<long>(static_cast<long>(a.size()) - 1, horizon);
  for (long i = 0; i <= na; ++i) {
    const S& ai = a[static_cast<std::size_t>(i)];
    if (ai.is_zero()) continue;
    const long nb = std::min<long>(static_cast<long>(b.size()) - 1, horizon - i);
    for (long j = 0; j <= nb; ++j) {
      const S& bj = b[static_cast<std::size_t>(j)];
      if (bj.is_zero()) continue;
      out[static_cast<std::size_t>(i + j)] += ai * bj;
    }
  }
  return out;
}

}  // namespace detail

template <ScalarField S>
TruncatedSeries<S> add(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  auto ctx = detail::combine_ctx(a.context(), b.context());
  const long n = std::min(a.trunc(), b.trunc());
  TruncatedSeries<S> r(ctx, n);
  for (long i = 0; i <= n; ++i) r.set(i, a[i] + b[i]);
  return r;
}

template <ScalarField S>
TruncatedSeries<S> sub(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  auto ctx = detail::combine_ctx(a.context(), b.context());
  const long n = std::min(a.trunc(), b.trunc());
  TruncatedSeries<S> r(ctx, n);
  for (long i = 0; i <= n; ++i) r.set(i, a[i] - b[i]);
  return r;
}

// Cauchy product truncated at min(N_a, N_b).
template <ScalarField S>
TruncatedSeries<S> mul(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  auto ctx = detail::combine_ctx(a.context(), b.context());
  const long n = std::min(a.trunc(), b.trunc());
  return TruncatedSeries<S>(ctx, detail::product_coeffs(a.coeffs(), b.coeffs(), n, ctx), n);
}

// Product with the sharper exact horizon min(N_a + Ord(b), N_b + Ord(a)).
template <ScalarField S>
TruncatedSeries<S> mul_sound(const TruncatedSeries<S>& a, const TruncatedSeries<S>& b) {
  auto ctx = detail::combine_ctx(a.context(), b.context());
  const long oa = a.order().value_or(a.trunc() + 1);
  const long ob = b.order().value_or(b.trunc() + 1);
  const long n = std::min(a.trunc() + ob, b.trunc() + oa);
  return TruncatedSeries<S>(ctx, detail::product_coeffs(a.coeffs(), b.coeffs(), n, ctx), n);
}

// s^e, e >= 0, with exact horizon N + (e - 1) * Ord(s).
template <ScalarField S>
TruncatedSeries<S> pow(const TruncatedSeries<S>& s, long e) {
  if (e < 0) throw PreconditionError("negative series power");
  if (e == 0) return TruncatedSeries<S>::monomial(s.context(), s.context().one(), 0, s.trunc());
  TruncatedSeries<S> r = s;
  for (long k = 1; k < e; ++k) r = mul_sound(r, s);
  return r;
}

// Multiplicative inverse of a series with invertible constant term.
template <ScalarField S>
TruncatedSeries<S> reciprocal(const TruncatedSeries<S>& s) {
  if (s[0].is_zero()) throw PreconditionError("reciprocal of a series without constant term");
  const long n = s.trunc();
  const auto& ctx = s.context();
  TruncatedSeries<S> r(ctx, n);
  const S inv0 = s[0].inverse();
  r.set(0, inv0);
  for (long m = 1; m <= n; ++m) {
    S acc = ctx.zero();
    for (long k = 1; k <= m; ++k)
      if (!s[k].is_zero() && !r[m - k].is_zero()) acc += s[k] * r[m - k];
    r.set(m, -(acc * inv0));
  }
  return r;
}

// outer(inner(z)). Requires inner[0] == 0. With d = Ord(inner) and
// o = max(1, Ord(outer)), the result is exact through
//   H = min(N_inner + (o - 1) * d, (N_outer + 1) * d - 1),
// which is never below min(N_inner, N_outer * d).
template <ScalarField S>
TruncatedSeries<S> compose(const TruncatedSeries<S>& outer, const TruncatedSeries<S>& inner) {
  auto ctx = detail::combine_ctx(outer.context(), inner.context());
  if (!inner[0].is_zero()) throw PreconditionError("compose: inner series has a nonzero constant term");
  const auto d_opt = inner.order();
  if (!d_opt) {
    // Inner is zero within its horizon: only the constant term survives.
    TruncatedSeries<S> r(ctx, inner.trunc());
    r.set(0, outer[0]);
    return r;
  }
  const long d = *d_opt;
  const long o = std::max(1L, outer.order().value_or(outer.trunc() + 1));
  long horizon = (outer.trunc() + 1) * d - 1;
  if (o <= outer.trunc()) horizon = std::min(horizon, inner.trunc() + (o - 1) * d);

  std::vector<S> out(static_cast<std::size_t>(horizon) + 1, ctx.zero());
  out[0] = outer[0];
  // Running power inner^j, built by repeated multiplication with the sparse inner.
  std::vector<std::pair<long, S>> inner_terms;
  for (long i = 1; i <= std::min(inner.trunc(), horizon); ++i)
    if (!inner[i].is_zero()) inner_terms.emplace_back(i, inner[i]);
  std::vector<S> power(static_cast<std::size_t>(horizon) + 1, ctx.zero());
  power[0] = ctx.one();
  long low = 0;  // lowest possibly nonzero index of the running power
  const long jmax = std::min(outer.trunc(), horizon / d);
  for (long j = 1; j <= jmax; ++j) {
    std::vector<S> next(static_cast<std::size_t>(horizon) + 1, ctx.zero());
    for (long i = low; i <= horizon; ++i) {
      const S& pi = power[static_cast<std::size_t>(i)];
      if (pi.is_zero()) continue;
      for (const auto& [k, c] : inner_terms) {
        if (i + k > horizon) break;
        next[static_cast<std::size_t>(i + k)] += pi * c;
      }
    }
    power = std::move(next);
    low += d;
    const S& cj = outer[j];
    if (cj.is_zero()) continue;
    for (long i = low; i <= horizon; ++i) {
      const S& pi = power[static_cast<std::size_t>(i)];
      if (!pi.is_zero()) out[static_cast<std::size_t>(i)] += cj * pi;
    }
  }
  return TruncatedSeries<S>(ctx, std::move(out), horizon);
}

// Compositional inverse by Lagrange inversion: [z^m] t = (1/m) [w^(m-1)] (w/s)^m.
template <ScalarField S>
TruncatedSeries<S> comp_inverse(const TruncatedSeries<S>& s) {
  const auto ord = s.order();
  if (!s[0].is_zero() || !ord || *ord != 1) throw PreconditionError("comp_inverse needs Ord0 = 1");
  const long n = s.trunc();
  const auto& ctx = s.context();
  // s / w, known through n - 1.
  TruncatedSeries<S> shifted(ctx, n - 1);
  for (long i = 1; i <= n; ++i) shifted.set(i - 1, s[i]);
  const TruncatedSeries<S> h = reciprocal(shifted);
  TruncatedSeries<S> t(ctx, n);
  TruncatedSeries<S> hp = h;
  for (long m = 1; m <= n; ++m) {
    if (m > 1) hp = mul(hp, h);
    t.set(m, hp[m - 1] * ctx.from_rational(Rational(1, m)));
  }
  return t;
}

struct OrdL0 {
  long ord = 0;
  std::optional<long> l0;  // nullopt encodes infinity
  bool certain = true;
};

// Ord0 and l0 read off the known coefficients. A single nonzero coefficient
// gives l0 = infinity with certain = false: a later term may exist.
template <ScalarField S>
OrdL0 ord_l0(const TruncatedSeries<S>& s) {
  const auto ord = s.order();
  if (!ord) throw IndeterminateError("indeterminate: series vanishes within its truncation horizon");
  for (long i = *ord + 1; i <= s.trunc(); ++i)
    if (!s[i].is_zero()) return {*ord, i - *ord, true};
  return {*ord, std::nullopt, false};
}

}  // namespace polysemi
