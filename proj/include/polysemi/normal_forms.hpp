#pragma once

// Affine normal forms: simultaneous conjugacy into power maps a z^n or into
// +-T_n, and the common compositional root T = z^r R(z^l) of a family.

#include <cmath>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "polysemi/errors.hpp"
#include "polysemi/field.hpp"
#include "polysemi/polynomial.hpp"

namespace polysemi {

// z -> a z + b
template <ScalarField S>
struct AffineMap {
  S a;
  S b;

  Polynomial<S> as_polynomial(const typename S::context_type& ctx) const { return Polynomial<S>::affine(ctx, a, b); }
  std::string to_string() const { return "z -> (" + a.to_string() + ") z + (" + b.to_string() + ")"; }
};

enum class NormalFormKind { None, PowerFamily, ChebyshevFamily, TPowerForm };
std::string to_string(NormalFormKind k);

template <ScalarField S>
struct NormalFormReport {
  NormalFormKind kind = NormalFormKind::None;
  std::optional<AffineMap<S>> lambda;    // power / Chebyshev families
  std::vector<int> signs;                // Chebyshev: P_i conjugates to signs[i] * T_{n_i}
  std::optional<Polynomial<S>> t;        // TPowerForm: P_i = omegas[i] * T^{o exponents[i]}
  std::optional<Polynomial<S>> r_poly;   // T = z^r R(z^l)
  long l = 0;
  long r = 0;
  std::vector<S> omegas;
  std::vector<long> exponents;
  std::string reason;                    // why kind is None
};

// Field-independent text form of a NormalFormReport.
struct NormalFormSummary {
  std::string kind = "none";
  std::string lambda;           // "z -> (a) z + (b)"
  std::vector<int> signs;
  std::string t;
  std::string r_poly;
  long l = 0;
  long r = 0;
  std::vector<std::string> omegas;
  std::vector<long> exponents;
  std::string reason;
};

template <ScalarField S>
NormalFormSummary summarize(const NormalFormReport<S>& r) {
  NormalFormSummary s;
  s.kind = to_string(r.kind);
  if (r.lambda) s.lambda = r.lambda->to_string();
  s.signs = r.signs;
  if (r.t) s.t = r.t->to_string();
  if (r.r_poly) s.r_poly = r.r_poly->to_string();
  s.l = r.l;
  s.r = r.r;
  for (const auto& w : r.omegas) s.omegas.push_back(w.to_string());
  s.exponents = r.exponents;
  s.reason = r.reason;
  return s;
}

// n = base^exponent with base minimal.
struct PowerBase {
  long base;
  long exponent;
};
PowerBase minimal_power_base(long n);

// T_n(cos x) = cos(n x), via T_{n+1} = 2z T_n - T_{n-1}.
template <ScalarField S>
Polynomial<S> chebyshev(const typename S::context_type& ctx, long n) {
  if (n <= 0) throw PreconditionError("chebyshev: n must be >= 1");
  const Polynomial<S> two_z = Polynomial<S>::monomial(ctx, ctx.from_int(2), 1);
  Polynomial<S> prev = Polynomial<S>::constant(ctx, ctx.one());
  Polynomial<S> cur = Polynomial<S>::identity(ctx);
  for (long k = 1; k < n; ++k) {
    Polynomial<S> next = two_z * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

namespace detail {

template <ScalarField S>
double nf_tolerance(const std::vector<Polynomial<S>>& gens, double tol) {
  if constexpr (is_exact_v<S>) {
    return 0.0;
  } else {
    if (tol >= 0) return tol;
    return std::ldexp(1.0, static_cast<int>(-gens.front().context().precision / 2));
  }
}

// a == b, or coefficientwise within tol relative to the larger coefficient.
template <ScalarField S>
bool poly_matches(const Polynomial<S>& a, const Polynomial<S>& b, double tol) {
  if constexpr (is_exact_v<S>) {
    (void)tol;
    return a == b;
  } else {
    double scale = 1.0;
    for (const auto& c : a.coeffs()) scale = std::max(scale, c.abs_double());
    return max_coeff_distance(a, b) <= tol * scale;
  }
}

template <ScalarField S>
bool is_monomial(const Polynomial<S>& p, double tol) {
  const long n = p.degree();
  double scale = std::max(1.0, p.lead().abs_double());
  for (long i = 0; i < n; ++i) {
    if constexpr (is_exact_v<S>) {
      if (!p.coeff(i).is_zero()) return false;
    } else {
      if (p.coeff(i).abs_double() > tol * scale) return false;
    }
  }
  return true;
}

// Translation centering p: -a_{n-1} / (n a_n).
template <ScalarField S>
S centering_shift(const Polynomial<S>& p) {
  const auto& ctx = p.context();
  const long n = p.degree();
  return -(p.coeff(n - 1) * (ctx.from_int(n) * p.lead()).inverse());
}

}  // namespace detail

// lambda(z) = z + b with lambda^{-1} o P_i o lambda = a_i z^{n_i} for all i.
template <ScalarField S>
std::optional<AffineMap<S>> detect_power_conjugacy(const std::vector<Polynomial<S>>& gens, double tol = -1) {
  if (gens.empty()) return std::nullopt;
  for (const auto& g : gens)
    if (g.degree() < 2) throw PreconditionError("generators must have degree >= 2");
  tol = detail::nf_tolerance(gens, tol);
  const auto& ctx = gens.front().context();
  const S b = detail::centering_shift(gens.front());
  for (const auto& g : gens)
    if (!detail::is_monomial(affine_conjugate(g, ctx.one(), b), tol)) return std::nullopt;
  return AffineMap<S>{ctx.one(), b};
}

// lambda(z) = a z + b with lambda^{-1} o P_i o lambda = +-T_{n_i} for all i.
// After centering, Q(a z) = a s T_n(z) forces a^2 = -4 q_{n-2} / (n q_n).
template <ScalarField S>
std::optional<std::pair<AffineMap<S>, std::vector<int>>> detect_chebyshev_conjugacy(
    const std::vector<Polynomial<S>>& gens, double tol = -1) {
  if (gens.empty()) return std::nullopt;
  for (const auto& g : gens)
    if (g.degree() < 2) throw PreconditionError("generators must have degree >= 2");
  tol = detail::nf_tolerance(gens, tol);
  const auto& ctx = gens.front().context();
  const Polynomial<S>& p = gens.front();
  const long n = p.degree();
  const S b = detail::centering_shift(p);
  const Polynomial<S> q = affine_conjugate(p, ctx.one(), b);
  const S qn2 = q.coeff(n - 2);
  if (approx_zero(qn2, tol * std::max(1.0, q.lead().abs_double()))) return std::nullopt;
  const S a2 = -(ctx.from_int(4) * qn2 * (ctx.from_int(n) * q.lead()).inverse());
  std::vector<Polynomial<S>> cheb;
  for (const auto& g : gens) cheb.push_back(chebyshev<S>(ctx, g.degree()));
  for (const S& a : roots_in_field(a2, 2)) {
    std::vector<int> signs;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Polynomial<S> c = affine_conjugate(gens[i], a, b);
      if (detail::poly_matches(c, cheb[i], tol))
        signs.push_back(1);
      else if (detail::poly_matches(c, cheb[i].scaled(-ctx.one()), tol))
        signs.push_back(-1);
      else
        break;
    }
    if (signs.size() == gens.size()) return std::make_pair(AffineMap<S>{a, b}, std::move(signs));
  }
  return std::nullopt;
}

namespace detail {

template <ScalarField S>
Polynomial<S> iterate(const Polynomial<S>& t, long times) {
  Polynomial<S> acc = t;
  for (long k = 1; k < times; ++k) acc = compose(t, acc);
  return acc;
}

// T of degree t, leading coefficient c, with T^{o l} = target: the z^{n-j}
// coefficient of T^{o l} is affine in x_{t-j} once x_{t-1..t-j+1} are fixed.
template <ScalarField S>
std::optional<Polynomial<S>> compositional_root(const Polynomial<S>& target, long t, long l, const S& c,
                                                double tol) {
  const auto& ctx = target.context();
  const long n = target.degree();
  std::vector<S> x(static_cast<std::size_t>(t + 1), ctx.zero());
  x[static_cast<std::size_t>(t)] = c;
  for (long j = 1; j <= t; ++j) {
    const std::size_t slot = static_cast<std::size_t>(t - j);
    x[slot] = ctx.zero();
    const S v0 = iterate(Polynomial<S>(ctx, x), l).coeff(n - j);
    x[slot] = ctx.one();
    const S v1 = iterate(Polynomial<S>(ctx, x), l).coeff(n - j);
    const S slope = v1 - v0;
    if (approx_zero(slope, tol)) return std::nullopt;
    x[slot] = (target.coeff(n - j) - v0) * slope.inverse();
  }
  Polynomial<S> root(ctx, x);
  if (!poly_matches(iterate(root, l), target, tol)) return std::nullopt;
  return root;
}

template <ScalarField S>
std::vector<S> candidate_units(const typename S::context_type& ctx) {
  std::vector<S> out;
  if constexpr (is_exact_v<S>) {
    const auto g = unit_group(ctx);
    S u = ctx.one();
    for (long k = 0; k < g.order; ++k) {
      out.push_back(u);
      u = u * g.generator;
    }
  } else {
    for (long k = 0; k < 12; ++k) out.push_back(BigComplex::unit_root(ctx.precision, k, 12));
  }
  return out;
}

template <ScalarField S>
long unity_order_of(const S& s, double tol) {
  const auto o = root_of_unity_order(s, 720, std::max(tol, 1e-30));
  return o ? *o : 0;
}

}  // namespace detail

// Best effort: a common T with P_i = omega_i T^{o l_i}, omega_i roots of unity,
// and T = z^r R(z^l) with omega_i^l = 1. The omegas are reported in the input
// coordinate. `degrees` are the n_i recorded by the decision step.
template <ScalarField S>
NormalFormReport<S> extract_t_power_form(const std::vector<Polynomial<S>>& gens, const std::vector<long>& degrees,
                                         double tol = -1) {
  if (gens.empty() || degrees.size() != gens.size())
    throw PreconditionError("extract_t_power_form: one degree per generator required");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].degree() != degrees[i] || degrees[i] < 2)
      throw PreconditionError("extract_t_power_form: decision data disagrees with generator " + std::to_string(i + 1));
  tol = detail::nf_tolerance(gens, tol);
  NormalFormReport<S> rep;
  const auto& ctx = gens.front().context();

  const PowerBase b0 = minimal_power_base(degrees.front());
  for (long d : degrees) {
    const PowerBase b = minimal_power_base(d);
    if (b.base != b0.base) {
      std::string lattice;
      for (long e : degrees) lattice += (lattice.empty() ? "" : ", ") + std::to_string(e);
      rep.reason = "degrees (" + lattice + ") are not powers of a common base";
      return rep;
    }
    rep.exponents.push_back(b.exponent);
  }
  const long t = b0.base;
  std::size_t g = 0;
  for (std::size_t i = 1; i < gens.size(); ++i)
    if (rep.exponents[i] < rep.exponents[g]) g = i;
  const long lg = rep.exponents[g];
  // lead(T^{o l}) = c^{1 + t + ... + t^{l-1}}
  long e_lead = 0;
  for (long k = 0, pw = 1; k < lg; ++k, pw *= t) e_lead += pw;

  int attempts = 0;
  double best_arg = 0;
  for (const S& u : detail::candidate_units<S>(ctx)) {
    const Polynomial<S> target = gens[g].scaled(u.inverse());
    for (const S& c : roots_in_field(target.lead(), e_lead)) {
      if (++attempts > 256) break;
      const auto root = lg == 1 ? std::optional<Polynomial<S>>(target)
                                : detail::compositional_root(target, t, lg, c, tol);
      if (!root) continue;
      std::vector<S> omegas;
      long l = 1;
      bool ok = true;
      for (std::size_t i = 0; i < gens.size() && ok; ++i) {
        const Polynomial<S> it = detail::iterate(*root, rep.exponents[i]);
        const S w = gens[i].lead() * it.lead().inverse();
        const long order = detail::unity_order_of(w, tol);
        ok = order > 0 && detail::poly_matches(gens[i], it.scaled(w), tol);
        if (ok) {
          omegas.push_back(w);
          l = std::lcm(l, order);
        }
      }
      if (!ok) continue;
      // Shape z^r R(z^l): every exponent carrying a nonzero coefficient is r mod l.
      long r = -1;
      std::vector<S> rc;
      for (long k = 0; k <= root->degree() && ok; ++k) {
        if (approx_zero(root->coeff(k), tol)) continue;
        if (r < 0) r = k % l;
        if (k % l != r) ok = false;
      }
      if (!ok) continue;
      // Prefer the least l, then the leading coefficient of least argument.
      const double arg = std::fmod(std::arg(root->lead().to_cd()) + 2 * M_PI + 1e-9, 2 * M_PI);
      if (rep.kind == NormalFormKind::TPowerForm && (rep.l < l || (rep.l == l && best_arg <= arg))) continue;
      for (long k = r; k <= root->degree(); k += l) rc.push_back(root->coeff(k));
      rep.kind = NormalFormKind::TPowerForm;
      rep.t = *root;
      rep.r_poly = Polynomial<S>(ctx, std::move(rc));
      rep.l = l;
      rep.r = r;
      rep.omegas = std::move(omegas);
      best_arg = arg;
    }
  }
  if (rep.kind != NormalFormKind::TPowerForm)
    rep.reason = "no compositional root of degree " + std::to_string(t) + " found over the coefficient field";
  return rep;
}

}  // namespace polysemi
