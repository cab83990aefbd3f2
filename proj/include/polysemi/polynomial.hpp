#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "polysemi/errors.hpp"
#include "polysemi/field.hpp"

namespace polysemi {

// Dense univariate polynomial, coefficient of z^i at index i. The zero
// polynomial is representable (empty coefficient vector) so that
// differences can be formed; generators themselves always have degree >= 1.
template <ScalarField S>
class Polynomial {
 public:
  using scalar_type = S;
  using context_type = typename S::context_type;

  explicit Polynomial(context_type ctx) : ctx_(std::move(ctx)) {}
  Polynomial(context_type ctx, std::vector<S> coeffs) : ctx_(std::move(ctx)), c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const context_type& ctx, const S& coeff, long power) {
    std::vector<S> c(static_cast<std::size_t>(power) + 1, ctx.zero());
    c.back() = coeff;
    return Polynomial(ctx, std::move(c));
  }
  static Polynomial constant(const context_type& ctx, const S& v) { return Polynomial(ctx, {v}); }
  static Polynomial identity(const context_type& ctx) { return monomial(ctx, ctx.one(), 1); }
  // z -> a z + b
  static Polynomial affine(const context_type& ctx, const S& a, const S& b) { return Polynomial(ctx, {b, a}); }

  const context_type& context() const { return ctx_; }
  const std::vector<S>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  const S& lead() const {
    if (c_.empty()) throw PreconditionError("leading coefficient of the zero polynomial");
    return c_.back();
  }
  S coeff(long i) const {
    if (i < 0 || i > degree()) return ctx_.zero();
    return c_[static_cast<std::size_t>(i)];
  }

  S operator()(const S& x) const {
    S acc = ctx_.zero();
    for (std::size_t k = c_.size(); k-- > 0;) acc = acc * x + c_[k];
    return acc;
  }

  Polynomial derivative() const {
    std::vector<S> d;
    for (std::size_t k = 1; k < c_.size(); ++k) d.push_back(c_[k] * ctx_.from_int(static_cast<long>(k)));
    return Polynomial(ctx_, std::move(d));
  }

  Polynomial scaled(const S& k) const {
    Polynomial r = *this;
    for (auto& x : r.c_) x = x * k;
    r.trim();
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    auto ctx = combine(a.ctx_, b.ctx_);
    std::vector<S> c(std::max(a.c_.size(), b.c_.size()), ctx.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
    return Polynomial(ctx, std::move(c));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b.scaled(-a.ctx_.one()); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    auto ctx = combine(a.ctx_, b.ctx_);
    if (a.is_zero() || b.is_zero()) return Polynomial(ctx);
    std::vector<S> c(a.c_.size() + b.c_.size() - 1, ctx.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j].is_zero()) continue;
        c[i + j] += a.c_[i] * b.c_[j];
      }
    }
    return Polynomial(ctx, std::move(c));
  }

  // Exact coefficientwise equality (bitwise for BigComplex).
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::string s;
    for (std::size_t k = c_.size(); k-- > 0;) {
      if (c_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[k].to_string() + ")";
      if (k == 1) s += "*z";
      if (k > 1) s += "*z^" + std::to_string(k);
    }
    return s;
  }

  void append_canonical(std::string& out) const {
    out += std::to_string(c_.size());
    out.push_back('|');
    for (const auto& x : c_) x.append_canonical(out);
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  context_type ctx_;
  std::vector<S> c_;
};

// outer(inner(z)) by Horner's rule; refuses results above max_degree.
template <ScalarField S>
Polynomial<S> compose(const Polynomial<S>& outer, const Polynomial<S>& inner, long max_degree = 1000000) {
  auto ctx = combine(outer.context(), inner.context());
  if (outer.degree() > 0 && inner.degree() > 0 && outer.degree() > max_degree / std::max(1L, inner.degree()))
    throw SizeError("composite degree exceeds cap " + std::to_string(max_degree));
  if (outer.is_zero()) return Polynomial<S>(ctx);
  Polynomial<S> acc = Polynomial<S>::constant(ctx, outer.lead());
  for (long k = outer.degree() - 1; k >= 0; --k) {
    acc = acc * inner;
    acc = acc + Polynomial<S>::constant(ctx, outer.coeffs()[static_cast<std::size_t>(k)]);
  }
  return acc;
}

// Largest coefficient magnitude of a - b.
template <ScalarField S>
double max_coeff_distance(const Polynomial<S>& a, const Polynomial<S>& b) {
  const Polynomial<S> d = a - b;
  double m = 0.0;
  for (const auto& x : d.coeffs()) m = std::max(m, x.abs_double());
  return m;
}

// lambda^{-1} o p o lambda for lambda(z) = a z + b.
template <ScalarField S>
Polynomial<S> affine_conjugate(const Polynomial<S>& p, const S& a, const S& b) {
  const auto& ctx = p.context();
  const Polynomial<S> lambda = Polynomial<S>::affine(ctx, a, b);
  const S a_inv = a.inverse();
  const Polynomial<S> lambda_inv = Polynomial<S>::affine(ctx, a_inv, -(b * a_inv));
  return compose(lambda_inv, compose(p, lambda));
}

template <ScalarField S>
Polynomial<BigComplex> to_big_complex(const Polynomial<S>& p, long precision) {
  std::vector<BigComplex> c;
  for (const auto& x : p.coeffs()) c.push_back(to_big_complex(x, precision));
  return Polynomial<BigComplex>(BigComplexContext{precision}, std::move(c));
}

}  // namespace polysemi
