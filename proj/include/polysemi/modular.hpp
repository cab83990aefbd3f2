#pragma once

// Reduction of exact scalars into prime fields F_p, p < 2^62, used for
// fingerprinting compositions. Q(i) and Q(zeta_m) embed into F_p once p = 1
// mod the root order and the root maps to an element of that exact order.

#include <cstdint>
#include <optional>
#include <vector>

#include "polysemi/cyclotomic.hpp"
#include "polysemi/gaussian.hpp"
#include "polysemi/polynomial.hpp"

namespace polysemi {

class ModField {
 public:
  ModField(std::uint64_t p, std::uint64_t root, int root_order) : p_(p), root_(root), order_(root_order) {}

  std::uint64_t prime() const { return p_; }
  std::uint64_t root() const { return root_; }
  int root_order() const { return order_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
  }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p_ - 2); }

  // nullopt when p divides a denominator.
  std::optional<std::uint64_t> reduce(const Rational& q) const;
  std::optional<std::uint64_t> reduce(const GaussianRational& g) const;
  std::optional<std::uint64_t> reduce(const Cyclotomic& c) const;

 private:
  std::uint64_t p_;
  std::uint64_t root_;
  int order_;
};

bool is_prime_u64(std::uint64_t n);

// `count` distinct fields whose prime is 1 mod root_order, with a root of
// exact order root_order. Deterministic in (root_order, count, salt).
std::vector<ModField> modular_fields(int root_order, int count, std::uint64_t salt = 0);

// Root order needed to embed the scalar field of S.
inline int embedding_order(const GaussianContext&) { return 4; }
inline int embedding_order(const CyclotomicContext& ctx) { return ctx.order; }

// Reduced coefficient vector of p, or nullopt when a denominator vanishes mod p.
template <class S>
std::optional<std::vector<std::uint64_t>> reduce_poly(const Polynomial<S>& p, const ModField& f) {
  std::vector<std::uint64_t> out;
  out.reserve(p.coeffs().size());
  for (const auto& c : p.coeffs()) {
    auto r = f.reduce(c);
    if (!r) return std::nullopt;
    out.push_back(*r);
  }
  return out;
}

inline std::uint64_t eval_mod(const std::vector<std::uint64_t>& c, std::uint64_t x, const ModField& f) {
  std::uint64_t acc = 0;
  for (std::size_t k = c.size(); k-- > 0;) acc = f.add(f.mul(acc, x), c[k]);
  return acc;
}

}  // namespace polysemi
