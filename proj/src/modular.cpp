#include "polysemi/modular.hpp"

#include <random>

#include "polysemi/errors.hpp"

namespace polysemi {

std::uint64_t ModField::pow(std::uint64_t a, std::uint64_t e) const {
  std::uint64_t r = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::optional<std::uint64_t> ModField::reduce(const Rational& q) const {
  const auto num = static_cast<std::uint64_t>(mpz_fdiv_ui(q.get_num_mpz_t(), p_));
  const auto den = static_cast<std::uint64_t>(mpz_fdiv_ui(q.get_den_mpz_t(), p_));
  if (den == 0) return std::nullopt;
  return mul(num, inv(den));
}

std::optional<std::uint64_t> ModField::reduce(const GaussianRational& g) const {
  if (order_ % 4 != 0) throw PreconditionError("field has no square root of -1");
  const auto re = reduce(g.real());
  const auto im = reduce(g.imag());
  if (!re || !im) return std::nullopt;
  const std::uint64_t i = pow(root_, static_cast<std::uint64_t>(order_ / 4));
  return add(*re, mul(*im, i));
}

std::optional<std::uint64_t> ModField::reduce(const Cyclotomic& c) const {
  if (order_ % c.order() != 0) throw PreconditionError("field has no root of the required order");
  const std::uint64_t zeta = pow(root_, static_cast<std::uint64_t>(order_ / c.order()));
  std::uint64_t acc = 0;
  std::uint64_t zk = 1;
  for (const auto& q : c.coeffs()) {
    if (sgn(q) != 0) {
      const auto r = reduce(q);
      if (!r) return std::nullopt;
      acc = add(acc, mul(*r, zk));
    }
    zk = mul(zk, zeta);
  }
  return acc;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  const ModField f(n, 1, 1);
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = f.pow(a, d);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = f.mul(x, x);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q != 0) continue;
    out.push_back(q);
    while (n % q == 0) n /= q;
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

std::vector<ModField> modular_fields(int root_order, int count, std::uint64_t salt) {
  if (root_order <= 0) throw PreconditionError("root order must be positive");
  const auto m = static_cast<std::uint64_t>(root_order);
  const auto factors = prime_factors(m);
  std::mt19937_64 rng(0x5eed ^ (salt * 0x9e3779b97f4a7c15ULL) ^ m);
  std::vector<ModField> out;
  // Walk down from a salted start below 2^61 through p = 1 mod m.
  std::uint64_t p = (1ULL << 61) - (rng() % (1ULL << 40));
  p -= (p - 1) % m;
  while (static_cast<int>(out.size()) < count) {
    if (is_prime_u64(p)) {
      const ModField base(p, 1, 1);
      std::uint64_t root = 0;
      for (int attempt = 0; attempt < 200 && root == 0; ++attempt) {
        const std::uint64_t x = 2 + rng() % (p - 3);
        const std::uint64_t y = base.pow(x, (p - 1) / m);
        bool exact = y != 0;
        for (std::uint64_t q : factors)
          if (base.pow(y, m / q) == 1) exact = false;
        if (exact || m == 1) root = y;
      }
      if (root != 0) out.emplace_back(p, root, root_order);
    }
    p -= m;
  }
  return out;
}

}  // namespace polysemi
