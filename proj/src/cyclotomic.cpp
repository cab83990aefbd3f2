#include "polysemi/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "polysemi/errors.hpp"

namespace polysemi {

int euler_phi(int m) {
  if (m <= 0) throw PreconditionError("euler_phi: order must be positive");
  int result = m;
  int n = m;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    while (n % p == 0) n /= p;
    result -= result / p;
  }
  if (n > 1) result -= result / n;
  return result;
}

namespace {

// Exact division of integer polynomials (ascending order), divisor monic.
std::vector<BigInt> divide_monic(std::vector<BigInt> num, const std::vector<BigInt>& den) {
  const std::size_t dd = den.size() - 1;
  std::vector<BigInt> quot(num.size() - dd, BigInt(0));
  for (std::size_t k = num.size(); k-- > dd;) {
    const BigInt c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t t = 0; t <= dd; ++t) num[k - dd + t] -= c * den[t];
  }
  return quot;
}

}  // namespace

const std::vector<BigInt>& cyclotomic_polynomial(int m) {
  if (m <= 0) throw PreconditionError("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<int, std::vector<BigInt>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  // z^m - 1 divided by Phi_d for every proper divisor d.
  std::vector<BigInt> poly(static_cast<std::size_t>(m) + 1, BigInt(0));
  poly[0] = -1;
  poly[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d) {
    if (m % d == 0) poly = divide_monic(std::move(poly), cyclotomic_polynomial(d));
  }
  std::lock_guard lock(mutex);
  return cache.emplace(m, std::move(poly)).first->second;
}

namespace {

void reduce_in_place(std::vector<Rational>& v, int order) {
  const auto& phi_poly = cyclotomic_polynomial(order);
  const std::size_t dim = phi_poly.size() - 1;
  for (std::size_t k = v.size(); k-- > dim;) {
    if (sgn(v[k]) == 0) continue;
    const Rational c = v[k];
    for (std::size_t t = 0; t <= dim; ++t) {
      if (phi_poly[t] != 0) v[k - dim + t] -= c * phi_poly[t];
    }
  }
  v.resize(dim, Rational(0));
}

}  // namespace

Cyclotomic::Cyclotomic(int order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
  if (order <= 0) throw PreconditionError("cyclotomic order must be positive");
  reduce_in_place(c_, order_);
}

Cyclotomic::Cyclotomic(int order, const Rational& q) : order_(order) {
  if (order <= 0) throw PreconditionError("cyclotomic order must be positive");
  c_.assign(static_cast<std::size_t>(euler_phi(order)), Rational(0));
  c_[0] = q;
}

Cyclotomic Cyclotomic::zeta(int order, long power) {
  long p = power % order;
  if (p < 0) p += order;
  std::vector<Rational> v(static_cast<std::size_t>(p) + 1, Rational(0));
  v[static_cast<std::size_t>(p)] = 1;
  return Cyclotomic(order, std::move(v));
}

bool Cyclotomic::is_zero() const {
  for (const auto& q : c_)
    if (sgn(q) != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (std::size_t k = 1; k < c_.size(); ++k)
    if (sgn(c_[k]) != 0) return false;
  return true;
}

void Cyclotomic::check_same_field(const Cyclotomic& o) const {
  if (order_ != o.order_)
    throw FieldMismatch("cyclotomic orders differ: " + std::to_string(order_) + " vs " +
                        std::to_string(o.order_));
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  check_same_field(o);
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (sgn(o.c_[k]) != 0) c_[k] += o.c_[k];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  check_same_field(o);
  for (std::size_t k = 0; k < c_.size(); ++k)
    if (sgn(o.c_[k]) != 0) c_[k] -= o.c_[k];
  return *this;
}

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
  a.check_same_field(b);
  const std::size_t n = a.c_.size();
  if (n == 1) return Cyclotomic(a.order_, Rational(a.c_[0] * b.c_[0]));
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      prod[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Cyclotomic(a.order_, std::move(prod));
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

Cyclotomic Cyclotomic::inverse() const {
  if (is_zero()) throw PreconditionError("division by zero in cyclotomic field");
  const std::size_t n = c_.size();
  if (is_rational()) return Cyclotomic(order_, Rational(1 / c_[0]));
  // Solve M x = e_0 where column j of M is this * zeta^j.
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n + 1, Rational(0)));
  Cyclotomic col = *this;
  const Cyclotomic z = zeta(order_, 1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) m[i][j] = col.c_[i];
    col = col * z;
  }
  m[0][n] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) throw InvariantViolation("singular multiplication matrix in cyclotomic inverse");
    std::swap(m[c], m[piv]);
    const Rational inv = 1 / m[c][c];
    for (std::size_t k = c; k <= n; ++k) m[c][k] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      const Rational f = m[r][c];
      for (std::size_t k = c; k <= n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m[i][n];
  return Cyclotomic(order_, std::move(x));
}

std::complex<double> Cyclotomic::to_cd() const {
  std::complex<double> acc = 0;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / order_;
    acc += c_[k].get_d() * std::polar(1.0, angle);
  }
  return acc;
}

std::string Cyclotomic::to_string() const {
  std::string s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    const Rational& q = c_[k];
    if (sgn(q) == 0) continue;
    if (k == 0) {
      s += polysemi::to_string(q);
      continue;
    }
    const std::string z = "zeta(" + std::to_string(order_) + ")^" + std::to_string(k);
    if (sgn(q) > 0 && !s.empty()) s.push_back('+');
    if (q == 1)
      s += z;
    else if (q == -1)
      s += "-" + z;
    else
      s += polysemi::to_string(q) + "*" + z;
  }
  return s.empty() ? "0" : s;
}

void Cyclotomic::append_canonical(std::string& out) const {
  out += std::to_string(order_);
  out.push_back(':');
  for (const auto& q : c_) polysemi::append_canonical(out, q);
}

CyclotomicContext combine(const CyclotomicContext& a, const CyclotomicContext& b) {
  if (!(a == b))
    throw FieldMismatch("cyclotomic orders differ: " + std::to_string(a.order) + " vs " +
                        std::to_string(b.order));
  return a;
}

}  // namespace polysemi
