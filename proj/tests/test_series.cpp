#include <random>

#include "doctest.h"
#include "polysemi/series.hpp"

using namespace polysemi;

namespace {

using G = GaussianRational;
using Series = TruncatedSeries<G>;

Series from_ints(const std::vector<long>& v, long trunc) {
  std::vector<G> c;
  for (long x : v) c.emplace_back(x);
  return Series(GaussianContext{}, c, trunc);
}

std::vector<long> to_ints(const Series& s) {
  std::vector<long> v;
  for (const auto& x : s.coeffs()) v.push_back(x.real().get_num().get_si());
  return v;
}

// Oracle: untruncated integer polynomial arithmetic.
std::vector<long> poly_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<long> poly_compose(const std::vector<long>& outer, const std::vector<long>& inner) {
  std::vector<long> acc{0};
  std::vector<long> pw{1};
  for (std::size_t j = 0; j < outer.size(); ++j) {
    if (acc.size() < pw.size()) acc.resize(pw.size(), 0);
    for (std::size_t i = 0; i < pw.size(); ++i) acc[i] += outer[j] * pw[i];
    pw = poly_mul(pw, inner);
  }
  return acc;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("add and mul") {
    CHECK_FALSE(add(from_ints({0, 1}, 10), from_ints({0, -1}, 10)).order().has_value());
    CHECK(to_ints(add(from_ints({0, 0, 1, 0, 0, 1}, 8), from_ints({0, 0, 0, 1}, 8))) ==
          std::vector<long>{0, 0, 1, 1, 0, 1, 0, 0, 0});
    CHECK(add(from_ints({1}, 10), from_ints({1}, 20)).trunc() == 10);
    CHECK(to_ints(mul(from_ints({0, 1}, 4), from_ints({0, 1}, 4))) == std::vector<long>{0, 0, 1, 0, 0});
    CHECK(to_ints(mul(from_ints({1, 1}, 4), from_ints({1, -1}, 4))) == std::vector<long>{1, 0, -1, 0, 0});
    CHECK(to_ints(mul(from_ints({0, 0, 1, 1}, 8), from_ints({0, 0, 1, 1}, 8))) ==
          std::vector<long>{0, 0, 0, 0, 1, 2, 1, 0, 0});
    CHECK(mul(from_ints({1}, 10), from_ints({1}, 20)).trunc() == 10);
    CHECK_THROWS_AS(add(TruncatedSeries<Cyclotomic>(CyclotomicContext{3}, 4),
                        TruncatedSeries<Cyclotomic>(CyclotomicContext{5}, 4)),
                    FieldMismatch);
  }

  TEST_CASE("compose examples") {
    const Series x = from_ints({0, 1, 1}, 20);
    CHECK(to_ints(compose(from_ints({0, 0, 1}, 20), x)).size() >= 5);
    const auto sq = compose(from_ints({0, 0, 1}, 20), x);
    CHECK(to_ints(sq.with_trunc(6)) == std::vector<long>{0, 0, 1, 2, 1, 0, 0});

    const Series outer = from_ints({0, 0, 1, 0, 1}, 16);
    const Series inner = from_ints({0, 0, 1, 1}, 16);
    const Series r = compose(outer, inner);
    const auto oracle = poly_compose({0, 0, 1, 0, 1}, {0, 0, 1, 1});
    REQUIRE(r.trunc() >= 16);
    for (long i = 0; i <= r.trunc(); ++i) {
      const long expect = i < static_cast<long>(oracle.size()) ? oracle[static_cast<std::size_t>(i)] : 0;
      CHECK(r[i] == G(expect));
    }
    CHECK(to_ints(r.with_trunc(6)) == std::vector<long>{0, 0, 0, 0, 1, 2, 1});
    CHECK(ord_l0(r).l0 == 1L);

    const Series t = from_ints({0, 3, 0, -2, 5}, 12);
    CHECK(compose(t, Series::identity(GaussianContext{}, 12)).coeffs() == t.coeffs());
    CHECK_THROWS_AS(compose(t, from_ints({1, 1}, 12)), PreconditionError);
  }

  TEST_CASE("compose horizon is sound and reported") {
    // Unknown terms of the inner series begin at index 9 and of the outer at 5.
    const Series outer = from_ints({0, 0, 1, 2}, 4);
    const Series inner = from_ints({0, 1, 1}, 8);
    const Series r = compose(outer, inner);
    CHECK(r.trunc() == std::min(8 + 1 * 1, 5 * 1 - 1));
    const Series inner2 = from_ints({0, 0, 1, 1}, 8);
    const Series r2 = compose(outer, inner2);
    CHECK(r2.trunc() == std::min(8 + 1 * 2, 5 * 2 - 1));
    CHECK(r2.trunc() >= std::min(8L, 4L * 2));
    // Extending the known parts never changes coefficients inside the horizon.
    const Series r3 = compose(from_ints({0, 0, 1, 2, 0, -3, 8}, 30), from_ints({0, 0, 1, 1, 0, 0, 0, 0, 0, 4, 9}, 30));
    for (long i = 0; i <= r2.trunc(); ++i) CHECK(r2[i] == r3[i]);
  }

  TEST_CASE("comp_inverse") {
    const Series id = Series::identity(GaussianContext{}, 10);
    CHECK(comp_inverse(id).coeffs() == id.coeffs());
    const Series two = from_ints({0, 2}, 10);
    CHECK(comp_inverse(two)[1] == G(Rational(1, 2)));
    const Series s = from_ints({0, 1, 1}, 12);
    const Series t = comp_inverse(s);
    // Catalan numbers with alternating signs.
    for (long k = 0; k + 1 <= 12; ++k) {
      BigInt binom;
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * k), static_cast<unsigned long>(k));
      Rational catalan(binom, BigInt(k + 1));
      catalan.canonicalize();
      CHECK(t[k + 1] == G(Rational(k % 2 == 0 ? catalan : -catalan)));
    }
    CHECK(compose(s, t).with_trunc(12).coeffs() == Series::identity(GaussianContext{}, 12).coeffs());
    CHECK(compose(t, s).with_trunc(12).coeffs() == Series::identity(GaussianContext{}, 12).coeffs());
    CHECK_THROWS_AS(comp_inverse(from_ints({0, 0, 1}, 5)), PreconditionError);
  }

  TEST_CASE("ord_l0") {
    const auto a = ord_l0(from_ints({0, 0, 0, 1, 0, 0, 0, 2}, 12));
    CHECK(a.ord == 3);
    CHECK(a.l0 == 4L);
    CHECK(a.certain);
    const auto b = ord_l0(Series::monomial(GaussianContext{}, G(1), 5, 40));
    CHECK(b.ord == 5);
    CHECK_FALSE(b.l0.has_value());
    CHECK_FALSE(b.certain);
    const auto c = ord_l0(from_ints({0, 0, 1, 1}, 6));
    CHECK(c.ord == 2);
    CHECK(c.l0 == 1L);
    CHECK_THROWS_AS(ord_l0(Series(GaussianContext{}, 9)), IndeterminateError);
  }

  TEST_CASE("associativity and two-sided inverse on random input") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    auto random_series = [&](long ord, long trunc) {
      std::vector<long> v(static_cast<std::size_t>(trunc) + 1, 0);
      for (long i = ord; i <= std::min(trunc, ord + 5); ++i) v[static_cast<std::size_t>(i)] = coef(rng);
      v[static_cast<std::size_t>(ord)] = 1 + std::abs(coef(rng));
      return from_ints(v, trunc);
    };
    for (int t = 0; t < 20; ++t) {
      const Series a = random_series(1 + t % 3, 16);
      const Series b = random_series(1 + t % 2, 16);
      const Series c = random_series(1, 16);
      const Series left = compose(compose(a, b), c);
      const Series right = compose(a, compose(b, c));
      const long h = std::min(left.trunc(), right.trunc());
      for (long i = 0; i <= h; ++i) CHECK(left[i] == right[i]);
      const Series inv = comp_inverse(c);
      const Series one = compose(c, inv);
      for (long i = 0; i <= 16; ++i) CHECK(one[i] == G(i == 1 ? 1 : 0));
    }
  }
}
