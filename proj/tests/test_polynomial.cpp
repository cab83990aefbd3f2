#include <random>

#include "doctest.h"
#include "polysemi/polynomial.hpp"

using namespace polysemi;

namespace {

using G = GaussianRational;
using PG = Polynomial<G>;

PG gpoly(std::vector<G> c) { return PG(GaussianContext{}, std::move(c)); }

// Integer polynomial composition by expanding outer(inner) with repeated
// multiplication on plain long vectors.
std::vector<long> int_mul(const std::vector<long>& a, const std::vector<long>& b) {
  std::vector<long> r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<long> int_compose(const std::vector<long>& outer, const std::vector<long>& inner) {
  std::vector<long> acc{0}, pw{1};
  for (long c : outer) {
    if (acc.size() < pw.size()) acc.resize(pw.size(), 0);
    for (std::size_t i = 0; i < pw.size(); ++i) acc[i] += c * pw[i];
    pw = int_mul(pw, inner);
  }
  while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
  return acc;
}

PG from_ints(const std::vector<long>& v) {
  std::vector<G> c;
  for (long x : v) c.emplace_back(x);
  return gpoly(c);
}

}  // namespace

TEST_SUITE("polynomial") {
  TEST_CASE("construction and basic queries") {
    const PG p = gpoly({1, 0, 3, 0, 0});
    CHECK(p.degree() == 2);
    CHECK(p.lead() == G(3));
    CHECK(p.coeff(7) == G(0));
    CHECK(PG(GaussianContext{}).is_zero());
    CHECK(PG::identity(GaussianContext{}) == gpoly({0, 1}));
    CHECK(PG::affine(GaussianContext{}, G(2), G(5)) == gpoly({5, 2}));
  }

  TEST_CASE("ring operations") {
    const PG a = gpoly({1, 1}), b = gpoly({1, -1});
    CHECK(a * b == gpoly({1, 0, -1}));
    CHECK(a + b == gpoly({2}));
    CHECK((a - a).is_zero());
    CHECK(gpoly({1, 2, 3}).derivative() == gpoly({2, 6}));
    CHECK(gpoly({0, 0, 1})(G(0, 1)) == G(-1));
    CHECK(gpoly({1, 0, 1}).scaled(G::i()) == gpoly({G::i(), 0, G::i()}));
  }

  TEST_CASE("composition matches integer expansion") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-4, 4), deg(1, 4);
    for (int t = 0; t < 100; ++t) {
      std::vector<long> o(static_cast<std::size_t>(deg(rng)) + 1), i(static_cast<std::size_t>(deg(rng)) + 1);
      for (auto& x : o) x = coef(rng);
      for (auto& x : i) x = coef(rng);
      if (o.back() == 0) o.back() = 1;
      if (i.back() == 0) i.back() = -2;
      CHECK(compose(from_ints(o), from_ints(i)) == from_ints(int_compose(o, i)));
    }
  }

  TEST_CASE("composition is associative and respects degrees") {
    const PG a = gpoly({1, G(0, 1), 2}), b = gpoly({G(1, 2), 0, 0, 1}), c = gpoly({0, 3, G(Rational(1, 3))});
    CHECK(compose(a, compose(b, c)) == compose(compose(a, b), c));
    CHECK(compose(a, b).degree() == 6);
    CHECK_THROWS_AS(compose(a, b, 5), SizeError);
  }

  TEST_CASE("affine conjugation") {
    const PG p = gpoly({0, 0, 1});
    const PG q = affine_conjugate(p, G(1), G(1));
    // lambda(z) = z + 1: (z + 1)^2 - 1 = z^2 + 2z.
    CHECK(q == gpoly({0, 2, 1}));
    const PG back = affine_conjugate(q, G(1), G(-1));
    CHECK(back == p);
    const PG r = affine_conjugate(gpoly({-2, 0, 1}), G(2), G(0));
    CHECK(r == gpoly({-1, 0, 2}));
    CHECK_THROWS(affine_conjugate(p, G(0), G(1)));
  }

  TEST_CASE("numeric conversion") {
    const auto pb = to_big_complex(gpoly({G(Rational(1, 3)), G(0, 1)}), 128);
    CHECK(pb.degree() == 1);
    CHECK(std::abs(pb.coeff(0).to_cd() - std::complex<double>(1.0 / 3.0, 0)) < 1e-15);
    CHECK(max_coeff_distance(gpoly({1, 2}), gpoly({1, 2, G(0, -3)})) == doctest::Approx(3.0));
  }
}
