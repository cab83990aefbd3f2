#include <random>

#include "doctest.h"
#include "polysemi/words.hpp"

using namespace polysemi;

namespace {

using G = GaussianRational;
using PG = Polynomial<G>;
using PC = Polynomial<Cyclotomic>;

PG gpoly(std::vector<G> c) { return PG(GaussianContext{}, std::move(c)); }
PG mono(G a, long n) { return PG::monomial(GaussianContext{}, a, n); }

Word W(std::vector<int> v) { return Word{std::move(v)}; }

Word random_word(std::mt19937_64& rng, int k, int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), letter(1, k);
  Word w;
  const int n = len(rng);
  for (int i = 0; i < n; ++i) w.letters.push_back(letter(rng));
  return w;
}

}  // namespace

TEST_SUITE("words") {
  TEST_CASE("compose_word examples") {
    const std::vector<PG> a{mono(1, 2), mono(1, 3)};
    CHECK(compose_word(a, W({2, 1})) == mono(1, 6));
    const std::vector<PG> b{gpoly({1, 0, 1}), mono(1, 3)};
    CHECK(compose_word(b, W({1, 2})) == gpoly({1, 0, 0, 0, 0, 0, 1}));
    // R o z^2 with R = z^2 + 1, X = z^2 + z + 1, eps = -1.
    const PG x = gpoly({1, 1, 1});
    const std::vector<PG> intro{compose(gpoly({1, 0, 1}), mono(1, 2)), x, x.scaled(G(-1))};
    CHECK(compose_word(intro, W({1, 2})) == compose_word(intro, W({1, 3})));
    CHECK_THROWS_AS(compose_word(std::vector<PG>{gpoly({0, 1}), mono(1, 2)}, W({1})), PreconditionError);
    CHECK_THROWS_AS(compose_word(a, W({1, 1, 1, 1}), 10), SizeError);
  }

  TEST_CASE("verify_relation examples") {
    const std::vector<PG> cheb{gpoly({-1, 0, 2}), gpoly({0, -3, 0, 4})};
    CHECK(verify_relation(cheb, W({1, 2}), W({2, 1})).kind == RelationStatus::Exact);
    const std::vector<PG> a{mono(1, 2), mono(1, 3)};
    CHECK(verify_relation(a, W({1, 1}), W({2, 2})).kind == RelationStatus::Unequal);
    const PG x = gpoly({1, 1, 1});
    const std::vector<PG> intro{compose(gpoly({1, 0, 1}), mono(1, 2)), x, x.scaled(G(-1))};
    CHECK(verify_relation(intro, W({1, 2}), W({1, 3})).kind == RelationStatus::Exact);
    CHECK(verify_relation(intro, W({2, 1}), W({3, 1})).kind == RelationStatus::Unequal);
  }

  TEST_CASE("search_witness examples") {
    const std::vector<PG> a{mono(1, 2), mono(1, 3)};
    const auto r = search_witness(a, {.max_degree = 10});
    REQUIRE(r.certificate);
    CHECK(r.certificate->words[0] == W({2, 1}));
    CHECK(r.certificate->words[1] == W({1, 2}));
    CHECK(r.certificate->composite_degree == 6);
    CHECK(r.certificate->verification == Verification::Exact);

    const std::vector<PG> free_pair{mono(1, 2), mono(2, 3)};
    const auto none = search_witness(free_pair, {.max_degree = 10000, .max_word_length = 14});
    CHECK_FALSE(none.certificate);
    CHECK(none.note.find("exhausted") != std::string::npos);

    const std::vector<PG> neg{mono(-1, 2), mono(-1, 3)};
    // -(-(-z^3)^2)^2 = -((-z^2)^3)^2 = -z^12; nothing below degree 12.
    CHECK_FALSE(search_witness(neg, {.max_degree = 11}).certificate);
    const auto rn = search_witness(neg, {.max_degree = 1000});
    REQUIRE(rn.certificate);
    CHECK(rn.certificate->composite_degree == 12);
    CHECK(rn.certificate->words[0] == W({1, 2, 1}));
    CHECK(rn.certificate->words[1] == W({1, 1, 2}));
    CHECK(verify_relation(neg, rn.certificate->words[0], rn.certificate->words[1]).kind == RelationStatus::Exact);
  }

  TEST_CASE("search over big complex coefficients") {
    const BigComplexContext ctx{128};
    const std::vector<Polynomial<BigComplex>> gens{
        Polynomial<BigComplex>::monomial(ctx, BigComplex(128, Rational(-1)), 2),
        Polynomial<BigComplex>::monomial(ctx, BigComplex(128, Rational(-1)), 3)};
    const auto r = search_witness(gens, {.max_degree = 100, .tol = 1e-20});
    REQUIRE(r.certificate);
    CHECK(r.certificate->composite_degree == 12);
    CHECK(r.certificate->verification == Verification::Numeric);
  }

  TEST_CASE("monomial elements and witness_zu") {
    const MonomialElement a{1, 2, 2}, b{0, 2, 3};
    CHECK(compose(a, b) == MonomialElement{1, 2, 6});
    CHECK(compose(b, a) == MonomialElement{1, 2, 6});

    const auto c1 = witness_zu({{0, 1, 2}, {0, 1, 3}});
    CHECK(c1.note == "j1=1, j2=2");
    CHECK(c1.composite_degree == 36);

    const std::vector<MonomialElement> e2{{1, 2, 2}, {0, 2, 3}};
    const auto c2 = witness_zu(e2);
    CHECK(c2.words[0].last() == 1);
    CHECK(c2.words[1].last() == 2);
    CHECK(evaluate_word(e2, c2.words[0]) == evaluate_word(e2, c2.words[1]));
    // Exact check over Q(i): -z^2, z^3.
    const std::vector<PG> g2{mono(-1, 2), mono(1, 3)};
    CHECK(verify_relation(g2, c2.words[0], c2.words[1]).kind == RelationStatus::Exact);

    const std::vector<MonomialElement> e3{{1, 3, 2}, {0, 3, 3}, {2, 3, 2}};
    const auto c3 = witness_zu(e3);
    for (int i = 0; i < 3; ++i) CHECK(c3.words[static_cast<std::size_t>(i)].last() == i + 1);
    CHECK(evaluate_word(e3, c3.words[0]) == evaluate_word(e3, c3.words[1]));
    CHECK(evaluate_word(e3, c3.words[0]) == evaluate_word(e3, c3.words[2]));
    const CyclotomicContext z3{3};
    const std::vector<PC> g3{PC::monomial(z3, z3.zeta(1), 2), PC::monomial(z3, z3.one(), 3),
                             PC::monomial(z3, z3.zeta(2), 2)};
    double res = 0;
    CHECK(verify_words_equal(g3, c3.words, 0.0, &res) != Verification::Unverified);
  }

  TEST_CASE("combine_pairwise") {
    const auto w1 = combine_pairwise({{1, 0, 1}});
    REQUIRE(w1.size() == 2);
    CHECK(w1[0] == W({1}));
    CHECK(w1[1] == W({2}));
    const auto w3 = combine_pairwise({{2, 1, 1}, {2, 1, 1}});
    CHECK(w3[0] == W({1, 1, 1, 1}));
    CHECK(w3[1] == W({1, 2, 1, 2}));
    CHECK(w3[2] == W({1, 3, 1, 3}));
    CHECK_THROWS_AS(combine_pairwise({{0, 0, 1}}), PreconditionError);
  }

  TEST_CASE("coefficient identity") {
    // (a1 z^2) o (a2 z^3) ... word [2,1] carries a2 a1^3, word [1,2] carries a1 a2^2.
    const auto id = extract_coefficient_identity({2, 3}, {W({2, 1}), W({1, 2})});
    CHECK(id.exponents[0] == std::vector<BigInt>{3, 1});
    CHECK(id.exponents[1] == std::vector<BigInt>{1, 2});
    CHECK(id.s == std::vector<BigInt>{2, 1});
    const auto cert = witness_zu({{1, 2, 2}, {0, 2, 3}});
    const auto id2 = extract_coefficient_identity({2, 3}, cert.words);
    for (const auto& s : id2.s) CHECK(s >= 1);
    CHECK_THROWS_AS(extract_coefficient_identity({2}, {W({1})}), PreconditionError);
    CHECK_THROWS_AS(extract_coefficient_identity({2, 3}, {W({1, 2}), W({2, 1})}), PreconditionError);
  }

  TEST_CASE("degree multiplicativity and right cancellativity") {
    std::mt19937_64 rng(3);
    const std::vector<PG> gens{mono(G::i(), 2), mono(-1, 2), gpoly({0, 1, 1}), mono(1, 3)};
    const auto degs = degrees_of(gens);
    int premises = 0;
    for (int t = 0; t < 300; ++t) {
      const Word u = random_word(rng, 4, 3), v = random_word(rng, 4, 3), w = random_word(rng, 4, 2);
      CHECK(word_degree(degs, concat(u, w)) == word_degree(degs, u) * word_degree(degs, w));
      const auto cu = compose_word(gens, concat(u, w)), cv = compose_word(gens, concat(v, w));
      CHECK(cu.degree() == compose_word(gens, u).degree() * compose_word(gens, w).degree());
      if (cu == cv) {
        ++premises;
        CHECK(compose_word(gens, u) == compose_word(gens, v));
      }
    }
    CHECK(premises > 10);
  }

  TEST_CASE("search agrees with witness_zu on monomial inputs") {
    const std::vector<std::vector<MonomialElement>> cases{
        {{1, 2, 2}, {0, 2, 2}}, {{1, 4, 2}, {3, 4, 2}}, {{0, 1, 2}, {0, 1, 3}}, {{1, 2, 2}, {1, 2, 3}}};
    for (const auto& elements : cases) {
      const auto cert = witness_zu(elements);
      std::vector<PG> gens;
      for (const auto& e : elements) {
        const G unit = power(G::i(), e.e * (4 / e.l));
        gens.push_back(mono(unit, e.degree.get_si()));
      }
      REQUIRE(cert.composite_degree <= 100000);
      const auto found = search_witness(gens, {.max_degree = cert.composite_degree.get_si(), .max_word_length = 40});
      REQUIRE(found.certificate);
      CHECK(found.certificate->composite_degree <= cert.composite_degree);
    }
  }
}
