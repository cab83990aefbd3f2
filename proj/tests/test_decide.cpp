#include <algorithm>
#include <random>

#include "doctest.h"
#include "polysemi/decide.hpp"

using namespace polysemi;

namespace {

using G = GaussianRational;
using PG = Polynomial<G>;
const GaussianContext gctx{};

PG gpoly(std::vector<G> c) { return PG(gctx, std::move(c)); }
PG mono(G a, long n) { return PG::monomial(gctx, a, n); }

Verdict run(std::vector<PG> gens, DecideOptions opt = {}) { return decide({std::move(gens), opt, 1}); }

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("decide") {
  TEST_CASE("power pairs") {
    const CyclotomicContext z3{3};
    using PC = Polynomial<Cyclotomic>;
    const std::vector<PC> gens{PC::monomial(z3, z3.one(), 2), PC::monomial(z3, z3.zeta(1), 3)};
    const Verdict v = decide({gens, {}, 1});
    CHECK(v.outcome == Outcome::SpecialCase);
    CHECK(v.special_case == "power");
    REQUIRE(v.ideal_intersection);
    CHECK(*v.ideal_intersection);
    REQUIRE(v.certificate);
    CHECK(v.certificate->verification == Verification::Exact);
    CHECK(verify_relation(gens, v.certificate->words[0], v.certificate->words[1]).kind == RelationStatus::Exact);
    CHECK(v.conjugated_leading[1].unity_order == 3);
    CHECK(exit_code(v) == 0);

    const Verdict no = run({mono(1, 2), mono(2, 3)});
    CHECK(no.outcome == Outcome::SpecialCase);
    CHECK(no.ideal_intersection == false);
    CHECK_FALSE(no.certificate);
    CHECK(no.conjugated_leading[1].omega == "2");
    CHECK(no.conjugated_leading[1].unity_order == 0);
    CHECK(exit_code(no) == 1);
  }

  TEST_CASE("introductory triple is not a yes-instance") {
    const PG x = gpoly({1, 1, 1});
    const std::vector<PG> gens{compose(gpoly({1, 0, 1}), mono(1, 2)), x, x.scaled(G(-1))};
    CHECK(verify_relation(gens, Word{{1, 2}}, Word{{1, 3}}).kind == RelationStatus::Exact);
    const Verdict v = run(gens);
    CHECK(v.outcome == Outcome::No);
    CHECK(v.ideal_intersection == false);
    CHECK(v.margins.path == "exact");
    CHECK(v.margins.max_tail > 0);
  }

  TEST_CASE("chebyshev pair") {
    const Verdict v = run({gpoly({-2, 0, 1}), gpoly({0, -3, 0, 1})});
    CHECK(v.outcome == Outcome::SpecialCase);
    CHECK(v.special_case == "chebyshev");
    CHECK(v.ideal_intersection == true);
    CHECK(v.normal_form.kind == "chebyshev");
    CHECK(v.normal_form.signs == std::vector<int>{1, 1});
  }

  TEST_CASE("yes-instances outside the special families") {
    const PG t = gpoly({0, 1, 1});  // z^2 + z
    const Verdict v = run({t, compose(t, t)});
    CHECK(v.outcome == Outcome::Yes);
    REQUIRE(v.certificate);
    CHECK(v.certificate->verification == Verification::Exact);
    CHECK(v.normal_form.kind == "t-power-form");
    CHECK(v.normal_form.t == t.to_string());

    // -T and T o T with T = z^3 + z of shape z R(z^2).
    const PG u = gpoly({0, 1, 0, 1});
    const Verdict w = run({u.scaled(G(-1)), compose(u, u)});
    CHECK(w.outcome == Outcome::Yes);
    REQUIRE(w.certificate);
    CHECK(w.conjugated_leading[0].unity_order == 1);
    CHECK(w.conjugated_leading[1].unity_order >= 1);
    CHECK((w.certificate->verification == Verification::Exact || w.certificate->verification == Verification::Modular));
  }

  TEST_CASE("no-instances outside the special families") {
    const Verdict v = run({gpoly({1, 0, 1}), mono(1, 3)});
    CHECK(v.outcome == Outcome::No);
    const Verdict w = run({gpoly({0, 1, 1}), gpoly({0, 1, 0, 1})});
    CHECK(w.outcome == Outcome::No);
  }

  TEST_CASE("numeric path") {
    // sqrt(3) is not Gaussian rational, so the Böttcher series runs in big floats.
    const PG t = gpoly({0, 1, 0, 3});
    const Verdict v = run({t, compose(t, t)});
    CHECK(v.margins.path == "numeric");
    CHECK(v.outcome == Outcome::Yes);
    REQUIRE(v.certificate);
    CHECK(v.certificate->verification == Verification::Exact);
    CHECK(v.margins.max_tail < v.margins.tolerance);

    const Verdict n = run({gpoly({0, 1, 0, 2}), gpoly({1, 0, 0, 2})});
    CHECK(n.margins.path == "numeric");
    CHECK(n.outcome == Outcome::No);
    CHECK(n.margins.max_tail > std::sqrt(n.margins.tolerance));

    DecideOptions forced;
    forced.force_numeric = true;
    const Verdict f = run({gpoly({0, 1, 1}), compose(gpoly({0, 1, 1}), gpoly({0, 1, 1}))}, forced);
    CHECK(f.margins.path == "numeric");
    CHECK(f.outcome == Outcome::Yes);
  }

  TEST_CASE("big complex input") {
    const long prec = 256;
    const PG t = gpoly({G(0, 1), 0, 1});
    std::vector<Polynomial<BigComplex>> gens{to_big_complex(t, prec), to_big_complex(compose(t, t), prec)};
    const Verdict v = decide({gens, {}, 1});
    CHECK(v.outcome == Outcome::Yes);
    REQUIRE(v.certificate);
    CHECK(v.certificate->verification == Verification::Numeric);
    gens[1] = to_big_complex(gpoly({0, 0, 0, 1}), prec);
    CHECK(decide({gens, {}, 1}).outcome == Outcome::No);
  }

  TEST_CASE("inconclusive when precision is too low") {
    DecideOptions opt;
    opt.precision = 64;
    opt.tol = 1e-30;
    const PG t = gpoly({0, 1, 0, 3});
    const Verdict v = run({t, compose(t, t)}, opt);
    CHECK(v.outcome == Outcome::Inconclusive);
    CHECK_FALSE(v.ideal_intersection);
    CHECK(exit_code(v) == 2);
    CHECK_FALSE(v.notes.empty());
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(run({gpoly({0, 1}), mono(1, 2)}), InputError);
    CHECK_THROWS_AS(run({}), InputError);
    const Verdict one = run({gpoly({1, 0, 1})});
    CHECK(one.ideal_intersection == true);
    CHECK(one.certificate->words.size() == 1);
  }

  TEST_CASE("verdicts are invariant under conjugation, permutation and branch") {
    const PG t = gpoly({0, 1, 1});
    const std::vector<std::vector<PG>> corpus{{t, compose(t, t)},
                                              {gpoly({1, 0, 1}), mono(1, 3)},
                                              {mono(1, 2), mono(G(0, 1), 3)},
                                              {gpoly({-2, 0, 1}), gpoly({0, -3, 0, 1})}};
    std::mt19937_64 rng(21);
    std::uniform_int_distribution<long> num(-5, 5), den(1, 3);
    for (const auto& gens : corpus) {
      const Verdict ref = run(gens);
      for (int trial = 0; trial < 3; ++trial) {
        G a(q(num(rng), den(rng)), q(num(rng), den(rng)));
        if (a.is_zero()) a = G(1);
        const G b(q(num(rng), den(rng)), q(num(rng), den(rng)));
        std::vector<PG> conj;
        for (const auto& g : gens) conj.push_back(affine_conjugate(g, a, b));
        const Verdict c = run(conj);
        CHECK(c.outcome == ref.outcome);
        CHECK(c.ideal_intersection == ref.ideal_intersection);
        DecideOptions numeric;
        numeric.force_numeric = true;
        const Verdict cn = run(conj, numeric);
        CHECK(cn.ideal_intersection == ref.ideal_intersection);
      }
      std::vector<PG> rev(gens.rbegin(), gens.rend());
      CHECK(run(rev).ideal_intersection == ref.ideal_intersection);
      DecideOptions branch;
      branch.branch = 1;
      CHECK(run(gens, branch).ideal_intersection == ref.ideal_intersection);
    }
  }
}
