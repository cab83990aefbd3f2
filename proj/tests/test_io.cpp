#include <fstream>

#include "doctest.h"
#include "polysemi/errors.hpp"
#include "polysemi/io.hpp"

using namespace polysemi;

namespace {

using G = GaussianRational;

Rational q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

InputDocument parse(const std::string& text) { return parse_input(Json::parse(text)); }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("coefficient grammar") {
    CHECK(parse_gaussian("3") == G(3));
    CHECK(parse_gaussian("-6/4") == G(q(-3, 2)));
    CHECK(parse_gaussian("1.25") == G(q(5, 4)));
    CHECK(parse_gaussian("2.5e-2") == G(q(1, 40)));
    CHECK(parse_gaussian("1/2+3/4 i") == G(q(1, 2), q(3, 4)));
    CHECK(parse_gaussian("4/17-169/17i") == G(q(4, 17), q(-169, 17)));
    CHECK(parse_gaussian("-i") == G(0, -1));
    CHECK(parse_gaussian("(1+i)^2") == G(0, 2));
    CHECK(parse_gaussian("2*i^-1") == G(0, -2));
    CHECK(parse_gaussian("zeta(4)^3") == G(0, -1));
    CHECK(parse_gaussian("zeta(2)") == G(-1));
    CHECK(coefficient_order("1/2") == 1);
    CHECK(coefficient_order("i") == 4);
    CHECK(coefficient_order("zeta(3)^2 + zeta(5)") == 15);
    CHECK(coefficient_order("2 zeta(6) i") == 12);

    const CyclotomicContext z3{3};
    CHECK(parse_cyclotomic("zeta(3)", 3) == z3.zeta(1));
    CHECK(parse_cyclotomic("1 + zeta(3) + zeta(3)^2", 3) == z3.zero());
    CHECK(parse_cyclotomic("zeta(3)^-1", 3) == z3.zeta(2));
    CHECK(parse_cyclotomic("zeta(3)", 6) == Cyclotomic::zeta(6, 2));

    for (const char* bad : {"", "1/0", "abc", "1 +", "zeta(0)", "(1", "1)", "2^x", "0^-1"})
      CHECK_THROWS_AS(parse_gaussian(bad), InputError);
    CHECK_THROWS_AS(parse_gaussian("zeta(3)"), InputError);
  }

  TEST_CASE("round trip of printed scalars") {
    for (const G& g : {G(q(-7, 3), q(2, 9)), G(0, 5), G(q(1, 2)), G(-1, -1)}) CHECK(parse_gaussian(g.to_string()) == g);
    const CyclotomicContext z5{5};
    const Cyclotomic c = z5.zeta(1) * z5.from_rational(q(-3, 4)) + z5.zeta(3) + z5.from_int(2);
    CHECK(parse_cyclotomic(c.to_string(), 5) == c);
  }

  TEST_CASE("documents and field inference") {
    auto d = parse(R"j({"generators": [["-2", "0", "1"], {"3": "1", "1": "-3"}]})j");
    REQUIRE(d.input.generators.index() == 0);
    const auto& g = std::get<0>(d.input.generators);
    CHECK(g[0].degree() == 2);
    CHECK(g[0].coeff(0) == G(-2));
    CHECK(g[1].coeff(1) == G(-3));
    CHECK(g[1].coeff(2) == G(0));

    auto c = parse(R"j({"generators": [["0", "0", "1"], {"3": "zeta(3)"}]})j");
    REQUIRE(c.input.generators.index() == 1);
    CHECK(std::get<1>(c.input.generators)[1].lead() == CyclotomicContext{3}.zeta(1));
    CHECK(field_name(c.input.generators) == "cyclotomic");

    auto mixed = parse(R"j({"generators": [["i", "0", "1"], {"3": "zeta(3)"}]})j");
    CHECK(std::get<1>(mixed.input.generators)[0].context().order == 12);

    auto b = parse(R"j({"field": "bigcomplex", "generators": [["0.1", "0", "1"]], "options": {"precision": 128}})j");
    REQUIRE(b.input.generators.index() == 2);
    const auto& p = std::get<2>(b.input.generators)[0];
    CHECK(p.context().precision == 128);
    CHECK(std::abs(p.coeff(0).to_cd() - std::complex<double>(0.1, 0)) < 1e-17);

    auto o = parse(R"j({"generators": [[0, 0, 1]], "options": {"trunc": 32, "max_degree": 500, "seed": 7, "force_numeric": true}})j");
    CHECK(o.input.options.trunc == 32);
    CHECK(o.search.max_degree == 500);
    CHECK(o.input.seed == 7);
    CHECK(o.input.options.force_numeric);
  }

  TEST_CASE("malformed documents") {
    for (const char* bad : {R"j([])j", R"j({"generators": []})j", R"j({"generators": [["1", "x"]]})j",
                            R"j({"generators": [[1.5, 1]]})j", R"j({"generators": [{"a": "1"}]})j",
                            R"j({"generators": [["0", "0"]]})j", R"j({"generators": [["1"]], "options": {"speed": 1}})j",
                            R"j({"generators": [["1"]], "field": "reals"})j", R"j({"generators": [["1"]], "extra": 1})j",
                            R"j({"field": "gaussian", "generators": [["zeta(3)", "1"]]})j",
                            R"j({"generators": [["1"]], "options": {"trunc": "many"}})j"})
      CHECK_THROWS_AS(parse(bad), InputError);
    CHECK_THROWS_AS(load_input("/nonexistent/input.json"), InputError);
    const std::string path = "io_test_bad.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_input(path), InputError);
    std::remove(path.c_str());
  }

  TEST_CASE("verdict serialization") {
    auto d = parse(R"j({"generators": [["0", "0", "1"], {"3": "zeta(3)"}]})j");
    const Verdict v = decide(d.input);
    const Json j = to_json(v, d.input.generators);
    CHECK(j["outcome"] == "special-case");
    CHECK(j["special_case"] == "power");
    CHECK(j["ideal_intersection"] == true);
    CHECK(j["exit_code"] == 0);
    CHECK(j["field"] == "cyclotomic");
    CHECK(j["degrees"] == Json::array({2, 3}));
    CHECK(j["certificate"]["verification"] == "exact");
    CHECK(j["certificate"]["words"].size() == 2);
    CHECK(j["certificate"]["words"][0].back() == 1);
    CHECK(j["certificate"]["words"][1].back() == 2);
    CHECK(j["conjugated_leading"][1]["unity_order"] == 3);
    CHECK(j["normal_form"]["kind"] == "power");
    CHECK(j["margins"]["path"] == "exact");
    CHECK(Json::parse(j.dump()) == j);

    auto n = parse(R"j({"generators": [["1", "0", "1"], ["0", "0", "0", "1"]]})j");
    const Json jn = to_json(decide(n.input), n.input.generators);
    CHECK(jn["outcome"] == "no");
    CHECK(jn["certificate"].is_null());
    CHECK(jn["exit_code"] == 1);
  }

  TEST_CASE("generator coefficients reparse") {
    auto d = parse(R"j({"generators": [["1/3-2i", "0", "5i"], ["7", "1"]]})j");
    const auto rows = generator_coefficients(d.input.generators);
    Json again{{"generators", rows}};
    const auto e = parse_input(again);
    CHECK(std::get<0>(e.input.generators) == std::get<0>(d.input.generators));

    SearchOptions so;
    so.max_degree = 50;
    auto s = parse(R"j({"generators": [["0", "0", "1"], ["0", "0", "0", "1"]]})j");
    const auto r = search_witness(std::get<0>(s.input.generators), so);
    const Json js = to_json(r, s.input.generators);
    CHECK(js["found"] == true);
    CHECK(js["certificate"]["composite_degree"] == "6");
  }
}
