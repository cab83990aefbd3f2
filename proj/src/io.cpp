#include "polysemi/io.hpp"

#include <cctype>
#include <fstream>
#include <numeric>
#include <set>

#include "polysemi/errors.hpp"

namespace polysemi {

namespace {

// Recursive-descent reader for the coefficient grammar. With evaluate = false
// it only collects the root-of-unity orders.
class CoefficientReader {
 public:
  CoefficientReader(std::string_view text, int order, bool evaluate)
      : text_(text), order_(order), evaluate_(evaluate) {}

  Cyclotomic run() {
    skip();
    if (pos_ == text_.size()) fail("empty coefficient");
    Cyclotomic v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

  long orders() const { return orders_; }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("coefficient \"" + std::string(text_) + "\": " + why + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  Cyclotomic constant(const Rational& q) const { return Cyclotomic(order_, q); }

  Cyclotomic root(long m, long j) {
    orders_ = std::lcm(orders_, m);
    if (!evaluate_) return constant(0);
    if (order_ % m != 0) fail("zeta(" + std::to_string(m) + ") is not in the target field");
    return Cyclotomic::zeta(order_, j * (order_ / m));
  }

  Cyclotomic expr() {
    bool negative = false;
    if (peek('+') || peek('-')) negative = text_[pos_++] == '-';
    Cyclotomic acc = term();
    if (negative) acc = -acc;
    while (peek('+') || peek('-')) {
      const bool minus = text_[pos_++] == '-';
      const Cyclotomic t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  bool starts_factor() {
    skip();
    if (pos_ >= text_.size()) return false;
    const char c = text_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'i' || c == 'z' || c == '(';
  }

  Cyclotomic term() {
    Cyclotomic acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (starts_factor()) {
        acc = acc * factor();
      } else {
        return acc;
      }
    }
  }

  long digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected digits");
    if (pos_ - start > 9) fail("integer too large");
    return std::stol(std::string(text_.substr(start, pos_ - start)));
  }

  Cyclotomic factor() {
    Cyclotomic base = atom();
    if (!peek('^')) return base;
    ++pos_;
    bool negative = false;
    if (peek('-')) {
      negative = true;
      ++pos_;
    }
    const long e = digits();
    if (!evaluate_) return base;
    if (negative && base.is_zero()) fail("zero to a negative power");
    return power(base, negative ? -e : e);
  }

  Rational number() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) ++pos_;
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const InputError& e) {
      fail(e.what());
    }
  }

  Cyclotomic atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Cyclotomic v = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return v;
    }
    if (c == 'i') {
      ++pos_;
      return root(4, 1);
    }
    if (text_.substr(pos_, 5) == "zeta(") {
      pos_ += 5;
      const long m = digits();
      if (m < 1) fail("zeta order must be positive");
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return root(m, 1);
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Rational q = number();
      if (peek('/')) {
        ++pos_;
        const Rational d = number();
        if (sgn(d) == 0) fail("division by zero");
        q /= d;
        q.canonicalize();
      }
      return constant(q);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int order_;
  bool evaluate_;
  long orders_ = 1;
};

// c lies in Q(zeta_4).
GaussianRational to_gaussian(const Cyclotomic& c) {
  const auto& q = c.coeffs();
  return GaussianRational(q[0], q.size() > 1 ? q[1] : Rational(0));
}

// (power, coefficient text) pairs of one generator.
std::vector<std::pair<long, std::string>> generator_terms(const Json& g, std::size_t index) {
  const std::string where = "generator " + std::to_string(index + 1);
  auto text_of = [&](const Json& c) -> std::string {
    if (c.is_string()) return c.get<std::string>();
    if (c.is_number_integer()) return std::to_string(c.get<long>());
    throw InputError(where + ": coefficients must be strings (write floats as strings to keep them exact)");
  };
  std::vector<std::pair<long, std::string>> terms;
  if (g.is_array()) {
    for (std::size_t k = 0; k < g.size(); ++k) terms.emplace_back(static_cast<long>(k), text_of(g[k]));
  } else if (g.is_object()) {
    std::set<long> seen;
    for (const auto& [key, value] : g.items()) {
      long p = -1;
      try {
        std::size_t used = 0;
        p = std::stol(key, &used);
        if (used != key.size()) p = -1;
      } catch (const std::exception&) {
        p = -1;
      }
      if (p < 0) throw InputError(where + ": sparse key \"" + key + "\" is not a power");
      if (!seen.insert(p).second) throw InputError(where + ": power " + key + " repeated");
      terms.emplace_back(p, text_of(value));
    }
  } else {
    throw InputError(where + ": expected a coefficient array or a {power: coefficient} object");
  }
  if (terms.empty()) throw InputError(where + ": no coefficients");
  return terms;
}

template <class S, class Convert>
std::vector<Polynomial<S>> build(const std::vector<std::vector<std::pair<long, std::string>>>& all, int order,
                                 const typename S::context_type& ctx, Convert convert) {
  std::vector<Polynomial<S>> out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    long top = 0;
    for (const auto& [p, text] : all[i]) top = std::max(top, p);
    if (top > 100000) throw InputError("generator " + std::to_string(i + 1) + ": degree too large");
    std::vector<S> c(static_cast<std::size_t>(top) + 1, ctx.zero());
    for (const auto& [p, text] : all[i]) c[static_cast<std::size_t>(p)] = convert(parse_cyclotomic(text, order));
    Polynomial<S> poly(ctx, std::move(c));
    if (poly.is_zero()) throw InputError("generator " + std::to_string(i + 1) + " is zero");
    out.push_back(std::move(poly));
  }
  return out;
}

void read_options(const Json& o, InputDocument& doc) {
  if (!o.is_object()) throw InputError("options must be an object");
  static const std::set<std::string> known{"precision", "trunc", "tol", "max_order", "branch", "exact_verify_cap",
                                           "force_numeric", "max_degree", "max_word_length", "seed"};
  for (const auto& [key, value] : o.items())
    if (!known.count(key)) throw InputError("unknown option \"" + key + "\"");
  auto& opt = doc.input.options;
  try {
    opt.precision = o.value("precision", opt.precision);
    opt.trunc = o.value("trunc", opt.trunc);
    opt.tol = o.value("tol", opt.tol);
    opt.max_order = o.value("max_order", opt.max_order);
    opt.branch = o.value("branch", opt.branch);
    opt.exact_verify_cap = o.value("exact_verify_cap", opt.exact_verify_cap);
    opt.force_numeric = o.value("force_numeric", opt.force_numeric);
    doc.search.max_degree = o.value("max_degree", doc.search.max_degree);
    doc.search.max_word_length = o.value("max_word_length", doc.search.max_word_length);
    doc.input.seed = o.value("seed", doc.input.seed);
  } catch (const Json::exception& e) {
    throw InputError(std::string("options: ") + e.what());
  }
  if (opt.precision < 32 || opt.precision > 1 << 20) throw InputError("precision must be in [32, 2^20] bits");
  if (opt.trunc < 4) throw InputError("trunc must be at least 4");
  if (doc.search.max_degree < 2 || doc.search.max_word_length < 1) throw InputError("search caps must be positive");
}

}  // namespace

long coefficient_order(std::string_view text) {
  CoefficientReader r(text, 1, false);
  r.run();
  return r.orders();
}

Cyclotomic parse_cyclotomic(std::string_view text, int order) {
  return CoefficientReader(text, order, true).run();
}

GaussianRational parse_gaussian(std::string_view text) {
  if (4 % coefficient_order(text) != 0) throw InputError("coefficient \"" + std::string(text) + "\" is not in Q(i)");
  return to_gaussian(parse_cyclotomic(text, 4));
}

InputDocument parse_input(const Json& doc) {
  if (!doc.is_object()) throw InputError("input must be a JSON object");
  for (const auto& [key, value] : doc.items())
    if (key != "field" && key != "generators" && key != "options" && key != "name" && key != "comment")
      throw InputError("unknown key \"" + key + "\"");
  InputDocument out;
  if (doc.contains("options")) read_options(doc["options"], out);
  out.search.seed = out.input.seed;
  std::string field = "auto";
  if (doc.contains("field")) {
    if (!doc["field"].is_string()) throw InputError("field must be a string");
    field = doc["field"].get<std::string>();
  }
  if (field != "auto" && field != "gaussian" && field != "cyclotomic" && field != "bigcomplex")
    throw InputError("unknown field \"" + field + "\"");
  if (!doc.contains("generators") || !doc["generators"].is_array() || doc["generators"].empty())
    throw InputError("generators must be a non-empty array");

  std::vector<std::vector<std::pair<long, std::string>>> all;
  long order = 1;
  for (std::size_t i = 0; i < doc["generators"].size(); ++i) {
    all.push_back(generator_terms(doc["generators"][i], i));
    for (const auto& [p, text] : all.back()) order = std::lcm(order, coefficient_order(text));
  }
  if (order > 10000) throw InputError("cyclotomic order " + std::to_string(order) + " too large");
  const bool in_gaussian = 4 % order == 0;
  if (field == "auto") field = in_gaussian ? "gaussian" : "cyclotomic";
  if (field == "gaussian" && !in_gaussian)
    throw InputError("coefficients need zeta(" + std::to_string(order) + "), which is not in Q(i)");

  if (field == "gaussian") {
    out.input.generators = build<GaussianRational>(all, 4, GaussianContext{}, to_gaussian);
  } else if (field == "cyclotomic") {
    const int m = static_cast<int>(order);
    out.input.generators = build<Cyclotomic>(all, m, CyclotomicContext{m}, [](const Cyclotomic& c) { return c; });
  } else {
    const int m = static_cast<int>(std::lcm(order, 4L));
    const long prec = out.input.options.precision;
    out.input.generators = build<BigComplex>(all, m, BigComplexContext{prec},
                                             [prec](const Cyclotomic& c) { return to_big_complex(c, prec); });
  }
  return out;
}

InputDocument load_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_input(doc);
}

std::vector<std::string> generator_strings(const GeneratorList& g) {
  return std::visit(
      [](const auto& gens) {
        std::vector<std::string> out;
        for (const auto& p : gens) out.push_back(p.to_string());
        return out;
      },
      g);
}

std::vector<std::vector<std::string>> generator_coefficients(const GeneratorList& g) {
  return std::visit(
      [](const auto& gens) {
        std::vector<std::vector<std::string>> out;
        for (const auto& p : gens) {
          std::vector<std::string> row;
          for (const auto& c : p.coeffs()) row.push_back(c.to_string());
          out.push_back(std::move(row));
        }
        return out;
      },
      g);
}

Json to_json(const Word& w) { return Json(w.letters); }

Json to_json(const WitnessCertificate& c, const GeneratorList& gens) {
  Json words = Json::array();
  for (const auto& w : c.words) words.push_back(to_json(w));
  return {{"generators", generator_strings(gens)},
          {"words", words},
          {"composite_degree", c.composite_degree.get_str()},
          {"verification", to_string(c.verification)},
          {"residual", c.residual},
          {"note", c.note}};
}

Json to_json(const SearchResult& r, const GeneratorList& gens) {
  Json j{{"found", r.certificate.has_value()},
         {"words_examined", r.words_examined},
         {"max_degree", r.max_degree},
         {"max_word_length", r.max_word_length},
         {"length_cap_hit", r.length_cap_hit},
         {"note", r.note}};
  j["certificate"] = r.certificate ? to_json(*r.certificate, gens) : Json(nullptr);
  return j;
}

Json to_json(const NormalFormSummary& nf) {
  return {{"kind", nf.kind}, {"lambda", nf.lambda}, {"signs", nf.signs}, {"t", nf.t},
          {"r_poly", nf.r_poly}, {"l", nf.l}, {"r", nf.r}, {"omegas", nf.omegas},
          {"exponents", nf.exponents}, {"reason", nf.reason}};
}

Json to_json(const Verdict& v, const GeneratorList& gens) {
  Json j;
  j["outcome"] = to_string(v.outcome);
  j["special_case"] = v.special_case ? Json(*v.special_case) : Json(nullptr);
  j["ideal_intersection"] = v.ideal_intersection ? Json(*v.ideal_intersection) : Json(nullptr);
  j["exit_code"] = exit_code(v);
  j["field"] = field_name(gens);
  j["degrees"] = generator_degrees(gens);
  j["generators"] = generator_strings(gens);
  j["certificate"] = v.certificate ? to_json(*v.certificate, gens) : Json(nullptr);
  Json cl = Json::array();
  for (std::size_t i = 0; i < v.conjugated_leading.size(); ++i) {
    const auto& c = v.conjugated_leading[i];
    cl.push_back({{"generator", i + 1},
                  {"omega", c.omega},
                  {"omega_approx", {c.approx.real(), c.approx.imag()}},
                  {"degree", c.n},
                  {"unity_order", c.unity_order},
                  {"unity_exponent", c.unity_exponent},
                  {"max_tail", c.max_tail},
                  {"unity_defect", c.unity_defect}});
  }
  j["conjugated_leading"] = cl;
  j["normal_form"] = to_json(v.normal_form);
  const auto& m = v.margins;
  j["margins"] = {{"path", m.path},         {"precision", m.precision}, {"trunc", m.trunc},
                  {"base", m.base},         {"residual", m.residual},   {"tolerance", m.tolerance},
                  {"max_tail", m.max_tail}, {"unity_defect", m.unity_defect}, {"horizon", m.horizon}};
  j["notes"] = v.notes;
  return j;
}

}  // namespace polysemi
