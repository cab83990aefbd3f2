#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "polysemi/bottcher.hpp"
#include "polysemi/decide.hpp"
#include "polysemi/dynamics.hpp"
#include "polysemi/errors.hpp"
#include "polysemi/io.hpp"
#include "polysemi/normal_forms.hpp"
#include "polysemi/properties.hpp"

using namespace polysemi;

namespace {

enum Exit { kSuccess = 0, kNo = 1, kInconclusive = 2, kInput = 3, kInternal = 4 };

void emit(const Json& j) { std::cout << j.dump(2) << std::endl; }

// "1,2,1" or "[1,2,1]", letters in 1..k.
Word parse_word(const std::string& text, std::size_t k) {
  Word w;
  std::string digits;
  auto flush = [&] {
    if (digits.empty()) return;
    const long v = std::stol(digits);
    if (v < 1 || static_cast<std::size_t>(v) > k)
      throw InputError("word letter " + digits + " outside 1.." + std::to_string(k));
    w.letters.push_back(static_cast<int>(v));
    digits.clear();
  };
  for (char c : text) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      if (digits.size() > 6) throw InputError("word letter too large in \"" + text + "\"");
      digits.push_back(c);
    } else if (c == ',' || c == ' ' || c == '[' || c == ']') {
      flush();
    } else {
      throw InputError("cannot read word \"" + text + "\"");
    }
  }
  flush();
  if (w.empty()) throw InputError("empty word \"" + text + "\"");
  return w;
}

std::size_t generator_index(long gen, const GeneratorList& g) {
  const auto k = generator_count(g);
  if (gen < 1 || static_cast<std::size_t>(gen) > k)
    throw InputError("--gen " + std::to_string(gen) + " outside 1.." + std::to_string(k));
  return static_cast<std::size_t>(gen - 1);
}

std::vector<Complex> complex_generator(const GeneratorList& g, std::size_t i) {
  return std::visit([i](const auto& gens) { return to_complex_coeffs(gens[i]); }, g);
}

template <ScalarField S>
double search_tolerance(const std::vector<Polynomial<S>>& gens) {
  if constexpr (is_exact_v<S>)
    return 0.0;
  else
    return default_tolerance<S>(gens.front().context());
}

Json grid_json(const GridSpec& g) {
  return {{"lo", {g.lo.real(), g.lo.imag()}}, {"hi", {g.hi.real(), g.hi.imag()}}, {"nx", g.nx}, {"ny", g.ny}};
}

struct Common {
  std::string file;
  std::uint64_t seed = 1;
  bool seed_given = false;

  InputDocument load() const {
    InputDocument doc = load_input(file);
    if (seed_given) {
      doc.input.seed = seed;
      doc.search.seed = seed;
    }
    return doc;
  }
};

int run_decide(const Common& c, long precision, long trunc, double tol, bool force_numeric, long branch) {
  InputDocument doc = c.load();
  auto& opt = doc.input.options;
  if (precision > 0) opt.precision = precision;
  if (trunc > 0) opt.trunc = trunc;
  if (tol >= 0) opt.tol = tol;
  if (force_numeric) opt.force_numeric = true;
  if (branch >= 0) opt.branch = branch;
  const Verdict v = decide(doc.input);
  emit(to_json(v, doc.input.generators));
  return exit_code(v);
}

int run_witness(const Common& c, long max_degree, long max_length) {
  InputDocument doc = c.load();
  if (max_degree > 0) doc.search.max_degree = max_degree;
  if (max_length > 0) doc.search.max_word_length = max_length;
  const auto& gens = doc.input.generators;
  if (generator_count(gens) < 2) throw InputError("witness needs at least two generators");
  const SearchResult r = std::visit(
      [&](const auto& g) {
        SearchOptions so = doc.search;
        so.tol = search_tolerance(g);
        return search_witness(g, so);
      },
      gens);
  emit(to_json(r, gens));
  return r.certificate ? kSuccess : kNo;
}

int run_verify(const Common& c, const std::string& lhs_text, const std::string& rhs_text) {
  InputDocument doc = c.load();
  const auto& gens = doc.input.generators;
  const Word lhs = parse_word(lhs_text, generator_count(gens));
  const Word rhs = parse_word(rhs_text, generator_count(gens));
  const RelationStatus st =
      std::visit([&](const auto& g) { return verify_relation(g, lhs, rhs, search_tolerance(g)); }, gens);
  emit({{"lhs", to_json(lhs)},
        {"rhs", to_json(rhs)},
        {"status", to_string(st.kind)},
        {"residual", st.residual},
        {"note", st.note}});
  return st.kind == RelationStatus::Unequal ? kNo : kSuccess;
}

template <ScalarField S>
Json bottcher_json(const Polynomial<S>& p, long order, long branch, double tol) {
  const auto bd = bottcher_series(p, order, branch, tol);
  std::vector<std::string> coeffs;
  for (long i = 0; i <= bd.psi.trunc(); ++i) coeffs.push_back(bd.psi[i].to_string());
  return {{"field", p.context().describe()},
          {"branch", bd.branch_index},
          {"beta_leading", bd.beta_leading.to_string()},
          {"residual", bd.residual},
          {"residual_horizon", bd.residual_horizon},
          {"tolerance", bd.tolerance},
          {"coefficients", coeffs},
          {"series", bd.psi.to_string()}};
}

int run_bottcher(const Common& c, long gen, long order, long branch) {
  InputDocument doc = c.load();
  const auto& gens = doc.input.generators;
  const std::size_t i = generator_index(gen, gens);
  const long prec = doc.input.options.precision;
  const double tol = doc.input.options.tol;
  Json j;
  try {
    j = std::visit(
        [&](const auto& g) -> Json {
          using S = typename std::decay_t<decltype(g)>::value_type::scalar_type;
          const auto& p = g[i];
          if (p.degree() < 2) throw InputError("generator " + std::to_string(gen) + " has degree below two");
          if constexpr (is_exact_v<S>) {
            if (roots_in_field(p.lead(), p.degree() - 1).empty())
              return bottcher_json(to_big_complex(p, prec), order, branch, tol);
            return bottcher_json(p, order, branch, tol);
          } else {
            return bottcher_json(p, order, branch, tol);
          }
        },
        gens);
  } catch (const ConstructionFailed& e) {
    emit({{"error", e.what()}, {"residual", e.residual()}, {"advice", "raise precision or trunc"}});
    return kInconclusive;
  }
  j["generator"] = gen;
  emit(j);
  return kSuccess;
}

int run_normal_form(const Common& c) {
  InputDocument doc = c.load();
  const auto& gens = doc.input.generators;
  const NormalFormSummary s = std::visit(
      [&](const auto& g) {
        using S = typename std::decay_t<decltype(g)>::value_type::scalar_type;
        const double tol = doc.input.options.tol;
        NormalFormReport<S> r;
        if (auto lam = detect_power_conjugacy(g, tol)) {
          r.kind = NormalFormKind::PowerFamily;
          r.lambda = *lam;
        } else if (auto ch = detect_chebyshev_conjugacy(g, tol)) {
          r.kind = NormalFormKind::ChebyshevFamily;
          r.lambda = ch->first;
          r.signs = ch->second;
        } else {
          r = extract_t_power_form(g, degrees_of(g), tol);
        }
        return summarize(r);
      },
      gens);
  emit(to_json(s));
  return kSuccess;
}

int run_julia(const Common& c, long gen, long points, long burn_in, int size, const std::string& pgm,
              const std::string& csv) {
  InputDocument doc = c.load();
  const std::size_t i = generator_index(gen, doc.input.generators);
  if (points < 1 || burn_in < 0 || size < 2) throw InputError("--points, --burn-in and --size must be positive");
  const auto coeffs = complex_generator(doc.input.generators, i);
  const PointCloud cloud = julia_inverse_iteration(coeffs, points, burn_in, doc.input.seed);
  const GridSpec grid = default_grid(coeffs, size, size);
  const GridMeasure img = rasterize(cloud, grid);
  write_pgm(img, pgm);
  Json j{{"generator", gen}, {"points", cloud.points.size()}, {"escape_radius", cloud.escape_radius},
         {"grid", grid_json(grid)}, {"outside", img.outside}, {"pgm", pgm}};
  if (!csv.empty()) {
    write_cloud_csv(cloud, csv);
    j["csv"] = csv;
  }
  emit(j);
  return kSuccess;
}

int run_measure(const Common& c, long gen, int depth, int size, const std::string& csv, const std::string& pgm) {
  InputDocument doc = c.load();
  const std::size_t i = generator_index(gen, doc.input.generators);
  if (depth < 0 || size < 2) throw InputError("--depth and --size must be positive");
  const auto coeffs = complex_generator(doc.input.generators, i);
  std::mt19937_64 rng(doc.input.seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const Complex start(u(rng), u(rng));
  const GridSpec grid = default_grid(coeffs, size, size);
  const GridMeasure m = mme_pullback(coeffs, depth, start, grid);
  write_grid_csv(m, csv);
  Json j{{"generator", gen}, {"depth", depth}, {"start", {start.real(), start.imag()}}, {"grid", grid_json(grid)},
         {"total", m.total()}, {"outside", m.outside}, {"note", m.note}, {"csv", csv}};
  if (!pgm.empty()) {
    write_pgm(m, pgm);
    j["pgm"] = pgm;
  }
  emit(j);
  return kSuccess;
}

int run_selftest(std::uint64_t seed, bool quick) {
  const PropertyReport a = l0_composition_suite(quick ? 200 : 1000, 64, seed);
  const PropertyReport b = l0_word_suite(quick ? 100 : 500, 4, 6, seed);
  for (const auto* r : {&a, &b}) {
    std::cout << (r->passed() ? "PASS " : "FAIL ") << r->summary() << "\n";
    for (const auto& f : r->failures) std::cout << "  " << f << "\n";
  }
  return a.passed() && b.passed() ? kSuccess : kInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decides whether the principal right ideals of a polynomial composition semigroup intersect"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "Seed for every randomized path")->each([&](const std::string&) {
    common.seed_given = true;
  });

  auto file_arg = [&](CLI::App* sub) {
    sub->add_option("file", common.file, "JSON input document")->required()->check(CLI::ExistingFile);
  };

  long precision = 0, trunc = 0, branch = -1;
  double tol = -1;
  bool force_numeric = false;
  auto* decide_cmd = app.add_subcommand("decide", "Run the decision pipeline and print a JSON verdict");
  file_arg(decide_cmd);
  decide_cmd->add_option("--precision", precision, "Bits for the numeric path");
  decide_cmd->add_option("--trunc", trunc, "Böttcher truncation order");
  decide_cmd->add_option("--tol", tol, "Numeric tolerance");
  decide_cmd->add_option("--branch", branch, "Böttcher branch index");
  decide_cmd->add_flag("--force-numeric", force_numeric, "Skip the exact Böttcher path");

  long max_degree = 0, max_length = 0;
  auto* witness_cmd = app.add_subcommand("witness", "Search for a relation certificate by breadth-first enumeration");
  file_arg(witness_cmd);
  witness_cmd->add_option("--max-degree", max_degree, "Composite degree cap");
  witness_cmd->add_option("--max-length", max_length, "Word length cap");

  std::string lhs, rhs;
  auto* verify_cmd = app.add_subcommand("verify", "Check whether two words evaluate to the same polynomial");
  file_arg(verify_cmd);
  verify_cmd->add_option("--lhs", lhs, "Word such as 1,2,1")->required();
  verify_cmd->add_option("--rhs", rhs, "Word such as 2,1,1")->required();

  long gen = 1, order = 16;
  auto* bottcher_cmd = app.add_subcommand("bottcher", "Print the Böttcher series of one generator");
  file_arg(bottcher_cmd);
  bottcher_cmd->add_option("--gen", gen, "1-based generator index");
  bottcher_cmd->add_option("--order", order, "Truncation order")->check(CLI::Range(2L, 4096L));
  bottcher_cmd->add_option("--branch", branch, "Branch index");

  auto* nf_cmd = app.add_subcommand("normal-form", "Report the power, Chebyshev or common-root normal form");
  file_arg(nf_cmd);

  long points = 20000, burn_in = 100;
  int size = 256, depth = 10;
  std::string png = "julia.pgm", csv;
  auto* julia_cmd = app.add_subcommand("julia", "Render a Julia set by inverse iteration to a 16-bit PGM");
  file_arg(julia_cmd);
  julia_cmd->add_option("--gen", gen, "1-based generator index");
  julia_cmd->add_option("--png,--out", png, "Output PGM path");
  julia_cmd->add_option("--csv", csv, "Optional point cloud CSV");
  julia_cmd->add_option("--points", points, "Number of points");
  julia_cmd->add_option("--burn-in", burn_in, "Discarded steps per orbit");
  julia_cmd->add_option("--size", size, "Image side in pixels");

  std::string measure_csv = "measure.csv", measure_pgm;
  auto* measure_cmd = app.add_subcommand("measure", "Export the maximal-entropy measure on a grid");
  file_arg(measure_cmd);
  measure_cmd->add_option("--gen", gen, "1-based generator index");
  measure_cmd->add_option("--depth", depth, "Preimage depth");
  measure_cmd->add_option("--out", measure_csv, "Output CSV path");
  measure_cmd->add_option("--png", measure_pgm, "Optional PGM path");
  measure_cmd->add_option("--size", size, "Grid side");

  bool quick = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the l0 property suites");
  selftest_cmd->add_flag("--quick", quick, "Smaller sample sizes");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*decide_cmd) return run_decide(common, precision, trunc, tol, force_numeric, branch);
    if (*witness_cmd) return run_witness(common, max_degree, max_length);
    if (*verify_cmd) return run_verify(common, lhs, rhs);
    if (*bottcher_cmd) return run_bottcher(common, gen, order, std::max(0L, branch));
    if (*nf_cmd) return run_normal_form(common);
    if (*julia_cmd) return run_julia(common, gen, points, burn_in, size, png, csv);
    if (*measure_cmd) return run_measure(common, gen, depth, size, measure_csv, measure_pgm);
    if (*selftest_cmd) return run_selftest(common.seed, quick);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const SizeError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return kInput;
  } catch (const FieldMismatch& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kInput;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
