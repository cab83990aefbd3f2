#pragma once

// Decision pipeline: do the principal right ideals S P_1, ..., S P_k of the
// polynomial semigroup S = <P_1, ..., P_k> have a common element?

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polysemi/cyclotomic.hpp"
#include "polysemi/gaussian.hpp"
#include "polysemi/normal_forms.hpp"
#include "polysemi/polynomial.hpp"
#include "polysemi/words.hpp"

namespace polysemi {

using GeneratorList = std::variant<std::vector<Polynomial<GaussianRational>>, std::vector<Polynomial<Cyclotomic>>,
                                   std::vector<Polynomial<BigComplex>>>;

struct DecideOptions {
  long precision = 256;        // bits for the numeric path
  long trunc = 64;             // Böttcher truncation order
  double tol = -1;             // < 0: 2^(-precision/2)
  long max_order = 0;          // root-of-unity search bound; 0: 4 * product of degrees
  long branch = 0;             // Böttcher branch index
  long exact_verify_cap = 4096;
  bool force_numeric = false;  // skip the exact Böttcher path
};

struct SemigroupInput {
  GeneratorList generators;
  DecideOptions options;
  std::uint64_t seed = 1;
};

std::size_t generator_count(const GeneratorList& g);
std::vector<long> generator_degrees(const GeneratorList& g);
std::string field_name(const GeneratorList& g);

enum class Outcome { Yes, No, SpecialCase, Inconclusive };
std::string to_string(Outcome o);

// omega_i n_i: generator i read in the Böttcher coordinate of the base.
struct ConjugatedLeading {
  std::string omega;            // exact when the exact path ran
  std::complex<double> approx;
  long n = 0;
  long unity_order = 0;         // 0: not a root of unity within max_order
  long unity_exponent = 0;      // omega = exp(2 pi i e / unity_order)
  double max_tail = 0;
  double unity_defect = 0;      // |omega^order - 1|, or ||omega| - 1| without an order
};

struct Margins {
  std::string path;             // "exact" or "numeric"
  long precision = 0;
  long trunc = 0;
  long base = 0;                // 1-based index of the Böttcher base
  double residual = 0;
  double tolerance = 0;
  double max_tail = 0;
  double unity_defect = 0;
  long horizon = 0;
};

struct Verdict {
  Outcome outcome = Outcome::Inconclusive;
  std::optional<std::string> special_case;   // "power" or "chebyshev"
  std::optional<bool> ideal_intersection;    // unset when inconclusive
  std::optional<WitnessCertificate> certificate;
  std::vector<ConjugatedLeading> conjugated_leading;
  NormalFormSummary normal_form;
  Margins margins;
  std::vector<std::string> notes;
};

// 0 intersection, 1 no intersection, 2 inconclusive.
int exit_code(const Verdict& v);

Verdict decide(const SemigroupInput& input);

}  // namespace polysemi
