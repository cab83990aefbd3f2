#pragma once

// JSON input documents and machine-readable output.
//
// Input schema:
//   {
//     "field": "auto" | "gaussian" | "cyclotomic" | "bigcomplex",   (optional, default auto)
//     "generators": [ ["-2", "0", "1"], {"3": "zeta(3)", "0": "1/2"} ],
//     "options": { "precision": 256, "trunc": 64, "tol": -1, "max_order": 0, "branch": 0,
//                  "exact_verify_cap": 4096, "force_numeric": false,
//                  "max_degree": 1000000, "max_word_length": 12, "seed": 1 }
//   }
// A dense generator lists coefficients by ascending power; a sparse one maps
// powers to coefficients. Coefficients are strings in the grammar
//   expr   := ['+'|'-'] term { ('+'|'-') term }
//   term   := factor { ['*'] factor }            (juxtaposition multiplies)
//   factor := atom ['^' ['-'] digits]
//   atom   := number ['/' number] | 'i' | 'zeta(' digits ')' | '(' expr ')'
// where number is a decimal with optional exponent, read exactly. Field
// inference: i and zeta(m) contribute orders 4 and m; with L their lcm the
// generators live in Q(i) when L divides 4 and in Q(zeta_L) otherwise.
// "bigcomplex" evaluates exactly and rounds once to options.precision bits.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "polysemi/decide.hpp"
#include "polysemi/words.hpp"

namespace polysemi {

using Json = nlohmann::json;

struct InputDocument {
  SemigroupInput input;
  SearchOptions search;
};

// lcm of the root-of-unity orders a coefficient mentions (1 for rationals).
long coefficient_order(std::string_view text);
Cyclotomic parse_cyclotomic(std::string_view text, int order);
GaussianRational parse_gaussian(std::string_view text);

InputDocument parse_input(const Json& doc);
InputDocument load_input(const std::string& path);

std::vector<std::string> generator_strings(const GeneratorList& g);
// Ascending coefficient strings, parseable by the grammar above.
std::vector<std::vector<std::string>> generator_coefficients(const GeneratorList& g);

Json to_json(const Word& w);
Json to_json(const WitnessCertificate& c, const GeneratorList& gens);
Json to_json(const SearchResult& r, const GeneratorList& gens);
Json to_json(const NormalFormSummary& nf);
Json to_json(const Verdict& v, const GeneratorList& gens);

}  // namespace polysemi
