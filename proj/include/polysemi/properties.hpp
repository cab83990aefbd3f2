#pragma once

// Randomized property suites for l0 under composition of power series.

#include <cstdint>
#include <string>
#include <vector>

namespace polysemi {

struct PropertyReport {
  std::string name;
  long cases = 0;
  long checks = 0;
  long violations = 0;
  double seconds = 0;
  std::vector<std::string> failures;  // first few violations

  bool passed() const { return violations == 0 && checks > 0; }
  std::string summary() const;
};

// Pairs (X, T) with Ord0 and l0 in [1, 6], exact Gaussian coefficients,
// truncation order `trunc`:
//   l0(T o X) >= min(l0(X), Ord0(X) l0(T)), with equality when the two differ;
//   for monomial T: l0(X o T) = Ord0(T) l0(X) and l0(T o X) = l0(X).
PropertyReport l0_composition_suite(long pairs = 1000, long trunc = 64, std::uint64_t seed = 1);

// Tuples T_1..T_k in z^2 C[[z]], l0(T_1) = l minimal, random words A of
// length <= max_length and X in z^2 C[[z]]:
//   l0(A o X) = l when l0(X) = l, and l0(A o X) > l when l0(X) > l.
PropertyReport l0_word_suite(long tuples = 500, int max_k = 4, int max_length = 6, std::uint64_t seed = 1);

}  // namespace polysemi
