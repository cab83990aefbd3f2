#pragma once

// Words in the generators. Word [i1, ..., im] (1-based letters) denotes
// P_i1 o ... o P_im, so the last letter is applied first.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polysemi/errors.hpp"
#include "polysemi/modular.hpp"
#include "polysemi/polynomial.hpp"
#include "polysemi/rational.hpp"

namespace polysemi {

struct Word {
  std::vector<int> letters;

  bool empty() const { return letters.empty(); }
  int last() const { return letters.back(); }
  std::string to_string() const;
  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;
};

// u . v, i.e. the composite (word u) o (word v).
Word concat(const Word& u, const Word& v);
Word repeat(const Word& u, long times);

// Product of the letter degrees; degrees are 0-based by letter - 1.
BigInt word_degree(const std::vector<long>& degrees, const Word& w);

enum class Verification { Exact, Modular, Numeric, Image, Unverified };
std::string to_string(Verification v);

struct WitnessCertificate {
  std::vector<Word> words;  // words[i] ends in letter i + 1
  BigInt composite_degree;
  Verification verification = Verification::Unverified;
  double residual = 0;
  std::string note;
};

// omega z^n with omega = exp(2 pi i e / l).
struct MonomialElement {
  long e = 0;
  long l = 1;
  BigInt degree = 2;

  friend bool operator==(const MonomialElement&, const MonomialElement&) = default;
};

// (e1, d1) o (e2, d2) = (e1 + d1 e2 mod l, d1 d2)
MonomialElement compose(const MonomialElement& a, const MonomialElement& b);
MonomialElement evaluate_word(const std::vector<MonomialElement>& elements, const Word& w);

// Cyclic compositions F_1 = Q_1 o ... o Q_k, F_i = Q_i o ... o Q_{i-1}; finds
// j1 < j2 with F_1^{j2} = F_1^{j1} o F_i^{j2-j1} for every i, minimizing j2
// greedily. Word ending in letter i: F_1^{j1} o F_{i+1}^{j2-j1} (i < k),
// F_1^{j2} for letter k.
WitnessCertificate witness_zu(const std::vector<MonomialElement>& elements);

// P_1^{t_i} = P_1^{r_i} o P_i^{s_i} for i = 2..k.
struct PairwiseRelation {
  long t = 1;
  long r = 0;
  long s = 1;
};

// K = prod t_i; words P_1^K and (P_1^{r_i} o P_i^{s_i})^{K / t_i}.
std::vector<Word> combine_pairwise(const std::vector<PairwiseRelation>& relations);

struct CoefficientIdentity {
  std::vector<std::vector<BigInt>> exponents;  // [word j][symbol i] = deg_{a_i} U_j
  std::vector<std::vector<BigInt>> reduced;    // after removing the common power of each a_i
  std::vector<BigInt> s;                       // s_i = reduced[i][i]
};

// Leading-coefficient bookkeeping for monomial generators a_i z^{n_i}: in
// word [i1..im] the symbol a_{i_p} carries exponent n_{i1} ... n_{i_{p-1}}.
// Throws InvariantViolation unless every s_i >= 1 and
// deg_{a_i} U_i > deg_{a_i} U_j for j != i.
CoefficientIdentity extract_coefficient_identity(const std::vector<long>& degrees,
                                                 const std::vector<Word>& words);

// ---------------------------------------------------------------------------

inline void check_generators(const std::vector<long>& degrees) {
  if (degrees.empty()) throw PreconditionError("no generators");
  for (long d : degrees)
    if (d < 2) throw PreconditionError("generators must have degree >= 2");
}

template <ScalarField S>
std::vector<long> degrees_of(const std::vector<Polynomial<S>>& gens) {
  std::vector<long> d;
  for (const auto& g : gens) d.push_back(g.degree());
  return d;
}

template <ScalarField S>
Polynomial<S> compose_word(const std::vector<Polynomial<S>>& gens, const Word& w, long max_degree = 1000000) {
  check_generators(degrees_of(gens));
  if (w.empty()) throw PreconditionError("compose_word: empty word");
  for (int letter : w.letters)
    if (letter < 1 || letter > static_cast<int>(gens.size())) throw PreconditionError("letter out of range");
  if (word_degree(degrees_of(gens), w) > max_degree)
    throw SizeError("word degree exceeds cap " + std::to_string(max_degree));
  Polynomial<S> acc = gens[static_cast<std::size_t>(w.letters.back() - 1)];
  for (std::size_t k = w.letters.size() - 1; k-- > 0;)
    acc = compose(gens[static_cast<std::size_t>(w.letters[k] - 1)], acc, max_degree);
  return acc;
}

struct RelationStatus {
  enum Kind { Exact, Numeric, Modular, Unequal } kind = Unequal;
  double residual = 0;
  std::string note;
};

std::string to_string(RelationStatus::Kind k);

template <ScalarField S>
RelationStatus verify_relation(const std::vector<Polynomial<S>>& gens, const Word& lhs, const Word& rhs,
                               double tol = 0, long max_degree = 1000000) {
  const auto degs = degrees_of(gens);
  check_generators(degs);
  const BigInt dl = word_degree(degs, lhs), dr = word_degree(degs, rhs);
  if (dl != dr) return {RelationStatus::Unequal, 0, "degrees differ: " + dl.get_str() + " vs " + dr.get_str()};
  const auto a = compose_word(gens, lhs, max_degree);
  const auto b = compose_word(gens, rhs, max_degree);
  if constexpr (is_exact_v<S>) {
    (void)tol;
    if (a == b) return {RelationStatus::Exact, 0, ""};
    return {RelationStatus::Unequal, max_coeff_distance(a, b), "coefficients differ"};
  } else {
    const double r = max_coeff_distance(a, b);
    return {r <= tol ? RelationStatus::Numeric : RelationStatus::Unequal, r, ""};
  }
}

// Values of the generator reductions at one point of one prime field; the
// value of [j] . w is P_j(value(w)).
struct ModularProbe {
  ModField field;
  std::vector<std::vector<std::uint64_t>> gens;
  std::uint64_t point;
};

template <ScalarField S>
std::vector<ModularProbe> make_probes(const std::vector<Polynomial<S>>& gens, int count, std::uint64_t salt) {
  static_assert(is_exact_v<S>);
  std::vector<ModularProbe> probes;
  const int order = embedding_order(gens.front().context());
  auto fields = modular_fields(order, count + 8, salt);
  std::uint64_t mix = 0x243f6a8885a308d3ULL ^ salt;
  for (const auto& f : fields) {
    if (static_cast<int>(probes.size()) == count) break;
    std::vector<std::vector<std::uint64_t>> red;
    bool ok = true;
    for (const auto& g : gens) {
      auto r = reduce_poly(g, f);
      if (!r) {
        ok = false;
        break;
      }
      red.push_back(std::move(*r));
    }
    if (!ok) continue;
    mix = mix * 6364136223846793005ULL + 1442695040888963407ULL;
    probes.push_back({f, std::move(red), 2 + (mix >> 3) % (f.prime() - 3)});
  }
  if (static_cast<int>(probes.size()) < count) throw InvariantViolation("could not build modular probes");
  return probes;
}

inline std::uint64_t probe_word(const ModularProbe& pr, const Word& w) {
  std::uint64_t x = pr.point;
  for (std::size_t k = w.letters.size(); k-- > 0;)
    x = eval_mod(pr.gens[static_cast<std::size_t>(w.letters[k] - 1)], x, pr.field);
  return x;
}

// Checks that all words evaluate to the same polynomial: exact composition
// up to exact_cap, Schwartz-Zippel probes in large prime fields above it
// (each probe misses a difference with probability <= degree / p < 2^-40).
template <ScalarField S>
Verification verify_words_equal(const std::vector<Polynomial<S>>& gens, const std::vector<Word>& words,
                                double tol, double* residual, long exact_cap = 4096) {
  const auto degs = degrees_of(gens);
  const BigInt d0 = word_degree(degs, words.front());
  for (const auto& w : words)
    if (word_degree(degs, w) != d0) return Verification::Unverified;
  if (residual) *residual = 0;
  if (d0 <= exact_cap) {
    const auto ref = compose_word(gens, words.front(), exact_cap);
    for (std::size_t i = 1; i < words.size(); ++i) {
      const auto other = compose_word(gens, words[i], exact_cap);
      if constexpr (is_exact_v<S>) {
        if (!(other == ref)) return Verification::Unverified;
      } else {
        const double r = max_coeff_distance(ref, other);
        if (residual) *residual = std::max(*residual, r);
        if (r > tol) return Verification::Unverified;
      }
    }
    return is_exact_v<S> ? Verification::Exact : Verification::Numeric;
  }
  if constexpr (is_exact_v<S>) {
    for (const auto& pr : make_probes(gens, 4, 0xfeed)) {
      const std::uint64_t v = probe_word(pr, words.front());
      for (std::size_t i = 1; i < words.size(); ++i)
        if (probe_word(pr, words[i]) != v) return Verification::Unverified;
    }
    return Verification::Modular;
  } else {
    return Verification::Unverified;
  }
}

struct SearchOptions {
  long max_degree = 1000000;
  long max_word_length = 12;
  double tol = 0;             // BigComplex only
  long exact_verify_cap = 4096;
  std::uint64_t seed = 0;     // picks the fingerprint primes; hits are re-verified either way
};

struct SearchResult {
  std::optional<WitnessCertificate> certificate;
  long words_examined = 0;
  long max_degree = 0;
  long max_word_length = 0;
  bool length_cap_hit = false;  // some word was cut by the length cap below max_degree
  std::string note;
};

namespace detail {

struct SearchNode {
  std::int64_t parent;  // index of the word obtained by dropping the first letter, -1 for a single letter
  int first;
  int last;
  long length;
  long degree;
};

inline Word node_word(const std::vector<SearchNode>& nodes, std::int64_t idx) {
  Word w;
  while (idx >= 0) {
    w.letters.push_back(nodes[static_cast<std::size_t>(idx)].first);
    idx = nodes[static_cast<std::size_t>(idx)].parent;
  }
  return w;
}

}  // namespace detail

// Breadth-first enumeration of words by composite degree (then
// lexicographically), bucketed by degree. Exact fields fingerprint words by
// evaluation in two prime fields and re-verify every candidate; BigComplex
// compares evaluations at a fixed point within tol and re-verifies by
// coefficients.
template <ScalarField S>
SearchResult search_witness(const std::vector<Polynomial<S>>& gens, const SearchOptions& opt) {
  const auto degs = degrees_of(gens);
  check_generators(degs);
  const int k = static_cast<int>(gens.size());
  if (k < 2) throw PreconditionError("search_witness needs k >= 2");
  if (k > 62) throw PreconditionError("search_witness supports at most 62 generators");
  SearchResult result;
  result.max_degree = opt.max_degree;
  result.max_word_length = opt.max_word_length;

  std::vector<detail::SearchNode> nodes;
  for (int i = 1; i <= k; ++i)
    if (degs[static_cast<std::size_t>(i - 1)] <= opt.max_degree) nodes.push_back({-1, i, i, 1, degs[static_cast<std::size_t>(i - 1)]});
  // Grow by left extension; nodes of one length are contiguous.
  std::size_t begin = 0;
  while (begin < nodes.size()) {
    const std::size_t end = nodes.size();
    for (std::size_t idx = begin; idx < end; ++idx) {
      const auto node = nodes[idx];
      for (int j = 1; j <= k; ++j) {
        const long dj = degs[static_cast<std::size_t>(j - 1)];
        if (node.degree > opt.max_degree / dj) continue;
        if (node.length >= opt.max_word_length) {
          result.length_cap_hit = true;
          continue;
        }
        nodes.push_back({static_cast<std::int64_t>(idx), j, node.last, node.length + 1, node.degree * dj});
      }
    }
    begin = end;
  }
  result.words_examined = static_cast<long>(nodes.size());

  // Fingerprints.
  std::vector<std::uint64_t> fp_a(nodes.size()), fp_b(nodes.size());
  std::vector<BigComplex> values;
  if constexpr (is_exact_v<S>) {
    const auto probes = make_probes(gens, 2, 0x5ea7c4 ^ opt.seed);
    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
      const auto& nd = nodes[idx];
      const std::uint64_t xa = nd.parent < 0 ? probes[0].point : fp_a[static_cast<std::size_t>(nd.parent)];
      const std::uint64_t xb = nd.parent < 0 ? probes[1].point : fp_b[static_cast<std::size_t>(nd.parent)];
      fp_a[idx] = eval_mod(probes[0].gens[static_cast<std::size_t>(nd.first - 1)], xa, probes[0].field);
      fp_b[idx] = eval_mod(probes[1].gens[static_cast<std::size_t>(nd.first - 1)], xb, probes[1].field);
    }
  } else {
    const auto& ctx = gens.front().context();
    const BigComplex x0(ctx.precision, std::complex<double>(0.3183098861837907, 0.2718281828459045));
    values.reserve(nodes.size());
    for (std::size_t idx = 0; idx < nodes.size(); ++idx) {
      const auto& nd = nodes[idx];
      const BigComplex& x = nd.parent < 0 ? x0 : values[static_cast<std::size_t>(nd.parent)];
      values.push_back(gens[static_cast<std::size_t>(nd.first - 1)](x));
    }
  }

  std::map<long, std::vector<std::size_t>> buckets;
  for (std::size_t idx = 0; idx < nodes.size(); ++idx) buckets[nodes[idx].degree].push_back(idx);
  const std::uint64_t full = (k == 64) ? ~0ULL : ((1ULL << k) - 1);

  for (auto& [degree, members] : buckets) {
    std::vector<std::pair<Word, std::size_t>> sorted;
    for (std::size_t idx : members) sorted.emplace_back(detail::node_word(nodes, static_cast<std::int64_t>(idx)), idx);
    std::sort(sorted.begin(), sorted.end());
    // Group members into classes of (apparently) equal polynomials.
    std::vector<std::vector<std::size_t>> classes;  // positions into `sorted`
    if constexpr (is_exact_v<S>) {
      std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> index;
      for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
        const auto key = std::make_pair(fp_a[sorted[pos].second], fp_b[sorted[pos].second]);
        auto [it, fresh] = index.emplace(key, classes.size());
        if (fresh) classes.emplace_back();
        classes[it->second].push_back(pos);
      }
    } else {
      for (std::size_t pos = 0; pos < sorted.size(); ++pos) {
        const BigComplex& v = values[sorted[pos].second];
        bool placed = false;
        for (auto& cls : classes) {
          const BigComplex& u = values[sorted[cls.front()].second];
          const double scale = std::max({1.0, u.abs_double(), v.abs_double()});
          if ((u - v).abs_double() <= std::max(opt.tol, 1e-12) * scale) {
            cls.push_back(pos);
            placed = true;
            break;
          }
        }
        if (!placed) classes.push_back({pos});
      }
    }
    for (const auto& cls : classes) {
      std::uint64_t mask = 0;
      for (std::size_t pos : cls) mask |= 1ULL << (nodes[sorted[pos].second].last - 1);
      if (mask != full) continue;
      // First (lexicographically smallest) word for each final letter.
      std::vector<Word> words(static_cast<std::size_t>(k));
      for (std::size_t pos : cls) {
        auto& slot = words[static_cast<std::size_t>(nodes[sorted[pos].second].last - 1)];
        if (slot.empty()) slot = sorted[pos].first;
      }
      double residual = 0;
      const Verification v = verify_words_equal(gens, words, opt.tol, &residual, opt.exact_verify_cap);
      if (v == Verification::Unverified) continue;  // fingerprint collision or numeric near-miss
      WitnessCertificate cert;
      cert.words = std::move(words);
      cert.composite_degree = degree;
      cert.verification = v;
      cert.residual = residual;
      result.certificate = std::move(cert);
      return result;
    }
  }
  result.note = "search exhausted at cap: max_degree " + std::to_string(opt.max_degree) + ", max_word_length " +
                std::to_string(opt.max_word_length) + (result.length_cap_hit ? " (word-length cap reached)" : "");
  return result;
}

// Searches t <= max_t for P_1^t = P_1^r o P_i^s (degrees must match).
template <ScalarField S>
std::optional<PairwiseRelation> find_pairwise_relation(const std::vector<Polynomial<S>>& gens, int i, long max_t,
                                                       double tol = 0, long max_degree = 100000) {
  const auto degs = degrees_of(gens);
  const BigInt n1 = degs[0], ni = degs[static_cast<std::size_t>(i - 1)];
  for (long t = 1; t <= max_t; ++t) {
    for (long r = 0; r < t; ++r) {
      // n1^(t - r) = ni^s
      BigInt target;
      mpz_pow_ui(target.get_mpz_t(), n1.get_mpz_t(), static_cast<unsigned long>(t - r));
      BigInt acc = ni;
      long s = 1;
      while (acc < target) {
        acc *= ni;
        ++s;
      }
      if (acc != target) continue;
      Word lhs = repeat(Word{{1}}, t);
      Word rhs = concat(repeat(Word{{1}}, r), repeat(Word{{i}}, s));
      if (word_degree(degs, lhs) > max_degree) continue;
      if (verify_relation(gens, lhs, rhs, tol, max_degree).kind != RelationStatus::Unequal)
        return PairwiseRelation{t, r, s};
    }
  }
  return std::nullopt;
}

}  // namespace polysemi
