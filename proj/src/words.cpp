#include "polysemi/words.hpp"

#include <algorithm>

namespace polysemi {

std::string Word::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(letters[i]);
  }
  return s + "]";
}

Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
  return w;
}

Word repeat(const Word& u, long times) {
  Word w;
  for (long t = 0; t < times; ++t) w.letters.insert(w.letters.end(), u.letters.begin(), u.letters.end());
  return w;
}

BigInt word_degree(const std::vector<long>& degrees, const Word& w) {
  BigInt d = 1;
  for (int letter : w.letters) {
    if (letter < 1 || letter > static_cast<int>(degrees.size())) throw PreconditionError("letter out of range");
    d *= degrees[static_cast<std::size_t>(letter - 1)];
  }
  return d;
}

std::string to_string(Verification v) {
  switch (v) {
    case Verification::Exact: return "exact";
    case Verification::Modular: return "modular";
    case Verification::Numeric: return "numeric";
    case Verification::Image: return "image";
    case Verification::Unverified: return "unverified";
  }
  return "unverified";
}

std::string to_string(RelationStatus::Kind k) {
  switch (k) {
    case RelationStatus::Exact: return "exact";
    case RelationStatus::Numeric: return "numeric";
    case RelationStatus::Modular: return "modular";
    case RelationStatus::Unequal: return "unequal";
  }
  return "unequal";
}

MonomialElement compose(const MonomialElement& a, const MonomialElement& b) {
  if (a.l != b.l) throw PreconditionError("monomial elements with different unity orders");
  const long l = a.l;
  const long d_mod = static_cast<long>(mpz_fdiv_ui(a.degree.get_mpz_t(), static_cast<unsigned long>(l)));
  long e = (a.e + d_mod * b.e) % l;
  if (e < 0) e += l;
  return {e, l, a.degree * b.degree};
}

MonomialElement evaluate_word(const std::vector<MonomialElement>& elements, const Word& w) {
  if (w.empty()) throw PreconditionError("evaluate_word: empty word");
  MonomialElement acc = elements.at(static_cast<std::size_t>(w.letters.back() - 1));
  for (std::size_t k = w.letters.size() - 1; k-- > 0;)
    acc = compose(elements.at(static_cast<std::size_t>(w.letters[k] - 1)), acc);
  return acc;
}

WitnessCertificate witness_zu(const std::vector<MonomialElement>& elements) {
  const int k = static_cast<int>(elements.size());
  if (k < 1) throw PreconditionError("witness_zu needs at least one element");
  const long l = elements.front().l;
  for (const auto& e : elements) {
    if (e.l != l || l < 1) throw PreconditionError("witness_zu needs a common unity order");
    if (e.degree < 2) throw PreconditionError("witness_zu needs degrees >= 2");
  }
  // Cyclic words F_i = Q_i o Q_{i+1} o ... o Q_{i-1}.
  std::vector<Word> f(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    for (int t = 0; t < k; ++t) f[static_cast<std::size_t>(i)].letters.push_back((i + t) % k + 1);
  std::vector<MonomialElement> fe;
  for (const auto& w : f) fe.push_back(evaluate_word(elements, w));

  // Powers F_i^j for j up to the bound, kept incrementally.
  long bound = 1;
  for (int t = 1; t < k && bound < (1L << 40); ++t) bound *= l;
  bound += 1;
  const long cap = std::max(bound, 64L);
  std::vector<std::vector<MonomialElement>> pw(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) pw[static_cast<std::size_t>(i)].push_back(fe[static_cast<std::size_t>(i)]);
  auto power_of = [&](int i, long j) -> const MonomialElement& {
    auto& v = pw[static_cast<std::size_t>(i)];
    while (static_cast<long>(v.size()) < j) v.push_back(compose(fe[static_cast<std::size_t>(i)], v.back()));
    return v[static_cast<std::size_t>(j - 1)];
  };

  for (long j2 = 2; j2 <= cap + 1; ++j2) {
    const MonomialElement& target = power_of(0, j2);
    for (long j1 = 1; j1 < j2; ++j1) {
      bool all = true;
      for (int i = 1; i < k && all; ++i) all = compose(power_of(0, j1), power_of(i, j2 - j1)) == target;
      if (!all) continue;
      WitnessCertificate cert;
      cert.words.resize(static_cast<std::size_t>(k));
      // F_{i+1} ends in letter i; F_1 ends in letter k.
      for (int i = 1; i < k; ++i)
        cert.words[static_cast<std::size_t>(i - 1)] =
            concat(repeat(f[0], j1), repeat(f[static_cast<std::size_t>(i)], j2 - j1));
      cert.words[static_cast<std::size_t>(k - 1)] = repeat(f[0], j2);
      cert.composite_degree = target.degree;
      cert.verification = Verification::Image;
      cert.note = "j1=" + std::to_string(j1) + ", j2=" + std::to_string(j2);
      return cert;
    }
  }
  throw InvariantViolation("witness_zu: no collision within " + std::to_string(cap + 1) + " powers");
}

std::vector<Word> combine_pairwise(const std::vector<PairwiseRelation>& relations) {
  long big_k = 1;
  for (const auto& r : relations) {
    if (r.t <= 0) throw PreconditionError("combine_pairwise: t_i must be positive");
    if (r.s <= 0 || r.r < 0) throw PreconditionError("combine_pairwise: need s_i >= 1 and r_i >= 0");
    big_k *= r.t;
  }
  std::vector<Word> words;
  words.push_back(repeat(Word{{1}}, big_k));
  for (std::size_t idx = 0; idx < relations.size(); ++idx) {
    const auto& r = relations[idx];
    const int letter = static_cast<int>(idx) + 2;
    const Word unit = concat(repeat(Word{{1}}, r.r), repeat(Word{{letter}}, r.s));
    words.push_back(repeat(unit, big_k / r.t));
  }
  return words;
}

CoefficientIdentity extract_coefficient_identity(const std::vector<long>& degrees, const std::vector<Word>& words) {
  const std::size_t k = degrees.size();
  if (k < 2) throw PreconditionError("extract_coefficient_identity needs k >= 2");
  if (words.size() != k) throw PreconditionError("need one word per generator");
  for (std::size_t j = 0; j < k; ++j) {
    if (words[j].empty() || words[j].last() != static_cast<int>(j) + 1)
      throw PreconditionError("word " + std::to_string(j + 1) + " must end in its own letter");
  }
  CoefficientIdentity out;
  out.exponents.assign(k, std::vector<BigInt>(k, BigInt(0)));
  for (std::size_t j = 0; j < k; ++j) {
    BigInt left = 1;
    for (int letter : words[j].letters) {
      out.exponents[j][static_cast<std::size_t>(letter - 1)] += left;
      left *= degrees[static_cast<std::size_t>(letter - 1)];
    }
  }
  out.reduced = out.exponents;
  for (std::size_t i = 0; i < k; ++i) {
    BigInt lo = out.exponents[0][i];
    for (std::size_t j = 1; j < k; ++j) lo = std::min(lo, out.exponents[j][i]);
    for (std::size_t j = 0; j < k; ++j) out.reduced[j][i] -= lo;
  }
  for (std::size_t i = 0; i < k; ++i) {
    out.s.push_back(out.reduced[i][i]);
    if (out.s.back() < 1)
      throw InvariantViolation("reduced exponent s_" + std::to_string(i + 1) + " = " + out.s.back().get_str() +
                               " is not positive");
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i && !(out.exponents[i][i] > out.exponents[j][i]))
        throw InvariantViolation("deg of a_" + std::to_string(i + 1) + " in U_" + std::to_string(i + 1) +
                                 " does not exceed its degree in U_" + std::to_string(j + 1));
    }
  }
  return out;
}

}  // namespace polysemi
