#include "polysemi/properties.hpp"

#include <chrono>
#include <optional>
#include <random>
#include <sstream>

#include "polysemi/gaussian.hpp"
#include "polysemi/series.hpp"

namespace polysemi {

std::string PropertyReport::summary() const {
  std::ostringstream out;
  out << name << ": " << cases << " cases, " << checks << " checks, " << violations << " violations, " << seconds
      << " s";
  return out.str();
}

namespace {

using G = GaussianRational;
using Series = TruncatedSeries<G>;
using Clock = std::chrono::steady_clock;

constexpr long kMaxFailures = 5;

G random_nonzero(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> c(-3, 3);
  G g;
  do g = G(Rational(c(rng)), Rational(c(rng)));
  while (g.is_zero());
  return g;
}

// Ord0 = ord, l0 = l (nullopt: monomial), a few further terms above ord + l.
Series random_series(std::mt19937_64& rng, long ord, std::optional<long> l, long trunc) {
  Series s(GaussianContext{}, trunc);
  s.set(ord, random_nonzero(rng));
  if (!l) return s;
  s.set(ord + *l, random_nonzero(rng));
  std::uniform_int_distribution<long> pos(ord + *l + 1, trunc);
  std::uniform_int_distribution<int> extra(0, 3);
  if (ord + *l < trunc)
    for (int t = extra(rng); t > 0; --t) s.set(pos(rng), random_nonzero(rng));
  return s;
}

// l0 of s, or a lower bound when no second term is known.
struct L0Reading {
  long value;
  bool exact;
};

L0Reading read_l0(const Series& s) {
  const auto r = ord_l0(s);
  if (r.l0) return {*r.l0, true};
  return {s.trunc() - r.ord + 1, false};
}

class Recorder {
 public:
  explicit Recorder(PropertyReport& r) : r_(r) {}
  void check(bool ok, const std::string& what) {
    ++r_.checks;
    if (ok) return;
    ++r_.violations;
    if (static_cast<long>(r_.failures.size()) < kMaxFailures) r_.failures.push_back(what);
  }

 private:
  PropertyReport& r_;
};

// Prime field F_p, p = 2^61 - 1, for word suites where exact coefficients
// grow too fast. Inputs are integers, so every F_p coefficient is the
// reduction of the exact one; a reading can only err upwards, when p divides
// an exact coefficient.
struct Fp {
  static constexpr std::uint64_t p = (std::uint64_t{1} << 61) - 1;
  std::uint64_t v = 0;

  bool is_zero() const { return v == 0; }
  friend Fp operator+(Fp a, Fp b) { return {(a.v + b.v) % p}; }
  friend Fp operator*(Fp a, Fp b) { return {static_cast<std::uint64_t>(static_cast<unsigned __int128>(a.v) * b.v % p)}; }
};

// s = z^ord (u_0 + u_1 z + ... + u_R z^R + O(z^(R+1))), u_0 != 0. The relative
// horizon R survives composition with inner order >= 1.
template <class E>
struct RelSeries {
  long ord = 1;
  std::vector<E> u;
};

template <class E>
std::vector<E> rel_mul(const std::vector<E>& a, const std::vector<E>& b) {
  std::vector<E> out(a.size(), E{});
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < out.size(); ++j)
      if (!b[j].is_zero()) out[i + j] = out[i + j] + a[i] * b[j];
  }
  return out;
}

// t o x = z^(ord_t ord_x) sum_i v_i z^(ord_x i) u^(ord_t + i).
template <class E>
RelSeries<E> rel_compose(const RelSeries<E>& t, const RelSeries<E>& x) {
  const std::size_t n = x.u.size();
  RelSeries<E> out{t.ord * x.ord, std::vector<E>(n, E{})};
  std::vector<E> power(n, E{});
  power[0] = x.u[0];
  for (long k = 1; k < t.ord; ++k) power = rel_mul(power, x.u);
  // power = u^(ord_t)
  for (std::size_t i = 0; i < t.u.size(); ++i) {
    const std::size_t shift = static_cast<std::size_t>(x.ord) * i;
    if (shift >= n) break;
    if (!t.u[i].is_zero())
      for (std::size_t m = 0; m + shift < n; ++m)
        if (!power[m].is_zero()) out.u[m + shift] = out.u[m + shift] + t.u[i] * power[m];
    power = rel_mul(power, x.u);
  }
  return out;
}

template <class E>
std::optional<long> rel_l0(const RelSeries<E>& s) {
  for (std::size_t i = 1; i < s.u.size(); ++i)
    if (!s.u[i].is_zero()) return static_cast<long>(i);
  return std::nullopt;
}

// Same shape as random_series with small positive integer coefficients, held
// both in F_p and in Q(i); the F_p copy is the reduction of the exact one.
struct TwinSeries {
  RelSeries<Fp> fp;
  RelSeries<G> exact;
};

TwinSeries random_twin(std::mt19937_64& rng, long ord, std::optional<long> l, long horizon) {
  std::uniform_int_distribution<long> c(1, 3);
  TwinSeries s{{ord, std::vector<Fp>(static_cast<std::size_t>(horizon) + 1)},
               {ord, std::vector<G>(static_cast<std::size_t>(horizon) + 1)}};
  auto put = [&](long i) {
    const long v = c(rng);
    s.fp.u[static_cast<std::size_t>(i)] = {static_cast<std::uint64_t>(v)};
    s.exact.u[static_cast<std::size_t>(i)] = G(v);
  };
  put(0);
  if (!l) return s;
  put(*l);
  std::uniform_int_distribution<long> pos(*l + 1, horizon);
  std::uniform_int_distribution<int> extra(0, 2);
  if (*l < horizon)
    for (int t = extra(rng); t > 0; --t) put(pos(rng));
  return s;
}

std::string describe_l0(std::optional<long> l) { return l ? std::to_string(*l) : "inf"; }

}  // namespace

PropertyReport l0_composition_suite(long pairs, long trunc, std::uint64_t seed) {
  PropertyReport report;
  report.name = "l0 composition";
  const auto start = Clock::now();
  Recorder rec(report);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> small(1, 6);
  for (long c = 0; c < pairs; ++c) {
    ++report.cases;
    const long ox = small(rng), lx = small(rng), ot = small(rng), lt = small(rng);
    const Series x = random_series(rng, ox, lx, trunc);
    const Series t = random_series(rng, ot, lt, trunc);
    const std::string tag = "case " + std::to_string(c) + " (Ord X, l0 X, Ord T, l0 T) = (" + std::to_string(ox) + ", " +
                            std::to_string(lx) + ", " + std::to_string(ot) + ", " + std::to_string(lt) + ")";

    const L0Reading tx = read_l0(compose(t, x));
    const long bound = std::min(lx, ox * lt);
    rec.check(tx.value >= bound, tag + ": l0(T o X) = " + std::to_string(tx.value) + " < " + std::to_string(bound));
    if (lx != ox * lt)
      rec.check(tx.exact && tx.value == bound,
                tag + ": l0(T o X) = " + std::to_string(tx.value) + ", expected " + std::to_string(bound));

    const long m = small(rng);
    const Series mono = random_series(rng, m, std::nullopt, trunc);
    const L0Reading xm = read_l0(compose(x, mono));
    rec.check(xm.exact && xm.value == m * lx, tag + ": l0(X o c z^" + std::to_string(m) + ") = " +
                                                   std::to_string(xm.value) + ", expected " + std::to_string(m * lx));
    const L0Reading mx = read_l0(compose(mono, x));
    rec.check(mx.exact && mx.value == lx, tag + ": l0(c z^" + std::to_string(m) + " o X) = " +
                                               std::to_string(mx.value) + ", expected " + std::to_string(lx));
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

PropertyReport l0_word_suite(long tuples, int max_k, int max_length, std::uint64_t seed) {
  PropertyReport report;
  report.name = "l0 words";
  const auto start = Clock::now();
  Recorder rec(report);
  std::mt19937_64 rng(seed);
  constexpr long kHorizon = 24;
  constexpr int kExactLength = 3;  // words this short are also run in Q(i)
  std::uniform_int_distribution<long> ord_d(2, 4), l_d(1, 4), above(1, 6);
  std::uniform_int_distribution<int> k_d(1, max_k), len_d(0, max_length);
  std::bernoulli_distribution monomial(0.25);
  for (long c = 0; c < tuples; ++c) {
    ++report.cases;
    const int k = k_d(rng);
    const long l = l_d(rng);
    std::vector<TwinSeries> gens;
    gens.push_back(random_twin(rng, ord_d(rng), l, kHorizon));
    for (int i = 1; i < k; ++i) {
      std::optional<long> li;
      if (!monomial(rng)) li = l + above(rng) - 1;
      gens.push_back(random_twin(rng, ord_d(rng), li, kHorizon));
    }
    const int len = len_d(rng);
    std::uniform_int_distribution<int> letter(0, k - 1);
    std::vector<int> word(static_cast<std::size_t>(len));
    for (auto& w : word) w = letter(rng);

    // Alternate between the two branches of the claim.
    const bool equal_case = c % 2 == 0;
    std::optional<long> lx = l;
    if (!equal_case) lx = monomial(rng) ? std::nullopt : std::optional<long>(l + above(rng));
    const TwinSeries x = random_twin(rng, ord_d(rng), lx, kHorizon);

    RelSeries<Fp> acc = x.fp;
    for (std::size_t i = word.size(); i-- > 0;) acc = rel_compose(gens[static_cast<std::size_t>(word[i])].fp, acc);
    const auto got = rel_l0(acc);
    std::string tag = "tuple " + std::to_string(c) + " (k = " + std::to_string(k) + ", l = " + std::to_string(l) +
                      ", |A| = " + std::to_string(len) + ", l0 X = " + describe_l0(lx) + ")";
    if (equal_case)
      rec.check(got == l, tag + ": l0(A X) = " + describe_l0(got));
    else
      rec.check(!got || *got > l, tag + ": l0(A X) = " + describe_l0(got));

    if (len <= kExactLength) {
      RelSeries<G> ex = x.exact;
      for (std::size_t i = word.size(); i-- > 0;) ex = rel_compose(gens[static_cast<std::size_t>(word[i])].exact, ex);
      const auto exact_l0 = rel_l0(ex);
      rec.check(exact_l0 == got && ex.ord == acc.ord, tag + ": F_p reading " + describe_l0(got) +
                                                          " disagrees with exact reading " + describe_l0(exact_l0));
    }
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

}  // namespace polysemi
