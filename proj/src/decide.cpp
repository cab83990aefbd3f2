#include "polysemi/decide.hpp"

#include <cmath>
#include <numeric>

#include "polysemi/bottcher.hpp"
#include "polysemi/normal_forms.hpp"

namespace polysemi {

std::size_t generator_count(const GeneratorList& g) {
  return std::visit([](const auto& v) { return v.size(); }, g);
}

std::vector<long> generator_degrees(const GeneratorList& g) {
  return std::visit([](const auto& v) { return degrees_of(v); }, g);
}

std::string field_name(const GeneratorList& g) {
  switch (g.index()) {
    case 0: return "gaussian";
    case 1: return "cyclotomic";
    default: return "bigcomplex";
  }
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Yes: return "yes";
    case Outcome::No: return "no";
    case Outcome::SpecialCase: return "special-case";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

int exit_code(const Verdict& v) {
  if (!v.ideal_intersection) return 2;
  return *v.ideal_intersection ? 0 : 1;
}

namespace {

[[noreturn]] void rethrow_with_stage(const std::string& stage) {
  try {
    throw;
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(stage + ": " + e.what());
  } catch (const InputError& e) {
    throw InputError(stage + ": " + e.what());
  } catch (const SizeError& e) {
    throw SizeError(stage + ": " + e.what());
  } catch (const PreconditionError& e) {
    throw PreconditionError(stage + ": " + e.what());
  } catch (const Error& e) {
    throw Error(stage + ": " + e.what());
  }
}

template <ScalarField S>
double tolerance_for(const Polynomial<S>& p, const DecideOptions& opt) {
  if constexpr (is_exact_v<S>) {
    (void)p;
    (void)opt;
    return 0.0;
  } else {
    return opt.tol >= 0 ? opt.tol : default_tolerance<S>(p.context());
  }
}

enum class StageResult { AllMonomial, NotMonomial, Thin };

// Conjugates every generator into the Böttcher coordinate of work[base] and
// classifies the result. Fills conjugated_leading and margins.
template <ScalarField T>
StageResult bottcher_stage(const std::vector<Polynomial<T>>& work, std::size_t base, const DecideOptions& opt,
                           long max_order, Verdict& v, std::vector<MonomialElement>& elements) {
  const double tol = tolerance_for(work.front(), opt);
  const double thin = is_exact_v<T> ? 0.0 : std::sqrt(tol);
  v.margins.tolerance = tol;
  v.margins.trunc = opt.trunc;
  v.margins.base = static_cast<long>(base) + 1;

  std::optional<BottcherData<T>> bd;
  try {
    bd = bottcher_series(work[base], opt.trunc, opt.branch, tol);
  } catch (const ConstructionFailed& e) {
    v.margins.residual = e.residual();
    v.notes.push_back(std::string("bottcher: ") + e.what() + "; raise precision or trunc");
    return StageResult::Thin;
  } catch (...) {
    rethrow_with_stage("bottcher");
  }
  v.margins.residual = bd->residual;

  bool any_fail = false, any_thin = false;
  v.margins.horizon = -1;
  for (std::size_t i = 0; i < work.size(); ++i) {
    ConjugatedLeading cl;
    cl.n = work[i].degree();
    std::optional<MonomialityResult<T>> mr;
    try {
      const auto q = conjugate_generator(*bd, work[i]);
      mr = monomiality_test(q, tol);
    } catch (const InconclusiveError& e) {
      v.notes.push_back("generator " + std::to_string(i + 1) + ": " + e.what());
      any_thin = true;
      v.conjugated_leading.push_back(cl);
      continue;
    } catch (...) {
      rethrow_with_stage("conjugate generator " + std::to_string(i + 1));
    }
    cl.max_tail = mr->max_tail;
    v.margins.max_tail = std::max(v.margins.max_tail, mr->max_tail);
    v.margins.horizon = v.margins.horizon < 0 ? mr->horizon : std::min(v.margins.horizon, mr->horizon);
    const T omega = mr->leading.inverse();
    cl.omega = omega.to_string();
    cl.approx = omega.to_cd();

    bool mono = mr->is_monomial;
    if (!mono && mr->max_tail < thin) {
      any_thin = true;
      v.notes.push_back("generator " + std::to_string(i + 1) + ": tail " + std::to_string(mr->max_tail) +
                        " lies between tolerance and its square root; raise precision or trunc");
    } else if (!mono) {
      any_fail = true;
    }

    const auto order = root_of_unity_order(omega, max_order, tol);
    if (order) {
      cl.unity_order = *order;
      cl.unity_exponent = unity_exponent(omega, *order);
      cl.unity_defect = (power(omega, *order) - omega.context().one()).abs_double();
    } else {
      cl.unity_defect = std::abs(omega.abs_double() - 1.0);
      if (is_exact_v<T> || cl.unity_defect >= thin) {
        if (mono) any_fail = true;
      } else if (mono) {
        any_thin = true;
        v.notes.push_back("generator " + std::to_string(i + 1) + ": |omega| = 1 within tolerance but no order <= " +
                          std::to_string(max_order) + " found; raise max_order");
      }
    }
    v.margins.unity_defect = std::max(v.margins.unity_defect, cl.unity_defect);
    if (mono && order) elements.push_back({cl.unity_exponent, *order, BigInt(cl.n)});
    v.conjugated_leading.push_back(cl);
  }
  if (any_fail) return StageResult::NotMonomial;
  if (any_thin) return StageResult::Thin;
  // Bring all elements to the common order l.
  long l = 1;
  for (const auto& e : elements) l = std::lcm(l, e.l);
  for (auto& e : elements) {
    e.e = e.e * (l / e.l) % l;
    e.l = l;
  }
  return StageResult::AllMonomial;
}

template <ScalarField S>
Verdict decide_impl(const std::vector<Polynomial<S>>& gens, const DecideOptions& opt, std::uint64_t seed) {
  if (gens.empty()) throw InputError("no generators");
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].degree() < 2)
      throw InputError("generator " + std::to_string(i + 1) + " has degree " + std::to_string(gens[i].degree()) +
                       "; every generator must have degree at least two");
  if (opt.trunc < 4) throw InputError("trunc must be at least 4");
  const auto degs = degrees_of(gens);
  long max_order = opt.max_order;
  if (max_order <= 0) {
    max_order = 4;
    for (long d : degs) max_order = std::min(100000L, max_order * d);
  }
  const double tol = tolerance_for(gens.front(), opt);

  Verdict v;
  // Special families.
  NormalFormReport<S> family;
  try {
    if (auto lam = detect_power_conjugacy(gens, tol)) {
      family.kind = NormalFormKind::PowerFamily;
      family.lambda = *lam;
    } else if (auto ch = detect_chebyshev_conjugacy(gens, tol)) {
      family.kind = NormalFormKind::ChebyshevFamily;
      family.lambda = ch->first;
      family.signs = ch->second;
    }
  } catch (...) {
    rethrow_with_stage("normal forms");
  }
  if (family.kind == NormalFormKind::PowerFamily) v.special_case = "power";
  if (family.kind == NormalFormKind::ChebyshevFamily) v.special_case = "chebyshev";

  std::vector<MonomialElement> elements;
  StageResult stage = StageResult::AllMonomial;
  if (gens.size() == 1) {
    WitnessCertificate cert;
    cert.words = {Word{{1}}};
    cert.composite_degree = degs[0];
    cert.verification = is_exact_v<S> ? Verification::Exact : Verification::Numeric;
    cert.note = "single generator";
    v.certificate = cert;
    v.margins.path = "trivial";
  } else {
    std::optional<std::size_t> base;
    if constexpr (is_exact_v<S>) {
      if (!opt.force_numeric)
        for (std::size_t i = 0; i < gens.size() && !base; ++i)
          if (!roots_in_field(gens[i].lead(), gens[i].degree() - 1).empty()) base = i;
    }
    if constexpr (is_exact_v<S>) {
      if (base) {
        v.margins.path = "exact";
        // Monic, centred base, as on the numeric path: conjugates share one
        // normal form and the series coefficients stay small.
        std::vector<Polynomial<S>> work = gens;
        const auto& ctx = gens.front().context();
        const S scale = roots_in_field(work[*base].lead(), work[*base].degree() - 1).front().inverse();
        for (auto& w : work) w = affine_conjugate(w, scale, ctx.zero());
        const S shift = detail::centering_shift(work[*base]);
        for (auto& w : work) w = affine_conjugate(w, ctx.one(), shift);
        stage = bottcher_stage(work, *base, opt, max_order, v, elements);
      }
    }
    if (!base) {
      std::vector<Polynomial<BigComplex>> work;
      long prec = opt.precision;
      if constexpr (!is_exact_v<S>) prec = gens.front().context().precision;
      for (const auto& g : gens) work.push_back(to_big_complex(g, prec));
      // Monic, centred base: tails are then comparable across affine conjugates.
      const auto& bc = work.front().context();
      const BigComplex scale = roots_in_field(work.front().lead().inverse(), work.front().degree() - 1).front();
      for (auto& w : work) w = affine_conjugate(w, scale, bc.zero());
      const BigComplex shift = detail::centering_shift(work.front());
      for (auto& w : work) w = affine_conjugate(w, bc.one(), shift);
      v.margins.path = "numeric";
      v.margins.precision = prec;
      stage = bottcher_stage(work, 0, opt, max_order, v, elements);
    }
  }

  if (gens.size() > 1 && stage == StageResult::AllMonomial) {
    WitnessCertificate cert;
    try {
      cert = witness_zu(elements);
    } catch (...) {
      rethrow_with_stage("witness");
    }
    // A shorter relation below the cyclic one, if any, is cheaper to verify.
    if (gens.size() <= 62) {
      const BigInt below = cert.composite_degree - 1;
      SearchOptions so;
      so.max_degree = below < opt.exact_verify_cap ? below.get_si() : opt.exact_verify_cap;
      so.max_word_length = 64;
      so.tol = tol;
      so.exact_verify_cap = opt.exact_verify_cap;
      so.seed = seed;
      try {
        const auto found = search_witness(gens, so);
        if (found.certificate) {
          const std::string from = cert.composite_degree.get_str();
          cert = *found.certificate;
          cert.note = "shortest relation below the cyclic certificate of degree " + from;
        }
      } catch (...) {
        rethrow_with_stage("witness");
      }
    }
    double residual = 0;
    Verification check = Verification::Unverified;
    try {
      check = verify_words_equal(gens, cert.words, tol, &residual, opt.exact_verify_cap);
    } catch (const SizeError&) {
      check = Verification::Unverified;
    } catch (...) {
      rethrow_with_stage("verify");
    }
    cert.residual = residual;
    if (check != Verification::Unverified) {
      cert.verification = check;
      v.certificate = cert;
    } else if (is_exact_v<S> || cert.composite_degree <= opt.exact_verify_cap) {
      stage = StageResult::NotMonomial;
      v.notes.push_back("the Böttcher-derived certificate does not verify on the generators");
    } else {
      v.certificate = cert;  // verified in monomial-element arithmetic only
      v.notes.push_back("certificate degree " + cert.composite_degree.get_str() +
                        " exceeds the verification cap; verified through the Böttcher image");
    }
  }

  if (gens.size() == 1 || stage == StageResult::AllMonomial)
    v.ideal_intersection = true;
  else if (stage == StageResult::NotMonomial)
    v.ideal_intersection = false;

  if (family.kind != NormalFormKind::None) {
    v.normal_form = summarize(family);
    v.outcome = Outcome::SpecialCase;
  } else {
    if (v.ideal_intersection == true) {
      try {
        v.normal_form = summarize(extract_t_power_form(gens, degs, tol));
      } catch (const Error& e) {
        v.normal_form.reason = e.what();
      }
    } else {
      v.normal_form.reason = "no common root form without an ideal intersection";
    }
    v.outcome = !v.ideal_intersection ? Outcome::Inconclusive : (*v.ideal_intersection ? Outcome::Yes : Outcome::No);
  }
  return v;
}

}  // namespace

Verdict decide(const SemigroupInput& input) {
  return std::visit([&](const auto& gens) { return decide_impl(gens, input.options, input.seed); }, input.generators);
}

}  // namespace polysemi
