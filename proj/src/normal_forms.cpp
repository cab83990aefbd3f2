#include "polysemi/normal_forms.hpp"

namespace polysemi {

std::string to_string(NormalFormKind k) {
  switch (k) {
    case NormalFormKind::None: return "none";
    case NormalFormKind::PowerFamily: return "power";
    case NormalFormKind::ChebyshevFamily: return "chebyshev";
    case NormalFormKind::TPowerForm: return "t-power-form";
  }
  return "none";
}

PowerBase minimal_power_base(long n) {
  if (n < 2) throw PreconditionError("minimal_power_base: n must be >= 2");
  for (long b = 2; b * b <= n; ++b) {
    long e = 0, m = n;
    while (m % b == 0) {
      m /= b;
      ++e;
    }
    if (m == 1) return {b, e};
  }
  return {n, 1};
}

}  // namespace polysemi
