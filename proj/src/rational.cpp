#include "polysemi/rational.hpp"

#include <cctype>

#include "polysemi/errors.hpp"

namespace polysemi {

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty rational literal");
  const bool decimal = s.find_first_of(".eE") != std::string::npos;
  if (!decimal) {
    Rational q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0)
      throw InputError("malformed rational literal '" + s + "'");
    q.canonicalize();
    return q;
  }
  // Decimal: mantissa digits with optional point, then optional exponent.
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long scale = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      any_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) throw InputError("malformed decimal literal '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E')
      throw InputError("malformed decimal literal '" + s + "'");
    ++pos;
    try {
      std::size_t used = 0;
      scale += std::stol(s.substr(pos), &used);
      if (pos + used != s.size()) throw InputError("trailing characters");
    } catch (const std::exception&) {
      throw InputError("malformed exponent in '" + s + "'");
    }
  }
  BigInt mantissa(digits, 10);
  if (negative) mantissa = -mantissa;
  BigInt ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  Rational q = scale >= 0 ? Rational(mantissa * ten_pow) : Rational(mantissa, ten_pow);
  q.canonicalize();
  return q;
}

std::optional<Rational> exact_root(const Rational& q, unsigned long n) {
  if (sgn(q) < 0 || n == 0) return std::nullopt;
  if (n == 1) return q;
  BigInt num_root, den_root;
  if (mpz_root(num_root.get_mpz_t(), q.get_num_mpz_t(), n) == 0) return std::nullopt;
  if (mpz_root(den_root.get_mpz_t(), q.get_den_mpz_t(), n) == 0) return std::nullopt;
  Rational r(num_root, den_root);
  r.canonicalize();
  return r;
}

void append_canonical(std::string& out, const Rational& q) {
  out += q.get_str(16);
  out.push_back(';');
}

}  // namespace polysemi
