#include "logvvmf/numeric.hpp"

#include <cctype>
#include <sstream>

namespace logvvmf {

std::string to_decimal_string(const Real& x) {
  return x.str(0, std::ios_base::scientific);
}

std::string to_decimal_string(const Rat& q) { return q.get_str(); }

Rat parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("parse_rational: empty string");

  if (s.find('/') != std::string::npos) {
    Rat q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
      throw std::invalid_argument("parse_rational: bad fraction '" + raw + "'");
    q.canonicalize();
    return q;
  }

  bool neg = false;
  std::size_t i = 0;
  if (s[i] == '+' || s[i] == '-') neg = (s[i++] == '-');
  std::string digits;
  long frac_digits = 0, expo = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      if (seen_dot) ++frac_digits;
      any = true;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && any) {
      expo = std::stol(s.substr(i + 1));
      break;
    } else {
      throw std::invalid_argument("parse_rational: bad number '" + raw + "'");
    }
  }
  if (!any) throw std::invalid_argument("parse_rational: bad number '" + raw + "'");
  Int mant(digits.empty() ? std::string("0") : digits, 10);
  if (neg) mant = -mant;
  long net = expo - frac_digits;
  Int pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(net < 0 ? -net : net));
  Rat q = (net >= 0) ? Rat(mant * pow10) : Rat(mant, pow10);
  q.canonicalize();
  return q;
}

Real parse_real(const std::string& s) {
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_real: bad number '" + s + "'");
  }
}

}  // namespace logvvmf
