#include "hbl/rational.hpp"

#include <cctype>

namespace hbl {

static bool valid_int_token(const std::string& t) {
  if (t.empty()) return false;
  size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    if (!valid_int_token(s)) throw input_error("bad rational literal: '" + s + "'");
    return Rat(BigInt(s));
  }
  std::string num = s.substr(0, slash), den = s.substr(slash + 1);
  if (!valid_int_token(num) || !valid_int_token(den))
    throw input_error("bad rational literal: '" + s + "'");
  BigInt q(den);
  if (q == 0) throw input_error("zero denominator in '" + s + "'");
  return Rat(BigInt(num), q);
}

std::string rat_str(const Rat& r) {
  const BigInt num = numerator(r), den = denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hbl
