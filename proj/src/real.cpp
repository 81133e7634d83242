#include "geoprog/real.hpp"

#include <algorithm>

#include "geoprog/errors.hpp"

namespace geoprog {

Real to_real(const BigInt& n) { return Real(to_string(n)); }

Real parse_real(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t\r\n");
  auto last = s.find_last_not_of(" \t\r\n");
  if (first == std::string::npos) throw DomainError("empty real literal");
  s = s.substr(first, last - first + 1);
  try {
    return Real(s);
  } catch (const std::exception&) {
    throw DomainError("not a real number: '" + s + "'");
  }
}

std::string format_real(const Real& x, int digits) {
  digits = std::clamp(digits, 1, kMaxRealDigits);
  return x.str(digits, std::ios_base::fmtflags(0));
}

}  // namespace geoprog
