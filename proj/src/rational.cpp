#include "cdiag/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace cdiag {

namespace {

bool valid_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rat parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = (slash == std::string::npos) ? text : text.substr(0, slash);
  std::string den = (slash == std::string::npos) ? "1" : text.substr(slash + 1);
  if (!valid_integer(num) || !valid_integer(den)) {
    throw std::invalid_argument("malformed fraction: \"" + text + "\"");
  }
  mpz_class d(den);
  if (d == 0) {
    throw std::invalid_argument("zero denominator in fraction: \"" + text + "\"");
  }
  Rat q(mpz_class(num), d);
  q.canonicalize();
  return q;
}

std::string format_fraction(const Rat& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

}  // namespace cdiag
