#pragma once

#include <gmpxx.h>

#include <string>

namespace cdiag {

/// Exact rational, always in canonical (reduced) form.  The two-argument
/// constructor reduces, which plain mpq_class does not.
class Rat : public mpq_class {
 public:
  Rat() = default;
  Rat(const Rat&) = default;
  Rat(Rat&&) = default;
  Rat& operator=(const Rat&) = default;
  Rat& operator=(Rat&&) = default;
  template <typename T>
  Rat(const T& v) : mpq_class(v) {}
  template <typename T, typename U>
  Rat(const T& num, const U& den) : mpq_class(num, den) {
    canonicalize();
  }
};

/// Parses an exact fraction string "p/q" (or a plain integer "p").
/// Throws std::invalid_argument on malformed input or zero denominator.
Rat parse_fraction(const std::string& text);

/// Formats a rational as "p/q", or "p" when the denominator is 1.
std::string format_fraction(const Rat& q);

}  // namespace cdiag
