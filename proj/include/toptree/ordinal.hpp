#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace toptree {

struct OrdinalTerm {
  std::uint32_t exponent = 0;
  std::uint32_t coefficient = 1;

  auto operator<=>(const OrdinalTerm&) const = default;
};

/// Ordinal below w^w in Cantor normal form: w^e1*c1 + w^e2*c2 + ... with
/// e1 > e2 > ... and every c >= 1. The empty sum is 0.
class Ordinal {
 public:
  Ordinal() = default;

  /// Throws ArgumentError unless exponents strictly decrease and every
  /// coefficient is positive.
  static Ordinal from_terms(std::vector<OrdinalTerm> terms);
  static Ordinal finite(std::uint32_t n);
  /// w^exponent * coefficient.
  static Ordinal omega_power(std::uint32_t exponent, std::uint32_t coefficient = 1);

  const std::vector<OrdinalTerm>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  friend std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b);
  friend bool operator==(const Ordinal& a, const Ordinal& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<OrdinalTerm> terms_;
};

std::strong_ordering compare(const Ordinal& a, const Ordinal& b);
Ordinal succ(const Ordinal& a);
/// Nonzero with no finite part.
bool is_limit(const Ordinal& a);
Ordinal ord_max(const Ordinal& a, const Ordinal& b);

/// Canonical cofinal sequence of a limit: for a = g + w^k (k >= 1) the n-th
/// element is g + w^(k-1)*(n+1). Throws ArgumentError on non-limits.
Ordinal fundamental(const Ordinal& a, std::uint32_t n);

/// Text form: terms `w^k*c`, `w*c`, `c` joined by `+`; coefficient 1 and
/// exponent 1 are omitted, 0 prints as "0".
std::string to_string(const Ordinal& a);

/// Reads the text form. Explicit coefficients and exponents of 1 are
/// accepted ("w^1*1"); whitespace between tokens is ignored. Throws
/// ParseError on malformed text or when exponents do not strictly decrease.
Ordinal parse_ordinal(std::string_view text);

}  // namespace toptree
