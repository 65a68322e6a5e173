#include "toptree/ordinal.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <utility>

#include "toptree/errors.hpp"

namespace toptree {

Ordinal Ordinal::from_terms(std::vector<OrdinalTerm> terms) {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (terms[i].coefficient == 0) throw ArgumentError("ordinal coefficients must be positive");
    if (i > 0 && terms[i].exponent >= terms[i - 1].exponent) {
      throw ArgumentError("ordinal exponents must strictly decrease");
    }
  }
  Ordinal a;
  a.terms_ = std::move(terms);
  return a;
}

Ordinal Ordinal::finite(std::uint32_t n) {
  if (n == 0) return {};
  return from_terms({{0, n}});
}

Ordinal Ordinal::omega_power(std::uint32_t exponent, std::uint32_t coefficient) {
  return from_terms({{exponent, coefficient}});
}

std::strong_ordering operator<=>(const Ordinal& a, const Ordinal& b) {
  const std::size_t common = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t i = 0; i < common; ++i) {
    const auto& x = a.terms_[i];
    const auto& y = b.terms_[i];
    if (x.exponent != y.exponent) return x.exponent <=> y.exponent;
    if (x.coefficient != y.coefficient) return x.coefficient <=> y.coefficient;
  }
  return a.terms_.size() <=> b.terms_.size();
}

std::strong_ordering compare(const Ordinal& a, const Ordinal& b) { return a <=> b; }

Ordinal succ(const Ordinal& a) {
  std::vector<OrdinalTerm> terms = a.terms();
  if (!terms.empty() && terms.back().exponent == 0) {
    ++terms.back().coefficient;
  } else {
    terms.push_back({0, 1});
  }
  return Ordinal::from_terms(std::move(terms));
}

bool is_limit(const Ordinal& a) { return !a.is_zero() && a.terms().back().exponent >= 1; }

Ordinal ord_max(const Ordinal& a, const Ordinal& b) { return a < b ? b : a; }

Ordinal fundamental(const Ordinal& a, std::uint32_t n) {
  if (!is_limit(a)) throw ArgumentError("fundamental sequence requested for non-limit " + to_string(a));
  std::vector<OrdinalTerm> terms = a.terms();
  OrdinalTerm last = terms.back();
  terms.pop_back();
  if (last.coefficient > 1) terms.push_back({last.exponent, last.coefficient - 1});
  terms.push_back({last.exponent - 1, n + 1});
  return Ordinal::from_terms(std::move(terms));
}

std::string to_string(const Ordinal& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& t : a.terms()) {
    if (!out.empty()) out += '+';
    if (t.exponent == 0) {
      out += std::to_string(t.coefficient);
      continue;
    }
    out += 'w';
    if (t.exponent > 1) out += '^' + std::to_string(t.exponent);
    if (t.coefficient > 1) out += '*' + std::to_string(t.coefficient);
  }
  return out;
}

namespace {

class OrdinalReader {
 public:
  explicit OrdinalReader(std::string_view text) : text_(text) {}

  Ordinal read_all() {
    std::vector<OrdinalTerm> terms;
    std::vector<std::size_t> starts;
    skip_ws();
    if (peek() == '0' && !is_digit_at(pos_ + 1)) {
      ++pos_;
      skip_ws();
      if (pos_ != text_.size()) fail("trailing input after ordinal 0");
      return {};
    }
    for (;;) {
      skip_ws();
      starts.push_back(pos_);
      terms.push_back(read_term());
      skip_ws();
      if (peek() != '+') break;
      ++pos_;
    }
    if (pos_ != text_.size()) fail("trailing input after ordinal");
    for (std::size_t i = 1; i < terms.size(); ++i) {
      if (terms[i].exponent >= terms[i - 1].exponent) {
        pos_ = starts[i];
        fail("ordinal exponents must strictly decrease");
      }
    }
    return Ordinal::from_terms(std::move(terms));
  }

 private:
  OrdinalTerm read_term() {
    OrdinalTerm term;
    if (peek() == 'w') {
      ++pos_;
      term.exponent = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        skip_ws();
        term.exponent = read_number();
        if (term.exponent == 0) fail("exponent 0 must be written as a plain number");
        skip_ws();
      }
      if (peek() == '*') {
        ++pos_;
        skip_ws();
        term.coefficient = read_number();
      }
    } else if (is_digit_at(pos_)) {
      term.coefficient = read_number();
    } else {
      fail("expected 'w' or a number");
    }
    if (term.coefficient == 0) fail("coefficient must be positive");
    return term;
  }

  std::uint32_t read_number() {
    if (!is_digit_at(pos_)) fail("expected a number");
    std::uint64_t value = 0;
    while (is_digit_at(pos_)) {
      value = value * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > std::numeric_limits<std::uint32_t>::max()) fail("number too large");
      ++pos_;
    }
    return static_cast<std::uint32_t>(value);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  bool is_digit_at(std::size_t i) const {
    return i < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i]));
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, pos_ + 1); }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Ordinal parse_ordinal(std::string_view text) { return OrdinalReader(text).read_all(); }

}  // namespace toptree
