#include <random>

#include "doctest.h"
#include "toptree/errors.hpp"
#include "toptree/ordinal.hpp"

using namespace toptree;

namespace {

const Ordinal w = Ordinal::omega_power(1);

Ordinal make(std::vector<OrdinalTerm> terms) { return Ordinal::from_terms(std::move(terms)); }

// Dense coefficient vector, index = exponent.
std::vector<std::uint32_t> dense(const Ordinal& a) {
  std::vector<std::uint32_t> out;
  for (const auto& t : a.terms()) {
    if (out.size() <= t.exponent) out.resize(t.exponent + 1, 0);
    out[t.exponent] = t.coefficient;
  }
  return out;
}

int dense_compare(const Ordinal& a, const Ordinal& b) {
  auto x = dense(a), y = dense(b);
  std::size_t n = std::max(x.size(), y.size());
  x.resize(n, 0);
  y.resize(n, 0);
  for (std::size_t e = n; e-- > 0;) {
    if (x[e] != y[e]) return x[e] < y[e] ? -1 : 1;
  }
  return 0;
}

Ordinal random_ordinal(std::mt19937_64& rng) {
  std::vector<OrdinalTerm> terms;
  for (int e = 4; e >= 0; --e) {
    if (rng() % 2) terms.push_back({static_cast<std::uint32_t>(e), 1 + static_cast<std::uint32_t>(rng() % 3)});
  }
  return make(std::move(terms));
}

}  // namespace

TEST_CASE("compare") {
  CHECK(compare(Ordinal(), w) == std::strong_ordering::less);
  CHECK(compare(make({{1, 2}, {0, 1}}), make({{1, 2}, {0, 1}})) == std::strong_ordering::equal);
  CHECK(compare(make({{2, 1}, {0, 3}}), make({{1, 5}, {0, 9}})) == std::strong_ordering::greater);
  CHECK(Ordinal::finite(7) < w);
  CHECK(make({{1, 1}, {0, 1}}) > w);

  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    auto a = random_ordinal(rng), b = random_ordinal(rng);
    int expected = dense_compare(a, b);
    auto got = compare(a, b);
    CHECK((got < 0) == (expected < 0));
    CHECK((got == 0) == (expected == 0));
  }
}

TEST_CASE("succ, is_limit, ord_max") {
  CHECK(succ(Ordinal()) == Ordinal::finite(1));
  CHECK(succ(w) == make({{1, 1}, {0, 1}}));
  CHECK(succ(Ordinal::finite(3)) == Ordinal::finite(4));
  CHECK(is_limit(Ordinal::omega_power(2)));
  CHECK_FALSE(is_limit(make({{1, 1}, {0, 3}})));
  CHECK_FALSE(is_limit(Ordinal()));
  CHECK(ord_max(w, Ordinal::finite(7)) == w);
  CHECK(ord_max(Ordinal::finite(7), w) == w);

  std::mt19937_64 rng(22);
  for (int i = 0; i < 300; ++i) {
    auto a = random_ordinal(rng);
    CHECK(a < succ(a));
    CHECK_FALSE(is_limit(succ(a)));
    auto b = random_ordinal(rng);
    auto m = ord_max(a, b);
    CHECK(m >= a);
    CHECK(m >= b);
    CHECK((m == a || m == b));
  }
}

TEST_CASE("fundamental sequences") {
  for (std::uint32_t n = 0; n < 5; ++n) {
    CHECK(fundamental(w, n) == Ordinal::finite(n + 1));
    CHECK(fundamental(Ordinal::omega_power(2), n) == Ordinal::omega_power(1, n + 1));
    CHECK(fundamental(make({{2, 1}, {1, 1}}), n) == make({{2, 1}, {0, n + 1}}));
  }
  CHECK(fundamental(Ordinal::omega_power(1, 3), 1) == make({{1, 2}, {0, 2}}));
  CHECK_THROWS_AS(fundamental(Ordinal::finite(4), 0), ArgumentError);
  CHECK_THROWS_AS(fundamental(Ordinal(), 0), ArgumentError);

  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    auto a = random_ordinal(rng);
    if (!is_limit(a)) continue;
    for (std::uint32_t n = 0; n < 6; ++n) {
      CHECK(fundamental(a, n) < a);
      CHECK(fundamental(a, n) < fundamental(a, n + 1));
    }
    // cofinal: every sampled b < a is passed by some element
    for (int j = 0; j < 20; ++j) {
      auto b = random_ordinal(rng);
      if (b >= a) continue;
      bool passed = false;
      for (std::uint32_t n = 0; n < 8 && !passed; ++n) passed = fundamental(a, n) > b;
      CHECK(passed);
    }
  }
}

TEST_CASE("text form") {
  CHECK(to_string(Ordinal()) == "0");
  CHECK(to_string(Ordinal::omega_power(2)) == "w^2");
  CHECK(to_string(Ordinal::omega_power(1, 3)) == "w*3");
  CHECK(to_string(make({{2, 2}, {1, 1}, {0, 4}})) == "w^2*2+w+4");
  CHECK(parse_ordinal("w^2*1+w*3+4") == make({{2, 1}, {1, 3}, {0, 4}}));
  CHECK(parse_ordinal(" w ^ 1 * 1 ") == w);
  CHECK(parse_ordinal("0").is_zero());
  CHECK(parse_ordinal("12") == Ordinal::finite(12));

  CHECK_THROWS_AS(parse_ordinal(""), ParseError);
  CHECK_THROWS_AS(parse_ordinal("w+w^2"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("w+w"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("w*0"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("w^0"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("w+"), ParseError);
  CHECK_THROWS_AS(parse_ordinal("0+1"), ParseError);
  try {
    parse_ordinal("w^2+w^3");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 5);
  }

  std::mt19937_64 rng(24);
  for (int i = 0; i < 500; ++i) {
    auto a = random_ordinal(rng);
    CHECK(parse_ordinal(to_string(a)) == a);
  }
}

TEST_CASE("from_terms validation") {
  CHECK_THROWS_AS(make({{1, 1}, {1, 2}}), ArgumentError);
  CHECK_THROWS_AS(make({{0, 1}, {1, 1}}), ArgumentError);
  CHECK_THROWS_AS(make({{1, 0}}), ArgumentError);
}
