#pragma once

#include <iosfwd>
#include <random>

#include "dsl.hpp"

namespace toptree::acceptance {

/// Random expression that parses and evaluates; nesting at most `depth`.
dsl::Expr random_expr(std::mt19937_64& rng, std::size_t depth);

/// Same text with spaces and newlines around punctuation.
std::string scatter_whitespace(const std::string& text, std::mt19937_64& rng);

/// Runs criteria 1..14, one PASS/FAIL line each. Returns the failure count.
int run_all(std::ostream& out);

}  // namespace toptree::acceptance
