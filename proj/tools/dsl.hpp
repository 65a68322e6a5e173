#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "toptree/finite_tree.hpp"
#include "toptree/ordinal.hpp"
#include "toptree/seq_order.hpp"
#include "toptree/spined.hpp"

namespace toptree::dsl {

enum class ExprKind { fin, empty, seq, spine, sord, comb, sf };
enum class GenKind { periodic, oramp, vramp };

/// Syntax tree of the expression language. Which fields matter depends on
/// the kind; the rest stay at their defaults.
struct Expr {
  ExprKind kind = ExprKind::fin;
  FiniteTree tree;                 // fin
  JoinMode mode = JoinMode::attach;  // spine
  GenKind gen = GenKind::periodic;   // spine
  std::vector<Expr> prefix;          // seq, spine
  std::vector<Expr> cycle;           // seq, spine
  Ordinal ordinal;                   // sord, oramp
  std::optional<NatSeq> lengths;     // spine (optional), sf
  bool hairy = false;                // comb
  std::optional<std::uint32_t> n;    // comb; absent means w
  std::vector<Expr> base;            // sf, one element

  friend bool operator==(const Expr&, const Expr&) = default;
};

/// Throws ParseError with the 1-based position of a syntax error, or of the
/// start of the expression a semantic error (bad ramp limit, comb size,
/// edge length, s_f base) is about.
Expr parse(std::string_view text);

/// Compact text form without whitespace; parse(print(e)) == e.
std::string print(const Expr& e);

using Value = std::variant<SpinedTree, EPSeq>;

/// Throws ArgumentError on constructor preconditions.
Value evaluate(const Expr& e);
/// evaluate() for contexts that need a tree; a seq is an ArgumentError.
SpinedTree evaluate_tree(const Expr& e);

/// Expression denoting a presentation. SOrd and combs come back as written
/// by the library (S as SOrd, combs as spines).
Expr quote(const SpinedTree& t);
Expr quote(const EPSeq& f);

std::string print(const SpinedTree& t);

}  // namespace toptree::dsl
