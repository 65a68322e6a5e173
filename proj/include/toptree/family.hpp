#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "toptree/finite_tree.hpp"
#include "toptree/spined.hpp"

namespace toptree {

/// Suppresses the spine nodes without attachment. The root node is kept
/// (with whatever it carries) and edge lengths are reset to 1. Throws
/// ArgumentError unless t is a periodic spine with a nonempty cycle entry.
SpinedTree collapse_presentation(const SpinedTree& t);

/// True when every prefix attachment embeds into some later attachment
/// (cycle attachments recur by themselves). False outside the periodic
/// spine fragment.
bool check_ray_conditions(const SpinedTree& t);

/// The base with its spine edges replaced by paths of lengths f. Throws
/// ArgumentError unless base is collapsed and passes check_ray_conditions.
SpinedTree s_f(const SpinedTree& base, const NatSeq& f);

enum class IsoVerdict { iso, non_iso, unknown };
std::string to_string(IsoVerdict v);

/// The spine edge length of one side at `index`, and at every later index,
/// is missing from the other side's range.
struct IsoCertificate {
  bool first_side = true;
  std::size_t index = 0;
  std::size_t value = 0;
};

struct IsoResult {
  IsoVerdict verdict = IsoVerdict::unknown;
  std::optional<IsoCertificate> certificate;  // with non_iso
};

/// Isomorphism of the underlying unrooted trees. Sound, not complete.
IsoResult presentation_iso(const SpinedTree& a, const SpinedTree& b);

/// s_f(base, PrimePowers(p)) for the first n primes. Throws ArgumentError for
/// n = 0, order(base) <= 1, or a base s_f rejects.
std::vector<SpinedTree> family_generate(const SpinedTree& base, std::size_t n);

/// Order <= 1 tree as a finite core with rays hanging from some of its nodes.
/// Children are ordered by a code in which a ray is written "[]", so equal
/// forms mean isomorphic trees.
struct Order1Form {
  FiniteTree core;
  std::vector<std::size_t> ray_attach;  // preorder indices in core, sorted

  friend bool operator==(const Order1Form&, const Order1Form&) = default;
};

/// Throws ArgumentError when order(t) > 1, UnsupportedError when t has no
/// finite core (the combs).
Order1Form order1_canonical(const SpinedTree& t);

/// unrooted_minor(t', s') is the same for all rootings t' of t and s' of s.
bool reroot_invariance_check(const FiniteTree& t, const FiniteTree& s);
bool reroot_invariance_check(const FiniteTree& t);

}  // namespace toptree
