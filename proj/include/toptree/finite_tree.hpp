#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace toptree {

/// Rooted unlabeled finite tree. Child order is presentation only; every
/// semantic comparison goes through canonical_code().
class FiniteTree {
 public:
  /// The single-vertex tree.
  FiniteTree() = default;
  explicit FiniteTree(std::vector<FiniteTree> children);

  const std::vector<FiniteTree>& children() const noexcept { return children_; }
  std::size_t size() const noexcept { return size_; }
  bool is_leaf() const noexcept { return children_.empty(); }

  /// Layout equality (child order matters). Use is_isomorphic() for the
  /// semantic relation.
  friend bool operator==(const FiniteTree& a, const FiniteTree& b);

  /// Path with `nodes` vertices rooted at one end.
  static FiniteTree path(std::size_t nodes);
  /// V_n: a root with n leaf children.
  static FiniteTree star(std::size_t leaves);

 private:
  std::vector<FiniteTree> children_;
  std::size_t size_ = 1;
};

/// AHU code: "(" + sorted child codes + ")".
struct CanonicalCode {
  std::string text;

  auto operator<=>(const CanonicalCode&) const = default;
};

CanonicalCode canonical_code(const FiniteTree& t);
/// Same tree with children reordered by canonical code at every level.
FiniteTree canonical_form(const FiniteTree& t);
bool is_isomorphic(const FiniteTree& a, const FiniteTree& b);

/// Parenthesis notation of the tree as laid out (children unsorted).
std::string to_string(const FiniteTree& t);
/// Parses parenthesis notation; whitespace is ignored. Throws ParseError.
FiniteTree parse_tree(std::string_view text);

inline constexpr std::size_t kDefaultEnumerationBound = 10;

/// One representative per isomorphism class of rooted trees with n nodes,
/// each in canonical form, sorted by canonical code.
std::vector<FiniteTree> enumerate_rooted_trees(std::size_t n,
                                               std::size_t bound = kDefaultEnumerationBound);

/// Edges are named by the preorder index of their lower endpoint (1..size-1).
/// A length k turns the edge into a path with k edges.
using EdgeLengths = std::map<std::size_t, std::size_t>;

FiniteTree subdivide(const FiniteTree& t, const EdgeLengths& lengths);

/// Suppresses every non-root vertex with exactly one child.
FiniteTree collapse(const FiniteTree& t);

/// The tree rerooted at the vertex with the given preorder index.
FiniteTree reroot(const FiniteTree& t, std::size_t vertex);
/// reroot(t, v) for every preorder index v.
std::vector<FiniteTree> all_rootings(const FiniteTree& t);

/// Index-based view used by the matching and search algorithms. Vertices are
/// numbered in preorder, so the root is 0 and parent[v] < v.
struct FlatTree {
  std::vector<std::size_t> parent;  // parent[0] is unused
  std::vector<std::vector<std::size_t>> children;

  std::size_t size() const noexcept { return parent.size(); }
};

FlatTree flatten(const FiniteTree& t);
FiniteTree unflatten(const FlatTree& t, std::size_t root = 0);

}  // namespace toptree
