#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "toptree/finite_tree.hpp"

namespace toptree {

/// Where the root of the pattern may land. `relaxed` lets it sit at any node
/// of the host (ancestor relations are still preserved); `strict` pins it to
/// the host root.
enum class RootMode { relaxed, strict };

/// Witness for a rooted topological minor. Nodes are preorder indices.
struct EmbeddingWitness {
  /// image[i] is the host node that pattern node i maps to.
  std::vector<std::size_t> image;
  /// For every non-root pattern node i, the downward host path from
  /// image[parent(i)] to image[i], both endpoints included. Entry 0 is empty.
  std::vector<std::vector<std::size_t>> edge_paths;
};

/// True iff some subdivision of `pattern` is a subtree of `host` with the
/// pattern root mapped into the host and ancestor relations preserved.
bool rooted_minor(const FiniteTree& pattern, const FiniteTree& host,
                  RootMode mode = RootMode::relaxed);

std::optional<EmbeddingWitness> rooted_minor_witness(const FiniteTree& pattern,
                                                     const FiniteTree& host,
                                                     RootMode mode = RootMode::relaxed);

/// Checks a witness directly against both trees: adjacency along every path,
/// downward direction, internal disjointness, and the root condition.
bool verify_witness(const FiniteTree& pattern, const FiniteTree& host, const EmbeddingWitness& w,
                    RootMode mode = RootMode::relaxed);

/// Topological minor between the underlying unrooted trees.
bool unrooted_minor(const FiniteTree& pattern, const FiniteTree& host);

inline constexpr std::size_t kDefaultBruteForceBound = 12;

/// Literal check: every subdivision of `pattern` with at most host.size()
/// nodes is tried as a downward subgraph of `host` by backtracking.
bool brute_force_minor(const FiniteTree& pattern, const FiniteTree& host,
                       RootMode mode = RootMode::relaxed,
                       std::size_t bound = kDefaultBruteForceBound);

/// Mutual rooted minors.
bool topo_equiv(const FiniteTree& a, const FiniteTree& b);

}  // namespace toptree
