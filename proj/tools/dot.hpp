#pragma once

#include <string>

#include "toptree/finite_tree.hpp"

namespace toptree {

/// DOT digraph of the canonical form; node n<i> is the i-th vertex in
/// preorder, the root is n0 at the top.
std::string emit_dot(const FiniteTree& t);

}  // namespace toptree
