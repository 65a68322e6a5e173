#include "dot.hpp"

namespace toptree {

std::string emit_dot(const FiniteTree& t) {
  const FlatTree flat = flatten(canonical_form(t));
  std::string out = "digraph tree {\n  rankdir=TB;\n  node [shape=circle, label=\"\", width=0.2];\n";
  for (std::size_t v = 0; v < flat.size(); ++v) out += "  n" + std::to_string(v) + ";\n";
  for (std::size_t v = 1; v < flat.size(); ++v) {
    out += "  n" + std::to_string(flat.parent[v]) + " -> n" + std::to_string(v) + ";\n";
  }
  return out + "}\n";
}

}  // namespace toptree
