#include "toptree/finite_tree.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <utility>

#include "toptree/errors.hpp"

namespace toptree {

FiniteTree::FiniteTree(std::vector<FiniteTree> children) : children_(std::move(children)) {
  for (const auto& c : children_) size_ += c.size_;
}

bool operator==(const FiniteTree& a, const FiniteTree& b) {
  return a.size_ == b.size_ && a.children_ == b.children_;
}

FiniteTree FiniteTree::path(std::size_t nodes) {
  if (nodes == 0) throw ArgumentError("a path needs at least one node");
  FiniteTree t;
  for (std::size_t i = 1; i < nodes; ++i) t = FiniteTree(std::vector<FiniteTree>{std::move(t)});
  return t;
}

FiniteTree FiniteTree::star(std::size_t leaves) {
  return FiniteTree(std::vector<FiniteTree>(leaves));
}

namespace {

void append_code(const FiniteTree& t, std::string& out) {
  if (t.is_leaf()) {
    out += "()";
    return;
  }
  std::vector<std::string> parts;
  parts.reserve(t.children().size());
  for (const auto& c : t.children()) {
    std::string s;
    append_code(c, s);
    parts.push_back(std::move(s));
  }
  std::sort(parts.begin(), parts.end());
  out += '(';
  for (const auto& p : parts) out += p;
  out += ')';
}

}  // namespace

CanonicalCode canonical_code(const FiniteTree& t) {
  CanonicalCode code;
  code.text.reserve(2 * t.size());
  append_code(t, code.text);
  return code;
}

FiniteTree canonical_form(const FiniteTree& t) {
  std::vector<std::pair<std::string, FiniteTree>> keyed;
  keyed.reserve(t.children().size());
  for (const auto& c : t.children()) {
    FiniteTree cf = canonical_form(c);
    keyed.emplace_back(canonical_code(cf).text, std::move(cf));
  }
  std::sort(keyed.begin(), keyed.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<FiniteTree> children;
  children.reserve(keyed.size());
  for (auto& [code, child] : keyed) children.push_back(std::move(child));
  return FiniteTree(std::move(children));
}

bool is_isomorphic(const FiniteTree& a, const FiniteTree& b) {
  return a.size() == b.size() && canonical_code(a) == canonical_code(b);
}

namespace {

void append_layout(const FiniteTree& t, std::string& out) {
  out += '(';
  for (const auto& c : t.children()) append_layout(c, out);
  out += ')';
}

class TreeReader {
 public:
  explicit TreeReader(std::string_view text) : text_(text) {}

  FiniteTree read_all() {
    skip_ws();
    FiniteTree t = read();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after tree");
    return t;
  }

 private:
  FiniteTree read() {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != '(') fail("expected '('");
    advance();
    std::vector<FiniteTree> children;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unbalanced parenthesis, expected ')'");
      if (text_[pos_] == ')') {
        advance();
        return FiniteTree(std::move(children));
      }
      children.push_back(read());
    }
  }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                   text_[pos_] == '\n' || text_[pos_] == '\r')) {
      advance();
    }
  }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(message, line_, column_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace

std::string to_string(const FiniteTree& t) {
  std::string out;
  out.reserve(2 * t.size());
  append_layout(t, out);
  return out;
}

FiniteTree parse_tree(std::string_view text) { return TreeReader(text).read_all(); }

namespace {

// Every tree with n nodes arises from one with n-1 nodes by adding a leaf.
void add_leaf_everywhere(const FiniteTree& t, std::set<std::string>& seen,
                         std::vector<FiniteTree>& out) {
  FlatTree flat = flatten(t);
  for (std::size_t v = 0; v < flat.size(); ++v) {
    FlatTree grown = flat;
    const std::size_t leaf = grown.size();
    grown.parent.push_back(v);
    grown.children.emplace_back();
    grown.children[v].push_back(leaf);
    FiniteTree candidate = canonical_form(unflatten(grown));
    if (seen.insert(canonical_code(candidate).text).second) out.push_back(std::move(candidate));
  }
}

}  // namespace

std::vector<FiniteTree> enumerate_rooted_trees(std::size_t n, std::size_t bound) {
  if (n == 0) throw ArgumentError("enumeration needs n >= 1");
  if (n > bound) {
    throw ResourceError("enumeration of " + std::to_string(n) + "-node trees exceeds bound " +
                        std::to_string(bound));
  }
  std::vector<FiniteTree> level{FiniteTree()};
  for (std::size_t k = 2; k <= n; ++k) {
    std::set<std::string> seen;
    std::vector<FiniteTree> next;
    for (const auto& t : level) add_leaf_everywhere(t, seen, next);
    level = std::move(next);
  }
  std::sort(level.begin(), level.end(), [](const FiniteTree& a, const FiniteTree& b) {
    return canonical_code(a) < canonical_code(b);
  });
  return level;
}

namespace {

FiniteTree subdivide_rec(const FiniteTree& t, const EdgeLengths& lengths, std::size_t& next_id) {
  std::vector<FiniteTree> children;
  children.reserve(t.children().size());
  for (const auto& c : t.children()) {
    const std::size_t id = next_id++;
    FiniteTree sub = subdivide_rec(c, lengths, next_id);
    if (auto it = lengths.find(id); it != lengths.end()) {
      for (std::size_t i = 1; i < it->second; ++i) sub = FiniteTree(std::vector<FiniteTree>{std::move(sub)});
    }
    children.push_back(std::move(sub));
  }
  return FiniteTree(std::move(children));
}

FiniteTree collapse_below(const FiniteTree* t) {
  while (t->children().size() == 1) t = &t->children().front();
  std::vector<FiniteTree> children;
  children.reserve(t->children().size());
  for (const auto& c : t->children()) children.push_back(collapse_below(&c));
  return FiniteTree(std::move(children));
}

}  // namespace

FiniteTree subdivide(const FiniteTree& t, const EdgeLengths& lengths) {
  for (const auto& [edge, length] : lengths) {
    if (edge == 0 || edge >= t.size()) {
      throw ArgumentError("unknown edge " + std::to_string(edge) + " in a tree with " +
                          std::to_string(t.size()) + " nodes");
    }
    if (length == 0) throw ArgumentError("edge lengths must be positive");
  }
  std::size_t next_id = 1;
  return subdivide_rec(t, lengths, next_id);
}

FiniteTree collapse(const FiniteTree& t) {
  std::vector<FiniteTree> children;
  children.reserve(t.children().size());
  for (const auto& c : t.children()) children.push_back(collapse_below(&c));
  return FiniteTree(std::move(children));
}

FiniteTree reroot(const FiniteTree& t, std::size_t vertex) {
  FlatTree flat = flatten(t);
  if (vertex >= flat.size()) throw ArgumentError("reroot vertex out of range");
  std::vector<std::vector<std::size_t>> adjacency = flat.children;
  for (std::size_t v = 1; v < flat.size(); ++v) adjacency[v].push_back(flat.parent[v]);
  std::function<FiniteTree(std::size_t, std::size_t)> build = [&](std::size_t v, std::size_t from) {
    std::vector<FiniteTree> children;
    for (std::size_t w : adjacency[v]) {
      if (w != from) children.push_back(build(w, v));
    }
    return FiniteTree(std::move(children));
  };
  return build(vertex, flat.size());
}

std::vector<FiniteTree> all_rootings(const FiniteTree& t) {
  std::vector<FiniteTree> out;
  out.reserve(t.size());
  for (std::size_t v = 0; v < t.size(); ++v) out.push_back(reroot(t, v));
  return out;
}

FlatTree flatten(const FiniteTree& t) {
  FlatTree flat;
  flat.parent.reserve(t.size());
  flat.children.reserve(t.size());
  // explicit stack: truncations of long spines are deep
  std::vector<std::pair<const FiniteTree*, std::size_t>> stack{{&t, 0}};
  while (!stack.empty()) {
    auto [node, parent] = stack.back();
    stack.pop_back();
    const std::size_t id = flat.parent.size();
    flat.parent.push_back(parent);
    flat.children.emplace_back();
    if (id != 0) flat.children[parent].push_back(id);
    const auto& ch = node->children();
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.emplace_back(&*it, id);
  }
  return flat;
}

FiniteTree unflatten(const FlatTree& t, std::size_t root) {
  std::vector<FiniteTree> children;
  children.reserve(t.children[root].size());
  for (std::size_t c : t.children[root]) children.push_back(unflatten(t, c));
  return FiniteTree(std::move(children));
}

}  // namespace toptree
