#include "toptree/embed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>

#include "toptree/errors.hpp"
#include "toptree/matching.hpp"

namespace toptree {

namespace {

// Dynamic program over (pattern subtree class, host node).
//   at_[c][v]    pattern class c embeds with its root exactly at host node v
//   below_[c][v] pattern class c embeds with its root at v or a descendant
// Isomorphic pattern subtrees share one class, so rows are computed once.
class MinorTable {
 public:
  MinorTable(const FiniteTree& pattern, const FiniteTree& host)
      : pattern_(flatten(pattern)), host_(flatten(host)) {
    assign_classes();
    host_sizes_.assign(host_.size(), 1);
    for (std::size_t v = host_.size(); v-- > 1;) host_sizes_[host_.parent[v]] += host_sizes_[v];

    const std::size_t classes = class_rep_.size();
    at_.assign(classes, std::vector<char>(host_.size(), 0));
    below_.assign(classes, std::vector<char>(host_.size(), 0));
    for (std::size_t v = host_.size(); v-- > 0;) {
      for (std::size_t c = 0; c < classes; ++c) {
        at_[c][v] = root_fits(c, v);
        bool below = at_[c][v];
        for (std::size_t child : host_.children[v]) {
          if (below) break;
          below = below_[c][child];
        }
        below_[c][v] = below;
      }
    }
  }

  bool holds(RootMode mode) const {
    const std::size_t c = node_class_[0];
    return mode == RootMode::strict ? at_[c][0] : below_[c][0];
  }

  EmbeddingWitness witness(RootMode mode) const {
    EmbeddingWitness w;
    w.image.assign(pattern_.size(), 0);
    w.edge_paths.assign(pattern_.size(), {});
    std::vector<std::size_t> descent;
    std::size_t root_image = mode == RootMode::strict ? 0 : descend(0, 0, descent);
    place(0, root_image, w);
    return w;
  }

 private:
  void assign_classes() {
    std::map<std::string, std::size_t> ids;
    node_class_.assign(pattern_.size(), 0);
    std::vector<std::string> codes(pattern_.size());
    for (std::size_t v = pattern_.size(); v-- > 0;) {
      std::vector<std::string> parts;
      for (std::size_t c : pattern_.children[v]) parts.push_back(codes[c]);
      std::sort(parts.begin(), parts.end());
      std::string code = "(";
      for (const auto& p : parts) code += p;
      code += ')';
      auto [it, inserted] = ids.emplace(code, class_rep_.size());
      if (inserted) {
        class_rep_.push_back(v);
        class_size_.push_back(code.size() / 2);
      }
      node_class_[v] = it->second;
      codes[v] = std::move(code);
    }
  }

  // Children of the pattern class representative matched injectively into
  // children of v, a child class fitting a host child when it embeds at or
  // below it.
  bool root_fits(std::size_t c, std::size_t v) const {
    if (class_size_[c] > host_sizes_[v]) return false;
    const auto& pc = pattern_.children[class_rep_[c]];
    const auto& hc = host_.children[v];
    if (pc.size() > hc.size()) return false;
    if (pc.empty()) return true;
    return match(pc, hc, nullptr);
  }

  bool match(const std::vector<std::size_t>& pc, const std::vector<std::size_t>& hc,
             std::vector<std::size_t>* assignment) const {
    BipartiteMatcher matcher(pc.size(), hc.size());
    for (std::size_t i = 0; i < pc.size(); ++i) {
      const std::size_t cls = node_class_[pc[i]];
      for (std::size_t j = 0; j < hc.size(); ++j) {
        if (below_[cls][hc[j]]) matcher.add_edge(i, j);
      }
    }
    if (matcher.solve() != pc.size()) return false;
    if (assignment) {
      assignment->resize(pc.size());
      for (std::size_t i = 0; i < pc.size(); ++i) (*assignment)[i] = hc[matcher.partner(i)];
    }
    return true;
  }

  // Walks down from v (where below_ holds for node u) to a node where u sits
  // exactly, recording the visited host nodes.
  std::size_t descend(std::size_t u, std::size_t v, std::vector<std::size_t>& path) const {
    const std::size_t c = node_class_[u];
    path.push_back(v);
    while (!at_[c][v]) {
      for (std::size_t child : host_.children[v]) {
        if (below_[c][child]) {
          v = child;
          break;
        }
      }
      path.push_back(v);
    }
    return v;
  }

  void place(std::size_t u, std::size_t v, EmbeddingWitness& w) const {
    w.image[u] = v;
    const auto& pc = pattern_.children[u];
    if (pc.empty()) return;
    std::vector<std::size_t> assignment;
    match(pc, host_.children[v], &assignment);
    for (std::size_t i = 0; i < pc.size(); ++i) {
      std::vector<std::size_t> path{v};
      std::size_t target = descend(pc[i], assignment[i], path);
      w.edge_paths[pc[i]] = std::move(path);
      place(pc[i], target, w);
    }
  }

  FlatTree pattern_;
  FlatTree host_;
  std::vector<std::size_t> node_class_;
  std::vector<std::size_t> class_rep_;
  std::vector<std::size_t> class_size_;
  std::vector<std::size_t> host_sizes_;
  std::vector<std::vector<char>> at_;
  std::vector<std::vector<char>> below_;
};

}  // namespace

bool rooted_minor(const FiniteTree& pattern, const FiniteTree& host, RootMode mode) {
  if (pattern.size() > host.size()) return false;
  return MinorTable(pattern, host).holds(mode);
}

std::optional<EmbeddingWitness> rooted_minor_witness(const FiniteTree& pattern,
                                                     const FiniteTree& host, RootMode mode) {
  if (pattern.size() > host.size()) return std::nullopt;
  MinorTable table(pattern, host);
  if (!table.holds(mode)) return std::nullopt;
  return table.witness(mode);
}

bool verify_witness(const FiniteTree& pattern, const FiniteTree& host, const EmbeddingWitness& w,
                    RootMode mode) {
  const FlatTree p = flatten(pattern);
  const FlatTree h = flatten(host);
  if (w.image.size() != p.size() || w.edge_paths.size() != p.size()) return false;
  for (std::size_t x : w.image) {
    if (x >= h.size()) return false;
  }
  if (mode == RootMode::strict && w.image[0] != 0) return false;

  std::vector<char> used(h.size(), 0);
  auto claim = [&](std::size_t x) {
    if (used[x]) return false;
    used[x] = 1;
    return true;
  };
  if (!claim(w.image[0])) return false;
  for (std::size_t u = 1; u < p.size(); ++u) {
    const auto& path = w.edge_paths[u];
    if (path.size() < 2) return false;
    if (path.front() != w.image[p.parent[u]] || path.back() != w.image[u]) return false;
    for (std::size_t k = 1; k < path.size(); ++k) {
      if (path[k] >= h.size() || path[k] == 0 || h.parent[path[k]] != path[k - 1]) return false;
      if (!claim(path[k])) return false;
    }
  }
  return true;
}

bool unrooted_minor(const FiniteTree& pattern, const FiniteTree& host) {
  if (pattern.size() > host.size()) return false;
  for (const auto& rooted : all_rootings(host)) {
    if (rooted_minor(pattern, rooted)) return true;
  }
  return false;
}

namespace {

// Injective downward map of every pattern node's children onto distinct
// children of its image, tried exhaustively.
bool fits_exactly(const FlatTree& p, std::size_t u, const FlatTree& h, std::size_t v) {
  const auto& pc = p.children[u];
  const auto& hc = h.children[v];
  if (pc.size() > hc.size()) return false;
  std::vector<char> taken(hc.size(), 0);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) {
    if (i == pc.size()) return true;
    for (std::size_t j = 0; j < hc.size(); ++j) {
      if (taken[j] || !fits_exactly(p, pc[i], h, hc[j])) continue;
      taken[j] = 1;
      if (assign(i + 1)) return true;
      taken[j] = 0;
    }
    return false;
  };
  return assign(0);
}

bool subgraph_embeds(const FiniteTree& pattern, const FlatTree& h, RootMode mode) {
  const FlatTree p = flatten(pattern);
  if (mode == RootMode::strict) return fits_exactly(p, 0, h, 0);
  for (std::size_t v = 0; v < h.size(); ++v) {
    if (fits_exactly(p, 0, h, v)) return true;
  }
  return false;
}

}  // namespace

bool brute_force_minor(const FiniteTree& pattern, const FiniteTree& host, RootMode mode,
                       std::size_t bound) {
  if (host.size() > bound) {
    throw ResourceError("brute force host has " + std::to_string(host.size()) +
                        " nodes, bound is " + std::to_string(bound));
  }
  if (pattern.size() > host.size()) return false;
  const FlatTree h = flatten(host);
  const std::size_t edges = pattern.size() - 1;
  const std::size_t spare = host.size() - pattern.size();
  if (edges == 0) return subgraph_embeds(pattern, h, mode);

  // Distribute `extra` inserted nodes over the edges: all weak compositions.
  std::vector<std::size_t> extra(edges, 0);
  std::function<bool(std::size_t, std::size_t)> distribute = [&](std::size_t edge,
                                                                 std::size_t left) {
    if (edge + 1 == edges) {
      extra[edge] = left;
      EdgeLengths lengths;
      for (std::size_t e = 0; e < edges; ++e) lengths[e + 1] = extra[e] + 1;
      return subgraph_embeds(subdivide(pattern, lengths), h, mode);
    }
    for (std::size_t k = 0; k <= left; ++k) {
      extra[edge] = k;
      if (distribute(edge + 1, left - k)) return true;
    }
    return false;
  };
  for (std::size_t total = 0; total <= spare; ++total) {
    if (distribute(0, total)) return true;
  }
  return false;
}

bool topo_equiv(const FiniteTree& a, const FiniteTree& b) {
  return rooted_minor(a, b) && rooted_minor(b, a);
}

}  // namespace toptree
