#pragma once

#include <cstddef>
#include <limits>
#include <queue>
#include <vector>

namespace toptree {

/// Hopcroft-Karp maximum matching on a bipartite graph with `left` and
/// `right` vertices numbered from 0.
class BipartiteMatcher {
 public:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  BipartiteMatcher(std::size_t left, std::size_t right)
      : adjacency_(left), match_left_(left, kNone), match_right_(right, kNone), level_(left) {}

  void add_edge(std::size_t u, std::size_t v) { adjacency_[u].push_back(v); }

  std::size_t solve() {
    std::size_t matched = 0;
    while (layer()) {
      for (std::size_t u = 0; u < adjacency_.size(); ++u) {
        if (match_left_[u] == kNone && augment(u)) ++matched;
      }
    }
    return matched;
  }

  /// Partner of left vertex u after solve(), or kNone.
  std::size_t partner(std::size_t u) const { return match_left_[u]; }

 private:
  bool layer() {
    std::queue<std::size_t> queue;
    bool reachable_free = false;
    for (std::size_t u = 0; u < adjacency_.size(); ++u) {
      if (match_left_[u] == kNone) {
        level_[u] = 0;
        queue.push(u);
      } else {
        level_[u] = kNone;
      }
    }
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (std::size_t v : adjacency_[u]) {
        std::size_t w = match_right_[v];
        if (w == kNone) {
          reachable_free = true;
        } else if (level_[w] == kNone) {
          level_[w] = level_[u] + 1;
          queue.push(w);
        }
      }
    }
    return reachable_free;
  }

  bool augment(std::size_t u) {
    for (std::size_t v : adjacency_[u]) {
      std::size_t w = match_right_[v];
      if (w == kNone || (level_[w] == level_[u] + 1 && augment(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    level_[u] = kNone;
    return false;
  }

  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> level_;
};

}  // namespace toptree
