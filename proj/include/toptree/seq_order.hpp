#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "toptree/finite_tree.hpp"

namespace toptree {

/// Eventually periodic sequence of finite trees:
/// entry n = prefix[n] for n < |prefix|, else cycle[(n - |prefix|) mod |cycle|].
class EPSeq {
 public:
  /// Throws ArgumentError when the cycle is empty.
  EPSeq(std::vector<FiniteTree> prefix, std::vector<FiniteTree> cycle);
  /// The constant sequence.
  static EPSeq constant(FiniteTree t);

  const std::vector<FiniteTree>& prefix() const noexcept { return prefix_; }
  const std::vector<FiniteTree>& cycle() const noexcept { return cycle_; }
  const FiniteTree& at(std::size_t n) const;

  friend bool operator==(const EPSeq&, const EPSeq&) = default;

 private:
  std::vector<FiniteTree> prefix_;
  std::vector<FiniteTree> cycle_;
};

/// Shape of an eventually periodic index set. Indices are folded onto
/// positions 0..prefix+cycle-1.
struct PeriodicShape {
  std::size_t prefix = 0;
  std::size_t cycle = 1;

  std::size_t position(std::size_t n) const {
    return n < prefix ? n : prefix + (n - prefix) % cycle;
  }
  std::size_t positions() const { return prefix + cycle; }
};

/// Pair of sequence positions once both sides are inside their cycles.
struct GreedyState {
  std::size_t f_position = 0;
  std::size_t g_position = 0;

  friend bool operator==(const GreedyState&, const GreedyState&) = default;
};

struct GreedyOutcome {
  bool holds = false;
  /// Greedy indices k_0, k_1, ... up to the step that closed the loop (on
  /// success) or up to the stalled step (on failure).
  std::vector<std::size_t> indices;
  /// On success, the step whose state repeats an earlier one.
  std::optional<GreedyState> repeated_state;
  /// On failure, the step n of f for which no index is left.
  std::optional<std::size_t> stalled_at;
};

/// Greedy search for a strictly increasing (k_n) with below(f(n), g(k_n)),
/// where `below` compares positions. k_n is always the least admissible
/// index; success is declared when a GreedyState repeats.
GreedyOutcome greedy_domination(PeriodicShape f, PeriodicShape g,
                                const std::function<bool(std::size_t, std::size_t)>& below);

struct LeqStarResult {
  bool holds = false;
  GreedyOutcome greedy;
  /// Present when the order fails because this cycle entry of f is below no
  /// cycle entry of g.
  std::optional<FiniteTree> undominated_cycle_entry;
};

LeqStarResult leq_star_certified(const EPSeq& f, const EPSeq& g);
/// f <=* g: some strictly increasing (k_n) has f(n) a rooted minor of g(k_n).
bool leq_star(const EPSeq& f, const EPSeq& g);
bool equiv_star(const EPSeq& f, const EPSeq& g);

/// Sound canonicalization: the cycle becomes its maximal classes (canonical
/// form, sorted, deduplicated) and prefix entries dominated by a cycle class
/// are dropped from the end of the prefix. normalize(f) is equivalent to f.
EPSeq normalize(const EPSeq& f);

/// Caterpillar truncation: a rooted path of n spine nodes, spine node i
/// carrying f(i) by one edge.
FiniteTree t_f_truncate(const EPSeq& f, std::size_t n);

}  // namespace toptree
