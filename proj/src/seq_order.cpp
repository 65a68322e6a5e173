#include "toptree/seq_order.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <utility>

#include "toptree/embed.hpp"
#include "toptree/errors.hpp"

namespace toptree {

EPSeq::EPSeq(std::vector<FiniteTree> prefix, std::vector<FiniteTree> cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) throw ArgumentError("an eventually periodic sequence needs a nonempty cycle");
}

EPSeq EPSeq::constant(FiniteTree t) { return EPSeq({}, {std::move(t)}); }

const FiniteTree& EPSeq::at(std::size_t n) const {
  if (n < prefix_.size()) return prefix_[n];
  return cycle_[(n - prefix_.size()) % cycle_.size()];
}

GreedyOutcome greedy_domination(PeriodicShape f, PeriodicShape g,
                                const std::function<bool(std::size_t, std::size_t)>& below) {
  GreedyOutcome out;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  std::size_t next = 0;  // least index still available in g
  for (std::size_t n = 0;; ++n) {
    const std::size_t fp = f.position(n);
    // past the prefix, one full cycle of g shows every candidate
    const std::size_t last = std::max(next, g.prefix) + g.cycle;
    std::optional<std::size_t> chosen;
    for (std::size_t k = next; k < last; ++k) {
      if (below(fp, g.position(k))) {
        chosen = k;
        break;
      }
    }
    if (!chosen) {
      out.stalled_at = n;
      return out;
    }
    out.indices.push_back(*chosen);
    next = *chosen + 1;
    if (n >= f.prefix && *chosen >= g.prefix) {
      GreedyState state{fp, g.position(*chosen)};
      if (!seen.emplace(state.f_position, state.g_position).second) {
        out.holds = true;
        out.repeated_state = state;
        return out;
      }
    }
  }
}

namespace {

class RelationCache {
 public:
  RelationCache(const EPSeq& f, const EPSeq& g) : f_(f), g_(g) {}

  bool operator()(std::size_t fp, std::size_t gp) {
    auto key = std::make_pair(fp, gp);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    bool v = rooted_minor(f_.at(fp), g_.at(gp));
    cache_.emplace(key, v);
    return v;
  }

 private:
  const EPSeq& f_;
  const EPSeq& g_;
  std::map<std::pair<std::size_t, std::size_t>, bool> cache_;
};

}  // namespace

LeqStarResult leq_star_certified(const EPSeq& f, const EPSeq& g) {
  LeqStarResult result;
  const PeriodicShape fs{f.prefix().size(), f.cycle().size()};
  const PeriodicShape gs{g.prefix().size(), g.cycle().size()};
  RelationCache below(f, g);

  for (std::size_t i = 0; i < fs.cycle; ++i) {
    bool dominated = false;
    for (std::size_t j = 0; j < gs.cycle && !dominated; ++j) dominated = below(fs.prefix + i, gs.prefix + j);
    if (!dominated) {
      result.undominated_cycle_entry = f.cycle()[i];
      return result;
    }
  }
  result.greedy = greedy_domination(fs, gs, [&](std::size_t a, std::size_t b) { return below(a, b); });
  result.holds = result.greedy.holds;
  return result;
}

bool leq_star(const EPSeq& f, const EPSeq& g) { return leq_star_certified(f, g).holds; }

bool equiv_star(const EPSeq& f, const EPSeq& g) { return leq_star(f, g) && leq_star(g, f); }

EPSeq normalize(const EPSeq& f) {
  std::map<std::string, FiniteTree> classes;
  for (const auto& t : f.cycle()) classes.emplace(canonical_code(t).text, canonical_form(t));
  std::vector<FiniteTree> maximal;
  for (const auto& [code, t] : classes) {
    bool dominated = false;
    for (const auto& [other_code, other] : classes) {
      if (other_code != code && rooted_minor(t, other)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) maximal.push_back(t);
  }

  // Only a trailing entry can be absorbed by the cycle: an earlier one would
  // have to jump over its successors.
  std::vector<FiniteTree> prefix = f.prefix();
  while (!prefix.empty()) {
    const FiniteTree& last = prefix.back();
    bool dominated = std::any_of(maximal.begin(), maximal.end(),
                                 [&](const FiniteTree& c) { return rooted_minor(last, c); });
    if (!dominated) break;
    prefix.pop_back();
  }
  return EPSeq(std::move(prefix), std::move(maximal));
}

FiniteTree t_f_truncate(const EPSeq& f, std::size_t n) {
  if (n == 0) throw ArgumentError("a caterpillar truncation needs at least one spine node");
  FiniteTree spine(std::vector<FiniteTree>{f.at(n - 1)});
  for (std::size_t i = n - 1; i-- > 0;) spine = FiniteTree(std::vector<FiniteTree>{f.at(i), std::move(spine)});
  return spine;
}

}  // namespace toptree
