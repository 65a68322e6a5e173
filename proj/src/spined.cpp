#include "toptree/spined.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "toptree/embed.hpp"
#include "toptree/errors.hpp"
#include "toptree/matching.hpp"

namespace toptree {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

void validate(const NatSeq& lengths) {
  if (const auto* nat = std::get_if<PeriodicNat>(&lengths)) {
    if (nat->cycle.empty()) throw ArgumentError("edge lengths need a nonempty cycle");
    auto zero = [](std::size_t v) { return v == 0; };
    if (std::any_of(nat->prefix.begin(), nat->prefix.end(), zero) ||
        std::any_of(nat->cycle.begin(), nat->cycle.end(), zero)) {
      throw ArgumentError("edge lengths must be positive");
    }
  } else if (!is_prime(std::get<PrimePowers>(lengths).p)) {
    throw ArgumentError("prime-power lengths need a prime base, got " +
                        std::to_string(std::get<PrimePowers>(lengths).p));
  }
}

void validate(const Spine& s) {
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    if (p->cycle.empty()) throw ArgumentError("a periodic generator needs a nonempty cycle");
  } else if (const auto* r = std::get_if<OrdinalRamp>(&s.gen)) {
    if (!is_limit(r->limit)) throw ArgumentError("an ordinal ramp needs a limit, got " + to_string(r->limit));
  }
  validate(s.lengths);
}

Ordinal predecessor(const Ordinal& a) {
  std::vector<OrdinalTerm> terms = a.terms();
  if (--terms.back().coefficient == 0) terms.pop_back();
  return Ordinal::from_terms(std::move(terms));
}

}  // namespace

std::size_t nat_at(const NatSeq& s, std::size_t n) {
  if (const auto* nat = std::get_if<PeriodicNat>(&s)) {
    if (n < nat->prefix.size()) return nat->prefix[n];
    return nat->cycle[(n - nat->prefix.size()) % nat->cycle.size()];
  }
  const std::size_t p = std::get<PrimePowers>(s).p;
  std::size_t v = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    if (v > std::numeric_limits<std::size_t>::max() / p) return std::numeric_limits<std::size_t>::max();
    v *= p;
  }
  return v;
}

bool operator==(const PeriodicNat& a, const PeriodicNat& b) {
  return a.prefix == b.prefix && a.cycle == b.cycle;
}
bool operator==(const PrimePowers& a, const PrimePowers& b) { return a.p == b.p; }
bool operator==(const Fin& a, const Fin& b) { return a.tree == b.tree; }
bool operator==(const Empty&, const Empty&) { return true; }
bool operator==(const SOrd& a, const SOrd& b) { return a.alpha == b.alpha; }
bool operator==(const VRamp&, const VRamp&) { return true; }
bool operator==(const OrdinalRamp& a, const OrdinalRamp& b) { return a.limit == b.limit; }
bool operator==(const Periodic& a, const Periodic& b) {
  return a.prefix == b.prefix && a.cycle == b.cycle;
}
bool operator==(const Spine& a, const Spine& b) {
  return a.mode == b.mode && a.gen == b.gen && a.lengths == b.lengths;
}

SpinedTree::SpinedTree(Fin f) : node_(std::make_shared<const Node>(std::move(f))) {}
SpinedTree::SpinedTree(Empty e) : node_(std::make_shared<const Node>(e)) {}
SpinedTree::SpinedTree(Spine s) {
  validate(s);
  node_ = std::make_shared<const Node>(std::move(s));
}
SpinedTree::SpinedTree(SOrd s) : node_(std::make_shared<const Node>(std::move(s))) {}

bool operator==(const SpinedTree& a, const SpinedTree& b) {
  return a.node_ == b.node_ || *a.node_ == *b.node_;
}

SpinedTree ray() { return Spine{JoinMode::attach, Periodic{{}, {Empty{}}}, PeriodicNat{}}; }

SpinedTree build_s(const Ordinal& alpha) {
  if (alpha.is_zero()) return Fin{FiniteTree()};
  if (is_limit(alpha)) return Spine{JoinMode::attach, OrdinalRamp{alpha}, PeriodicNat{}};
  if (alpha == Ordinal::finite(1)) return ray();
  return Spine{JoinMode::attach, Periodic{{}, {build_s(predecessor(alpha))}}, PeriodicNat{}};
}

SpinedTree expand(const SpinedTree& t) {
  if (t.is<SOrd>()) return build_s(t.as<SOrd>().alpha);
  return t;
}

SpinedTree attachment_at(const Spine& s, std::size_t n) {
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    if (n < p->prefix.size()) return p->prefix[n];
    return p->cycle[(n - p->prefix.size()) % p->cycle.size()];
  }
  if (const auto* r = std::get_if<OrdinalRamp>(&s.gen)) {
    if (n >= std::numeric_limits<std::uint32_t>::max()) throw ResourceError("ramp index too large");
    return build_s(fundamental(r->limit, static_cast<std::uint32_t>(n)));
  }
  return Fin{FiniteTree::star(n + 1)};
}

SpinedTree caterpillar(const EPSeq& f) {
  auto wrap = [](const std::vector<FiniteTree>& ts) {
    std::vector<SpinedTree> out;
    for (const auto& t : ts) out.emplace_back(Fin{t});
    return out;
  };
  return Spine{JoinMode::attach, Periodic{wrap(f.prefix()), wrap(f.cycle())}, PeriodicNat{}};
}

SpinedTree make_comb(std::optional<std::uint32_t> n, bool hairy) {
  const JoinMode mode = hairy ? JoinMode::attach : JoinMode::glue;
  if (!n) return Spine{mode, VRamp{}, PeriodicNat{}};
  if (hairy) {
    if (*n < 1) throw ArgumentError("hairy combs need n >= 1");
    return Spine{mode, Periodic{{}, {Fin{FiniteTree::star(*n)}}}, PeriodicNat{}};
  }
  if (*n < 2) throw ArgumentError("combs need n >= 2");
  return Spine{mode, Periodic{{}, {Fin{FiniteTree::star(*n - 1)}}}, PeriodicNat{}};
}

bool is_finite(const SpinedTree& t) {
  if (t.is<Fin>() || t.is<Empty>()) return true;
  if (t.is<SOrd>()) return t.as<SOrd>().alpha.is_zero();
  return false;
}

namespace {

using Bound = std::optional<std::size_t>;  // nullopt = unbounded

Bound bound_max(Bound a, Bound b) {
  if (!a || !b) return std::nullopt;
  return std::max(*a, *b);
}

// Children counts: at the root, and at any vertex other than the root.
struct Degrees {
  Bound root = 0;
  Bound below = 0;
};

Degrees degrees(const SpinedTree& t);

// Attachments met at spine nodes 1, 2, ... up to repetition.
std::vector<SpinedTree> later_attachments(const Spine& s) {
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    std::vector<SpinedTree> all;
    if (p->prefix.size() > 1) all.assign(p->prefix.begin() + 1, p->prefix.end());
    all.insert(all.end(), p->cycle.begin(), p->cycle.end());
    return all;
  }
  // a ramp towards a limit looks the same from index 1 on
  return {attachment_at(s, 1)};
}

Bound spine_node_children(const Spine& s, const SpinedTree& a) {
  if (a.is<Empty>()) return 1;
  if (s.mode == JoinMode::attach) return 2;
  Bound r = degrees(a).root;
  return r ? Bound(*r + 1) : std::nullopt;
}

Degrees degrees(const SpinedTree& t) {
  if (t.is<Empty>()) return {0, 0};
  if (t.is<SOrd>()) return degrees(expand(t));
  if (t.is<Fin>()) {
    FlatTree flat = flatten(t.as<Fin>().tree);
    Degrees d{flat.children[0].size(), 0};
    for (std::size_t v = 1; v < flat.size(); ++v) d.below = std::max(*d.below, flat.children[v].size());
    return d;
  }
  const Spine& s = t.as<Spine>();
  if (std::holds_alternative<VRamp>(s.gen)) return {2, std::nullopt};

  Degrees d;
  const SpinedTree first = attachment_at(s, 0);
  d.root = spine_node_children(s, first);
  d.below = 1;  // later spine nodes
  auto add_internal = [&](const SpinedTree& a) {
    Degrees inner = degrees(a);
    d.below = bound_max(d.below, s.mode == JoinMode::attach ? bound_max(inner.root, inner.below) : inner.below);
  };
  add_internal(first);
  for (const auto& a : later_attachments(s)) {
    d.below = bound_max(d.below, spine_node_children(s, a));
    add_internal(a);
  }
  return d;
}

}  // namespace

std::optional<std::size_t> max_children(const SpinedTree& t) {
  Degrees d = degrees(t);
  return bound_max(d.root, d.below);
}

namespace {

Ordinal spine_order(const Spine& s) {
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    Ordinal best;
    for (const auto& a : p->cycle) best = ord_max(best, order(a));
    return succ(best);
  }
  if (const auto* r = std::get_if<OrdinalRamp>(&s.gen)) return r->limit;
  return Ordinal::finite(1);
}

}  // namespace

Ordinal order(const SpinedTree& t) {
  if (t.is<Fin>() || t.is<Empty>()) return {};
  if (t.is<SOrd>()) return t.as<SOrd>().alpha;
  const Spine& s = t.as<Spine>();
  Ordinal best = spine_order(s);
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    for (const auto& a : p->prefix) best = ord_max(best, order(a));
  }
  return best;
}

std::vector<RayDescriptor> maximal_rays(const SpinedTree& t) {
  if (t.is<SOrd>()) return maximal_rays(expand(t));
  if (!t.is<Spine>()) return {};
  const Spine& s = t.as<Spine>();
  const Ordinal top = order(t);
  std::vector<RayDescriptor> out;
  if (spine_order(s) == top) out.push_back({{}, top});
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    for (std::size_t i = 0; i < p->prefix.size(); ++i) {
      if (order(p->prefix[i]) != top) continue;
      for (auto r : maximal_rays(p->prefix[i])) {
        r.path.insert(r.path.begin(), i);
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

Classification classify(const SpinedTree& t) {
  if (is_finite(t)) throw ArgumentError("classify needs an infinite tree");
  return {order(t), maximal_rays(t).size()};
}

namespace {

class Truncator {
 public:
  Truncator(std::size_t steps, std::size_t cap) : steps_(steps), cap_(cap) {}

  FiniteTree build(const SpinedTree& t, std::size_t depth) {
    if (t.is<Empty>()) throw ArgumentError("cannot truncate an empty attachment");
    if (t.is<SOrd>()) return build(expand(t), depth);
    if (t.is<Fin>()) {
      count(t.as<Fin>().tree.size());
      return t.as<Fin>().tree;
    }
    if (depth == 0) {
      count(1);
      return FiniteTree();
    }
    const Spine& s = t.as<Spine>();
    std::optional<FiniteTree> below;
    for (std::size_t i = steps_; i-- > 0;) {
      std::vector<FiniteTree> children;
      SpinedTree a = attachment_at(s, i);
      if (!a.is<Empty>()) {
        FiniteTree sub = build(a, depth - 1);
        if (s.mode == JoinMode::attach) {
          children.push_back(std::move(sub));
        } else {
          used_ -= 1;  // the attachment root is the spine node
          children = sub.children();
        }
      }
      if (below) {
        const std::size_t length = nat_at(s.lengths, i);
        count(length - 1);
        FiniteTree next = std::move(*below);
        for (std::size_t k = 1; k < length; ++k) next = FiniteTree(std::vector<FiniteTree>{std::move(next)});
        children.push_back(std::move(next));
      }
      count(1);
      below = FiniteTree(std::move(children));
    }
    return std::move(*below);
  }

 private:
  void count(std::size_t n) {
    if (n > cap_ - used_) {
      throw ResourceError("truncation exceeds the cap of " + std::to_string(cap_) + " nodes");
    }
    used_ += n;
  }

  std::size_t steps_;
  std::size_t cap_;
  std::size_t used_ = 0;
};

}  // namespace

FiniteTree truncate(const SpinedTree& t, std::size_t spine_steps, std::size_t depth, std::size_t cap) {
  if (spine_steps == 0 || depth == 0) throw ArgumentError("truncate needs positive spine steps and depth");
  return Truncator(spine_steps, cap).build(t, depth);
}

namespace {

struct CoreNode {
  bool ray = false;
  std::vector<CoreNode> children;
};

CoreNode core_from(const FiniteTree& t) {
  CoreNode n;
  for (const auto& c : t.children()) n.children.push_back(core_from(c));
  return n;
}

std::optional<CoreNode> core_of(const SpinedTree& t) {
  if (t.is<Empty>()) return std::nullopt;
  if (t.is<Fin>()) return core_from(t.as<Fin>().tree);
  if (t.is<SOrd>()) {
    const Ordinal& a = t.as<SOrd>().alpha;
    if (a > Ordinal::finite(1)) return std::nullopt;
    return core_of(expand(t));
  }
  const Spine& s = t.as<Spine>();
  const auto* p = std::get_if<Periodic>(&s.gen);
  if (!p) return std::nullopt;
  if (!std::all_of(p->cycle.begin(), p->cycle.end(), [](const SpinedTree& a) { return a.is<Empty>(); })) {
    return std::nullopt;
  }
  const std::size_t nodes = std::max<std::size_t>(p->prefix.size(), 1);
  CoreNode below{true, {}};
  for (std::size_t i = nodes; i-- > 0;) {
    CoreNode node;
    SpinedTree a = attachment_at(s, i);
    if (!a.is<Empty>()) {
      auto sub = core_of(a);
      if (!sub) return std::nullopt;
      if (s.mode == JoinMode::attach) {
        node.children.push_back(std::move(*sub));
      } else {
        node.children = std::move(sub->children);
      }
    }
    node.children.push_back(std::move(below));
    below = std::move(node);
  }
  return below;
}

void flatten_core(const CoreNode& n, std::size_t parent, RayMarkedTree& out) {
  const std::size_t id = out.shape.parent.size();
  out.shape.parent.push_back(parent);
  out.shape.children.emplace_back();
  out.ray.push_back(n.ray ? 1 : 0);
  if (id != 0) out.shape.children[parent].push_back(id);
  for (const auto& c : n.children) flatten_core(c, id, out);
}

}  // namespace

std::optional<RayMarkedTree> finite_core(const SpinedTree& t) {
  auto core = core_of(t);
  if (!core) return std::nullopt;
  RayMarkedTree out;
  flatten_core(*core, 0, out);
  return out;
}

bool marked_minor(const RayMarkedTree& pattern, const RayMarkedTree& host, RootMode mode) {
  const auto& a = pattern.shape;
  const auto& b = host.shape;
  const std::size_t na = a.size(), nb = b.size();

  std::vector<char> chain(na), infinite(nb);
  for (std::size_t x = na; x-- > 0;) {
    const auto& ch = a.children[x];
    chain[x] = pattern.ray[x] || ch.empty() || (ch.size() == 1 && chain[ch[0]]);
  }
  for (std::size_t v = nb; v-- > 0;) {
    infinite[v] = host.ray[v];
    for (std::size_t d : b.children[v]) infinite[v] = infinite[v] || infinite[d];
  }

  std::vector<std::vector<char>> at(na, std::vector<char>(nb)), below(na, std::vector<char>(nb));
  for (std::size_t x = na; x-- > 0;) {
    for (std::size_t v = nb; v-- > 0;) {
      bool ok;
      if (pattern.ray[x]) {
        ok = infinite[v];
      } else if (host.ray[v]) {
        ok = chain[x];
      } else if (a.children[x].size() > b.children[v].size()) {
        ok = false;
      } else {
        const auto& cx = a.children[x];
        const auto& cv = b.children[v];
        BipartiteMatcher m(cx.size(), cv.size());
        for (std::size_t i = 0; i < cx.size(); ++i) {
          for (std::size_t j = 0; j < cv.size(); ++j) {
            if (below[cx[i]][cv[j]]) m.add_edge(i, j);
          }
        }
        ok = m.solve() == cx.size();
      }
      at[x][v] = ok;
      bool b_ok = ok;
      for (std::size_t d : b.children[v]) b_ok = b_ok || below[x][d];
      below[x][v] = b_ok;
    }
  }
  return mode == RootMode::strict ? at[0][0] : below[0][0];
}

std::optional<Ordinal> as_s(const SpinedTree& t) {
  if (t.is<SOrd>()) return t.as<SOrd>().alpha;
  if (t.is<Fin>()) {
    if (t.as<Fin>().tree.size() == 1) return Ordinal();
    return std::nullopt;
  }
  if (t.is<Empty>()) return std::nullopt;
  const Spine& s = t.as<Spine>();
  if (s.mode != JoinMode::attach) return std::nullopt;
  if (const auto* r = std::get_if<OrdinalRamp>(&s.gen)) return r->limit;
  const auto* p = std::get_if<Periodic>(&s.gen);
  if (!p) return std::nullopt;

  std::optional<Ordinal> top;
  for (const auto& a : p->cycle) {
    if (a.is<Empty>()) continue;
    auto k = as_s(a);
    if (!k) return std::nullopt;
    top = top ? ord_max(*top, *k) : *k;
  }
  if (!top) {
    // bare ray after the prefix
    for (const auto& a : p->prefix) {
      if (!a.is<Empty>()) return std::nullopt;
    }
    return Ordinal::finite(1);
  }
  if (top->is_zero()) return std::nullopt;
  for (const auto& a : p->prefix) {
    if (a.is<Empty>()) continue;
    auto k = as_s(a);
    if (!k || *k > *top) return std::nullopt;
  }
  return succ(*top);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds:
      return "true";
    case Verdict::fails:
      return "false";
    case Verdict::unknown:
      break;
  }
  return "unknown";
}

namespace {

bool same_shape(const SpinedTree& a, const SpinedTree& b);

bool same_shapes(const std::vector<SpinedTree>& a, const std::vector<SpinedTree>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_shape(a[i], b[i])) return false;
  }
  return true;
}

// Equal up to isomorphism of finite parts and subdivision of spine edges.
bool same_shape(const SpinedTree& a, const SpinedTree& b) {
  if (a.node().index() != b.node().index()) return false;
  if (a.is<Empty>()) return true;
  if (a.is<Fin>()) return is_isomorphic(a.as<Fin>().tree, b.as<Fin>().tree);
  if (a.is<SOrd>()) return a.as<SOrd>().alpha == b.as<SOrd>().alpha;
  const Spine& x = a.as<Spine>();
  const Spine& y = b.as<Spine>();
  if (x.mode != y.mode || x.gen.index() != y.gen.index()) return false;
  if (const auto* p = std::get_if<Periodic>(&x.gen)) {
    const auto& q = std::get<Periodic>(y.gen);
    return same_shapes(p->prefix, q.prefix) && same_shapes(p->cycle, q.cycle);
  }
  if (const auto* r = std::get_if<OrdinalRamp>(&x.gen)) return r->limit == std::get<OrdinalRamp>(y.gen).limit;
  return true;
}

bool finite_attachments_only(const Spine& s) {
  const auto* p = std::get_if<Periodic>(&s.gen);
  if (!p) return false;
  auto finite = [](const SpinedTree& a) { return is_finite(a); };
  return std::all_of(p->prefix.begin(), p->prefix.end(), finite) &&
         std::all_of(p->cycle.begin(), p->cycle.end(), finite);
}

// Same tree up to subdivision of spine edges.
SpinedTree unit_lengths(const Spine& s) { return Spine{s.mode, s.gen, PeriodicNat{}}; }

// The subtree below spine node 0 along the spine, up to topological equivalence.
SpinedTree shift(const Spine& s) {
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    Periodic next;
    if (!p->prefix.empty()) {
      next.prefix.assign(p->prefix.begin() + 1, p->prefix.end());
      next.cycle = p->cycle;
    } else {
      next.cycle.assign(p->cycle.begin() + 1, p->cycle.end());
      next.cycle.push_back(p->cycle.front());
    }
    return Spine{s.mode, std::move(next), PeriodicNat{}};
  }
  // ramps dominate their own tails
  return unit_lengths(s);
}

std::vector<SpinedTree> branches(const SpinedTree& a, JoinMode mode);

std::vector<SpinedTree> root_branches(const SpinedTree& t) {
  if (t.is<Empty>()) return {};
  if (t.is<SOrd>()) return root_branches(expand(t));
  if (t.is<Fin>()) {
    std::vector<SpinedTree> out;
    for (const auto& c : t.as<Fin>().tree.children()) out.emplace_back(Fin{c});
    return out;
  }
  const Spine& s = t.as<Spine>();
  std::vector<SpinedTree> out = branches(attachment_at(s, 0), s.mode);
  out.push_back(shift(s));
  return out;
}

// Subtrees hanging from a spine node that carries `a`, excluding the spine.
std::vector<SpinedTree> branches(const SpinedTree& a, JoinMode mode) {
  if (a.is<Empty>()) return {};
  if (mode == JoinMode::attach) return {a};
  return root_branches(a);
}

Verdict decide(const SpinedTree& a, const SpinedTree& b);

// Guest branches must go into distinct host branches.
Verdict local_verdict(const SpinedTree& ga, JoinMode gm, const SpinedTree& ha, JoinMode hm) {
  const auto gb = branches(ga, gm);
  const auto hb = branches(ha, hm);
  if (gb.size() > hb.size()) return Verdict::fails;
  BipartiteMatcher sure(gb.size(), hb.size()), maybe(gb.size(), hb.size());
  for (std::size_t i = 0; i < gb.size(); ++i) {
    for (std::size_t j = 0; j < hb.size(); ++j) {
      Verdict v = decide(gb[i], hb[j]);
      if (v == Verdict::holds) sure.add_edge(i, j);
      if (v != Verdict::fails) maybe.add_edge(i, j);
    }
  }
  if (sure.solve() == gb.size()) return Verdict::holds;
  if (maybe.solve() < gb.size()) return Verdict::fails;
  return Verdict::unknown;
}

Verdict fin_into_spine(const FiniteTree& a, const Spine& s) {
  const std::size_t n = a.size();
  std::size_t steps;
  bool exact = false;
  if (const auto* p = std::get_if<Periodic>(&s.gen)) {
    steps = p->prefix.size() + p->cycle.size() * (n + 1);
    exact = finite_attachments_only(s);
  } else {
    steps = 2 * n + 1;
    exact = std::holds_alternative<VRamp>(s.gen);
  }
  for (std::size_t depth = 1; depth <= n; ++depth) {
    try {
      if (rooted_minor(a, truncate(unit_lengths(s), steps, depth))) return Verdict::holds;
    } catch (const ResourceError&) {
      return Verdict::unknown;
    }
    if (exact) return Verdict::fails;
  }
  return Verdict::unknown;
}

Verdict periodic_into_vramp(const Spine& g, const Spine& h) {
  const auto& p = std::get<Periodic>(g.gen);
  std::vector<SpinedTree> all = p.prefix;
  all.insert(all.end(), p.cycle.begin(), p.cycle.end());
  std::size_t largest = 0;
  for (const auto& a : all) {
    // a second ray cannot follow the single ray of the host
    if (!is_finite(a)) return Verdict::fails;
    if (a.is<Fin>()) largest = std::max(largest, a.as<Fin>().tree.size());
  }
  // from here on every host attachment serves every guest attachment
  const SpinedTree far = attachment_at(h, largest + 1);
  for (const auto& a : all) {
    if (local_verdict(a, g.mode, far, h.mode) != Verdict::holds) return Verdict::fails;
  }
  return Verdict::holds;
}

Verdict periodic_into_periodic(const Spine& g, const Spine& h) {
  const auto& gp = std::get<Periodic>(g.gen);
  const auto& hp = std::get<Periodic>(h.gen);
  const PeriodicShape gs{gp.prefix.size(), gp.cycle.size()};
  const PeriodicShape hs{hp.prefix.size(), hp.cycle.size()};
  std::vector<std::optional<Verdict>> cache(gs.positions() * hs.positions());
  auto verdict = [&](std::size_t i, std::size_t j) {
    auto& slot = cache[i * hs.positions() + j];
    if (!slot) slot = local_verdict(attachment_at(g, i), g.mode, attachment_at(h, j), h.mode);
    return *slot;
  };
  auto sure = greedy_domination(gs, hs, [&](std::size_t i, std::size_t j) { return verdict(i, j) == Verdict::holds; });
  if (sure.holds) return Verdict::holds;
  // with finite host attachments the guest spine must run along the host spine
  if (!finite_attachments_only(h)) return Verdict::unknown;
  auto maybe = greedy_domination(gs, hs, [&](std::size_t i, std::size_t j) { return verdict(i, j) != Verdict::fails; });
  return maybe.holds ? Verdict::unknown : Verdict::fails;
}

Verdict spine_into_spine(const Spine& g, const Spine& h) {
  if (std::holds_alternative<VRamp>(g.gen)) {
    if (std::holds_alternative<VRamp>(h.gen)) return g.mode == h.mode ? Verdict::holds : Verdict::fails;
    return Verdict::unknown;
  }
  if (!std::holds_alternative<Periodic>(g.gen)) return Verdict::unknown;
  if (std::holds_alternative<VRamp>(h.gen)) return periodic_into_vramp(g, h);
  if (std::holds_alternative<Periodic>(h.gen)) return periodic_into_periodic(g, h);
  // the ramp contains, from index n on, a copy of its n-th attachment everywhere
  for (std::size_t n = 0; n < 3; ++n) {
    const Spine below{h.mode, Periodic{{}, {attachment_at(h, n)}}, PeriodicNat{}};
    if (periodic_into_periodic(g, below) == Verdict::holds) return Verdict::holds;
  }
  return Verdict::unknown;
}

Verdict decide(const SpinedTree& a, const SpinedTree& b) {
  if (a.is<Empty>() || b.is<Empty>()) throw ArgumentError("an empty attachment is not a tree");
  if (a.is<Fin>() && b.is<Fin>()) {
    return rooted_minor(a.as<Fin>().tree, b.as<Fin>().tree) ? Verdict::holds : Verdict::fails;
  }
  if (same_shape(a, b)) return Verdict::holds;

  const auto sa = as_s(a);
  const auto sb = as_s(b);
  if (sa && sb) return *sa <= *sb ? Verdict::holds : Verdict::fails;
  if (sa) return *sa <= order(b) ? Verdict::holds : Verdict::fails;
  if (order(a) > order(b)) return Verdict::fails;
  if (!is_finite(a) && is_finite(b)) return Verdict::fails;

  if (auto mb = max_children(b)) {
    auto ma = max_children(a);
    if (!ma || *ma > *mb) return Verdict::fails;
  }

  auto ca = finite_core(a);
  auto cb = ca ? finite_core(b) : std::nullopt;
  if (ca && cb) return marked_minor(*ca, *cb) ? Verdict::holds : Verdict::fails;

  const SpinedTree ea = expand(a);
  const SpinedTree eb = expand(b);
  if (ea.is<Fin>()) {
    if (eb.is<Fin>()) return decide(ea, eb);
    return fin_into_spine(ea.as<Fin>().tree, eb.as<Spine>());
  }
  if (eb.is<Fin>()) return Verdict::fails;
  return spine_into_spine(ea.as<Spine>(), eb.as<Spine>());
}

}  // namespace

Verdict spined_minor(const SpinedTree& pattern, const SpinedTree& host) { return decide(pattern, host); }

namespace {

bool qualifies(const SpinedTree& a, JoinMode mode, std::optional<std::uint32_t> alpha) {
  if (a.is<Empty>()) return false;
  Degrees d = degrees(a);
  // off-spine degree at the spine node, and the best centre for a hair
  const std::size_t off = mode == JoinMode::attach ? 1 : d.root.value_or(0);
  const Bound hair = mode == JoinMode::attach ? bound_max(d.root, d.below) : d.below;
  if (!hair) return true;
  if (!alpha) return false;
  return *hair >= *alpha || off + 2 >= *alpha;
}

std::optional<SpinedTree> star_of(const SpinedTree& t, std::optional<std::uint32_t> alpha) {
  if (t.is<Fin>() || t.is<Empty>()) return std::nullopt;
  if (t.is<SOrd>()) {
    const Ordinal& a = t.as<SOrd>().alpha;
    if (!a.is_zero() && a.terms().front().exponent > 0) {
      throw UnsupportedError("comb extraction does not support S(" + to_string(a) + ")");
    }
    return star_of(expand(t), alpha);
  }
  const Spine& s = t.as<Spine>();
  if (std::holds_alternative<OrdinalRamp>(s.gen)) {
    throw UnsupportedError("comb extraction does not support ordinal ramps");
  }
  if (std::holds_alternative<VRamp>(s.gen)) return Spine{JoinMode::attach, Periodic{{}, {Empty{}}}, s.lengths};

  const auto& p = std::get<Periodic>(s.gen);
  bool spine = false;
  for (const auto& a : p.cycle) spine = spine || qualifies(a, s.mode, alpha);
  bool any = false;
  auto map = [&](const std::vector<SpinedTree>& in) {
    std::vector<SpinedTree> out;
    for (const auto& a : in) {
      auto sub = star_of(a, alpha);
      any = any || sub.has_value();
      out.push_back(sub ? *sub : SpinedTree(Empty{}));
    }
    return out;
  };
  Periodic next{map(p.prefix), map(p.cycle)};
  if (!spine && !any) return std::nullopt;
  return Spine{any ? s.mode : JoinMode::attach, std::move(next), s.lengths};
}

}  // namespace

std::optional<SpinedTree> t_star(const SpinedTree& t, std::optional<std::uint32_t> alpha) {
  if (alpha && *alpha < 3) throw ArgumentError("comb extraction needs alpha >= 3");
  return star_of(t, alpha);
}

}  // namespace toptree
