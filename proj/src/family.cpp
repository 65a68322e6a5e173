#include "toptree/family.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "toptree/embed.hpp"
#include "toptree/errors.hpp"

namespace toptree {

namespace {

const Spine* periodic_spine(const SpinedTree& t) {
  if (!t.is<Spine>()) return nullptr;
  const Spine& s = t.as<Spine>();
  return std::holds_alternative<Periodic>(s.gen) ? &s : nullptr;
}

const Spine& require_periodic_spine(const SpinedTree& t, const char* what) {
  const Spine* s = periodic_spine(t);
  if (!s) throw ArgumentError(std::string(what) + " needs a periodic spine");
  return *s;
}

std::size_t period_end(const Spine& s) {
  const auto& gen = std::get<Periodic>(s.gen);
  return gen.prefix.size() + gen.cycle.size();
}

bool unit_lengths(const NatSeq& f) {
  const auto* nat = std::get_if<PeriodicNat>(&f);
  if (!nat) return false;
  auto one = [](std::size_t v) { return v == 1; };
  return std::all_of(nat->prefix.begin(), nat->prefix.end(), one) &&
         std::all_of(nat->cycle.begin(), nat->cycle.end(), one);
}

bool dense(const Spine& s) {
  for (std::size_t m = 1; m < period_end(s); ++m) {
    if (attachment_at(s, m).is<Empty>()) return false;
  }
  return true;
}

}  // namespace

SpinedTree collapse_presentation(const SpinedTree& t) {
  const SpinedTree e = expand(t);
  const Spine& s = require_periodic_spine(e, "collapse");
  const auto& gen = std::get<Periodic>(s.gen);
  const std::size_t q = std::max<std::size_t>(gen.prefix.size(), 1);

  std::vector<SpinedTree> prefix{attachment_at(s, 0)};
  for (std::size_t i = 1; i < q; ++i) {
    SpinedTree a = attachment_at(s, i);
    if (!a.is<Empty>()) prefix.push_back(std::move(a));
  }
  std::vector<SpinedTree> cycle;
  for (std::size_t i = q; i < q + gen.cycle.size(); ++i) {
    SpinedTree a = attachment_at(s, i);
    if (!a.is<Empty>()) cycle.push_back(std::move(a));
  }
  if (cycle.empty()) throw ArgumentError("collapse needs an attachment in the cycle");
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    prefix.pop_back();
  }
  return Spine{s.mode, Periodic{std::move(prefix), std::move(cycle)}, PeriodicNat{}};
}

bool check_ray_conditions(const SpinedTree& t) {
  const SpinedTree e = expand(t);
  const Spine* s = periodic_spine(e);
  if (!s) return false;
  const auto& gen = std::get<Periodic>(s->gen);
  for (std::size_t i = 0; i < gen.prefix.size(); ++i) {
    const SpinedTree& a = gen.prefix[i];
    if (a.is<Empty>()) continue;
    bool recurs = false;
    for (std::size_t m = i + 1; m < period_end(*s) && !recurs; ++m) {
      SpinedTree later = attachment_at(*s, m);
      recurs = !later.is<Empty>() && spined_minor(a, later) == Verdict::holds;
    }
    if (!recurs) return false;
  }
  return true;
}

SpinedTree s_f(const SpinedTree& base, const NatSeq& f) {
  const SpinedTree e = expand(base);
  const Spine& s = require_periodic_spine(e, "s_f");
  if (!unit_lengths(s.lengths) || !dense(s)) throw ArgumentError("s_f needs a collapsed base");
  if (!check_ray_conditions(e)) throw ArgumentError("s_f base fails the ray conditions");
  return Spine{s.mode, s.gen, f};
}

std::string to_string(IsoVerdict v) {
  switch (v) {
    case IsoVerdict::iso:
      return "iso";
    case IsoVerdict::non_iso:
      return "non-iso";
    case IsoVerdict::unknown:
      break;
  }
  return "unknown";
}

namespace {

std::size_t nat_period_end(const NatSeq& f) {
  const auto& nat = std::get<PeriodicNat>(f);
  return nat.prefix.size() + nat.cycle.size();
}

std::size_t nat_cycle(const NatSeq& f) { return std::get<PeriodicNat>(f).cycle.size(); }

bool same_attachments(const Spine& a, const Spine& b) {
  const auto& ga = std::get<Periodic>(a.gen);
  const auto& gb = std::get<Periodic>(b.gen);
  const std::size_t end =
      ga.prefix.size() + gb.prefix.size() + std::lcm(ga.cycle.size(), gb.cycle.size());
  for (std::size_t n = 0; n < end; ++n) {
    if (!(attachment_at(a, n) == attachment_at(b, n))) return false;
  }
  return true;
}

bool same_lengths_from(const NatSeq& a, const NatSeq& b, std::size_t from) {
  const bool pa = std::holds_alternative<PrimePowers>(a);
  const bool pb = std::holds_alternative<PrimePowers>(b);
  if (pa || pb) return pa && pb && std::get<PrimePowers>(a).p == std::get<PrimePowers>(b).p;
  const std::size_t end = nat_period_end(a) + nat_period_end(b) + std::lcm(nat_cycle(a), nat_cycle(b));
  for (std::size_t n = from; n < end; ++n) {
    if (nat_at(a, n) != nat_at(b, n)) return false;
  }
  return true;
}

bool bare_ray(const SpinedTree& t) {
  const SpinedTree e = expand(t);
  const Spine* s = periodic_spine(e);
  if (!s) return false;
  const auto& gen = std::get<Periodic>(s->gen);
  auto empty = [](const SpinedTree& x) { return x.is<Empty>(); };
  return std::all_of(gen.prefix.begin(), gen.prefix.end(), empty) &&
         std::all_of(gen.cycle.begin(), gen.cycle.end(), empty);
}

// every spine node past the root is a branch point
bool branching(const Spine& s) {
  for (std::size_t m = 1; m < period_end(s); ++m) {
    const SpinedTree a = attachment_at(s, m);
    if (a.is<Empty>()) return false;
    if (s.mode == JoinMode::glue) {
      if (a.is<Fin>() && a.as<Fin>().tree.is_leaf()) return false;
      if (a.is<SOrd>() && a.as<SOrd>().alpha.is_zero()) return false;
    }
  }
  return true;
}

// `a` from some index on takes only values missing from the range of `b`
std::optional<IsoCertificate> tail_outside(const NatSeq& a, const NatSeq& b, bool first_side) {
  const auto* pa = std::get_if<PrimePowers>(&a);
  if (!pa) return std::nullopt;
  if (const auto* pb = std::get_if<PrimePowers>(&b)) {
    if (pa->p == pb->p) return std::nullopt;
    return IsoCertificate{first_side, 0, nat_at(a, 0)};
  }
  const auto& nat = std::get<PeriodicNat>(b);
  std::size_t top = *std::max_element(nat.cycle.begin(), nat.cycle.end());
  if (!nat.prefix.empty()) top = std::max(top, *std::max_element(nat.prefix.begin(), nat.prefix.end()));
  std::size_t n = 0;
  while (nat_at(a, n) <= top) ++n;
  return IsoCertificate{first_side, n, nat_at(a, n)};
}

}  // namespace

IsoResult presentation_iso(const SpinedTree& a, const SpinedTree& b) {
  if (a == b) return {IsoVerdict::iso, std::nullopt};
  const Spine* sa = periodic_spine(a);
  const Spine* sb = periodic_spine(b);
  if (!sa || !sb || sa->mode != sb->mode || !same_attachments(*sa, *sb)) return {};

  if (same_lengths_from(sa->lengths, sb->lengths, 0)) return {IsoVerdict::iso, std::nullopt};
  // unrooted, the root of the spine is a degree 2 vertex inside a bare ray
  if (same_lengths_from(sa->lengths, sb->lengths, 1) && bare_ray(attachment_at(*sa, 0))) {
    return {IsoVerdict::iso, std::nullopt};
  }

  if (!branching(*sa)) return {};
  const SpinedTree unit = Spine{sa->mode, sa->gen, PeriodicNat{}};
  const Classification c = classify(unit);
  if (c.order < Ordinal::finite(2) || c.ray_count != 1) return {};
  auto cert = tail_outside(sa->lengths, sb->lengths, true);
  if (!cert) cert = tail_outside(sb->lengths, sa->lengths, false);
  if (!cert) return {};
  return {IsoVerdict::non_iso, cert};
}

std::vector<SpinedTree> family_generate(const SpinedTree& base, std::size_t n) {
  if (n == 0) throw ArgumentError("family size must be positive");
  if (order(base) <= Ordinal::finite(1)) throw ArgumentError("family needs a base of order at least 2");
  std::vector<SpinedTree> out;
  for (std::uint32_t p = 2; out.size() < n; ++p) {
    bool prime = true;
    for (std::uint32_t d = 2; d * d <= p && prime; ++d) prime = p % d != 0;
    if (prime) out.push_back(s_f(base, PrimePowers{p}));
  }
  return out;
}

Order1Form order1_canonical(const SpinedTree& t) {
  if (order(t) > Ordinal::finite(1)) throw ArgumentError("order1_canonical needs order at most 1");
  auto marked = finite_core(t);
  if (!marked) throw UnsupportedError("tree has no finite core");
  const FlatTree& shape = marked->shape;
  std::vector<char> ray = marked->ray;
  // a node whose only child starts a ray starts that ray itself
  for (std::size_t v = shape.size(); v-- > 0;) {
    if (!ray[v] && shape.children[v].size() == 1 && ray[shape.children[v][0]]) ray[v] = 1;
  }
  if (ray[0]) return {FiniteTree(), {0}};

  std::vector<std::string> code(shape.size());
  for (std::size_t v = shape.size(); v-- > 0;) {
    if (ray[v]) {
      code[v] = "[]";
      continue;
    }
    std::vector<std::string> parts;
    for (std::size_t c : shape.children[v]) parts.push_back(code[c]);
    std::sort(parts.begin(), parts.end());
    code[v] = "(";
    for (const auto& part : parts) code[v] += part;
    code[v] += ')';
  }

  Order1Form form;
  std::size_t next = 0;
  std::function<FiniteTree(std::size_t)> build = [&](std::size_t v) {
    const std::size_t id = next++;
    std::vector<std::size_t> kids = shape.children[v];
    std::sort(kids.begin(), kids.end(), [&](std::size_t x, std::size_t y) { return code[x] < code[y]; });
    std::vector<FiniteTree> children;
    for (std::size_t c : kids) {
      if (ray[c]) {
        form.ray_attach.push_back(id);
      } else {
        children.push_back(build(c));
      }
    }
    return FiniteTree(std::move(children));
  };
  form.core = build(0);
  std::sort(form.ray_attach.begin(), form.ray_attach.end());
  return form;
}

bool reroot_invariance_check(const FiniteTree& t, const FiniteTree& s) {
  const bool expected = unrooted_minor(t, s);
  const auto rs = all_rootings(s);
  for (const auto& tr : all_rootings(t)) {
    for (const auto& sr : rs) {
      if (unrooted_minor(tr, sr) != expected) return false;
    }
  }
  return true;
}

bool reroot_invariance_check(const FiniteTree& t) { return reroot_invariance_check(t, t); }

}  // namespace toptree
