#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "toptree/embed.hpp"
#include "toptree/finite_tree.hpp"
#include "toptree/ordinal.hpp"
#include "toptree/seq_order.hpp"

namespace toptree {

class SpinedTree;

/// How an attachment meets its spine node: `attach` joins the attachment
/// root to the node by an edge, `glue` identifies the two.
enum class JoinMode { attach, glue };

/// Attachment generator: entry n is the attachment at spine node n.
struct Periodic {
  std::vector<SpinedTree> prefix;
  std::vector<SpinedTree> cycle;
};
/// n-th attachment S(fundamental(limit, n)).
struct OrdinalRamp {
  Ordinal limit;
};
/// n-th attachment V_{n+1}.
struct VRamp {};
using GenSeq = std::variant<Periodic, OrdinalRamp, VRamp>;

/// Eventually periodic sequence of positive integers.
struct PeriodicNat {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle{1};
};
/// n-th value p^(n+1).
struct PrimePowers {
  std::uint32_t p = 2;
};
using NatSeq = std::variant<PeriodicNat, PrimePowers>;

/// Value at index n; PrimePowers saturate at SIZE_MAX.
std::size_t nat_at(const NatSeq& s, std::size_t n);
bool operator==(const PeriodicNat& a, const PeriodicNat& b);
bool operator==(const PrimePowers& a, const PrimePowers& b);

struct Fin {
  FiniteTree tree;
};
/// Absent attachment. Only meaningful as a generator entry.
struct Empty {};
/// Rooted ray (the spine) carrying generator attachments. The edge from
/// spine node n to n+1 is a path of length lengths(n).
struct Spine {
  JoinMode mode = JoinMode::attach;
  GenSeq gen;
  NatSeq lengths;
};
/// Shorthand for build_s(alpha).
struct SOrd {
  Ordinal alpha;
};

/// Finitely presented locally finite tree. Immutable, cheap to copy.
class SpinedTree {
 public:
  using Node = std::variant<Fin, Empty, Spine, SOrd>;

  SpinedTree(Fin f);
  SpinedTree(Empty e);
  /// Throws ArgumentError on an empty cycle, a ramp towards a non-limit,
  /// a zero edge length, or a prime-power base that is not prime.
  SpinedTree(Spine s);
  SpinedTree(SOrd s);

  const Node& node() const noexcept { return *node_; }
  template <class T>
  bool is() const noexcept {
    return std::holds_alternative<T>(*node_);
  }
  template <class T>
  const T& as() const {
    return std::get<T>(*node_);
  }

  /// Structural equality of presentations.
  friend bool operator==(const SpinedTree& a, const SpinedTree& b);

 private:
  std::shared_ptr<const Node> node_;
};

bool operator==(const Periodic& a, const Periodic& b);
bool operator==(const OrdinalRamp& a, const OrdinalRamp& b);
bool operator==(const VRamp& a, const VRamp& b);
bool operator==(const Fin& a, const Fin& b);
bool operator==(const Empty& a, const Empty& b);
bool operator==(const SOrd& a, const SOrd& b);
bool operator==(const Spine& a, const Spine& b);

/// A bare ray: Spine(attach, Periodic([], [Empty])).
SpinedTree ray();
/// S(0) is a single vertex, S(a+1) the ray with S(a) attached at every node,
/// S(limit) the ray with S(fundamental(limit, n)) attached at node n.
SpinedTree build_s(const Ordinal& alpha);
/// Replaces a top-level SOrd by its expansion; anything else is returned as is.
SpinedTree expand(const SpinedTree& t);
/// Attachment at spine node n.
SpinedTree attachment_at(const Spine& s, std::size_t n);
/// Caterpillar T_f: the ray with f(n) attached at node n.
SpinedTree caterpillar(const EPSeq& f);

/// Hairy n-comb (n >= 1) attaches V_n at every spine node; the n-comb
/// (n >= 2) glues V_{n-1}. An absent n builds the ramp version with V_{k+1}
/// at node k. Throws ArgumentError when n is out of range.
SpinedTree make_comb(std::optional<std::uint32_t> n, bool hairy);

bool is_finite(const SpinedTree& t);
/// Largest number of children of any vertex; nullopt when unbounded.
std::optional<std::size_t> max_children(const SpinedTree& t);

/// o(T): 0 for finite trees, otherwise the largest order of a ray, where the
/// spine of a periodic generator has order succ(max order in the cycle),
/// a ramp towards a limit has that limit, and a V ramp has order 1.
Ordinal order(const SpinedTree& t);

/// A ray of the presentation: `path` lists the prefix positions of the
/// attachments entered from the top spine; the ray is the spine reached there.
struct RayDescriptor {
  std::vector<std::size_t> path;
  Ordinal order;

  friend bool operator==(const RayDescriptor&, const RayDescriptor&) = default;
};

/// Rays whose order equals order(t). Empty for finite trees.
std::vector<RayDescriptor> maximal_rays(const SpinedTree& t);

struct Classification {
  Ordinal order;
  std::size_t ray_count = 0;
};
/// (order, number of maximal rays). Throws ArgumentError for finite trees.
Classification classify(const SpinedTree& t);

inline constexpr std::size_t kDefaultTruncateCap = 10000;

/// Finite piece: every spine expanded to `spine_steps` nodes with subdivided
/// spine edges, finite attachments in full, infinite attachments cut after
/// `depth` levels of nesting (a cut attachment becomes a single vertex).
/// Throws ArgumentError on zero arguments or a bare Empty, ResourceError when
/// the result would exceed `cap` nodes.
FiniteTree truncate(const SpinedTree& t, std::size_t spine_steps, std::size_t depth,
                    std::size_t cap = kDefaultTruncateCap);

/// Finite tree in which some leaves stand for a ray hanging downwards.
struct RayMarkedTree {
  FlatTree shape;
  std::vector<char> ray;  // by preorder index
};
/// Presentation as a marked finite tree, when every spine ends in a bare ray
/// (all cycle entries Empty, no ramps).
std::optional<RayMarkedTree> finite_core(const SpinedTree& t);
/// Topological minor between the denoted trees, decided on the markings.
bool marked_minor(const RayMarkedTree& pattern, const RayMarkedTree& host,
                  RootMode mode = RootMode::relaxed);

/// The presentation recognised as equivalent to some S(alpha), if any.
std::optional<Ordinal> as_s(const SpinedTree& t);

enum class Verdict { holds, fails, unknown };
std::string to_string(Verdict v);

/// Rooted topological minor between presentations (relaxed root mode).
/// Sound: `holds` and `fails` are always right; `unknown` when no rule
/// applies.
Verdict spined_minor(const SpinedTree& pattern, const SpinedTree& host);

/// T*_alpha: the part spanned by rays along which a hairy alpha-comb or a
/// (alpha-1)-comb embeds (at omega, the omega versions). `alpha` must be in
/// [3, omega]; nullopt means omega. Returns nullopt when no ray qualifies.
/// Throws UnsupportedError for ordinal ramps and infinite SOrd, ArgumentError
/// for alpha < 3.
std::optional<SpinedTree> t_star(const SpinedTree& t, std::optional<std::uint32_t> alpha);

}  // namespace toptree
