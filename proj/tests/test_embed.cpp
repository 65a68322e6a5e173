#include <functional>
#include <random>

#include "doctest.h"
#include "support/oracles.hpp"
#include "toptree/embed.hpp"
#include "toptree/errors.hpp"
#include "toptree/matching.hpp"

using namespace toptree;

TEST_CASE("bipartite matcher against exhaustive assignment") {
  std::mt19937_64 rng(1);
  for (int round = 0; round < 300; ++round) {
    const std::size_t left = rng() % 6;
    const std::size_t right = rng() % 6;
    std::vector<std::vector<char>> adj(left, std::vector<char>(right, 0));
    BipartiteMatcher m(left, right);
    for (std::size_t u = 0; u < left; ++u) {
      for (std::size_t v = 0; v < right; ++v) {
        if (rng() % 3 == 0) {
          adj[u][v] = 1;
          m.add_edge(u, v);
        }
      }
    }
    // best matching by trying every subset assignment recursively
    std::vector<char> used(right, 0);
    std::function<std::size_t(std::size_t)> best = [&](std::size_t u) -> std::size_t {
      if (u == left) return 0;
      std::size_t result = best(u + 1);
      for (std::size_t v = 0; v < right; ++v) {
        if (!adj[u][v] || used[v]) continue;
        used[v] = 1;
        result = std::max(result, 1 + best(u + 1));
        used[v] = 0;
      }
      return result;
    };
    std::size_t size = m.solve();
    CHECK(size == best(0));
    std::vector<char> seen(right, 0);
    for (std::size_t u = 0; u < left; ++u) {
      std::size_t v = m.partner(u);
      if (v == BipartiteMatcher::kNone) continue;
      CHECK(adj[u][v]);
      CHECK_FALSE(seen[v]);
      seen[v] = 1;
    }
  }
}

TEST_CASE("rooted minor basics") {
  const FiniteTree dot;
  const FiniteTree v2 = FiniteTree::star(2);
  const FiniteTree v3 = FiniteTree::star(3);
  CHECK(rooted_minor(dot, v3));
  CHECK(rooted_minor(dot, FiniteTree::path(9)));
  CHECK_FALSE(rooted_minor(v3, v2));
  CHECK(rooted_minor(v2, v3));
  CHECK(rooted_minor(FiniteTree::path(2), FiniteTree::path(3)));
  // the pattern root may sit below the host root
  CHECK(rooted_minor(v2, parse_tree("((()()))")));
  CHECK_FALSE(rooted_minor(v2, parse_tree("((()()))"), RootMode::strict));
  // subdivided edges are absorbed
  CHECK(rooted_minor(v2, parse_tree("((())(()))"), RootMode::strict));
}

TEST_CASE("witnesses") {
  const FiniteTree dot;
  auto w = rooted_minor_witness(dot, FiniteTree::star(3), RootMode::strict);
  REQUIRE(w);
  CHECK(w->image == std::vector<std::size_t>{0});

  auto w2 = rooted_minor_witness(FiniteTree::star(2), FiniteTree::star(3));
  REQUIRE(w2);
  CHECK(w2->image[0] == 0);
  CHECK(w2->image[1] != w2->image[2]);
  CHECK(verify_witness(FiniteTree::star(2), FiniteTree::star(3), *w2));

  CHECK_FALSE(rooted_minor_witness(FiniteTree::star(3), FiniteTree::star(2)));

  // a forged witness fails the checker
  EmbeddingWitness bad = *w2;
  bad.image[2] = bad.image[1];
  bad.edge_paths[2] = bad.edge_paths[1];
  CHECK_FALSE(verify_witness(FiniteTree::star(2), FiniteTree::star(3), bad));

  std::mt19937_64 rng(21);
  int validated = 0;
  while (validated < 200) {
    auto t = oracle::random_tree(rng, 1 + rng() % 7);
    auto s = oracle::random_tree(rng, 1 + rng() % 14);
    for (RootMode mode : {RootMode::relaxed, RootMode::strict}) {
      auto witness = rooted_minor_witness(t, s, mode);
      CHECK(witness.has_value() == rooted_minor(t, s, mode));
      if (witness) {
        CHECK(verify_witness(t, s, *witness, mode));
        if (mode == RootMode::relaxed) ++validated;
      }
    }
  }
}

TEST_CASE("agreement with the brute-force oracle up to 6 nodes") {
  auto trees = oracle::all_trees_up_to(6);
  std::size_t disagreements = 0;
  for (const auto& t : trees) {
    for (const auto& s : trees) {
      for (RootMode mode : {RootMode::relaxed, RootMode::strict}) {
        if (rooted_minor(t, s, mode) != brute_force_minor(t, s, mode)) ++disagreements;
      }
    }
  }
  CHECK(disagreements == 0);
  CHECK(brute_force_minor(FiniteTree::star(2), FiniteTree::star(2)));
  CHECK_FALSE(brute_force_minor(FiniteTree::path(4), FiniteTree::star(3)));
  CHECK_THROWS_AS(brute_force_minor(FiniteTree(), FiniteTree::path(13)), ResourceError);
}

TEST_CASE("unrooted minor") {
  const FiniteTree p3 = FiniteTree::path(3);
  for (const auto& rooted : all_rootings(FiniteTree::star(3))) CHECK(unrooted_minor(p3, rooted));
  CHECK(unrooted_minor(FiniteTree::star(3), FiniteTree::star(3)));
  CHECK_FALSE(unrooted_minor(FiniteTree::star(3), FiniteTree::path(6)));

  // independent of the pattern's root, and matches brute force over host rootings
  auto trees = oracle::all_trees_up_to(6);
  std::size_t disagreements = 0;
  for (const auto& t : trees) {
    for (const auto& s : trees) {
      bool verdict = unrooted_minor(t, s);
      bool oracle_verdict = false;
      for (const auto& sr : all_rootings(s)) oracle_verdict = oracle_verdict || brute_force_minor(t, sr);
      if (verdict != oracle_verdict) ++disagreements;
      for (const auto& tr : all_rootings(t)) {
        if (unrooted_minor(tr, s) != verdict) ++disagreements;
      }
    }
  }
  CHECK(disagreements == 0);
}

TEST_CASE("order properties") {
  auto trees = oracle::all_trees_up_to(6);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const auto& a = trees[rng() % trees.size()];
    const auto& b = trees[rng() % trees.size()];
    const auto& c = trees[rng() % trees.size()];
    CHECK(rooted_minor(a, a));
    if (rooted_minor(a, b)) {
      CHECK(a.size() <= b.size());
      if (rooted_minor(b, c)) CHECK(rooted_minor(a, c));
    }
  }
  for (int i = 0; i < 200; ++i) {
    auto t = oracle::random_tree(rng, 1 + i % 10);
    EdgeLengths lengths;
    for (std::size_t e = 1; e < t.size(); ++e) lengths[e] = 1 + rng() % 3;
    CHECK(rooted_minor(t, subdivide(t, lengths), RootMode::strict));
  }
}

TEST_CASE("finite equivalence is isomorphism") {
  CHECK(topo_equiv(FiniteTree::star(4), FiniteTree::star(4)));
  CHECK_FALSE(topo_equiv(FiniteTree::star(2), FiniteTree::star(3)));
  auto trees = oracle::all_trees_up_to(7);
  std::size_t disagreements = 0;
  for (const auto& a : trees) {
    for (const auto& b : trees) {
      if (topo_equiv(a, b) != is_isomorphic(a, b)) ++disagreements;
    }
  }
  CHECK(disagreements == 0);
}
