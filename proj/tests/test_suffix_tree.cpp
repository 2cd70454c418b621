#include <doctest.h>

#include <algorithm>
#include <set>

#include "otindex/error.hpp"
#include "otindex/suffix_tree.hpp"
#include "support.hpp"

using namespace otindex;
using namespace otindex::testing;

TEST_SUITE("suffix_tree") {

TEST_CASE("BANANA tree shape") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const auto s = st.stats();
  CHECK(s.leaves == 7);
  CHECK(s.internal_nodes == 4);
  CHECK(s.internal_by_depth == std::map<Pos, std::int64_t>{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
  std::set<std::string> labels;
  for (NodeId v : st.internal_nodes()) labels.insert(plain_label(st, v));
  CHECK(labels == std::set<std::string>{"", "A", "NA", "ANA"});
  CHECK(st.link(node_of(st, "ANA")) == node_of(st, "NA"));
  CHECK(st.link(node_of(st, "NA")) == node_of(st, "A"));
  CHECK(st.link(node_of(st, "A")) == kRoot);
  CHECK(st.link(kRoot) == kRoot);
}

TEST_CASE("leaf lookup") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  CHECK(st.suffix(st.leaf_of_suffix(0)) == 0);
  CHECK(st.depth(st.leaf_of_suffix(0)) == 7);
  CHECK(st.depth(st.leaf_of_suffix(6)) == 1);
  CHECK(st.parent(st.leaf_of_suffix(6)) == kRoot);
  CHECK_THROWS_AS(st.leaf_of_suffix(7), Error);
  CHECK_THROWS_AS(st.leaf_of_suffix(-1), Error);
}

TEST_CASE("children are ordered by symbol, sentinel first") {
  const SuffixTree st(Text::with_sentinel("MISSISSIPPI"));
  for (NodeId v : st.internal_nodes()) {
    int prev = -1;
    for (NodeId c = st.first_child(v); c != kNoNode; c = st.next_sibling(c)) {
      const int sym = static_cast<unsigned char>(st.text()[st.edge_start(c)]);
      CHECK(sym > prev);
      prev = sym;
    }
  }
  CHECK(st.suffix(st.leaf_at_rank(0)) == 11);
}

TEST_CASE("walk reports the longest matching prefix") {
  const SuffixTree st(Text::with_sentinel("MISSISSIPPI"));
  CHECK(st.walk("SSI").matched == 3);
  CHECK(st.walk("SSIX").matched == 3);
  CHECK(st.walk("X").matched == 0);
  const auto w = st.walk("ISSI");
  CHECK(w.exact_node);
  CHECK(st.depth(w.locus_below) == 4);
  const auto mid = st.walk("ISS");
  CHECK_FALSE(mid.exact_node);
  CHECK(mid.locus_below == w.locus_below);
}

TEST_CASE("AAAA has a unary chain of internal nodes") {
  const SuffixTree st(Text::with_sentinel("AAAA"));
  CHECK(st.stats().internal_nodes == 4);
  for (NodeId v : st.internal_nodes())
    if (v != kRoot) CHECK(st.depth(st.link(v)) == st.depth(v) - 1);
}

// Property checks against naive scans on random texts.
TEST_CASE("random texts: occurrence equivalence, links and walks") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int sigma = 2 + static_cast<int>(seed % 3);
    const auto body = random_text(seed, 20 + seed * 11, sigma);
    const SuffixTree st(Text::with_sentinel(body));
    const auto bytes = st.text().bytes();
    CAPTURE(body);
    CHECK(st.stats().leaves == static_cast<std::int64_t>(bytes.size()));
    for (NodeId v : st.internal_nodes()) {
      if (v == kRoot) continue;
      const auto label = st.label(v);
      if (v != kRoot) {
        CHECK(st.depth(st.link(v)) == st.depth(v) - 1);
        CHECK(st.label(st.link(v)) == label.substr(1));
      }
      std::vector<Pos> under;
      for (Pos r = st.st_left(v); r <= st.st_right(v); ++r) under.push_back(st.suffix(st.leaf_at_rank(r)));
      std::sort(under.begin(), under.end());
      CHECK(under == naive_occurrences(bytes, label));
      CHECK(st.leftmost_suffix(v) == st.suffix(st.leaf_at_rank(st.st_left(v))));
    }
    for (Pos s = 0; s < st.text().size(); ++s) {
      const NodeId leaf = st.leaf_of_suffix(s);
      CHECK(st.label(leaf) == bytes.substr(static_cast<std::size_t>(s)));
    }
    std::mt19937_64 rng(seed);
    for (int k = 0; k < 50; ++k) {
      std::string p;
      const auto len = 1 + rng() % 12;
      for (std::size_t j = 0; j < len; ++j) p.push_back(static_cast<char>('A' + rng() % static_cast<std::uint64_t>(sigma + 1)));
      Pos longest = 0;
      for (Pos l = 1; l <= static_cast<Pos>(p.size()); ++l)
        if (!naive_occurrences(bytes, std::string_view(p).substr(0, static_cast<std::size_t>(l))).empty()) longest = l;
      CHECK(st.walk(p).matched == longest);
    }
  }
}

TEST_CASE("subtree membership agrees with parent chains") {
  const SuffixTree st(Text::with_sentinel(random_text(9, 300, 3)));
  std::vector<NodeId> probes(st.internal_nodes().begin(), st.internal_nodes().end());
  for (Pos s = 0; s < st.text().size(); s += 7) probes.push_back(st.leaf_of_suffix(s));
  for (NodeId x : probes) {
    std::set<NodeId> anc;
    for (NodeId a = x; a != kNoNode; a = st.parent(a)) anc.insert(a);
    for (NodeId v : st.internal_nodes()) CHECK(st.in_subtree(x, v) == (anc.count(v) == 1));
  }
}

}
