#include <doctest.h>

#include <algorithm>
#include <set>

#include "otindex/error.hpp"
#include "otindex/oracle.hpp"
#include "support.hpp"

using namespace otindex;
using namespace otindex::testing;

namespace {

BuildConfig literal() {
  BuildConfig c;
  c.classification = ClassificationMode::DefinitionLiteral;
  c.keying = SpecialKeying::TopNode;
  c.prune_covered = false;
  c.prune_fallback = false;
  return c;
}

std::set<std::string> label_set(const SuffixTree& st, const std::vector<NodeId>& v) {
  std::set<std::string> out;
  for (NodeId x : v) out.insert(plain_label(st, x));
  return out;
}

}  // namespace

TEST_SUITE("ot_build") {

TEST_CASE("BANANA special nodes per classification mode") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const OshrTree oshr(st);
  const auto ctx = reference_leaf_contexts(st);
  const auto refint = reference_internal_nodes(st);

  const auto def = detect_special_nodes(st, oshr, ctx, refint, ClassificationMode::DefinitionLiteral);
  CHECK(label_set(st, def.hanadi) == std::set<std::string>{"A"});
  CHECK(def.srivastava.empty());
  REQUIRE(def.referenced_by(st.leaf_of_suffix(0)).size() == 1);
  CHECK(def.referenced_by(st.leaf_of_suffix(0))[0].node == node_of(st, "A"));

  const auto cap = detect_special_nodes(st, oshr, ctx, refint, ClassificationMode::FigureCaption);
  CHECK(label_set(st, cap.hanadi) == std::set<std::string>{"ANA"});
  CHECK(cap.srivastava.empty());

  const auto uni = detect_special_nodes(st, oshr, ctx, refint, ClassificationMode::Union);
  CHECK(label_set(st, uni.hanadi) == std::set<std::string>{"A", "ANA"});
}

TEST_CASE("no contexts means no special nodes") {
  const SuffixTree st(Text::with_sentinel("ABCD"));
  const OshrTree oshr(st);
  const auto sn = detect_special_nodes(st, oshr, reference_leaf_contexts(st), reference_internal_nodes(st),
                                       ClassificationMode::DefinitionLiteral);
  CHECK(sn.hanadi.empty());
  CHECK(sn.srivastava.empty());
}

TEST_CASE("last extent paths") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  CHECK(last_extent_path(st, kRoot, node_of(st, "A")) == std::vector<NodeId>{node_of(st, "A")});
  CHECK(last_extent_path(st, node_of(st, "A"), node_of(st, "ANA")) == std::vector<NodeId>{node_of(st, "NA")});
  CHECK_THROWS_AS(last_extent_path(st, "NAB"), Error);

  const SuffixTree ms(Text::with_sentinel("MISSISSIPPI"));
  const auto path = last_extent_path(ms, "SSI");
  REQUIRE_FALSE(path.empty());
  CHECK(plain_label(ms, path.back()) == "SSI");
  CHECK(plain_label(ms, path.front()) == "S");
}

TEST_CASE("BANANA base paths") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const OshrTree oshr(st);
  CHECK(enumerate_base_paths(st, oshr, node_of(st, "A")) == std::vector<NodeId>{node_of(st, "ANA")});
  CHECK(enumerate_base_paths(st, oshr, node_of(st, "ANA")).empty());
}

TEST_CASE("BANANA host lists under the literal configuration") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const OshrTree oshr(st);
  const auto idx = build_index(st, oshr, literal());

  const auto at_a = idx.entries(node_of(st, "A"));
  const auto special = std::find_if(at_a.begin(), at_a.end(), [](const OtEntry& e) { return e.origin == Origin::Hanadi; });
  REQUIRE(special != at_a.end());
  CHECK(special->key == kRoot);
  CHECK(special->occ == 1);

  const auto at_na = idx.entries(node_of(st, "NA"));
  const auto base = std::find_if(at_na.begin(), at_na.end(),
                                 [&](const OtEntry& e) { return e.key == node_of(st, "A"); });
  REQUIRE(base != at_na.end());
  CHECK(base->origin == Origin::BasePath);
  CHECK(base->occ == 4);
  CHECK(base->bottom == node_of(st, "ANA"));
  for (const auto& e : at_na) CHECK((e.key == node_of(st, "A") || e.key == kRoot));

  const auto chk = check_index(st, oshr, idx);
  CHECK(chk.entry_violations == 0);
  CHECK(chk.unsorted_lists == 0);
}

TEST_CASE("pruning drops root keys and covered keys") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const OshrTree oshr(st);
  auto cfg = literal();
  cfg.prune_covered = true;
  cfg.prune_fallback = true;
  const auto idx = build_index(st, oshr, cfg);
  for (NodeId v : st.internal_nodes())
    for (const auto& e : idx.entries(v)) CHECK(e.key != kRoot);
}

TEST_CASE("length modes") {
  CHECK(parse_length_mode("all") == LengthMode::all());
  CHECK(parse_length_mode("exact:5") == LengthMode::exact(5));
  CHECK(parse_length_mode("atmost:9") == LengthMode::at_most(9));
  CHECK(parse_length_mode("range:3-7") == LengthMode::range(3, 7));
  CHECK_THROWS_AS(parse_length_mode("range:7-3"), Error);
  CHECK_THROWS_AS(parse_length_mode("exact:0"), Error);
  CHECK_THROWS_AS(parse_length_mode("bogus"), Error);
  CHECK(LengthMode::exact(4).admits(4));
  CHECK_FALSE(LengthMode::exact(4).admits(5));
  CHECK(parse_classification("caption") == ClassificationMode::FigureCaption);
  CHECK(parse_keying("top") == SpecialKeying::TopNode);
}

TEST_CASE("exact length mode places entries at the first node of depth >= l") {
  const auto body = random_text(77, 300, 3);
  const SuffixTree st(Text::with_sentinel(body));
  const OshrTree oshr(st);
  for (Pos l : {1, 2, 4, 7}) {
    BuildConfig cfg;
    cfg.length_mode = LengthMode::exact(l);
    cfg.prune_covered = cfg.prune_fallback = false;
    const auto idx = build_index(st, oshr, cfg);
    for (NodeId v : st.internal_nodes()) {
      if (idx.entries(v).empty()) continue;
      CHECK(st.depth(v) >= l);
      CHECK(st.depth(st.parent(v)) < l);
    }
  }
}

TEST_CASE("random texts: soundness, order, dedup and disjoint special sets") {
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const auto body = random_text(seed * 31, 40 + seed * 13, 2 + static_cast<int>(seed % 3));
    const SuffixTree st(Text::with_sentinel(body));
    const OshrTree oshr(st);
    CAPTURE(body);
    for (auto cls : {ClassificationMode::DefinitionLiteral, ClassificationMode::FigureCaption, ClassificationMode::Union}) {
      const auto sn = detect_special_nodes(st, oshr, reference_leaf_contexts(st), reference_internal_nodes(st), cls);
      std::vector<NodeId> both;
      std::set_intersection(sn.hanadi.begin(), sn.hanadi.end(), sn.srivastava.begin(), sn.srivastava.end(),
                            std::back_inserter(both));
      CHECK(both.empty());

      BuildConfig cfg;
      cfg.classification = cls;
      const auto idx = build_index(st, oshr, cfg);
      const auto chk = check_index(st, oshr, idx);
      CHECK(chk.entry_violations == 0);
      CHECK(chk.base_suffix_violations == 0);
      CHECK(chk.unsorted_lists == 0);
      for (NodeId v : st.internal_nodes()) {
        std::set<std::tuple<NodeId, Pos, int>> seen;
        const auto host_label = st.label(v);
        for (const auto& e : idx.entries(v)) {
          CHECK(seen.insert({e.key, e.occ, static_cast<int>(e.origin)}).second);
          // Text-level soundness, restated without the index's helpers.
          REQUIRE(e.occ >= st.depth(e.key));
          const auto key_label = st.label(e.key);
          const auto at = static_cast<std::size_t>(e.occ - st.depth(e.key));
          CHECK(st.text().bytes().substr(at, key_label.size()) == key_label);
          CHECK(st.text().bytes().substr(static_cast<std::size_t>(e.occ), host_label.size()) == host_label);
        }
      }
    }
  }
}

}
