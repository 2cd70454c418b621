#include <doctest.h>

#include <cmath>

#include "otindex/error.hpp"
#include "otindex/ot_query.hpp"
#include "support.hpp"

using namespace otindex;
using namespace otindex::testing;

TEST_SUITE("ot_query") {

TEST_CASE("BANANA queries under A") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const OshrTree oshr(st);
  const auto idx = build_index(st, oshr, BuildConfig{});
  const OtSearcher s(st, oshr, idx);
  const NodeId a = node_of(st, "A");

  const Query na{"NA", a};
  const auto r = s.search(na);
  CHECK(r.found);
  CHECK(verify_witness(st, na, r));
  CHECK(walk_search_baseline(st, na).found);

  CHECK_FALSE(s.search({"B", a}).found);
  const auto x = s.search({"X", a});
  CHECK_FALSE(x.found);
  CHECK(x.route == Route::NotInText);

  // BAN ends at a leaf from the root, so the leaf case decides.
  const auto ban = s.search({"BAN", a});
  CHECK_FALSE(ban.found);
  CHECK(ban.route == Route::LeafCase);

  const auto nan = s.search({"NAN", a});
  CHECK(nan.found);
  CHECK(nan.route == Route::LeafCase);
  CHECK(*nan.witness == 1);
}

TEST_CASE("root and empty patterns are trivial") {
  const SuffixTree st(Text::with_sentinel("MISSISSIPPI"));
  const OshrTree oshr(st);
  const auto idx = build_index(st, oshr, BuildConfig{});
  const OtSearcher s(st, oshr, idx);
  const auto r = s.search({"SSI", kRoot});
  CHECK(r.route == Route::RootTrivial);
  CHECK(r.found);
  CHECK(verify_witness(st, {"SSI", kRoot}, r));
  const NodeId issi = node_of(st, "ISSI");
  const auto e = s.search({"", issi});
  CHECK(e.found);
  CHECK(e.route == Route::RootTrivial);
}

TEST_CASE("argument errors") {
  const SuffixTree st(Text::with_sentinel("MISSISSIPPI"));
  const OshrTree oshr(st);
  const auto idx = build_index(st, oshr, BuildConfig{});
  const OtSearcher s(st, oshr, idx);
  CHECK_THROWS_AS(s.search({"S", st.leaf_of_suffix(0)}), Error);
  CHECK_THROWS_AS(s.search({"S", st.node_count()}), Error);
  CHECK_THROWS_AS(walk_search_baseline(st, {"S", st.leaf_of_suffix(3)}), Error);

  BuildConfig exact;
  exact.length_mode = LengthMode::exact(3);
  const auto idx3 = build_index(st, oshr, exact);
  const OtSearcher s3(st, oshr, idx3);
  CHECK_NOTHROW(s3.search({"SSI", node_of(st, "I")}));
  try {
    s3.search({"SS", node_of(st, "I")});
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::InvalidArgument);
  }
}

TEST_CASE("an index for another text is rejected") {
  const SuffixTree st(Text::with_sentinel("MISSISSIPPI"));
  const SuffixTree other(Text::with_sentinel("MISSISSIPPA"));
  const OshrTree oshr(st), oshr2(other);
  const auto idx = build_index(other, oshr2, BuildConfig{});
  try {
    OtSearcher s(st, oshr, idx);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::HashMismatch);
  }
}

// Exhaustive differential check: every internal node against every pattern
// up to length 6 over the alphabet, answered by a naive scan for label(i) + p.
TEST_CASE("random texts: default index agrees with a naive scan") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const int sigma = 2 + static_cast<int>(seed % 3);
    const auto body = random_text(seed * 1009, 30 + seed * 17, sigma);
    const SuffixTree st(Text::with_sentinel(body));
    const OshrTree oshr(st);
    const auto idx = build_index(st, oshr, BuildConfig{});
    const OtSearcher s(st, oshr, idx);
    CAPTURE(body);

    std::vector<std::string> patterns{""};
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      if (patterns[k].size() >= 6) continue;
      for (int c = 0; c < sigma; ++c) patterns.push_back(patterns[k] + static_cast<char>('A' + c));
    }
    for (NodeId i : st.internal_nodes()) {
      const auto label = std::string(st.label(i));
      for (const auto& p : patterns) {
        if (p.empty()) continue;
        const bool truth = !naive_occurrences(body, label + p).empty();
        const Query q{p, i};
        const auto r = s.search(q);
        CHECK(r.found == truth);
        if (r.found) CHECK(verify_witness(st, q, r));
        const auto w = walk_search_baseline(st, q);
        CHECK(w.found == truth);
        if (r.route == Route::BinarySearch || r.probes > 0) {
          const auto m = idx.entries(st.walk(p).locus_below).size();
          const auto bound = m <= 1 ? 1u : static_cast<unsigned>(std::ceil(std::log2(static_cast<double>(m)))) + 1;
          CHECK(r.probes <= bound);
        }
      }
    }
  }
}

}
