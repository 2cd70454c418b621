#include <doctest.h>

#include <set>

#include "otindex/bench.hpp"
#include "otindex/genome.hpp"
#include "support.hpp"

using namespace otindex;
using namespace otindex::testing;

TEST_SUITE("bench_cli") {

TEST_CASE("protocol positions") {
  const auto p12 = protocol_positions(100000, 12, 100);
  REQUIRE(p12.size() >= 3);
  CHECK(p12[0] == 120);
  CHECK(p12[1] == 240);
  CHECK(p12[2] == 360);
  CHECK(protocol_positions(1000, 50, 100) == std::vector<Pos>{500});
  CHECK(protocol_positions(100000000, 7, 100).size() == 100);
  CHECK(protocol_positions(10, 7, 100).empty());
}

TEST_CASE("skip rule drops patterns that end at a leaf") {
  const auto body = preprocess_fasta(synthetic_genome_fasta({.seed = 3, .length = 40000}));
  const SuffixTree st(Text::with_sentinel(body));
  const auto pats = extract_patterns(st);
  std::size_t positions = 0;
  for (Pos len : kProtocolLengths) positions += protocol_positions(st.text().n(), len, 100).size();
  CHECK(pats.size() < positions);
  for (const auto& p : pats) {
    CHECK(body.substr(static_cast<std::size_t>(p.position), static_cast<std::size_t>(p.length)) == p.text);
    CHECK(p.position == 10 * p.ordinal * p.length);
    CHECK(naive_occurrences(body, p.text).size() >= 2);
  }
}

TEST_CASE("starting node sampling") {
  const SuffixTree st(Text::with_sentinel(random_text(4, 5000, 4)));
  for (Pos d : {1, 3, 6, 9}) {
    const auto all = internal_nodes_at_depth(st, d);
    for (NodeId v : all) CHECK(st.depth(v) == d);
    const auto s = sample_starting_nodes(st, d, 50, 7);
    CHECK(s.size() == std::min<std::size_t>(50, all.size()));
    CHECK(s == sample_starting_nodes(st, d, 50, 7));
    CHECK(std::set<NodeId>(s.begin(), s.end()).size() == s.size());
    if (all.size() <= 50) CHECK(s == all);
  }
  CHECK(sample_starting_nodes(st, 400, 10, 1).empty());
}

TEST_CASE("complexity counts internal children") {
  const SuffixTree st(Text::with_sentinel("BANANA"));
  const std::vector<NodeId> root{kRoot};
  CHECK(complexity(st, root) == 2);  // "A" and "NA"
  const std::vector<NodeId> a{node_of(st, "A")};
  CHECK(complexity(st, a) == 1);
}

TEST_CASE("bench on a genome-like text") {
  const auto body = preprocess_fasta(synthetic_genome_fasta({.seed = 9, .length = 60000}));
  const SuffixTree st(Text::with_sentinel(body));
  const OshrTree oshr(st);
  const auto idx = build_index(st, oshr, BuildConfig{});
  const OtSearcher s(st, oshr, idx);
  BenchOptions opts;
  opts.cap = 100;
  opts.max_depth = 8;
  const auto rep = run_bench(s, opts);
  REQUIRE(rep.rows.size() == 8);
  CHECK(rep.probe_bound_violations == 0);
  const auto tsv = rep.to_tsv();
  CHECK(tsv.substr(0, tsv.find('\n')) == BenchReport::kTsvHeader);
  for (const auto& r : rep.rows) CHECK(r.starting_nodes <= 100);
  // Count columns are deterministic.
  const auto again = run_bench(s, opts);
  for (std::size_t k = 0; k < rep.rows.size(); ++k) {
    CHECK(rep.rows[k].ot_probes == again.rows[k].ot_probes);
    CHECK(rep.rows[k].walk_comparisons == again.rows[k].walk_comparisons);
    CHECK(rep.rows[k].complexity == again.rows[k].complexity);
  }
}

TEST_CASE("bench needs an all-lengths index") {
  const SuffixTree st(Text::with_sentinel(random_text(2, 500, 4)));
  const OshrTree oshr(st);
  BuildConfig cfg;
  cfg.length_mode = LengthMode::exact(7);
  const auto idx = build_index(st, oshr, cfg);
  const OtSearcher s(st, oshr, idx);
  CHECK_THROWS(run_bench(s));
}

TEST_CASE("synthetic genome is deterministic FASTA") {
  const auto a = synthetic_genome_fasta({.seed = 5, .length = 5000});
  CHECK(a == synthetic_genome_fasta({.seed = 5, .length = 5000}));
  CHECK(a != synthetic_genome_fasta({.seed = 6, .length = 5000}));
  CHECK(a[0] == '>');
  const auto body = preprocess_fasta(a);
  CHECK(body.size() == 5000);
  for (char c : body) CHECK(std::string("ACGTN").find(c) != std::string::npos);
}

}
