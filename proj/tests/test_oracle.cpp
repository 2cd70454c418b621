#include <doctest.h>

#include <algorithm>

#include "otindex/oracle.hpp"
#include "support.hpp"

using namespace otindex;
using namespace otindex::testing;

TEST_SUITE("verify_oracle") {

TEST_CASE("ground truth matches a direct scan") {
  const auto body = random_text(5, 90, 3);
  const SuffixTree st(Text::with_sentinel(body));
  const GroundTruth truth(st, 8);
  CHECK_FALSE(truth.patterns().empty());
  CHECK(std::is_sorted(truth.patterns().begin(), truth.patterns().end()));
  for (NodeId i : st.internal_nodes()) {
    const std::string label(st.label(i));
    for (const auto& p : truth.patterns()) {
      const auto occ = naive_occurrences(body, label + p);
      const auto got = truth.occurrence(i, p);
      CHECK(got.has_value() == !occ.empty());
      if (got) CHECK(*got == occ.front());
    }
  }
}

TEST_CASE("ground truth refuses large texts") {
  const SuffixTree st(Text::with_sentinel(random_text(1, 600, 2)));
  CHECK_THROWS(GroundTruth(st));
}

TEST_CASE("corpus generation is deterministic and within bounds") {
  for (std::uint64_t k = 0; k < 50; ++k) {
    const auto t = random_corpus_text(3, k);
    CHECK(t == random_corpus_text(3, k));
    CHECK(t.size() >= 16);
    CHECK(t.size() <= 512);
    std::string sorted = t;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    CHECK(sorted.size() <= 4);
  }
  AuditOptions o;
  o.texts = 3;
  const auto corpus = audit_corpus(o);
  REQUIRE(corpus.size() == 5);
  CHECK(corpus[0] == "BANANA");
  CHECK(corpus[1] == "MISSISSIPPI");
}

TEST_CASE("default variant is sound and complete on a small corpus") {
  AuditOptions o;
  o.texts = 8;
  o.max_n = 160;
  const auto rep = audit(o, {audit_default()});
  REQUIRE(rep.tallies.size() == 1);
  const auto& t = rep.tallies[0];
  CHECK(t.spurious == 0);
  CHECK(t.misses == 0);
  CHECK(t.baseline_disagreements == 0);
  CHECK(t.witness_failures == 0);
  CHECK(t.entry_violations == 0);
  CHECK(t.probe_bound_violations == 0);
  CHECK(rep.all_sound());
  CHECK(rep.first_complete() == std::optional<std::size_t>(0));
}

TEST_CASE("literal variant misses and the miss is minimized") {
  AuditVariant lit = audit_default();
  lit.config.classification = ClassificationMode::DefinitionLiteral;
  lit.config.keying = SpecialKeying::TopNode;
  AuditOptions o;
  o.texts = 0;
  const auto rep = audit(o, {lit});
  CHECK(rep.tallies[0].spurious == 0);
  CHECK(rep.tallies[0].misses > 0);
  REQUIRE_FALSE(rep.tallies[0].counterexamples.empty());
  const auto m = minimize_counterexample("MISSISSIPPI", lit);
  REQUIRE(m.has_value());
  CHECK(m->text.size() <= 11);
  CHECK_FALSE(m->spurious);
  // The minimized pair is a genuine miss on its own text.
  const SuffixTree st(Text::with_sentinel(m->text));
  CHECK_FALSE(naive_occurrences(m->text, m->node_label + m->pattern).empty());
}

TEST_CASE("audit report formats") {
  AuditOptions o;
  o.texts = 2;
  o.max_n = 64;
  const auto rep = audit(o, audit_matrix_all());
  const auto tsv = rep.to_tsv();
  CHECK(tsv.rfind("variant\ttexts\tpairs\tspurious\tmisses", 0) == 0);
  CHECK(std::count(tsv.begin(), tsv.end(), '\n') == static_cast<long>(rep.variants.size()) + 1);
  CHECK(rep.summary().find("complete") != std::string::npos);
}

}
