// Serial vs OpenMP batch kernels, OT index vs walk baseline, on a synthetic
// genome. Queries are (extracted pattern, sampled depth-d node) pairs.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "otindex/bench.hpp"
#include "otindex/genome.hpp"

using namespace otindex;

namespace {

struct Fixture {
  std::unique_ptr<SuffixTree> st;
  std::unique_ptr<OshrTree> oshr;
  std::unique_ptr<OtIndex> idx;
  std::unique_ptr<OtSearcher> searcher;
  std::vector<Query> queries;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    Fixture x;
    x.st = std::make_unique<SuffixTree>(
        Text::with_sentinel(preprocess_fasta(synthetic_genome_fasta({.seed = 42, .length = 200000}))));
    x.oshr = std::make_unique<OshrTree>(*x.st);
    x.idx = std::make_unique<OtIndex>(build_index(*x.st, *x.oshr, BuildConfig{}));
    x.searcher = std::make_unique<OtSearcher>(*x.st, *x.oshr, *x.idx);
    const auto pats = extract_patterns(*x.st);
    for (Pos d : {2, 5, 10}) {
      for (NodeId v : sample_starting_nodes(*x.st, d, 200, 1))
        for (const auto& p : pats) x.queries.push_back({p.text, v});
    }
    return x;
  }();
  return f;
}

void BM_ot_serial(benchmark::State& s) {
  const auto& f = fixture();
  for (auto _ : s) benchmark::DoNotOptimize(search_batch_serial(*f.searcher, f.queries));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(f.queries.size()));
}

void BM_ot_parallel(benchmark::State& s) {
  const auto& f = fixture();
  for (auto _ : s) benchmark::DoNotOptimize(search_batch_parallel(*f.searcher, f.queries));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(f.queries.size()));
}

void BM_walk_serial(benchmark::State& s) {
  const auto& f = fixture();
  for (auto _ : s) benchmark::DoNotOptimize(walk_batch_serial(*f.st, f.queries));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(f.queries.size()));
}

void BM_walk_parallel(benchmark::State& s) {
  const auto& f = fixture();
  for (auto _ : s) benchmark::DoNotOptimize(walk_batch_parallel(*f.st, f.queries));
  s.SetItemsProcessed(s.iterations() * static_cast<std::int64_t>(f.queries.size()));
}

}  // namespace

BENCHMARK(BM_ot_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ot_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_walk_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_walk_parallel)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
