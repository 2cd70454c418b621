#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "otindex/ot_query.hpp"

namespace otindex {

inline constexpr Pos kProtocolLengths[] = {7, 10, 12, 15, 20, 25, 30, 35, 40, 50};

struct ExtractedPattern {
  Pos length = 0;
  int ordinal = 0;  // i, starting at 1
  Pos position = 0;
  std::string text;
};

struct PatternProtocol {
  std::vector<Pos> lengths{std::begin(kProtocolLengths), std::end(kProtocolLengths)};
  int per_length = 100;
};

/// Pattern i of length L is Text[10 i L, 10 i L + L), for i = 1.. while it fits.
/// Patterns whose root walk ends at a leaf are dropped.
std::vector<ExtractedPattern> extract_patterns(const SuffixTree& st, const PatternProtocol& protocol = {});
/// Extraction positions before the skip rule.
std::vector<Pos> protocol_positions(Pos text_length, Pos length, int per_length);

/// Internal nodes at string depth d, ascending by id.
std::vector<NodeId> internal_nodes_at_depth(const SuffixTree& st, Pos d);
/// Up to `cap` nodes at string depth d; a seeded partial Fisher-Yates shuffle
/// picks the sample when there are more. Result is ascending.
std::vector<NodeId> sample_starting_nodes(const SuffixTree& st, Pos d, std::size_t cap, std::uint64_t seed);

/// Internal children of the given nodes, summed.
std::int64_t complexity(const SuffixTree& st, std::span<const NodeId> nodes);

struct BenchRow {
  Pos depth = 0;
  std::int64_t nodes_at_depth = 0;
  std::int64_t patterns = 0;
  std::int64_t starting_nodes = 0;
  std::int64_t complexity = 0;
  double ot_time_s = 0;
  double walk_time_s = 0;
  std::int64_t ot_probes = 0;
  std::int64_t walk_comparisons = 0;
  // not emitted in the TSV
  std::int64_t pairs = 0;
  std::int64_t found = 0;
  std::int64_t probe_bound_violations = 0;
  std::uint32_t max_probes = 0;
};

struct BenchOptions {
  std::uint64_t seed = 1;
  std::size_t cap = 1000;
  Pos min_depth = 1;
  Pos max_depth = 20;
  PatternProtocol protocol;
  int warmup_pairs = 2000;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::int64_t patterns_extracted = 0;
  std::int64_t patterns_skipped = 0;
  std::int64_t pairs = 0;
  std::int64_t probe_bound_violations = 0;
  std::int64_t max_list = 0;
  /// Pearson correlation of host list size against string depth over
  /// non-root internal nodes.
  double list_size_depth_correlation = 0;
  /// Coefficient of variation of ot_time_s over depths >= 5.
  double ot_time_cv_depth5 = 0;

  static constexpr const char* kTsvHeader =
      "depth\tnodes_at_depth\tpatterns\tstarting_nodes\tcomplexity\tot_time_s\twalk_time_s\tot_probes\twalk_comparisons";
  std::string to_tsv() const;
  std::string summary() const;
};

/// Runs every (pattern, starting node) pair through the OT index and the walk
/// baseline, timing each method on one thread. Throws Error{Internal} with a
/// counterexample when the two disagree on any pair.
BenchReport run_bench(const OtSearcher& searcher, const BenchOptions& opts = {});

/// Answers a batch of queries; the parallel form splits the batch over
/// OpenMP threads and returns the same results in the same order.
std::vector<QueryResult> search_batch_serial(const OtSearcher& searcher, std::span<const Query> queries);
std::vector<QueryResult> search_batch_parallel(const OtSearcher& searcher, std::span<const Query> queries);
std::vector<QueryResult> walk_batch_serial(const SuffixTree& st, std::span<const Query> queries);
std::vector<QueryResult> walk_batch_parallel(const SuffixTree& st, std::span<const Query> queries);

}  // namespace otindex
