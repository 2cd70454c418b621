#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "otindex/ot_query.hpp"

namespace otindex {

/// Naive answers for "does label(i) + p occur" on a small text. Occurrences of
/// every internal node label are found by scanning the text directly, so the
/// answers do not depend on the tree beyond which labels are asked about.
class GroundTruth {
 public:
  static constexpr Pos kDefaultCap = 512;

  /// Throws Error{OutOfRange} when n exceeds `cap`.
  GroundTruth(const SuffixTree& st, Pos max_len = 16, Pos cap = kDefaultCap);

  /// Candidate patterns: every node label (sentinel stripped), every label
  /// prefix up to max_len, every label extended by one alphabet symbol, and
  /// every substring up to length 2 * max_len when n <= 128. Sorted, unique.
  const std::vector<std::string>& patterns() const noexcept { return patterns_; }

  /// First text position of label(i) + p, if any.
  std::optional<Pos> occurrence(NodeId i, std::string_view p) const;
  bool occurs(NodeId i, std::string_view p) const { return occurrence(i, p).has_value(); }

 private:
  const SuffixTree& st_;
  std::vector<std::string> patterns_;
  std::vector<std::vector<Pos>> label_occ_;  // indexed by NodeId, internal nodes only
};

/// Random text over 'A'.. for the audit corpus: std::mt19937_64 seeded with
/// seed ^ (0x9E3779B97F4A7C15 * (index + 1)); sigma = 2 + r % 3, then
/// n = min_n + r % (max_n - min_n + 1), then one symbol 'A' + r % sigma each.
std::string random_corpus_text(std::uint64_t seed, std::uint64_t index, Pos min_n = 16, Pos max_n = 512);

struct AuditVariant {
  BuildConfig config;
  SearchOptions search;
  std::string describe() const;
};

/// Configuration matrix: every classification x keying with the exclusion
/// rule on, plus the default configuration with the exclusion rule off and
/// with the base-suffix fallback off.
std::vector<AuditVariant> audit_matrix_all();
AuditVariant audit_default();

struct Counterexample {
  std::string text;  // body, without sentinel
  std::string pattern;
  std::string node_label;
  bool spurious = false;  // index yes, truth no; otherwise a completeness miss
  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

struct AuditTally {
  std::int64_t texts = 0;
  std::int64_t pairs = 0;
  std::int64_t spurious = 0;
  std::int64_t misses = 0;
  std::int64_t baseline_disagreements = 0;
  std::int64_t witness_failures = 0;
  std::int64_t entry_violations = 0;
  std::int64_t base_suffix_violations = 0;
  std::int64_t unsorted_lists = 0;
  std::int64_t probe_bound_violations = 0;
  std::int64_t sigma_bound_violations = 0;
  std::int64_t size_bound_violations = 0;  // total entries > 2 * sigma * n
  std::int64_t fallback_hits = 0;
  std::int64_t entries = 0;
  std::int64_t symbols = 0;
  std::array<std::int64_t, 6> found_by_route{};
  std::array<std::int64_t, kOriginCount> found_by_origin{};
  std::array<std::int64_t, kOriginCount> stored_by_origin{};
  std::vector<Counterexample> counterexamples;  // capped

  void merge(const AuditTally& other);
  bool sound() const {
    return spurious == 0 && witness_failures == 0 && entry_violations == 0 && base_suffix_violations == 0;
  }
  friend bool operator==(const AuditTally&, const AuditTally&) = default;
};

struct AuditReport {
  std::vector<AuditVariant> variants;
  std::vector<AuditTally> tallies;  // parallel to variants

  bool all_sound() const;
  /// Index of the first variant with zero misses, if any.
  std::optional<std::size_t> first_complete() const;
  std::string to_tsv() const;
  std::string summary() const;
};

struct IndexCheck {
  std::int64_t entry_violations = 0;
  std::int64_t base_suffix_violations = 0;
  std::int64_t unsorted_lists = 0;
};
/// Text-level soundness of every stored entry and base suffix, and host-list order.
IndexCheck check_index(const SuffixTree& st, const OshrTree& oshr, const OtIndex& idx);

/// Audits one text under one variant against `truth`.
AuditTally audit_text(const SuffixTree& st, const GroundTruth& truth, const AuditVariant& variant,
                      std::size_t max_counterexamples = 4);

struct AuditOptions {
  std::uint64_t seed = 1;
  std::int64_t texts = 200;
  Pos min_n = 16;
  Pos max_n = 512;
  bool include_fixtures = true;  // BANANA and MISSISSIPPI
  bool parallel = true;
  bool minimize = true;
  std::size_t max_counterexamples = 4;
};

/// Corpus bodies (without sentinel) in audit order.
std::vector<std::string> audit_corpus(const AuditOptions& opts);
AuditReport audit(const AuditOptions& opts, const std::vector<AuditVariant>& variants);

/// Shortest text prefix (by bisection on length) on which the variant still
/// fails, with one failing pair on it.
std::optional<Counterexample> minimize_counterexample(const std::string& body, const AuditVariant& variant);

}  // namespace otindex
