#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "otindex/ot_build.hpp"

namespace otindex {

struct Query {
  std::string_view pattern;
  NodeId start_node = kRoot;
};

enum class Route : std::uint8_t { NotInText, RootTrivial, LeafCase, BinarySearch, BaseSuffix, Walk };
const char* route_name(Route r) noexcept;

struct QueryResult {
  bool found = false;
  /// Suffix index j with leaf j under the start node and p at j + depth(start).
  std::optional<Pos> witness;
  Route route = Route::NotInText;
  std::uint32_t probes = 0;          // binary-search probes
  std::uint32_t base_checks = 0;     // base suffixes inspected
  std::uint64_t comparisons = 0;     // symbol comparisons (walks)
  std::uint64_t child_lookups = 0;
  /// Sub-index of the entry that answered a binary-search hit.
  std::optional<Origin> origin;
  /// The base-suffix check succeeded after a nonempty host list did not.
  bool fallback_hit = false;
};

/// True when `r` carries a witness that checks out against the text.
bool verify_witness(const SuffixTree& st, const Query& q, const QueryResult& r);

struct SearchOptions {
  /// Run the base-suffix check when the host list is nonempty but has no hit.
  bool base_suffix_fallback = true;
};

/// Answers "does p occur immediately under internal node i" from the OT index
/// in O(|p|) for the root walk plus O(log m + sigma) for the lookup.
class OtSearcher {
 public:
  OtSearcher(const SuffixTree& st, const OshrTree& oshr, const OtIndex& idx, SearchOptions opts = {});

  QueryResult search(const Query& q) const;
  /// Same query with the root walk already done (several start nodes share it).
  QueryResult search_located(const Query& q, const WalkOutcome& root_walk) const;

  WalkOutcome locate_from_root(std::string_view pattern) const { return st_.walk(pattern); }
  QueryResult query_leaf_case(Pos z, NodeId i) const;
  QueryResult query_base_suffixes(NodeId host, NodeId i) const;
  QueryResult query_binary_search(NodeId host, NodeId i) const;

  const SuffixTree& tree() const noexcept { return st_; }
  const OtIndex& index() const noexcept { return idx_; }

 private:
  void check(const Query& q) const;

  const SuffixTree& st_;
  const OshrTree& oshr_;
  const OtIndex& idx_;
  SearchOptions opts_;
};

/// Reference answer: walk p down from i symbol by symbol.
QueryResult walk_search_baseline(const SuffixTree& st, const Query& q);

}  // namespace otindex
