#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "otindex/oshr.hpp"
#include "otindex/suffix_tree.hpp"

namespace otindex {

enum class Origin : std::uint8_t { BasePath = 0, Hanadi = 1, Srivastava = 2 };
inline constexpr int kOriginCount = 3;
const char* origin_name(Origin o) noexcept;

/// Which skipped nodes of a reference context are indexed, and under which
/// sub-index. Srivastava nodes (OSHR leaf with a reference internal node) are
/// the same in every mode; the modes differ in what counts as a Hanadi node:
///   DefinitionLiteral  OSHR internal nodes
///   FigureCaption      OSHR leaves without a reference internal node
///   Union              both of the above, so every skipped node is indexed
enum class ClassificationMode : std::uint8_t { DefinitionLiteral = 0, FigureCaption = 1, Union = 2 };

/// Which node keys a Hanadi/Srivastava entry.
///   TopNode     the visited node v whose suffix link tops the indexed path
///   ChainStart  the deepest node u in the OSHR subtree of v whose occurrence
///               chain leads to the same (link(v), leaf x+1) pair, i.e. the
///               node reached by following reversed suffix links from v
///               together with the reference leaf for as long as the leaf
///               stays inside the node's subtree
enum class SpecialKeying : std::uint8_t { TopNode = 0, ChainStart = 1 };

struct LengthMode {
  enum class Kind : std::uint8_t { All = 0, Exact = 1, AtMost = 2, Range = 3 };
  Kind kind = Kind::All;
  Pos lo = 1;
  Pos hi = std::numeric_limits<Pos>::max();

  static LengthMode all() { return {}; }
  static LengthMode exact(Pos l);
  static LengthMode at_most(Pos l);
  static LengthMode range(Pos lo, Pos hi);

  bool admits(Pos length) const noexcept { return lo <= length && length <= hi; }
  std::string describe() const;
  friend bool operator==(const LengthMode&, const LengthMode&) = default;
};

struct BuildConfig {
  LengthMode length_mode;
  ClassificationMode classification = ClassificationMode::Union;
  SpecialKeying keying = SpecialKeying::ChainStart;
  bool exclusion_rule = true;
  /// Drop entries whose key has an OSHR descendant stored at the same host.
  bool prune_covered = true;
  /// Drop entries the base-suffix fallback already answers. Searching such an
  /// index with the fallback disabled loses completeness.
  bool prune_fallback = true;

  std::string describe() const;
  friend bool operator==(const BuildConfig&, const BuildConfig&) = default;
};

ClassificationMode parse_classification(const std::string& s);
SpecialKeying parse_keying(const std::string& s);
LengthMode parse_length_mode(const std::string& s);
const char* classification_name(ClassificationMode m) noexcept;
const char* keying_name(SpecialKeying k) noexcept;

struct OtEntry {
  Pos left_ot = -1;
  Pos right_ot = -1;
  NodeId key = kNoNode;
  /// Absolute text position: Text[occ, occ + depth(host)) spells the host label.
  Pos occ = -1;
  Origin origin = Origin::BasePath;
  /// Bottom node of the indexed path (base path bottom or Hanadi/Srivastava node).
  NodeId bottom = kNoNode;

  friend bool operator==(const OtEntry&, const OtEntry&) = default;
};

struct SpecialRecord {
  NodeId node = kNoNode;
  NodeId reference_leaf = kNoNode;
  Pos suffix_x = -1;
  Origin kind = Origin::Hanadi;
  friend bool operator==(const SpecialRecord&, const SpecialRecord&) = default;
};

/// Hanadi and Srivastava nodes with their reference leaves, in context order.
struct SpecialNodes {
  std::vector<SpecialRecord> records;
  std::vector<NodeId> hanadi;      // sorted, unique
  std::vector<NodeId> srivastava;  // sorted, unique

  bool is_hanadi(NodeId v) const;
  bool is_srivastava(NodeId v) const;
  /// Records whose reference leaf is the given leaf.
  std::vector<SpecialRecord> referenced_by(NodeId leaf) const;
};

SpecialNodes detect_special_nodes(const SuffixTree& st, const OshrTree& oshr,
                                  std::span<const ReferenceContext> contexts,
                                  const NodeLists<NodeId>& ref_internal, ClassificationMode mode);

/// Nodes on the root walk of `alpha` with string depth in (0, |alpha|].
/// Throws Error{Internal} when alpha does not occur in the text.
std::vector<NodeId> last_extent_path(const SuffixTree& st, std::string_view alpha);
/// Root walk of label(bottom) with the first depth(top) symbols removed.
std::vector<NodeId> last_extent_path(const SuffixTree& st, NodeId top, NodeId bottom);

/// Internal nodes b strictly below v such that (v, b) is not the suffix-link
/// image of a path (u, b') with link(u) = v and link(b') = b.
std::vector<NodeId> enumerate_base_paths(const SuffixTree& st, const OshrTree& oshr, NodeId v);

struct IndexStats {
  std::array<std::int64_t, kOriginCount> inserted{};  // before per-host dedup
  std::array<std::int64_t, kOriginCount> stored{};    // after dedup
  std::int64_t reference_contexts = 0;
  std::int64_t special_paths = 0;
  std::int64_t base_paths = 0;
  std::int64_t base_paths_indexed = 0;
  std::int64_t base_paths_already_indexed = 0;
  std::int64_t base_paths_excluded = 0;
  std::int64_t duplicate_insertions = 0;
  std::int64_t pruned = 0;
  std::int64_t hosts = 0;
  std::int64_t max_list = 0;
  std::int64_t base_suffixes = 0;
  std::int64_t max_base_suffixes_per_node = 0;
  std::int64_t sigma_bound_violations = 0;
  std::int64_t hanadi_nodes = 0;
  std::int64_t srivastava_nodes = 0;

  std::int64_t total_stored() const { return stored[0] + stored[1] + stored[2]; }
  std::int64_t total_inserted() const { return inserted[0] + inserted[1] + inserted[2]; }
  friend bool operator==(const IndexStats&, const IndexStats&) = default;
};

/// The merged, per-host sorted entry lists plus per-node base suffixes.
class OtIndex {
 public:
  OtIndex() = default;
  OtIndex(BuildConfig config, std::uint64_t text_hash, NodeId node_count, NodeLists<OtEntry> lists,
          NodeLists<BaseSuffix> base_suffixes, IndexStats stats)
      : config_(config),
        text_hash_(text_hash),
        node_count_(node_count),
        lists_(std::move(lists)),
        base_suffixes_(std::move(base_suffixes)),
        stats_(stats) {}

  const BuildConfig& config() const noexcept { return config_; }
  std::uint64_t text_hash() const noexcept { return text_hash_; }
  NodeId node_count() const noexcept { return node_count_; }
  std::span<const OtEntry> entries(NodeId host) const noexcept { return lists_.at(host); }
  std::span<const BaseSuffix> base_suffixes(NodeId v) const noexcept { return base_suffixes_.at(v); }
  const NodeLists<OtEntry>& lists() const noexcept { return lists_; }
  const NodeLists<BaseSuffix>& base_suffix_lists() const noexcept { return base_suffixes_; }
  const IndexStats& stats() const noexcept { return stats_; }

  friend bool operator==(const OtIndex&, const OtIndex&) = default;

 private:
  BuildConfig config_;
  std::uint64_t text_hash_ = 0;
  NodeId node_count_ = 0;
  NodeLists<OtEntry> lists_;
  NodeLists<BaseSuffix> base_suffixes_;
  IndexStats stats_;
};

/// Accumulates raw entries; build_index drives it. Exposed for tests.
class IndexBuilder {
 public:
  struct Placed {
    NodeId host = kNoNode;
    OtEntry entry;
  };

  IndexBuilder(const SuffixTree& st, const OshrTree& oshr, const BuildConfig& cfg);

  /// Indexes the path (link(v), h) for reference leaf x under v, keyed by
  /// `key` (v itself, or the start of v's occurrence chain). Returns the
  /// number of entries placed; 0 when link(v) is not a proper ancestor of h.
  std::int64_t index_special(NodeId v, NodeId key, Pos suffix_x, NodeId h, Origin origin);

  /// Indexes base path (v, b) unless it was already indexed as a special
  /// path or the exclusion rule applies. Returns entries placed.
  std::int64_t index_base_path(NodeId v, NodeId b);

  bool already_indexed(NodeId top, NodeId bottom) const;
  bool excluded(NodeId v, NodeId b) const;

  bool fallback_covers(const NodeLists<BaseSuffix>& base, NodeId host, NodeId key) const;
  std::span<const Placed> placed() const noexcept { return placed_; }
  IndexStats& stats() noexcept { return stats_; }

  /// Sorts and dedups the host lists and attaches base suffixes.
  OtIndex finish(NodeLists<BaseSuffix> base_suffixes, int sigma) &&;

 private:
  std::int64_t place(std::string_view alpha, Pos rel_low, Pos rel_high, const OtEntry& entry);

  const SuffixTree& st_;
  const OshrTree& oshr_;
  BuildConfig cfg_;
  NodeLists<NodeId> ref_internal_;
  std::unordered_set<std::uint64_t> indexed_paths_;
  std::vector<Placed> placed_;
  IndexStats stats_;

  friend OtIndex build_index(const SuffixTree&, const OshrTree&, const BuildConfig&);
};

OtIndex build_index(const SuffixTree& st, const OshrTree& oshr, const BuildConfig& cfg);

}  // namespace otindex
