#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "otindex/text.hpp"

namespace otindex {

/// Dense node handle. The root is always node 0.
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr NodeId kRoot = 0;

struct WalkOutcome {
  Pos matched = 0;
  /// Node at or immediately below the point where matching stopped.
  NodeId locus_below = kRoot;
  /// True when matching stopped exactly on locus_below.
  bool exact_node = true;
  /// Symbol comparisons and child lookups performed.
  std::uint64_t comparisons = 0;
  std::uint64_t child_lookups = 0;
};

struct TreeStats {
  std::int64_t leaves = 0;          // includes the sentinel-only leaf
  std::int64_t internal_nodes = 0;  // includes the root
  std::map<Pos, std::int64_t> internal_by_depth;

  std::int64_t leaves_excluding_sentinel() const { return leaves - 1; }
  std::int64_t internal_excluding_root() const { return internal_nodes - 1; }
};

/// Suffix tree over a sentinel-terminated Text, built with Ukkonen's online
/// algorithm. Edges are (start, end) half-open ranges into the text. Children
/// are kept in ascending symbol order (sentinel first), which fixes the
/// left-to-right leaf order.
class SuffixTree {
 public:
  explicit SuffixTree(Text text);

  const Text& text() const noexcept { return text_; }
  NodeId node_count() const noexcept { return static_cast<NodeId>(start_.size()); }
  NodeId leaf_count() const noexcept { return text_.size(); }

  bool is_leaf(NodeId v) const noexcept { return suffix_[v] >= 0; }
  bool is_internal(NodeId v) const noexcept { return suffix_[v] < 0; }
  NodeId parent(NodeId v) const noexcept { return parent_[v]; }
  /// Suffix link of an internal node; link(root) == root.
  NodeId link(NodeId v) const noexcept { return link_[v]; }
  Pos depth(NodeId v) const noexcept { return depth_[v]; }
  Pos edge_start(NodeId v) const noexcept { return start_[v]; }
  Pos edge_end(NodeId v) const noexcept { return end_[v]; }
  Pos edge_length(NodeId v) const noexcept { return end_[v] - start_[v]; }
  /// Suffix index of a leaf, -1 for internal nodes.
  Pos suffix(NodeId v) const noexcept { return suffix_[v]; }

  NodeId first_child(NodeId v) const noexcept { return first_child_[v]; }
  NodeId next_sibling(NodeId v) const noexcept { return next_sibling_[v]; }
  NodeId child(NodeId v, char c) const noexcept;

  /// Left-to-right leaf order and subtree leaf intervals.
  Pos leaf_rank(NodeId leaf) const noexcept { return st_left_[leaf]; }
  Pos st_left(NodeId v) const noexcept { return st_left_[v]; }
  Pos st_right(NodeId v) const noexcept { return st_right_[v]; }
  NodeId leaf_at_rank(Pos rank) const noexcept { return leaf_by_rank_[static_cast<std::size_t>(rank)]; }
  /// True when v is ancestor or lies below it.
  bool in_subtree(NodeId v, NodeId ancestor) const noexcept {
    return st_left_[ancestor] <= st_left_[v] && st_right_[v] <= st_right_[ancestor];
  }

  /// Throws Error{OutOfRange} unless 0 <= s <= n.
  NodeId leaf_of_suffix(Pos s) const;
  /// Unchecked variant for hot paths.
  NodeId leaf_of_suffix_unchecked(Pos s) const noexcept {
    return leaf_of_suffix_[static_cast<std::size_t>(s)];
  }
  /// Suffix index of the leftmost leaf under v.
  Pos leftmost_suffix(NodeId v) const noexcept { return suffix_[leaf_at_rank(st_left_[v])]; }

  /// Internal nodes (root included) in depth-first left-to-right preorder.
  std::span<const NodeId> internal_nodes() const noexcept { return internal_; }

  /// Path label of a node, sentinel rendered as the raw byte 0.
  std::string_view label(NodeId v) const noexcept;

  WalkOutcome walk_from(NodeId start, std::string_view pattern) const;
  WalkOutcome walk(std::string_view pattern) const { return walk_from(kRoot, pattern); }

  TreeStats stats() const;

 private:
  void build();
  void finalize();
  NodeId new_node(Pos start, Pos end, NodeId parent);
  void add_child(NodeId parent, NodeId c);
  void replace_child(NodeId parent, NodeId old_child, NodeId new_child);

  Text text_;
  std::vector<Pos> start_, end_, depth_, suffix_;
  std::vector<NodeId> parent_, link_, first_child_, next_sibling_;
  std::vector<Pos> st_left_, st_right_;
  std::vector<NodeId> leaf_by_rank_, leaf_of_suffix_, internal_;
};

}  // namespace otindex
