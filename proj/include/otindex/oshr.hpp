#pragma once

#include <span>
#include <vector>

#include "otindex/suffix_tree.hpp"

namespace otindex {

struct OtInterval {
  Pos left = -1;
  Pos right = -1;
  friend bool operator==(const OtInterval&, const OtInterval&) = default;
};

/// The tree of reversed suffix links over the internal nodes of a suffix tree,
/// rooted at the suffix tree root. The OSHR parent of v is link(v).
///
/// OT intervals are preorder spans: left is the preorder rank of the node in
/// the OSHR tree (children visited in ascending NodeId), right is the largest
/// rank in its OSHR subtree. Containment of ranks is therefore exact
/// suffix-link reachability, including along unary chains.
class OshrTree {
 public:
  explicit OshrTree(const SuffixTree& st);

  std::span<const NodeId> children(NodeId v) const noexcept;
  bool is_oshr_leaf(NodeId v) const noexcept { return children(v).empty(); }
  bool is_oshr_internal(NodeId v) const noexcept { return !children(v).empty(); }
  OtInterval interval(NodeId v) const noexcept { return interval_[static_cast<std::size_t>(v)]; }
  /// True when v lies in the OSHR subtree of i, i.e. i = link^k(v) for some k >= 0.
  bool contains(NodeId i, NodeId v) const noexcept {
    const auto a = interval(i);
    const auto b = interval(v);
    return a.left <= b.left && b.left <= a.right;
  }
  /// Internal nodes in OSHR postorder (children before parents).
  std::span<const NodeId> postorder() const noexcept { return postorder_; }
  std::int64_t node_count() const noexcept { return static_cast<std::int64_t>(postorder_.size()); }
  std::int64_t leaf_count() const noexcept { return leaf_count_; }

 private:
  std::vector<std::int64_t> child_offset_;
  std::vector<NodeId> child_ids_;
  std::vector<OtInterval> interval_;
  std::vector<NodeId> postorder_;
  std::int64_t leaf_count_ = 0;
};

/// Consecutive-suffix leaf pair (x, x+1) whose parents are not joined by a
/// suffix link.
struct ReferenceContext {
  NodeId leaf_a = kNoNode;    // suffix x
  NodeId parent_b = kNoNode;  // parent of leaf_a
  NodeId leaf_c = kNoNode;    // suffix x + 1
  NodeId parent_d = kNoNode;  // parent of leaf_c
  Pos suffix_x = -1;
};

std::vector<ReferenceContext> reference_leaf_contexts(const SuffixTree& st);

/// Internal ancestors of leaf_c strictly below link(parent_b), down to and
/// including parent_d, top-down.
std::vector<NodeId> skipped_nodes(const SuffixTree& st, const ReferenceContext& ctx);

/// Per-node lists stored in compressed row form.
template <typename T>
class NodeLists {
 public:
  NodeLists() = default;
  NodeLists(std::vector<std::int64_t> offsets, std::vector<T> items)
      : offsets_(std::move(offsets)), items_(std::move(items)) {}

  /// Groups (node, item) pairs. Items keep their relative input order.
  static NodeLists group(NodeId node_count, std::span<const std::pair<NodeId, T>> pairs) {
    std::vector<std::int64_t> offsets(static_cast<std::size_t>(node_count) + 1, 0);
    for (const auto& [v, item] : pairs) ++offsets[static_cast<std::size_t>(v) + 1];
    for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
    std::vector<T> items(pairs.size());
    auto cursor = offsets;
    for (const auto& [v, item] : pairs) items[static_cast<std::size_t>(cursor[static_cast<std::size_t>(v)]++)] = item;
    return NodeLists(std::move(offsets), std::move(items));
  }

  std::span<const T> at(NodeId v) const noexcept {
    if (offsets_.empty()) return {};
    const auto b = offsets_[static_cast<std::size_t>(v)];
    const auto e = offsets_[static_cast<std::size_t>(v) + 1];
    return std::span<const T>(items_).subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(e - b));
  }
  std::size_t total() const noexcept { return items_.size(); }
  const std::vector<std::int64_t>& offsets() const noexcept { return offsets_; }
  const std::vector<T>& items() const noexcept { return items_; }

  friend bool operator==(const NodeLists&, const NodeLists&) = default;

 private:
  std::vector<std::int64_t> offsets_;
  std::vector<T> items_;
};

/// For each node w, the internal nodes r whose suffix link skips over w:
/// r != root, link(parent(r)) != parent(link(r)), and w lies strictly between
/// link(parent(r)) and link(r).
NodeLists<NodeId> reference_internal_nodes(const SuffixTree& st);

struct BaseSuffix {
  Pos suffix = -1;               // x + 1
  NodeId reference_leaf = kNoNode;  // leaf of suffix x
  friend bool operator==(const BaseSuffix&, const BaseSuffix&) = default;
};

/// Base suffixes derived from reference leaves: for each context and each
/// skipped node w, suffix x + 1 is stored at w.
NodeLists<BaseSuffix> base_suffixes_from_reference_leaves(const SuffixTree& st,
                                                          std::span<const ReferenceContext> contexts);

}  // namespace otindex
