#include "otindex/oshr.hpp"

#include <algorithm>

#include "otindex/error.hpp"

namespace otindex {

OshrTree::OshrTree(const SuffixTree& st) {
  const auto count = static_cast<std::size_t>(st.node_count());
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(st.internal_nodes().size());
  for (NodeId v : st.internal_nodes())
    if (v != kRoot) edges.emplace_back(st.link(v), v);
  std::sort(edges.begin(), edges.end());

  child_offset_.assign(count + 1, 0);
  for (const auto& [p, c] : edges) ++child_offset_[static_cast<std::size_t>(p) + 1];
  for (std::size_t i = 1; i <= count; ++i) child_offset_[i] += child_offset_[i - 1];
  child_ids_.reserve(edges.size());
  for (const auto& e : edges) child_ids_.push_back(e.second);

  interval_.assign(count, OtInterval{});
  postorder_.reserve(st.internal_nodes().size());
  Pos rank = 0;
  std::vector<std::pair<NodeId, std::size_t>> stack{{kRoot, 0}};
  interval_[kRoot].left = rank++;
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    const auto kids = children(v);
    if (next < kids.size()) {
      const NodeId c = kids[next++];
      interval_[static_cast<std::size_t>(c)].left = rank++;
      stack.emplace_back(c, 0);
      continue;
    }
    interval_[static_cast<std::size_t>(v)].right = rank - 1;
    if (kids.empty()) ++leaf_count_;
    postorder_.push_back(v);
    stack.pop_back();
  }
  if (postorder_.size() != st.internal_nodes().size())
    throw Error(ErrorKind::Internal, "suffix links do not form a tree over the internal nodes");
}

std::span<const NodeId> OshrTree::children(NodeId v) const noexcept {
  const auto b = child_offset_[static_cast<std::size_t>(v)];
  const auto e = child_offset_[static_cast<std::size_t>(v) + 1];
  return std::span<const NodeId>(child_ids_).subspan(static_cast<std::size_t>(b), static_cast<std::size_t>(e - b));
}

std::vector<ReferenceContext> reference_leaf_contexts(const SuffixTree& st) {
  std::vector<ReferenceContext> out;
  const Pos n = st.text().n();
  for (Pos x = 0; x < n; ++x) {
    ReferenceContext ctx;
    ctx.suffix_x = x;
    ctx.leaf_a = st.leaf_of_suffix_unchecked(x);
    ctx.leaf_c = st.leaf_of_suffix_unchecked(x + 1);
    ctx.parent_b = st.parent(ctx.leaf_a);
    ctx.parent_d = st.parent(ctx.leaf_c);
    if (st.link(ctx.parent_b) == ctx.parent_d) continue;
    const NodeId top = st.link(ctx.parent_b);
    if (!(st.depth(top) < st.depth(ctx.parent_d) && st.in_subtree(ctx.parent_d, top)))
      throw Error(ErrorKind::Internal, "reference context: link(B) is not a proper ancestor of D");
    out.push_back(ctx);
  }
  return out;
}

std::vector<NodeId> skipped_nodes(const SuffixTree& st, const ReferenceContext& ctx) {
  std::vector<NodeId> out;
  const Pos floor = st.depth(st.link(ctx.parent_b));
  for (NodeId w = ctx.parent_d; w != kNoNode && st.depth(w) > floor; w = st.parent(w)) out.push_back(w);
  std::reverse(out.begin(), out.end());
  return out;
}

NodeLists<NodeId> reference_internal_nodes(const SuffixTree& st) {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId r : st.internal_nodes()) {
    if (r == kRoot) continue;
    const NodeId top = st.link(st.parent(r));
    const NodeId target = st.link(r);
    if (target == kRoot || st.parent(target) == top) continue;
    const Pos floor = st.depth(top);
    for (NodeId w = st.parent(target); w != kNoNode && st.depth(w) > floor; w = st.parent(w))
      pairs.emplace_back(w, r);
  }
  return NodeLists<NodeId>::group(st.node_count(), pairs);
}

NodeLists<BaseSuffix> base_suffixes_from_reference_leaves(const SuffixTree& st,
                                                          std::span<const ReferenceContext> contexts) {
  std::vector<std::pair<NodeId, BaseSuffix>> pairs;
  for (const auto& ctx : contexts)
    for (NodeId w : skipped_nodes(st, ctx)) pairs.emplace_back(w, BaseSuffix{ctx.suffix_x + 1, ctx.leaf_a});
  return NodeLists<BaseSuffix>::group(st.node_count(), pairs);
}

}  // namespace otindex
