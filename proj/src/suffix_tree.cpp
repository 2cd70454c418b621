#include "otindex/suffix_tree.hpp"

#include <algorithm>
#include <utility>

#include "otindex/error.hpp"

namespace otindex {

namespace {

bool symbol_less(char a, char b) {
  return static_cast<unsigned char>(a) < static_cast<unsigned char>(b);
}

}  // namespace

SuffixTree::SuffixTree(Text text) : text_(std::move(text)) {
  build();
  finalize();
}

NodeId SuffixTree::new_node(Pos start, Pos end, NodeId parent) {
  const auto id = static_cast<NodeId>(start_.size());
  start_.push_back(start);
  end_.push_back(end);
  parent_.push_back(parent);
  link_.push_back(kRoot);
  first_child_.push_back(kNoNode);
  next_sibling_.push_back(kNoNode);
  return id;
}

NodeId SuffixTree::child(NodeId v, char c) const noexcept {
  for (NodeId u = first_child_[v]; u != kNoNode; u = next_sibling_[u]) {
    const char first = text_[start_[u]];
    if (first == c) return u;
    if (symbol_less(c, first)) break;
  }
  return kNoNode;
}

void SuffixTree::add_child(NodeId parent, NodeId c) {
  const char key = text_[start_[c]];
  NodeId* slot = &first_child_[parent];
  while (*slot != kNoNode && symbol_less(text_[start_[*slot]], key)) slot = &next_sibling_[*slot];
  next_sibling_[c] = *slot;
  *slot = c;
  parent_[c] = parent;
}

void SuffixTree::replace_child(NodeId parent, NodeId old_child, NodeId new_child) {
  NodeId* slot = &first_child_[parent];
  while (*slot != old_child) slot = &next_sibling_[*slot];
  next_sibling_[new_child] = next_sibling_[old_child];
  *slot = new_child;
  parent_[new_child] = parent;
}

void SuffixTree::build() {
  const Pos size = text_.size();
  const auto cap = static_cast<std::size_t>(2 * size + 1);
  for (auto* v : {&start_, &end_}) v->reserve(cap);
  for (auto* v : {&parent_, &link_, &first_child_, &next_sibling_}) v->reserve(cap);

  new_node(0, 0, kNoNode);  // root

  NodeId active_node = kRoot;
  Pos active_edge = 0;
  Pos active_length = 0;
  Pos remainder = 0;

  for (Pos pos = 0; pos < size; ++pos) {
    const char c = text_[pos];
    ++remainder;
    NodeId last_new = kNoNode;
    while (remainder > 0) {
      if (active_length == 0) active_edge = pos;
      const NodeId next = child(active_node, text_[active_edge]);
      if (next == kNoNode) {
        const NodeId leaf = new_node(pos, size, active_node);
        add_child(active_node, leaf);
        if (last_new != kNoNode) {
          link_[last_new] = active_node;
          last_new = kNoNode;
        }
      } else {
        const Pos len = std::min(end_[next], pos + 1) - start_[next];
        if (active_length >= len) {
          active_edge += len;
          active_length -= len;
          active_node = next;
          continue;
        }
        if (text_[start_[next] + active_length] == c) {
          if (last_new != kNoNode && active_node != kRoot) {
            link_[last_new] = active_node;
            last_new = kNoNode;
          }
          ++active_length;
          break;
        }
        const NodeId split = new_node(start_[next], start_[next] + active_length, active_node);
        replace_child(active_node, next, split);
        start_[next] += active_length;
        first_child_[split] = kNoNode;
        add_child(split, next);
        const NodeId leaf = new_node(pos, size, split);
        add_child(split, leaf);
        if (last_new != kNoNode) link_[last_new] = split;
        last_new = split;
      }
      --remainder;
      if (active_node == kRoot && active_length > 0) {
        --active_length;
        active_edge = pos - remainder + 1;
      } else if (active_node != kRoot) {
        active_node = link_[active_node];
      }
    }
  }
}

void SuffixTree::finalize() {
  const auto count = static_cast<std::size_t>(node_count());
  depth_.assign(count, 0);
  suffix_.assign(count, -1);
  st_left_.assign(count, 0);
  st_right_.assign(count, 0);
  leaf_by_rank_.clear();
  leaf_by_rank_.reserve(static_cast<std::size_t>(text_.size()));
  leaf_of_suffix_.assign(static_cast<std::size_t>(text_.size()), kNoNode);
  internal_.clear();

  // Iterative preorder; st_right is filled on the way back up.
  std::vector<std::pair<NodeId, bool>> stack{{kRoot, false}};
  while (!stack.empty()) {
    auto [v, done] = stack.back();
    stack.pop_back();
    if (done) {
      st_right_[v] = static_cast<Pos>(leaf_by_rank_.size()) - 1;
      continue;
    }
    if (v != kRoot) depth_[v] = depth_[parent_[v]] + (end_[v] - start_[v]);
    if (first_child_[v] == kNoNode) {
      const Pos s = text_.size() - depth_[v];
      suffix_[v] = s;
      leaf_of_suffix_[static_cast<std::size_t>(s)] = v;
      st_left_[v] = st_right_[v] = static_cast<Pos>(leaf_by_rank_.size());
      leaf_by_rank_.push_back(v);
      continue;
    }
    internal_.push_back(v);
    st_left_[v] = static_cast<Pos>(leaf_by_rank_.size());
    stack.emplace_back(v, true);
    // Push children in reverse so the smallest symbol is visited first.
    const auto mark = stack.size();
    for (NodeId u = first_child_[v]; u != kNoNode; u = next_sibling_[u]) stack.emplace_back(u, false);
    std::reverse(stack.begin() + static_cast<std::ptrdiff_t>(mark), stack.end());
  }
  link_[kRoot] = kRoot;
  for (NodeId v = 0; v < node_count(); ++v)
    if (is_leaf(v)) link_[v] = kNoNode;

  for (NodeId v : internal_) {
    if (v != kRoot && depth_[link_[v]] != depth_[v] - 1)
      throw Error(ErrorKind::Internal, "suffix link depth invariant violated");
  }
}

NodeId SuffixTree::leaf_of_suffix(Pos s) const {
  if (s < 0 || s >= text_.size()) throw Error(ErrorKind::OutOfRange, "suffix index out of range");
  return leaf_of_suffix_[static_cast<std::size_t>(s)];
}

std::string_view SuffixTree::label(NodeId v) const noexcept {
  return text_.bytes().substr(static_cast<std::size_t>(leftmost_suffix(v)),
                              static_cast<std::size_t>(depth_[v]));
}

WalkOutcome SuffixTree::walk_from(NodeId start, std::string_view pattern) const {
  WalkOutcome out;
  out.locus_below = start;
  NodeId cur = start;
  const auto len = static_cast<Pos>(pattern.size());
  Pos i = 0;
  while (i < len) {
    ++out.child_lookups;
    const NodeId next = child(cur, pattern[static_cast<std::size_t>(i)]);
    if (next == kNoNode) {
      ++out.comparisons;
      out.matched = i;
      out.locus_below = cur;
      out.exact_node = true;
      return out;
    }
    const Pos estart = start_[next];
    const Pos elen = end_[next] - estart;
    Pos k = 0;
    ++out.comparisons;  // first symbol matched by the child lookup
    ++i;
    ++k;
    while (k < elen && i < len) {
      ++out.comparisons;
      if (text_[estart + k] != pattern[static_cast<std::size_t>(i)]) {
        out.matched = i;
        out.locus_below = next;
        out.exact_node = false;
        return out;
      }
      ++i;
      ++k;
    }
    if (k < elen) {
      out.matched = i;
      out.locus_below = next;
      out.exact_node = false;
      return out;
    }
    cur = next;
  }
  out.matched = i;
  out.locus_below = cur;
  out.exact_node = true;
  return out;
}

TreeStats SuffixTree::stats() const {
  TreeStats s;
  s.leaves = leaf_count();
  s.internal_nodes = static_cast<std::int64_t>(internal_.size());
  for (NodeId v : internal_) ++s.internal_by_depth[depth_[v]];
  return s;
}

}  // namespace otindex
