#include "otindex/ot_build.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "otindex/error.hpp"

namespace otindex {

const char* origin_name(Origin o) noexcept {
  switch (o) {
    case Origin::BasePath: return "base_path";
    case Origin::Hanadi: return "hanadi";
    case Origin::Srivastava: return "srivastava";
  }
  return "?";
}

const char* classification_name(ClassificationMode m) noexcept {
  switch (m) {
    case ClassificationMode::DefinitionLiteral: return "definition";
    case ClassificationMode::FigureCaption: return "caption";
    case ClassificationMode::Union: return "union";
  }
  return "?";
}

const char* keying_name(SpecialKeying k) noexcept {
  return k == SpecialKeying::TopNode ? "top" : "chain";
}

ClassificationMode parse_classification(const std::string& s) {
  if (s == "definition") return ClassificationMode::DefinitionLiteral;
  if (s == "caption") return ClassificationMode::FigureCaption;
  if (s == "union") return ClassificationMode::Union;
  throw Error(ErrorKind::InvalidArgument, "unknown classification mode: " + s);
}

SpecialKeying parse_keying(const std::string& s) {
  if (s == "top") return SpecialKeying::TopNode;
  if (s == "chain") return SpecialKeying::ChainStart;
  throw Error(ErrorKind::InvalidArgument, "unknown keying: " + s);
}

LengthMode LengthMode::exact(Pos l) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "length must be >= 1");
  return LengthMode{Kind::Exact, l, l};
}
LengthMode LengthMode::at_most(Pos l) {
  if (l < 1) throw Error(ErrorKind::InvalidArgument, "length bound must be >= 1");
  return LengthMode{Kind::AtMost, 1, l};
}
LengthMode LengthMode::range(Pos lo, Pos hi) {
  if (lo < 1 || lo > hi) throw Error(ErrorKind::InvalidArgument, "length range requires 1 <= lo <= hi");
  return LengthMode{Kind::Range, lo, hi};
}

std::string LengthMode::describe() const {
  switch (kind) {
    case Kind::All: return "all";
    case Kind::Exact: return "exact:" + std::to_string(lo);
    case Kind::AtMost: return "atmost:" + std::to_string(hi);
    case Kind::Range: return "range:" + std::to_string(lo) + "-" + std::to_string(hi);
  }
  return "?";
}

namespace {

Pos parse_pos(std::string_view s) {
  Pos v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw Error(ErrorKind::InvalidArgument, "bad length: " + std::string(s));
  return v;
}

}  // namespace

LengthMode parse_length_mode(const std::string& s) {
  if (s == "all") return LengthMode::all();
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw Error(ErrorKind::InvalidArgument, "bad length mode: " + s);
  const std::string_view kind(s.data(), colon);
  const std::string_view arg(s.data() + colon + 1, s.size() - colon - 1);
  if (kind == "exact") return LengthMode::exact(parse_pos(arg));
  if (kind == "atmost") return LengthMode::at_most(parse_pos(arg));
  if (kind == "range") {
    const auto dash = arg.find('-');
    if (dash == std::string_view::npos) throw Error(ErrorKind::InvalidArgument, "bad range: " + s);
    return LengthMode::range(parse_pos(arg.substr(0, dash)), parse_pos(arg.substr(dash + 1)));
  }
  throw Error(ErrorKind::InvalidArgument, "bad length mode: " + s);
}

std::string BuildConfig::describe() const {
  std::ostringstream os;
  os << "classification=" << classification_name(classification) << " keying=" << keying_name(keying)
     << " exclusion=" << (exclusion_rule ? "on" : "off") << " prune=" << (prune_covered ? "on" : "off")
     << " prune-fallback=" << (prune_fallback ? "on" : "off")
     << " lengths=" << length_mode.describe();
  return os.str();
}

bool SpecialNodes::is_hanadi(NodeId v) const { return std::binary_search(hanadi.begin(), hanadi.end(), v); }
bool SpecialNodes::is_srivastava(NodeId v) const {
  return std::binary_search(srivastava.begin(), srivastava.end(), v);
}

std::vector<SpecialRecord> SpecialNodes::referenced_by(NodeId leaf) const {
  std::vector<SpecialRecord> out;
  for (const auto& r : records)
    if (r.reference_leaf == leaf) out.push_back(r);
  return out;
}

SpecialNodes detect_special_nodes(const SuffixTree& st, const OshrTree& oshr,
                                  std::span<const ReferenceContext> contexts,
                                  const NodeLists<NodeId>& ref_internal, ClassificationMode mode) {
  SpecialNodes out;
  for (const auto& ctx : contexts) {
    for (NodeId w : skipped_nodes(st, ctx)) {
      const bool oshr_internal = oshr.is_oshr_internal(w);
      const bool has_ref_internal = !ref_internal.at(w).empty();
      bool hanadi = false;
      switch (mode) {
        case ClassificationMode::DefinitionLiteral: hanadi = oshr_internal; break;
        case ClassificationMode::FigureCaption: hanadi = !oshr_internal && !has_ref_internal; break;
        case ClassificationMode::Union: hanadi = oshr_internal || !has_ref_internal; break;
      }
      if (hanadi) {
        out.records.push_back({w, ctx.leaf_a, ctx.suffix_x, Origin::Hanadi});
        out.hanadi.push_back(w);
      } else if (!oshr_internal && has_ref_internal) {
        out.records.push_back({w, ctx.leaf_a, ctx.suffix_x, Origin::Srivastava});
        out.srivastava.push_back(w);
      }
    }
  }
  for (auto* v : {&out.hanadi, &out.srivastava}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return out;
}

namespace {

// Skip/count walk: alpha is known to occur, so only the first symbol of each
// edge is inspected until the last edge, which is verified in full.
template <class Visit>
void walk_known(const SuffixTree& st, std::string_view alpha, Visit&& visit) {
  const auto len = static_cast<Pos>(alpha.size());
  NodeId cur = kRoot;
  Pos d = 0;
  while (d < len) {
    const NodeId next = st.child(cur, alpha[static_cast<std::size_t>(d)]);
    if (next == kNoNode) throw Error(ErrorKind::Internal, "last extent path: walk failed");
    if (st.depth(next) > len) {
      const auto rest = alpha.substr(static_cast<std::size_t>(d));
      const auto edge = st.text().bytes().substr(static_cast<std::size_t>(st.edge_start(next)), rest.size());
      if (edge != rest) throw Error(ErrorKind::Internal, "last extent path: walk failed");
      return;
    }
    visit(next);
    cur = next;
    d = st.depth(next);
  }
}

}  // namespace

std::vector<NodeId> last_extent_path(const SuffixTree& st, std::string_view alpha) {
  std::vector<NodeId> out;
  walk_known(st, alpha, [&](NodeId v) { out.push_back(v); });
  return out;
}

std::vector<NodeId> last_extent_path(const SuffixTree& st, NodeId top, NodeId bottom) {
  const Pos s = st.leftmost_suffix(bottom);
  const auto alpha = st.text().bytes().substr(static_cast<std::size_t>(s + st.depth(top)),
                                              static_cast<std::size_t>(st.depth(bottom) - st.depth(top)));
  return last_extent_path(st, alpha);
}

namespace {

/// Internal proper ancestors of v, root first.
void proper_ancestors(const SuffixTree& st, NodeId v, std::vector<NodeId>& out) {
  out.clear();
  for (NodeId a = st.parent(v); a != kNoNode; a = st.parent(a)) out.push_back(a);
  std::reverse(out.begin(), out.end());
}

/// Base tops of b: proper ancestors v of b for which (v, b) is not derivable.
void base_tops(const SuffixTree& st, const OshrTree& oshr, NodeId b, std::vector<NodeId>& anc,
               std::vector<NodeId>& scratch, std::vector<char>& derivable, std::vector<NodeId>& out) {
  out.clear();
  proper_ancestors(st, b, anc);
  derivable.assign(anc.size(), 0);
  for (NodeId bp : oshr.children(b)) {
    // Every non-root proper ancestor a of b' links to the ancestor of b at
    // depth(a) - 1, making (link(a), b) the image of (a, b').
    proper_ancestors(st, bp, scratch);
    std::size_t j = 0;
    for (NodeId a : scratch) {
      if (a == kRoot) continue;
      const Pos target = st.depth(a) - 1;
      while (j < anc.size() && st.depth(anc[j]) < target) ++j;
      if (j < anc.size() && st.depth(anc[j]) == target) derivable[j] = 1;
    }
  }
  for (std::size_t k = 0; k < anc.size(); ++k)
    if (!derivable[k]) out.push_back(anc[k]);
}

std::uint64_t path_key(NodeId top, NodeId bottom) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(top)) << 32) |
         static_cast<std::uint32_t>(bottom);
}

}  // namespace

std::vector<NodeId> enumerate_base_paths(const SuffixTree& st, const OshrTree& oshr, NodeId v) {
  std::vector<NodeId> out, anc, scratch, tops;
  std::vector<char> derivable;
  for (NodeId b : st.internal_nodes()) {
    if (b == v || !st.in_subtree(b, v)) continue;
    base_tops(st, oshr, b, anc, scratch, derivable, tops);
    if (std::find(tops.begin(), tops.end(), v) != tops.end()) out.push_back(b);
  }
  return out;
}

IndexBuilder::IndexBuilder(const SuffixTree& st, const OshrTree& oshr, const BuildConfig& cfg)
    : st_(st), oshr_(oshr), cfg_(cfg), ref_internal_(reference_internal_nodes(st)) {}

std::int64_t IndexBuilder::place(std::string_view alpha, Pos rel_low, Pos rel_high, const OtEntry& entry) {
  // A host with parent depth pd serves pattern lengths (max(pd, rel_low), depth(host)].
  const auto& lm = cfg_.length_mode;
  if (rel_high <= rel_low || lm.hi <= rel_low || lm.lo > rel_high) return 0;
  std::int64_t placed = 0;
  Pos prev_depth = 0;
  walk_known(st_, alpha, [&](NodeId host) {
    const Pos d = st_.depth(host);
    const Pos serve_lo = std::max(prev_depth, rel_low) + 1;
    prev_depth = d;
    if (d > rel_low && serve_lo <= lm.hi && lm.lo <= d) {
      placed_.push_back({host, entry});
      ++placed;
    }
  });
  return placed;
}

std::int64_t IndexBuilder::index_special(NodeId v, NodeId key, Pos suffix_x, NodeId h, Origin origin) {
  const NodeId top = st_.link(v);
  if (st_.depth(top) >= st_.depth(h) || !st_.in_subtree(h, top)) return 0;
  const Pos rel_low = st_.depth(st_.parent(h)) - st_.depth(top);
  const Pos rel_high = st_.depth(h) - st_.depth(top);
  const Pos occ = suffix_x + 1 + st_.depth(top);
  const auto alpha = st_.text().bytes().substr(static_cast<std::size_t>(occ), static_cast<std::size_t>(rel_high));
  const auto iv = oshr_.interval(key);
  const auto n = place(alpha, rel_low, rel_high, OtEntry{iv.left, iv.right, key, occ, origin, h});
  indexed_paths_.insert(path_key(top, h));
  ++stats_.special_paths;
  stats_.inserted[static_cast<std::size_t>(origin)] += n;
  return n;
}

bool IndexBuilder::already_indexed(NodeId top, NodeId bottom) const {
  return indexed_paths_.contains(path_key(top, bottom));
}

bool IndexBuilder::excluded(NodeId v, NodeId b) const {
  for (NodeId r : ref_internal_.at(b))
    for (NodeId u : oshr_.children(v))
      if (st_.in_subtree(r, u)) return true;
  return false;
}

std::int64_t IndexBuilder::index_base_path(NodeId v, NodeId b) {
  ++stats_.base_paths;
  if (already_indexed(v, b)) {
    ++stats_.base_paths_already_indexed;
    return 0;
  }
  if (cfg_.exclusion_rule && excluded(v, b)) {
    ++stats_.base_paths_excluded;
    return 0;
  }
  ++stats_.base_paths_indexed;
  const Pos rel_low = st_.depth(st_.parent(b)) - st_.depth(v);
  const Pos rel_high = st_.depth(b) - st_.depth(v);
  const Pos occ = st_.leftmost_suffix(b) + st_.depth(v);
  const auto alpha = st_.text().bytes().substr(static_cast<std::size_t>(occ), static_cast<std::size_t>(rel_high));
  const auto iv = oshr_.interval(v);
  const auto n = place(alpha, rel_low, rel_high, OtEntry{iv.left, iv.right, v, occ, Origin::BasePath, b});
  stats_.inserted[static_cast<std::size_t>(Origin::BasePath)] += n;
  return n;
}

// True when a base suffix stored at host already witnesses key. Labels of
// OSHR ancestors of key are suffixes of label(key), so the same base suffix
// serves every query the entry could answer.
bool IndexBuilder::fallback_covers(const NodeLists<BaseSuffix>& base, NodeId host, NodeId key) const {
  const Pos d = st_.depth(key);
  for (const auto& b : base.at(host)) {
    if (b.suffix < d) continue;
    if (st_.in_subtree(st_.leaf_of_suffix_unchecked(b.suffix - d), key)) return true;
  }
  return false;
}

OtIndex IndexBuilder::finish(NodeLists<BaseSuffix> base_suffixes, int sigma) && {
  auto order = [](const Placed& a, const Placed& b) {
    if (a.host != b.host) return a.host < b.host;
    if (a.entry.left_ot != b.entry.left_ot) return a.entry.left_ot < b.entry.left_ot;
    if (a.entry.right_ot != b.entry.right_ot) return a.entry.right_ot < b.entry.right_ot;
    if (a.entry.origin != b.entry.origin) return a.entry.origin < b.entry.origin;
    return a.entry.occ < b.entry.occ;
  };
  std::sort(placed_.begin(), placed_.end(), order);

  std::vector<std::pair<NodeId, OtEntry>> kept;
  kept.reserve(placed_.size());
  for (std::size_t i = 0; i < placed_.size(); ++i) {
    const auto& p = placed_[i];
    if (i > 0) {
      const auto& q = placed_[i - 1];
      if (q.host == p.host && q.entry.key == p.entry.key) {
        if (q.entry.occ == p.entry.occ && q.entry.origin == p.entry.origin) ++stats_.duplicate_insertions;
        continue;
      }
    }
    // A key with an OSHR descendant stored at the same host answers no query
    // the descendant does not; with preorder intervals the descendant, if
    // any, is the next distinct key.
    if (cfg_.prune_covered) {
      std::size_t j = i + 1;
      while (j < placed_.size() && placed_[j].host == p.host && placed_[j].entry.key == p.entry.key) ++j;
      if (j < placed_.size() && placed_[j].host == p.host && placed_[j].entry.left_ot <= p.entry.right_ot) {
        ++stats_.pruned;
        continue;
      }
    }
    if (cfg_.prune_fallback && fallback_covers(base_suffixes, p.host, p.entry.key)) {
      ++stats_.pruned;
      continue;
    }
    kept.emplace_back(p.host, p.entry);
    ++stats_.stored[static_cast<std::size_t>(p.entry.origin)];
  }
  placed_.clear();
  placed_.shrink_to_fit();

  auto lists = NodeLists<OtEntry>::group(st_.node_count(), kept);
  for (NodeId v : st_.internal_nodes()) {
    const auto len = static_cast<std::int64_t>(lists.at(v).size());
    if (len > 0) ++stats_.hosts;
    stats_.max_list = std::max(stats_.max_list, len);
    const auto nb = static_cast<std::int64_t>(base_suffixes.at(v).size());
    stats_.max_base_suffixes_per_node = std::max(stats_.max_base_suffixes_per_node, nb);
    if (nb > sigma) ++stats_.sigma_bound_violations;
  }
  stats_.base_suffixes = static_cast<std::int64_t>(base_suffixes.total());
  return OtIndex(cfg_, st_.text().hash(), st_.node_count(), std::move(lists), std::move(base_suffixes), stats_);
}

OtIndex build_index(const SuffixTree& st, const OshrTree& oshr, const BuildConfig& cfg) {
  IndexBuilder builder(st, oshr, cfg);
  const auto contexts = reference_leaf_contexts(st);
  const auto special = detect_special_nodes(st, oshr, contexts, builder.ref_internal_, cfg.classification);
  builder.stats_.reference_contexts = static_cast<std::int64_t>(contexts.size());
  builder.stats_.hanadi_nodes = static_cast<std::int64_t>(special.hanadi.size());
  builder.stats_.srivastava_nodes = static_cast<std::int64_t>(special.srivastava.size());

  // Special paths. Every internal ancestor v of a reference leaf is visited
  // (the OSHR postorder of the reference algorithm only fixes the order in
  // which Indexed_Paths is filled, and it is complete before base paths).
  // Leaves are swept left to right by suffix index so the chain key of every
  // (ancestor, leaf) pair is carried from leaf x to leaf x + 1 in O(depth).
  const Pos n = st.text().n();
  std::vector<NodeId> anc, next_anc;
  std::vector<NodeId> keys, next_keys;
  proper_ancestors(st, st.leaf_of_suffix_unchecked(0), anc);
  keys = anc;
  std::size_t rec = 0;
  for (Pos x = 0; x < n; ++x) {
    proper_ancestors(st, st.leaf_of_suffix_unchecked(x + 1), next_anc);
    next_keys = next_anc;
    // (a, leaf x) maps to (link(a), leaf x + 1); chain starts carry over.
    std::size_t j = 0;
    for (std::size_t k = 0; k < anc.size(); ++k) {
      const NodeId a = anc[k];
      const NodeId target = (a == kRoot) ? kNoNode : st.link(a);
      if (target == kNoNode) continue;
      while (j < next_anc.size() && st.depth(next_anc[j]) < st.depth(target)) ++j;
      if (j >= next_anc.size() || next_anc[j] != target)
        throw Error(ErrorKind::Internal, "suffix link of an ancestor is not an ancestor of the next leaf");
      next_keys[j] = keys[k];
    }
    while (rec < special.records.size() && special.records[rec].suffix_x == x) {
      const auto& r = special.records[rec++];
      for (std::size_t k = 0; k < anc.size(); ++k) {
        const NodeId v = anc[k];
        NodeId key = v;
        if (cfg.keying == SpecialKeying::ChainStart) key = (v == kRoot) ? next_keys[0] : keys[k];
        builder.index_special(v, key, x, r.node, r.kind);
      }
    }
    std::swap(anc, next_anc);
    std::swap(keys, next_keys);
  }

  // Base paths, bottom node by bottom node.
  std::vector<NodeId> scratch_anc, scratch, tops;
  std::vector<char> derivable;
  for (NodeId b : st.internal_nodes()) {
    if (b == kRoot) continue;
    base_tops(st, oshr, b, scratch_anc, scratch, derivable, tops);
    for (NodeId v : tops) builder.index_base_path(v, b);
  }

  const int sigma = static_cast<int>(alphabet(st.text()).size());
  auto base = base_suffixes_from_reference_leaves(st, contexts);
  return std::move(builder).finish(std::move(base), sigma);
}

}  // namespace otindex
