#include "otindex/ot_query.hpp"

#include "otindex/error.hpp"

namespace otindex {

const char* route_name(Route r) noexcept {
  switch (r) {
    case Route::NotInText: return "not_in_text";
    case Route::RootTrivial: return "root_trivial";
    case Route::LeafCase: return "leaf_case";
    case Route::BinarySearch: return "binary_search";
    case Route::BaseSuffix: return "base_suffix";
    case Route::Walk: return "walk";
  }
  return "?";
}

bool verify_witness(const SuffixTree& st, const Query& q, const QueryResult& r) {
  if (!r.found || !r.witness) return false;
  const Pos j = *r.witness;
  const auto& t = st.text();
  if (j < 0 || j > t.n()) return false;
  if (!st.in_subtree(st.leaf_of_suffix_unchecked(j), q.start_node)) return false;
  const Pos at = j + st.depth(q.start_node);
  const auto len = static_cast<Pos>(q.pattern.size());
  if (at + len > t.n()) return false;
  return t.bytes().substr(static_cast<std::size_t>(at), q.pattern.size()) == q.pattern;
}

OtSearcher::OtSearcher(const SuffixTree& st, const OshrTree& oshr, const OtIndex& idx, SearchOptions opts)
    : st_(st), oshr_(oshr), idx_(idx), opts_(opts) {
  if (idx.text_hash() != st.text().hash() || idx.node_count() != st.node_count())
    throw Error(ErrorKind::HashMismatch, "index was built for a different text");
}

void OtSearcher::check(const Query& q) const {
  if (q.start_node < 0 || q.start_node >= st_.node_count() || !st_.is_internal(q.start_node))
    throw Error(ErrorKind::InvalidArgument, "start node must be the root or an internal node");
  if (!q.pattern.empty() && !idx_.config().length_mode.admits(static_cast<Pos>(q.pattern.size())))
    throw Error(ErrorKind::InvalidArgument, "pattern length outside index configuration");
}

QueryResult OtSearcher::query_leaf_case(Pos z, NodeId i) const {
  QueryResult r;
  r.route = Route::LeafCase;
  const Pos j = z - st_.depth(i);
  if (j >= 0 && st_.in_subtree(st_.leaf_of_suffix_unchecked(j), i)) {
    r.found = true;
    r.witness = j;
  }
  return r;
}

QueryResult OtSearcher::query_base_suffixes(NodeId host, NodeId i) const {
  QueryResult r;
  r.route = Route::BaseSuffix;
  const Pos d = st_.depth(i);
  for (const auto& bs : idx_.base_suffixes(host)) {
    ++r.base_checks;
    const Pos j = bs.suffix - d;
    if (j >= 0 && st_.in_subtree(st_.leaf_of_suffix_unchecked(j), i)) {
      r.found = true;
      r.witness = j;
      break;
    }
  }
  return r;
}

QueryResult OtSearcher::query_binary_search(NodeId host, NodeId i) const {
  QueryResult r;
  r.route = Route::BinarySearch;
  const auto list = idx_.entries(host);
  const auto iv = oshr_.interval(i);
  // Lower bound on left_ot: first entry whose key is at or after i in OSHR preorder.
  std::size_t lo = 0, hi = list.size();
  while (lo < hi) {
    ++r.probes;
    const std::size_t mid = lo + (hi - lo) / 2;
    if (list[mid].left_ot < iv.left)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < list.size()) {
    const auto& e = list[lo];
    if (e.left_ot <= iv.right) {
      r.found = true;
      r.witness = e.occ - st_.depth(i);
      r.origin = e.origin;
    }
  }
  return r;
}

QueryResult OtSearcher::search(const Query& q) const {
  check(q);
  return search_located(q, st_.walk(q.pattern));
}

QueryResult OtSearcher::search_located(const Query& q, const WalkOutcome& walk) const {
  check(q);
  const auto len = static_cast<Pos>(q.pattern.size());
  const NodeId i = q.start_node;
  QueryResult r;
  r.comparisons = walk.comparisons;
  r.child_lookups = walk.child_lookups;
  if (walk.matched < len) {
    r.route = Route::NotInText;
    return r;
  }
  const NodeId e = walk.locus_below;
  if (i == kRoot || len == 0) {
    r.route = Route::RootTrivial;
    r.found = true;
    r.witness = (len == 0) ? st_.leftmost_suffix(i) : st_.leftmost_suffix(e);
    return r;
  }
  QueryResult out;
  if (st_.is_leaf(e)) {
    out = query_leaf_case(st_.suffix(e), i);
  } else if (!idx_.entries(e).empty()) {
    out = query_binary_search(e, i);
    if (!out.found && opts_.base_suffix_fallback) {
      const auto probes = out.probes;
      out = query_base_suffixes(e, i);
      out.probes = probes;
      out.fallback_hit = out.found;
    }
  } else {
    out = query_base_suffixes(e, i);
  }
  out.comparisons = r.comparisons;
  out.child_lookups = r.child_lookups;
  return out;
}

QueryResult walk_search_baseline(const SuffixTree& st, const Query& q) {
  if (q.start_node < 0 || q.start_node >= st.node_count() || !st.is_internal(q.start_node))
    throw Error(ErrorKind::InvalidArgument, "start node must be the root or an internal node");
  const auto w = st.walk_from(q.start_node, q.pattern);
  QueryResult r;
  r.comparisons = w.comparisons;
  r.child_lookups = w.child_lookups;
  r.route = Route::RootTrivial;
  if (w.matched == static_cast<Pos>(q.pattern.size())) {
    r.found = true;
    r.witness = st.leftmost_suffix(w.locus_below) - st.depth(q.start_node);
  } else {
    r.route = Route::NotInText;
  }
  return r;
}

}  // namespace otindex
