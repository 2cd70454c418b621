#include "otindex/oracle.hpp"

#include <algorithm>
#include <bit>
#include <random>
#include <sstream>

#include "otindex/error.hpp"

namespace otindex {

GroundTruth::GroundTruth(const SuffixTree& st, Pos max_len, Pos cap) : st_(st) {
  const auto& t = st.text();
  if (t.n() > cap) throw Error(ErrorKind::OutOfRange, "text exceeds the ground-truth cap");
  const auto body = t.body();
  const auto sigma = alphabet(t);

  for (NodeId v = 0; v < st.node_count(); ++v) {
    if (v == kRoot) continue;
    auto lab = std::string(st.label(v));
    if (!lab.empty() && lab.back() == Text::kSentinel) lab.pop_back();
    if (lab.empty()) continue;
    patterns_.push_back(lab);
    for (Pos l = 1; l < static_cast<Pos>(lab.size()) && l <= max_len; ++l)
      patterns_.push_back(lab.substr(0, static_cast<std::size_t>(l)));
    if (st.is_internal(v))
      for (unsigned char c : sigma.symbols) patterns_.push_back(lab + static_cast<char>(c));
  }
  for (unsigned char c : sigma.symbols) patterns_.emplace_back(1, static_cast<char>(c));
  if (t.n() <= 128) {
    for (std::size_t s = 0; s < body.size(); ++s)
      for (std::size_t l = 1; l <= static_cast<std::size_t>(2 * max_len) && s + l <= body.size(); ++l)
        patterns_.emplace_back(body.substr(s, l));
  }
  std::sort(patterns_.begin(), patterns_.end());
  patterns_.erase(std::unique(patterns_.begin(), patterns_.end()), patterns_.end());

  label_occ_.resize(static_cast<std::size_t>(st.node_count()));
  for (NodeId i : st.internal_nodes()) {
    const auto lab = st.label(i);
    auto& occ = label_occ_[static_cast<std::size_t>(i)];
    for (std::size_t o = 0; o + lab.size() <= body.size(); ++o)
      if (body.compare(o, lab.size(), lab) == 0) occ.push_back(static_cast<Pos>(o));
  }
}

std::optional<Pos> GroundTruth::occurrence(NodeId i, std::string_view p) const {
  const auto body = st_.text().body();
  const auto d = static_cast<std::size_t>(st_.depth(i));
  for (Pos o : label_occ_[static_cast<std::size_t>(i)]) {
    const auto at = static_cast<std::size_t>(o) + d;
    if (at + p.size() <= body.size() && body.compare(at, p.size(), p) == 0) return o;
  }
  return std::nullopt;
}

std::string random_corpus_text(std::uint64_t seed, std::uint64_t index, Pos min_n, Pos max_n) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1)));
  const auto sigma = 2 + static_cast<int>(rng() % 3);
  const auto span = static_cast<std::uint64_t>(max_n - min_n + 1);
  const auto n = static_cast<std::size_t>(min_n + static_cast<Pos>(rng() % span));
  std::string s(n, 'A');
  for (auto& c : s) c = static_cast<char>('A' + static_cast<int>(rng() % static_cast<std::uint64_t>(sigma)));
  return s;
}

std::string AuditVariant::describe() const {
  return config.describe() + " fallback=" + (search.base_suffix_fallback ? "on" : "off");
}

AuditVariant audit_default() { return AuditVariant{BuildConfig{}, SearchOptions{}}; }

std::vector<AuditVariant> audit_matrix_all() {
  std::vector<AuditVariant> out;
  for (auto cls : {ClassificationMode::DefinitionLiteral, ClassificationMode::FigureCaption, ClassificationMode::Union})
    for (auto key : {SpecialKeying::TopNode, SpecialKeying::ChainStart}) {
      BuildConfig cfg;
      cfg.classification = cls;
      cfg.keying = key;
      out.push_back({cfg, SearchOptions{}});
    }
  auto no_excl = audit_default();
  no_excl.config.exclusion_rule = false;
  out.push_back(no_excl);
  auto unpruned = audit_default();
  unpruned.config.prune_covered = false;
  unpruned.config.prune_fallback = false;
  out.push_back(unpruned);
  auto no_fallback = audit_default();
  no_fallback.config.prune_fallback = false;
  no_fallback.search.base_suffix_fallback = false;
  out.push_back(no_fallback);
  return out;
}

void AuditTally::merge(const AuditTally& o) {
  texts += o.texts;
  pairs += o.pairs;
  spurious += o.spurious;
  misses += o.misses;
  baseline_disagreements += o.baseline_disagreements;
  witness_failures += o.witness_failures;
  entry_violations += o.entry_violations;
  base_suffix_violations += o.base_suffix_violations;
  unsorted_lists += o.unsorted_lists;
  probe_bound_violations += o.probe_bound_violations;
  sigma_bound_violations += o.sigma_bound_violations;
  size_bound_violations += o.size_bound_violations;
  fallback_hits += o.fallback_hits;
  entries += o.entries;
  symbols += o.symbols;
  for (std::size_t k = 0; k < found_by_route.size(); ++k) found_by_route[k] += o.found_by_route[k];
  for (std::size_t k = 0; k < found_by_origin.size(); ++k) found_by_origin[k] += o.found_by_origin[k];
  for (std::size_t k = 0; k < stored_by_origin.size(); ++k) stored_by_origin[k] += o.stored_by_origin[k];
  counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
}

IndexCheck check_index(const SuffixTree& st, const OshrTree& oshr, const OtIndex& idx) {
  IndexCheck out;
  const auto bytes = st.text().bytes();
  for (NodeId host : st.internal_nodes()) {
    const auto list = idx.entries(host);
    const auto lab = st.label(host);
    for (std::size_t k = 0; k < list.size(); ++k) {
      const auto& e = list[k];
      if (k > 0 && !(list[k - 1].left_ot < e.left_ot)) ++out.unsorted_lists;
      bool ok = e.occ >= 0 && static_cast<std::size_t>(e.occ) + lab.size() <= bytes.size() &&
                bytes.compare(static_cast<std::size_t>(e.occ), lab.size(), lab) == 0;
      const Pos j = e.occ - st.depth(e.key);
      ok = ok && j >= 0 && st.in_subtree(st.leaf_of_suffix_unchecked(j), e.key);
      ok = ok && oshr.interval(e.key) == OtInterval{e.left_ot, e.right_ot};
      if (!ok) ++out.entry_violations;
    }
    for (const auto& bs : idx.base_suffixes(host))
      if (!st.in_subtree(st.leaf_of_suffix_unchecked(bs.suffix), host)) ++out.base_suffix_violations;
  }
  return out;
}

namespace {

std::uint32_t probe_bound(std::size_t m) {
  if (m <= 1) return 1;
  return static_cast<std::uint32_t>(std::bit_width(m - 1)) + 1;  // ceil(log2 m) + 1
}

std::size_t route_slot(Route r) { return static_cast<std::size_t>(r); }

}  // namespace

AuditTally audit_text(const SuffixTree& st, const GroundTruth& truth, const AuditVariant& variant,
                      std::size_t max_counterexamples) {
  AuditTally tally;
  tally.texts = 1;
  tally.symbols = st.text().n();
  const OshrTree oshr(st);
  const auto idx = build_index(st, oshr, variant.config);
  const auto check = check_index(st, oshr, idx);
  tally.entry_violations = check.entry_violations;
  tally.base_suffix_violations = check.base_suffix_violations;
  tally.unsorted_lists = check.unsorted_lists;
  tally.sigma_bound_violations = idx.stats().sigma_bound_violations;
  tally.entries = idx.stats().total_stored();
  for (std::size_t k = 0; k < kOriginCount; ++k) tally.stored_by_origin[k] = idx.stats().stored[k];
  const auto sigma = alphabet(st.text()).size();
  if (tally.entries > 2LL * sigma * st.text().n()) tally.size_bound_violations = 1;

  const OtSearcher searcher(st, oshr, idx, variant.search);
  for (const auto& p : truth.patterns()) {
    const auto walk = st.walk(p);
    for (NodeId i : st.internal_nodes()) {
      const Query q{p, i};
      ++tally.pairs;
      const bool expected = truth.occurs(i, p);
      const auto got = searcher.search_located(q, walk);
      const auto base = walk_search_baseline(st, q);
      if (base.found != expected) ++tally.baseline_disagreements;
      if (got.found) {
        ++tally.found_by_route[route_slot(got.route)];
        if (got.origin) ++tally.found_by_origin[static_cast<std::size_t>(*got.origin)];
        if (got.fallback_hit) ++tally.fallback_hits;
        if (!verify_witness(st, q, got)) ++tally.witness_failures;
      }
      if (got.route == Route::BinarySearch && got.probes > probe_bound(idx.entries(walk.locus_below).size()))
        ++tally.probe_bound_violations;
      if (got.found != expected) {
        if (got.found)
          ++tally.spurious;
        else
          ++tally.misses;
        if (tally.counterexamples.size() < max_counterexamples) {
          auto lab = std::string(st.label(i));
          tally.counterexamples.push_back({std::string(st.text().body()), p, lab, got.found});
        }
      }
    }
  }
  return tally;
}

std::vector<std::string> audit_corpus(const AuditOptions& opts) {
  std::vector<std::string> corpus;
  if (opts.include_fixtures) {
    corpus.emplace_back("BANANA");
    corpus.emplace_back("MISSISSIPPI");
  }
  for (std::int64_t k = 0; k < opts.texts; ++k)
    corpus.push_back(random_corpus_text(opts.seed, static_cast<std::uint64_t>(k), opts.min_n, opts.max_n));
  return corpus;
}

std::optional<Counterexample> minimize_counterexample(const std::string& body, const AuditVariant& variant) {
  auto failure_at = [&](std::size_t len) -> std::optional<Counterexample> {
    const SuffixTree st(Text::with_sentinel(std::string_view(body).substr(0, len)));
    const GroundTruth truth(st, 16, std::max<Pos>(GroundTruth::kDefaultCap, st.text().n()));
    auto t = audit_text(st, truth, variant, 1);
    if (t.counterexamples.empty()) return std::nullopt;
    return t.counterexamples.front();
  };
  auto best = failure_at(body.size());
  if (!best) return std::nullopt;
  std::size_t lo = 1, hi = body.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (auto f = failure_at(mid)) {
      best = f;
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return best;
}

AuditReport audit(const AuditOptions& opts, const std::vector<AuditVariant>& variants) {
  const auto corpus = audit_corpus(opts);
  const auto count = static_cast<std::int64_t>(corpus.size());
  std::vector<std::vector<AuditTally>> per_text(corpus.size());

#pragma omp parallel for schedule(dynamic) if (opts.parallel)
  for (std::int64_t k = 0; k < count; ++k) {
    const auto& body = corpus[static_cast<std::size_t>(k)];
    const SuffixTree st(Text::with_sentinel(body));
    const GroundTruth truth(st, 16, std::max<Pos>(GroundTruth::kDefaultCap, opts.max_n));
    auto& row = per_text[static_cast<std::size_t>(k)];
    for (const auto& v : variants) row.push_back(audit_text(st, truth, v, opts.max_counterexamples));
  }

  AuditReport report;
  report.variants = variants;
  report.tallies.resize(variants.size());
  for (const auto& row : per_text)
    for (std::size_t v = 0; v < variants.size(); ++v) report.tallies[v].merge(row[v]);
  for (std::size_t v = 0; v < variants.size(); ++v) {
    auto& ce = report.tallies[v].counterexamples;
    if (ce.size() > opts.max_counterexamples) ce.resize(opts.max_counterexamples);
    if (opts.minimize && !ce.empty()) {
      if (auto m = minimize_counterexample(ce.front().text, variants[v])) ce.front() = *m;
    }
  }
  return report;
}

bool AuditReport::all_sound() const {
  return std::all_of(tallies.begin(), tallies.end(), [](const AuditTally& t) { return t.sound(); });
}

std::optional<std::size_t> AuditReport::first_complete() const {
  for (std::size_t v = 0; v < tallies.size(); ++v)
    if (tallies[v].misses == 0) return v;
  return std::nullopt;
}

std::string AuditReport::to_tsv() const {
  std::ostringstream os;
  os << "variant\ttexts\tpairs\tspurious\tmisses\tbaseline_disagreements\twitness_failures\tentry_violations"
        "\tbase_suffix_violations\tunsorted\tprobe_violations\tsigma_violations\tsize_violations\tfallback_hits"
        "\tentries\tsymbols\tstored_base_path\tstored_hanadi\tstored_srivastava"
        "\tfound_root\tfound_leaf\tfound_binary\tfound_base_suffix\n";
  for (std::size_t v = 0; v < tallies.size(); ++v) {
    const auto& t = tallies[v];
    os << variants[v].describe() << '\t' << t.texts << '\t' << t.pairs << '\t' << t.spurious << '\t' << t.misses
       << '\t' << t.baseline_disagreements << '\t' << t.witness_failures << '\t' << t.entry_violations << '\t'
       << t.base_suffix_violations << '\t' << t.unsorted_lists << '\t' << t.probe_bound_violations << '\t'
       << t.sigma_bound_violations << '\t' << t.size_bound_violations << '\t' << t.fallback_hits << '\t'
       << t.entries << '\t' << t.symbols << '\t' << t.stored_by_origin[0] << '\t' << t.stored_by_origin[1] << '\t'
       << t.stored_by_origin[2] << '\t' << t.found_by_route[route_slot(Route::RootTrivial)] << '\t'
       << t.found_by_route[route_slot(Route::LeafCase)] << '\t'
       << t.found_by_route[route_slot(Route::BinarySearch)] << '\t'
       << t.found_by_route[route_slot(Route::BaseSuffix)] << '\n';
  }
  return os.str();
}

std::string AuditReport::summary() const {
  std::ostringstream os;
  for (std::size_t v = 0; v < tallies.size(); ++v) {
    const auto& t = tallies[v];
    os << (t.sound() ? "sound  " : "UNSOUND") << ' ' << (t.misses == 0 ? "complete  " : "incomplete") << "  "
       << variants[v].describe() << "  misses=" << t.misses << " spurious=" << t.spurious
       << " fallback_hits=" << t.fallback_hits << '\n';
    for (const auto& ce : t.counterexamples) {
      os << "    " << (ce.spurious ? "spurious" : "miss") << ": text=" << ce.text << " node=\"" << ce.node_label
         << "\" pattern=\"" << ce.pattern << "\"\n";
    }
  }
  const auto complete = first_complete();
  os << "spurious hits: " << (all_sound() ? "none" : "PRESENT") << "\n";
  os << "complete configuration: " << (complete ? variants[*complete].describe() : std::string("none")) << '\n';
  return os.str();
}

}  // namespace otindex
