#include "otindex/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "otindex/error.hpp"

namespace otindex {

std::vector<Pos> protocol_positions(Pos text_length, Pos length, int per_length) {
  std::vector<Pos> out;
  for (int i = 1; i <= per_length; ++i) {
    const std::int64_t pos = 10LL * i * length;
    if (pos + length > text_length) break;
    out.push_back(static_cast<Pos>(pos));
  }
  return out;
}

std::vector<ExtractedPattern> extract_patterns(const SuffixTree& st, const PatternProtocol& protocol) {
  std::vector<ExtractedPattern> out;
  const auto body = st.text().body();
  for (Pos len : protocol.lengths) {
    const auto positions = protocol_positions(st.text().n(), len, protocol.per_length);
    for (std::size_t k = 0; k < positions.size(); ++k) {
      const auto p = body.substr(static_cast<std::size_t>(positions[k]), static_cast<std::size_t>(len));
      const auto w = st.walk(p);
      if (st.is_leaf(w.locus_below)) continue;
      out.push_back({len, static_cast<int>(k) + 1, positions[k], std::string(p)});
    }
  }
  return out;
}

std::vector<NodeId> internal_nodes_at_depth(const SuffixTree& st, Pos d) {
  std::vector<NodeId> out;
  for (NodeId v : st.internal_nodes())
    if (st.depth(v) == d) out.push_back(v);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<NodeId> sample_from(std::vector<NodeId> nodes, Pos d, std::size_t cap, std::uint64_t seed) {
  if (nodes.size() > cap) {
    std::mt19937_64 rng(seed ^ (0xD1B54A32D192ED03ULL * static_cast<std::uint64_t>(d + 1)));
    for (std::size_t k = 0; k < cap; ++k) {
      const auto j = k + static_cast<std::size_t>(rng() % (nodes.size() - k));
      std::swap(nodes[k], nodes[j]);
    }
    nodes.resize(cap);
    std::sort(nodes.begin(), nodes.end());
  }
  return nodes;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  if (x.size() < 2) return 0;
  double mx = 0, my = 0;
  for (std::size_t k = 0; k < x.size(); ++k) mx += x[k], my += y[k];
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
    syy += (y[k] - my) * (y[k] - my);
  }
  return (sxx == 0 || syy == 0) ? 0 : sxy / std::sqrt(sxx * syy);
}

std::uint32_t probe_bound(std::size_t list_length) {
  if (list_length <= 1) return 1;
  return static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(list_length)))) + 1;
}

using Clock = std::chrono::steady_clock;

}  // namespace

std::vector<NodeId> sample_starting_nodes(const SuffixTree& st, Pos d, std::size_t cap, std::uint64_t seed) {
  return sample_from(internal_nodes_at_depth(st, d), d, cap, seed);
}

std::int64_t complexity(const SuffixTree& st, std::span<const NodeId> nodes) {
  std::int64_t total = 0;
  for (NodeId v : nodes)
    for (NodeId c = st.first_child(v); c != kNoNode; c = st.next_sibling(c))
      if (st.is_internal(c)) ++total;
  return total;
}

BenchReport run_bench(const OtSearcher& searcher, const BenchOptions& opts) {
  const auto& st = searcher.tree();
  const auto& idx = searcher.index();
  if (idx.config().length_mode.kind != LengthMode::Kind::All)
    throw Error(ErrorKind::InvalidArgument, "bench requires an index built with length mode 'all'");

  BenchReport rep;
  const auto patterns = extract_patterns(st, opts.protocol);
  std::int64_t positions = 0;
  for (Pos len : opts.protocol.lengths)
    positions += static_cast<std::int64_t>(protocol_positions(st.text().n(), len, opts.protocol.per_length).size());
  rep.patterns_extracted = static_cast<std::int64_t>(patterns.size());
  rep.patterns_skipped = positions - rep.patterns_extracted;

  std::vector<std::vector<NodeId>> by_depth(static_cast<std::size_t>(opts.max_depth) + 1);
  std::vector<double> depths, sizes;
  for (NodeId v : st.internal_nodes()) {
    if (v == kRoot) continue;
    const Pos d = st.depth(v);
    if (d >= opts.min_depth && d <= opts.max_depth) by_depth[static_cast<std::size_t>(d)].push_back(v);
    const auto m = static_cast<std::int64_t>(idx.entries(v).size());
    rep.max_list = std::max(rep.max_list, m);
    depths.push_back(d);
    sizes.push_back(static_cast<double>(m));
  }
  rep.list_size_depth_correlation = pearson(depths, sizes);

  std::vector<WalkOutcome> root_walks;
  root_walks.reserve(patterns.size());
  for (const auto& p : patterns) root_walks.push_back(st.walk(p.text));

  // Warm caches and branch predictors once; not timed.
  {
    int budget = opts.warmup_pairs;
    for (NodeId v : st.internal_nodes()) {
      if (budget <= 0 || v == kRoot) break;
      for (std::size_t k = 0; k < patterns.size() && budget > 0; ++k, --budget) {
        (void)searcher.search_located({patterns[k].text, v}, root_walks[k]);
        (void)walk_search_baseline(st, {patterns[k].text, v});
      }
    }
  }

  std::vector<QueryResult> ot_results, walk_results;
  for (Pos d = opts.min_depth; d <= opts.max_depth; ++d) {
    BenchRow row;
    row.depth = d;
    auto nodes = std::move(by_depth[static_cast<std::size_t>(d)]);
    std::sort(nodes.begin(), nodes.end());
    row.nodes_at_depth = static_cast<std::int64_t>(nodes.size());
    const auto sample = sample_from(std::move(nodes), d, opts.cap, opts.seed);
    row.starting_nodes = static_cast<std::int64_t>(sample.size());
    row.complexity = complexity(st, sample);
    row.patterns = static_cast<std::int64_t>(patterns.size());
    const auto pairs = patterns.size() * sample.size();
    row.pairs = static_cast<std::int64_t>(pairs);

    ot_results.assign(pairs, QueryResult{});
    walk_results.assign(pairs, QueryResult{});

    auto t0 = Clock::now();
    for (std::size_t k = 0; k < patterns.size(); ++k) {
      const auto walk = st.walk(patterns[k].text);
      for (std::size_t s = 0; s < sample.size(); ++s)
        ot_results[k * sample.size() + s] = searcher.search_located({patterns[k].text, sample[s]}, walk);
    }
    row.ot_time_s = std::chrono::duration<double>(Clock::now() - t0).count();

    t0 = Clock::now();
    for (std::size_t k = 0; k < patterns.size(); ++k)
      for (std::size_t s = 0; s < sample.size(); ++s)
        walk_results[k * sample.size() + s] = walk_search_baseline(st, {patterns[k].text, sample[s]});
    row.walk_time_s = std::chrono::duration<double>(Clock::now() - t0).count();

    for (std::size_t k = 0; k < patterns.size(); ++k) {
      for (std::size_t s = 0; s < sample.size(); ++s) {
        const auto& a = ot_results[k * sample.size() + s];
        const auto& b = walk_results[k * sample.size() + s];
        if (a.found != b.found) {
          std::ostringstream msg;
          msg << "bench disagreement: pattern \"" << patterns[k].text << "\" (length " << patterns[k].length
              << ", position " << patterns[k].position << ") node " << sample[s] << " depth " << d
              << ": ot=" << a.found << " walk=" << b.found;
          throw Error(ErrorKind::Internal, msg.str());
        }
        row.found += a.found ? 1 : 0;
        row.ot_probes += a.probes;
        row.walk_comparisons += static_cast<std::int64_t>(b.comparisons);
        row.max_probes = std::max(row.max_probes, a.probes);
        if (a.route == Route::BinarySearch || a.probes > 0) {
          const auto host = root_walks[k].locus_below;
          if (a.probes > probe_bound(idx.entries(host).size())) ++row.probe_bound_violations;
        }
      }
    }
    rep.pairs += row.pairs;
    rep.probe_bound_violations += row.probe_bound_violations;
    rep.rows.push_back(row);
  }

  std::vector<double> times;
  for (const auto& r : rep.rows)
    if (r.depth >= 5 && r.pairs > 0) times.push_back(r.ot_time_s / static_cast<double>(r.pairs));
  if (times.size() >= 2) {
    double mean = 0, var = 0;
    for (double t : times) mean += t;
    mean /= static_cast<double>(times.size());
    for (double t : times) var += (t - mean) * (t - mean);
    var /= static_cast<double>(times.size());
    rep.ot_time_cv_depth5 = mean > 0 ? std::sqrt(var) / mean : 0;
  }
  return rep;
}

std::string BenchReport::to_tsv() const {
  std::ostringstream out;
  out << kTsvHeader << '\n';
  out << std::setprecision(6) << std::fixed;
  for (const auto& r : rows) {
    out << r.depth << '\t' << r.nodes_at_depth << '\t' << r.patterns << '\t' << r.starting_nodes << '\t'
        << r.complexity << '\t' << r.ot_time_s << '\t' << r.walk_time_s << '\t' << r.ot_probes << '\t'
        << r.walk_comparisons << '\n';
  }
  return out.str();
}

std::string BenchReport::summary() const {
  std::ostringstream out;
  out << "patterns\t" << patterns_extracted << " (skipped " << patterns_skipped << ")\n";
  out << "pairs\t" << pairs << '\n';
  out << "probe_bound_violations\t" << probe_bound_violations << '\n';
  out << "max_list\t" << max_list << '\n';
  out << "list_size_depth_correlation\t" << list_size_depth_correlation << '\n';
  out << "ot_time_per_pair_cv_depth>=5\t" << ot_time_cv_depth5 << '\n';
  double ot = 0, walk = 0;
  for (const auto& r : rows) ot += r.ot_time_s, walk += r.walk_time_s;
  out << "ot_time_s\t" << ot << "\nwalk_time_s\t" << walk << '\n';
  return out.str();
}

std::vector<QueryResult> search_batch_serial(const OtSearcher& searcher, std::span<const Query> queries) {
  std::vector<QueryResult> out(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k) out[k] = searcher.search(queries[k]);
  return out;
}

std::vector<QueryResult> search_batch_parallel(const OtSearcher& searcher, std::span<const Query> queries) {
  std::vector<QueryResult> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = searcher.search(queries[static_cast<std::size_t>(k)]);
  return out;
}

std::vector<QueryResult> walk_batch_serial(const SuffixTree& st, std::span<const Query> queries) {
  std::vector<QueryResult> out(queries.size());
  for (std::size_t k = 0; k < queries.size(); ++k) out[k] = walk_search_baseline(st, queries[k]);
  return out;
}

std::vector<QueryResult> walk_batch_parallel(const SuffixTree& st, std::span<const Query> queries) {
  std::vector<QueryResult> out(queries.size());
  const auto n = static_cast<std::int64_t>(queries.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t k = 0; k < n; ++k) out[static_cast<std::size_t>(k)] = walk_search_baseline(st, queries[static_cast<std::size_t>(k)]);
  return out;
}

}  // namespace otindex
