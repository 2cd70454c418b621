// Command-line front end: preprocessing, tree/OSHR statistics, index build,
// queries, the differential audit and the benchmark protocol.

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "otindex/bench.hpp"
#include "otindex/error.hpp"
#include "otindex/genome.hpp"
#include "otindex/oracle.hpp"
#include "otindex/serialize.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace otindex;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

// Text arguments may be raw FASTA or an already preprocessed file; the
// preprocessing is idempotent on the latter.
Text load_text(const std::string& path) { return Text::with_sentinel(preprocess_fasta(read_file(path))); }

NodeId resolve_node(const SuffixTree& st, const std::string& spec) {
  const bool numeric = !spec.empty() && std::all_of(spec.begin(), spec.end(), [](unsigned char c) { return std::isdigit(c); });
  if (numeric) {
    const auto id = std::stoll(spec);
    if (id < 0 || id >= st.node_count() || !st.is_internal(static_cast<NodeId>(id)))
      throw Error(ErrorKind::InvalidArgument, "node " + spec + " is not an internal node");
    return static_cast<NodeId>(id);
  }
  if (spec == "root" || spec.empty()) return kRoot;
  const auto w = st.walk(spec);
  if (w.matched != static_cast<Pos>(spec.size()) || !w.exact_node || !st.is_internal(w.locus_below))
    throw Error(ErrorKind::InvalidArgument, "path label \"" + spec + "\" does not end at an internal node");
  return w.locus_below;
}

int cmd_preprocess(const std::string& in, const std::string& out) {
  write_file(out, preprocess_fasta(read_file(in)));
  return 0;
}

int cmd_stats(const std::string& path) {
  const SuffixTree st(load_text(path));
  const auto s = st.stats();
  const auto a = alphabet(st.text());
  std::cout << "row\tvalue\n";
  std::cout << "No. of alphabets\t" << a.size() << '\n';
  std::cout << "No. of alphabets (with sentinel)\t" << a.size_with_sentinel() << '\n';
  std::cout << "No. of nuc/leaf nodes\t" << s.leaves_excluding_sentinel() << '\n';
  std::cout << "No. of nuc/leaf nodes (raw)\t" << s.leaves << '\n';
  std::cout << "No. of Internal nodes\t" << s.internal_excluding_root() << '\n';
  std::cout << "No. of Internal nodes (raw)\t" << s.internal_nodes << '\n';
  for (const auto& [d, c] : s.internal_by_depth) {
    if (d > 20) break;
    std::cout << "No of nodes at depth " << d << '\t' << c << '\n';
  }
  return 0;
}

int cmd_oshr_stats(const std::string& path) {
  const SuffixTree st(load_text(path));
  const OshrTree oshr(st);
  const auto contexts = reference_leaf_contexts(st);
  const auto base = base_suffixes_from_reference_leaves(st, contexts);
  const auto refint = reference_internal_nodes(st);
  std::int64_t with_refint = 0;
  std::map<std::size_t, std::int64_t> hist;
  for (NodeId v : st.internal_nodes()) {
    ++hist[base.at(v).size()];
    if (!refint.at(v).empty()) ++with_refint;
  }
  std::cout << "metric\tvalue\n";
  std::cout << "oshr_nodes\t" << oshr.node_count() << '\n';
  std::cout << "oshr_internal\t" << oshr.node_count() - oshr.leaf_count() << '\n';
  std::cout << "oshr_leaves\t" << oshr.leaf_count() << '\n';
  std::cout << "reference_leaf_contexts\t" << contexts.size() << '\n';
  std::cout << "nodes_with_reference_internal\t" << with_refint << '\n';
  std::cout << "base_suffixes\t" << base.total() << '\n';
  for (const auto& [k, c] : hist) std::cout << "nodes_with_" << k << "_base_suffixes\t" << c << '\n';
  return 0;
}

void print_index_stats(const OtIndex& idx, std::int64_t n, int sigma) {
  const auto& s = idx.stats();
  std::cout << "row\tvalue\n";
  std::cout << "Size of index of base paths\t" << s.stored[0] << '\n';
  std::cout << "Size of index of Hanadi nodes\t" << s.stored[1] << '\n';
  std::cout << "Size of index of Srivastava nodes\t" << s.stored[2] << '\n';
  std::cout << "Total size of three indexes\t" << s.total_stored() << '\n';
  std::cout << "config\t" << idx.config().describe() << '\n';
  std::cout << "inserted_base_paths\t" << s.inserted[0] << '\n';
  std::cout << "inserted_hanadi\t" << s.inserted[1] << '\n';
  std::cout << "inserted_srivastava\t" << s.inserted[2] << '\n';
  std::cout << "pruned\t" << s.pruned << '\n';
  std::cout << "reference_contexts\t" << s.reference_contexts << '\n';
  std::cout << "hanadi_nodes\t" << s.hanadi_nodes << '\n';
  std::cout << "srivastava_nodes\t" << s.srivastava_nodes << '\n';
  std::cout << "special_paths\t" << s.special_paths << '\n';
  std::cout << "base_paths\t" << s.base_paths << '\n';
  std::cout << "base_paths_indexed\t" << s.base_paths_indexed << '\n';
  std::cout << "base_paths_already_indexed\t" << s.base_paths_already_indexed << '\n';
  std::cout << "base_paths_excluded\t" << s.base_paths_excluded << '\n';
  std::cout << "hosts\t" << s.hosts << '\n';
  std::cout << "max_list\t" << s.max_list << '\n';
  std::cout << "base_suffixes\t" << s.base_suffixes << '\n';
  std::cout << "max_base_suffixes_per_node\t" << s.max_base_suffixes_per_node << '\n';
  if (n > 0) {
    std::cout << "n\t" << n << "\nsigma\t" << sigma << '\n';
    std::cout << "entries_per_sigma_n\t" << static_cast<double>(s.total_stored()) / static_cast<double>(sigma * n) << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OT index: under-node pattern queries over suffix trees"};
  app.require_subcommand(1);

  std::string in_path, out_path, text_path, index_path;

  auto* pre = app.add_subcommand("preprocess", "Strip FASTA headers and newlines, uppercase");
  pre->add_option("input", in_path, "FASTA input")->required();
  pre->add_option("output", out_path, "one-line output")->required();

  auto* stats = app.add_subcommand("stats", "Suffix tree statistics");
  stats->add_option("text", text_path)->required();

  auto* oshr_stats = app.add_subcommand("oshr-stats", "OSHR tree, contexts and base suffixes");
  oshr_stats->add_option("text", text_path)->required();

  std::string length_mode = "all", classification = "union", keying = "chain";
  bool no_exclusion = false, no_prune = false;
  auto* build = app.add_subcommand("build", "Build and save an OT index");
  build->add_option("text", text_path)->required();
  build->add_option("-o,--output", index_path, "index file")->required();
  build->add_option("--length-mode", length_mode, "all | exact:L | atmost:L | range:A-B");
  build->add_option("--classification", classification, "definition | caption | union");
  build->add_option("--keying", keying, "top | chain");
  build->add_flag("--no-exclusion", no_exclusion, "disable the base-path exclusion rule");
  build->add_flag("--no-prune", no_prune, "keep redundant entries");

  auto* istats = app.add_subcommand("index-stats", "Sub-index sizes of a saved index");
  istats->add_option("index", index_path)->required();
  istats->add_option("--text", text_path, "text the index was built for (adds n and sigma)");

  std::string pattern, node_spec;
  bool baseline = false;
  auto* query = app.add_subcommand("query", "Does the pattern occur immediately under a node");
  query->add_option("index", index_path)->required();
  query->add_option("text", text_path)->required();
  query->add_option("--pattern", pattern)->required();
  query->add_option("--node", node_spec, "node id or path label")->required();
  query->add_flag("--baseline", baseline, "also run the walk baseline");

  AuditOptions aopts;
  std::string configs = "all";
  int threads = 0;
  bool serial = false;
  auto* audit_cmd = app.add_subcommand("audit", "Differential audit against a naive oracle");
  audit_cmd->add_option("--seed", aopts.seed);
  audit_cmd->add_option("--texts", aopts.texts);
  audit_cmd->add_option("--min-n", aopts.min_n);
  audit_cmd->add_option("--max-n", aopts.max_n);
  audit_cmd->add_option("--configs", configs, "all | default")->check(CLI::IsMember({"all", "default"}));
  audit_cmd->add_option("-o,--output", out_path, "write the TSV here instead of stdout");
  audit_cmd->add_option("--threads", threads);
  audit_cmd->add_flag("--serial", serial, "run the serial reference loop");

  BenchOptions bopts;
  auto* bench = app.add_subcommand("bench", "Depth-stratified OT vs walk benchmark");
  bench->add_option("index", index_path)->required();
  bench->add_option("text", text_path)->required();
  bench->add_option("--seed", bopts.seed);
  bench->add_option("--cap", bopts.cap);
  bench->add_option("-o,--output", out_path, "TSV report")->required();

  GenomeOptions gopts;
  auto* synth = app.add_subcommand("synth-genome", "Write a deterministic genome-like FASTA");
  synth->add_option("output", out_path)->required();
  synth->add_option("--length", gopts.length);
  synth->add_option("--seed", gopts.seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*pre) return cmd_preprocess(in_path, out_path);
    if (*stats) return cmd_stats(text_path);
    if (*oshr_stats) return cmd_oshr_stats(text_path);

    if (*build) {
      const SuffixTree st(load_text(text_path));
      const OshrTree oshr(st);
      BuildConfig cfg;
      cfg.length_mode = parse_length_mode(length_mode);
      cfg.classification = parse_classification(classification);
      cfg.keying = parse_keying(keying);
      cfg.exclusion_rule = !no_exclusion;
      cfg.prune_covered = cfg.prune_fallback = !no_prune;
      const auto idx = build_index(st, oshr, cfg);
      save_index(idx, index_path);
      print_index_stats(idx, st.text().n(), alphabet(st.text()).size());
      return 0;
    }

    if (*istats) {
      if (text_path.empty()) {
        print_index_stats(load_index(index_path), 0, 0);
      } else {
        const auto text = load_text(text_path);
        const auto idx = load_index(index_path, text.hash());
        print_index_stats(idx, text.n(), alphabet(text).size());
      }
      return 0;
    }

    if (*query) {
      const SuffixTree st(load_text(text_path));
      const OshrTree oshr(st);
      const auto idx = load_index(index_path, st.text().hash());
      const OtSearcher searcher(st, oshr, idx);
      const Query q{pattern, resolve_node(st, node_spec)};
      const auto r = searcher.search(q);
      std::cout << "method\tnode\tfound\troute\twitness\tprobes\tbase_checks\tcomparisons\torigin\n";
      std::cout << "ot\t" << q.start_node << '\t' << r.found << '\t' << route_name(r.route) << '\t'
                << (r.witness ? std::to_string(*r.witness) : "-") << '\t' << r.probes << '\t' << r.base_checks << '\t'
                << r.comparisons << '\t' << (r.origin ? origin_name(*r.origin) : "-") << '\n';
      if (baseline) {
        const auto b = walk_search_baseline(st, q);
        std::cout << "walk\t" << q.start_node << '\t' << b.found << '\t' << route_name(b.route) << '\t'
                  << (b.witness ? std::to_string(*b.witness) : "-") << "\t0\t0\t" << b.comparisons << "\t-\n";
        if (b.found != r.found) {
          std::cerr << "error: OT index and walk baseline disagree\n";
          return 3;
        }
      }
      return 0;
    }

    if (*audit_cmd) {
#ifdef _OPENMP
      if (threads > 0) omp_set_num_threads(threads);
#endif
      aopts.parallel = !serial;
      const auto variants = configs == "all" ? audit_matrix_all() : std::vector<AuditVariant>{audit_default()};
      const auto rep = audit(aopts, variants);
      if (out_path.empty()) {
        std::cout << rep.to_tsv();
      } else {
        write_file(out_path, rep.to_tsv());
      }
      std::cerr << rep.summary();
      if (!rep.all_sound()) return 2;
      if (!rep.first_complete()) return 3;
      return 0;
    }

    if (*bench) {
      const SuffixTree st(load_text(text_path));
      const OshrTree oshr(st);
      const auto idx = load_index(index_path, st.text().hash());
      const OtSearcher searcher(st, oshr, idx);
      const auto rep = run_bench(searcher, bopts);
      write_file(out_path, rep.to_tsv());
      std::cerr << rep.summary();
      return rep.probe_bound_violations == 0 ? 0 : 4;
    }

    if (*synth) {
      write_file(out_path, synthetic_genome_fasta(gopts));
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
