#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace otindex {

struct GenomeOptions {
  std::uint64_t seed = 42;
  std::size_t length = 600'000;  // bases across all records
  int records = 3;
  int line_width = 60;
  double repeat_fraction = 0.35;  // share of bases drawn from repeat families
  double mutation_rate = 0.08;    // per-base divergence of a repeat copy
  int repeat_families = 24;
  double n_run_rate = 2e-5;       // runs of N per base
};

/// Deterministic genome-like FASTA: an order-3 Markov background with GC
/// drift, interspersed mutated copies of repeat families (soft-masked in
/// lowercase), short tandem repeats, N runs and '>' header lines.
std::string synthetic_genome_fasta(const GenomeOptions& opts);

}  // namespace otindex
