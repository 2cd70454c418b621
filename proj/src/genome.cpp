#include "otindex/genome.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <random>
#include <vector>

namespace otindex {
namespace {

constexpr char kBases[4] = {'A', 'C', 'G', 'T'};

class Background {
 public:
  explicit Background(std::mt19937_64& rng) {
    std::gamma_distribution<double> g(0.6, 1.0);
    for (auto& row : probs_) {
      double sum = 0;
      for (auto& p : row) sum += (p = g(rng) + 0.05);
      for (auto& p : row) p /= sum;
    }
  }

  char next(std::mt19937_64& rng, int ctx) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double x = u(rng);
    const auto& row = probs_[static_cast<std::size_t>(ctx)];
    for (int b = 0; b < 3; ++b) {
      if ((x -= row[static_cast<std::size_t>(b)]) < 0) return kBases[b];
    }
    return kBases[3];
  }

 private:
  std::array<std::array<double, 4>, 64> probs_{};
};

int code(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'C': return 1;
    case 'G': return 2;
    case 'T': return 3;
    default: return 0;
  }
}

std::string mutate(const std::string& s, double rate, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    const double x = u(rng);
    if (x < rate * 0.8) {
      out.push_back(kBases[rng() % 4]);
    } else if (x < rate * 0.9) {
      // deletion
    } else if (x < rate) {
      out.push_back(c);
      out.push_back(kBases[rng() % 4]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string synthetic_genome_fasta(const GenomeOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const Background bg(rng);

  std::vector<std::string> families;
  for (int f = 0; f < opts.repeat_families; ++f) {
    const auto len = 80 + static_cast<std::size_t>(rng() % 2400);
    std::string unit;
    int ctx = 0;
    for (std::size_t i = 0; i < len; ++i) {
      const char c = bg.next(rng, ctx);
      unit.push_back(c);
      ctx = ((ctx << 2) | code(c)) & 63;
    }
    families.push_back(std::move(unit));
  }

  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::string seq;
  seq.reserve(opts.length + 4096);
  int ctx = 0;
  while (seq.size() < opts.length) {
    const double x = u(rng);
    if (x < opts.repeat_fraction / 300.0) {
      const auto& fam = families[rng() % families.size()];
      std::string copy = mutate(fam, opts.mutation_rate * (0.25 + u(rng)), rng);
      if (rng() % 2) {
        std::reverse(copy.begin(), copy.end());
        for (auto& c : copy) c = kBases[3 - code(c)];
      }
      for (auto& c : copy) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      seq += copy;
    } else if (x < opts.repeat_fraction / 300.0 + 1.0 / 4000.0) {
      const auto unit_len = 1 + static_cast<std::size_t>(rng() % 6);
      std::string unit;
      for (std::size_t i = 0; i < unit_len; ++i) unit.push_back(kBases[rng() % 4]);
      const auto copies = 6 + static_cast<int>(rng() % 30);
      for (int k = 0; k < copies; ++k) seq += mutate(unit, 0.03, rng);
    } else if (x < opts.repeat_fraction / 300.0 + 1.0 / 4000.0 + opts.n_run_rate) {
      seq.append(10 + rng() % 500, 'N');
    } else {
      const char c = bg.next(rng, ctx);
      seq.push_back(c);
      ctx = ((ctx << 2) | code(c)) & 63;
    }
  }
  seq.resize(opts.length);

  std::string fasta;
  const int records = std::max(1, opts.records);
  const std::size_t per = (seq.size() + static_cast<std::size_t>(records) - 1) / static_cast<std::size_t>(records);
  const auto width = static_cast<std::size_t>(std::max(1, opts.line_width));
  for (int r = 0; r < records; ++r) {
    const std::size_t begin = static_cast<std::size_t>(r) * per;
    if (begin >= seq.size()) break;
    const std::size_t end = std::min(seq.size(), begin + per);
    fasta += ">synthetic_chr" + std::to_string(r + 1) + " seed=" + std::to_string(opts.seed) + "\n";
    for (std::size_t i = begin; i < end; i += width) {
      fasta.append(seq, i, std::min(width, end - i));
      fasta.push_back('\n');
    }
  }
  return fasta;
}

}  // namespace otindex
