#pragma once

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "otindex/suffix_tree.hpp"

namespace otindex::testing {

inline NodeId node_of(const SuffixTree& st, std::string_view label) {
  const auto w = st.walk(label);
  if (w.matched != static_cast<Pos>(label.size()) || !w.exact_node) return kNoNode;
  return w.locus_below;
}

inline std::vector<Pos> naive_occurrences(std::string_view text, std::string_view p) {
  std::vector<Pos> out;
  if (p.size() > text.size()) return out;
  for (std::size_t i = 0; i + p.size() <= text.size(); ++i)
    if (text.substr(i, p.size()) == p) out.push_back(static_cast<Pos>(i));
  return out;
}

inline std::string random_text(std::uint64_t seed, std::size_t n, int sigma) {
  std::mt19937_64 rng(seed);
  std::string s(n, 'A');
  for (auto& c : s) c = static_cast<char>('A' + static_cast<int>(rng() % static_cast<std::uint64_t>(sigma)));
  return s;
}

/// Label with the sentinel byte stripped, for readable assertions.
inline std::string plain_label(const SuffixTree& st, NodeId v) {
  std::string s(st.label(v));
  if (!s.empty() && s.back() == '\0') s.pop_back();
  return s;
}

}  // namespace otindex::testing
