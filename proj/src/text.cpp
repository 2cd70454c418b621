#include "otindex/text.hpp"

#include <array>
#include <cctype>
#include <limits>

#include "otindex/error.hpp"

namespace otindex {

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Text Text::with_sentinel(std::string_view body) {
  if (body.empty()) throw Error(ErrorKind::EmptySequence, "empty sequence");
  if (body.size() >= static_cast<std::size_t>(std::numeric_limits<Pos>::max() - 1))
    throw Error(ErrorKind::OutOfRange, "text too long");
  // Byte 0 is the only value guaranteed to sort before every symbol, so any
  // occurrence of it leaves no admissible sentinel.
  if (body.find(kSentinel) != std::string_view::npos)
    throw Error(ErrorKind::AlphabetExhausted, "alphabet exhausted");
  std::string bytes(body);
  bytes.push_back(kSentinel);
  return Text(std::move(bytes));
}

std::uint64_t Text::hash() const noexcept { return fnv1a64(bytes_); }

std::string Text::display() const {
  std::string out(body());
  out.push_back('$');
  return out;
}

std::string preprocess_fasta(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  bool at_line_start = true;
  bool in_header = false;
  for (char c : raw) {
    if (c == '\n' || c == '\r') {
      at_line_start = true;
      in_header = false;
      continue;
    }
    if (at_line_start && c == '>') in_header = true;
    at_line_start = false;
    if (in_header) continue;
    out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (out.empty()) throw Error(ErrorKind::EmptySequence, "empty sequence");
  return out;
}

Alphabet alphabet(const Text& t) {
  std::array<bool, 256> seen{};
  for (unsigned char c : t.body()) seen[c] = true;
  Alphabet a;
  for (int c = 0; c < 256; ++c)
    if (seen[static_cast<std::size_t>(c)]) a.symbols.push_back(static_cast<unsigned char>(c));
  return a;
}

}  // namespace otindex
