#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace otindex {

/// Position into a Text. Texts are limited to 2^31 - 2 symbols.
using Pos = std::int32_t;

/// A sentinel-terminated byte sequence. The sentinel is the byte 0, which is
/// smaller than every symbol of the alphabet and occurs exactly once.
class Text {
 public:
  static constexpr char kSentinel = '\0';

  Text() = default;

  /// Appends the sentinel. Throws Error{AlphabetExhausted} when the input
  /// already uses byte 0 (the only byte value that can sort first).
  static Text with_sentinel(std::string_view body);

  std::string_view bytes() const noexcept { return bytes_; }
  /// Number of original symbols, excluding the sentinel.
  Pos n() const noexcept { return static_cast<Pos>(bytes_.size()) - 1; }
  Pos size() const noexcept { return static_cast<Pos>(bytes_.size()); }
  std::string_view body() const noexcept {
    return std::string_view(bytes_).substr(0, bytes_.size() - 1);
  }
  char operator[](Pos i) const noexcept { return bytes_[static_cast<std::size_t>(i)]; }

  /// 64-bit FNV-1a over the bytes, sentinel included.
  std::uint64_t hash() const noexcept;

  /// Renders the text with the sentinel shown as '$'.
  std::string display() const;

  friend bool operator==(const Text&, const Text&) = default;

 private:
  explicit Text(std::string bytes) : bytes_(std::move(bytes)) {}
  std::string bytes_;
};

struct Alphabet {
  std::vector<unsigned char> symbols;  // ascending, sentinel excluded
  int size() const noexcept { return static_cast<int>(symbols.size()); }
  int size_with_sentinel() const noexcept { return size() + 1; }
};

/// Strips '>' header lines and CR/LF bytes and uppercases ASCII letters.
/// Throws Error{EmptySequence} when nothing remains.
std::string preprocess_fasta(std::string_view raw);

Alphabet alphabet(const Text& t);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace otindex
