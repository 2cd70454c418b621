#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "otindex/ot_build.hpp"

namespace otindex {

/// File layout: "OTIX", one version byte, then little-endian fields: the
/// text hash, node count, build config, stats, entry lists and base-suffix
/// lists (each as offsets followed by items).
inline constexpr char kIndexMagic[4] = {'O', 'T', 'I', 'X'};
inline constexpr std::uint8_t kIndexVersion = 1;

std::string serialize(const OtIndex& idx);

/// Throws Error{BadMagic}, Error{VersionMismatch} or Error{Truncated} on a
/// malformed buffer, and Error{HashMismatch} when `expected_text_hash` is
/// given and differs from the stored hash.
OtIndex deserialize(std::string_view bytes, std::optional<std::uint64_t> expected_text_hash = std::nullopt);

void save_index(const OtIndex& idx, const std::string& path);
OtIndex load_index(const std::string& path, std::optional<std::uint64_t> expected_text_hash = std::nullopt);

}  // namespace otindex
