#include "otindex/serialize.hpp"

#include <cstring>
#include <fstream>
#include <iterator>

#include "otindex/error.hpp"

namespace otindex {
namespace {

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void i32(std::int32_t v) {
    const auto u = static_cast<std::uint32_t>(v);
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(u >> (8 * i)));
  }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(in_[pos_++]);
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(in_[pos_++])) << (8 * i);
    return v;
  }
  std::int32_t i32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(in_[pos_++])) << (8 * i);
    return static_cast<std::int32_t>(v);
  }
  std::int64_t i64() { return static_cast<std::int64_t>(u64()); }

  /// Reads a count and checks that `count * item_bytes` bytes remain, so a
  /// corrupt length cannot trigger a huge allocation.
  std::size_t count(std::size_t item_bytes) {
    const auto c = u64();
    if (item_bytes > 0 && c > remaining() / item_bytes) throw Error(ErrorKind::Truncated, "index file truncated");
    return static_cast<std::size_t>(c);
  }
  std::size_t remaining() const noexcept { return in_.size() - pos_; }

 private:
  void need(std::size_t k) const {
    if (remaining() < k) throw Error(ErrorKind::Truncated, "index file truncated");
  }
  std::string_view in_;
  std::size_t pos_ = 0;
};

constexpr std::size_t kEntryBytes = 4 + 4 + 4 + 4 + 1 + 4;
constexpr std::size_t kBaseSuffixBytes = 4 + 4;

void write_config(Writer& w, const BuildConfig& c) {
  w.u8(static_cast<std::uint8_t>(c.length_mode.kind));
  w.i32(c.length_mode.lo);
  w.i32(c.length_mode.hi);
  w.u8(static_cast<std::uint8_t>(c.classification));
  w.u8(static_cast<std::uint8_t>(c.keying));
  w.u8(c.exclusion_rule ? 1 : 0);
  w.u8(c.prune_covered ? 1 : 0);
  w.u8(c.prune_fallback ? 1 : 0);
}

std::uint8_t bounded(Reader& r, std::uint8_t max, const char* what) {
  const auto v = r.u8();
  if (v > max) throw Error(ErrorKind::InvalidArgument, std::string("index file has invalid ") + what);
  return v;
}

BuildConfig read_config(Reader& r) {
  BuildConfig c;
  c.length_mode.kind = static_cast<LengthMode::Kind>(bounded(r, 3, "length mode"));
  c.length_mode.lo = r.i32();
  c.length_mode.hi = r.i32();
  c.classification = static_cast<ClassificationMode>(bounded(r, 2, "classification"));
  c.keying = static_cast<SpecialKeying>(bounded(r, 1, "keying"));
  c.exclusion_rule = bounded(r, 1, "flag") != 0;
  c.prune_covered = bounded(r, 1, "flag") != 0;
  c.prune_fallback = bounded(r, 1, "flag") != 0;
  return c;
}

void write_stats(Writer& w, const IndexStats& s) {
  for (auto v : s.inserted) w.i64(v);
  for (auto v : s.stored) w.i64(v);
  for (auto v : {s.reference_contexts, s.special_paths, s.base_paths, s.base_paths_indexed,
                 s.base_paths_already_indexed, s.base_paths_excluded, s.duplicate_insertions, s.pruned, s.hosts,
                 s.max_list, s.base_suffixes, s.max_base_suffixes_per_node, s.sigma_bound_violations,
                 s.hanadi_nodes, s.srivastava_nodes})
    w.i64(v);
}

IndexStats read_stats(Reader& r) {
  IndexStats s;
  for (auto& v : s.inserted) v = r.i64();
  for (auto& v : s.stored) v = r.i64();
  for (auto* v : {&s.reference_contexts, &s.special_paths, &s.base_paths, &s.base_paths_indexed,
                  &s.base_paths_already_indexed, &s.base_paths_excluded, &s.duplicate_insertions, &s.pruned,
                  &s.hosts, &s.max_list, &s.base_suffixes, &s.max_base_suffixes_per_node,
                  &s.sigma_bound_violations, &s.hanadi_nodes, &s.srivastava_nodes})
    *v = r.i64();
  return s;
}

void write_offsets(Writer& w, const std::vector<std::int64_t>& offsets) {
  w.u64(offsets.size());
  for (auto o : offsets) w.i64(o);
}

std::vector<std::int64_t> read_offsets(Reader& r, NodeId node_count) {
  const auto c = r.count(8);
  if (c != 0 && c != static_cast<std::size_t>(node_count) + 1)
    throw Error(ErrorKind::InvalidArgument, "index file offsets do not match node count");
  std::vector<std::int64_t> offsets(c);
  for (auto& o : offsets) o = r.i64();
  return offsets;
}

void check_offsets(const std::vector<std::int64_t>& offsets, std::size_t items) {
  if (offsets.empty()) {
    if (items != 0) throw Error(ErrorKind::InvalidArgument, "index file has items without offsets");
    return;
  }
  if (offsets.front() != 0 || offsets.back() != static_cast<std::int64_t>(items))
    throw Error(ErrorKind::InvalidArgument, "index file offsets inconsistent");
  for (std::size_t i = 1; i < offsets.size(); ++i)
    if (offsets[i] < offsets[i - 1]) throw Error(ErrorKind::InvalidArgument, "index file offsets inconsistent");
}

}  // namespace

std::string serialize(const OtIndex& idx) {
  Writer w;
  for (char c : kIndexMagic) w.u8(static_cast<std::uint8_t>(c));
  w.u8(kIndexVersion);
  w.u64(idx.text_hash());
  w.i32(idx.node_count());
  write_config(w, idx.config());
  write_stats(w, idx.stats());

  write_offsets(w, idx.lists().offsets());
  w.u64(idx.lists().items().size());
  for (const auto& e : idx.lists().items()) {
    w.i32(e.left_ot);
    w.i32(e.right_ot);
    w.i32(e.key);
    w.i32(e.occ);
    w.u8(static_cast<std::uint8_t>(e.origin));
    w.i32(e.bottom);
  }
  write_offsets(w, idx.base_suffix_lists().offsets());
  w.u64(idx.base_suffix_lists().items().size());
  for (const auto& b : idx.base_suffix_lists().items()) {
    w.i32(b.suffix);
    w.i32(b.reference_leaf);
  }
  return w.take();
}

OtIndex deserialize(std::string_view bytes, std::optional<std::uint64_t> expected_text_hash) {
  if (bytes.size() < sizeof kIndexMagic &&
      (bytes.empty() || std::memcmp(bytes.data(), kIndexMagic, bytes.size()) == 0))
    throw Error(ErrorKind::Truncated, "index file truncated");
  if (bytes.size() < sizeof kIndexMagic || std::memcmp(bytes.data(), kIndexMagic, sizeof kIndexMagic) != 0)
    throw Error(ErrorKind::BadMagic, "not an OTIX index file (bad magic)");
  Reader r(bytes.substr(sizeof kIndexMagic));
  const auto version = r.u8();
  if (version != kIndexVersion)
    throw Error(ErrorKind::VersionMismatch, "index file version " + std::to_string(version) + ", expected " +
                                                std::to_string(kIndexVersion));
  const auto hash = r.u64();
  if (expected_text_hash && *expected_text_hash != hash)
    throw Error(ErrorKind::HashMismatch, "index was built for a different text (hash mismatch)");
  const NodeId node_count = r.i32();
  if (node_count < 0) throw Error(ErrorKind::InvalidArgument, "index file has negative node count");
  const auto config = read_config(r);
  const auto stats = read_stats(r);

  auto entry_offsets = read_offsets(r, node_count);
  std::vector<OtEntry> entries(r.count(kEntryBytes));
  for (auto& e : entries) {
    e.left_ot = r.i32();
    e.right_ot = r.i32();
    e.key = r.i32();
    e.occ = r.i32();
    e.origin = static_cast<Origin>(bounded(r, 2, "origin"));
    e.bottom = r.i32();
  }
  check_offsets(entry_offsets, entries.size());

  auto base_offsets = read_offsets(r, node_count);
  std::vector<BaseSuffix> base(r.count(kBaseSuffixBytes));
  for (auto& b : base) {
    b.suffix = r.i32();
    b.reference_leaf = r.i32();
  }
  check_offsets(base_offsets, base.size());
  if (r.remaining() != 0) throw Error(ErrorKind::InvalidArgument, "index file has trailing bytes");

  return OtIndex(config, hash, node_count, NodeLists<OtEntry>(std::move(entry_offsets), std::move(entries)),
                 NodeLists<BaseSuffix>(std::move(base_offsets), std::move(base)), stats);
}

void save_index(const OtIndex& idx, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot open " + path + " for writing");
  const auto bytes = serialize(idx);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::InvalidArgument, "write to " + path + " failed");
}

OtIndex load_index(const std::string& path, std::optional<std::uint64_t> expected_text_hash) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return deserialize(bytes, expected_text_hash);
}

}  // namespace otindex
