/*
 * Copyright 2026 the pagetree authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// On-page layout for leaf and interior nodes, plus the intra-node search
// primitives. Everything here is a pure function over a caller-owned frame;
// byte offsets are fixed and little-endian so store files are portable
// (see FORMAT.md).

#pragma once

#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>

namespace pagetree {

using PageId = std::uint32_t;

/// Reserved "no page" value; never allocated.
inline constexpr PageId kNoPage = 0xFFFFFFFFu;

enum class PageKind : std::uint8_t { Leaf = 0, Interior = 1 };

enum class ErrorCode {
  InvalidConfig,
  CorruptPage,
  CorruptMetadata,
  OutOfRange,
  StoreFull,
  DuplicateKey,
  KeyNotFound,
  TreeFull,
  IoError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

namespace detail {

inline std::uint16_t load_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t load_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

inline std::uint64_t load_u64(const std::uint8_t* p) {
  return static_cast<std::uint64_t>(load_u32(p)) |
         (static_cast<std::uint64_t>(load_u32(p + 4)) << 32);
}

inline void store_u16(std::uint8_t* p, std::uint16_t v) {
  p[0] = static_cast<std::uint8_t>(v);
  p[1] = static_cast<std::uint8_t>(v >> 8);
}

inline void store_u32(std::uint8_t* p, std::uint32_t v) {
  p[0] = static_cast<std::uint8_t>(v);
  p[1] = static_cast<std::uint8_t>(v >> 8);
  p[2] = static_cast<std::uint8_t>(v >> 16);
  p[3] = static_cast<std::uint8_t>(v >> 24);
}

inline void store_u64(std::uint8_t* p, std::uint64_t v) {
  store_u32(p, static_cast<std::uint32_t>(v));
  store_u32(p + 4, static_cast<std::uint32_t>(v >> 32));
}

}  // namespace detail

/// Page geometry. The header is always 16 bytes:
///   offset 0  page_id         u32
///   offset 4  count           u16
///   offset 6  kind            u8   (0 = leaf, 1 = interior)
///   offset 7  reserved        u8   (zero)
///   offset 8  leftmost_child  u32  (interior only; kNoPage on leaves)
///   offset 12 reserved        u32  (zero)
/// The record area starts at offset 16. Leaf records are record_size bytes
/// (u32 key then the fixed payload); interior entries are 8 bytes
/// (u32 key, u32 child page id).
struct PageConfig {
  std::uint32_t page_size = 512;
  std::uint32_t record_size = 16;

  static constexpr std::uint32_t kKeySize = 4;
  static constexpr std::uint32_t kHeaderSize = 16;
  static constexpr std::uint32_t kInteriorEntrySize = 8;

  std::uint32_t leaf_capacity() const {
    return (page_size - kHeaderSize) / record_size;
  }
  std::uint32_t interior_capacity() const {
    return (page_size - kHeaderSize) / kInteriorEntrySize;
  }
  std::uint32_t value_size() const { return record_size - kKeySize; }

  std::uint32_t capacity(PageKind kind) const {
    return kind == PageKind::Leaf ? leaf_capacity() : interior_capacity();
  }

  void validate() const {
    if (record_size <= kKeySize)
      throw Error(ErrorCode::InvalidConfig, "record_size must exceed the 4-byte key");
    if (page_size < kHeaderSize + 2 * record_size)
      throw Error(ErrorCode::InvalidConfig, "page must hold at least two records");
    if (leaf_capacity() < 2 || interior_capacity() < 2)
      throw Error(ErrorCode::InvalidConfig, "node capacity below two");
  }
};

struct PageHeader {
  PageId page_id = 0;
  std::uint16_t count = 0;
  PageKind kind = PageKind::Leaf;
  PageId leftmost_child = kNoPage;

  bool operator==(const PageHeader&) const = default;
};

inline void encode_header(const PageConfig& cfg, const PageHeader& hdr,
                          std::span<std::uint8_t> frame) {
  if (hdr.count > cfg.capacity(hdr.kind))
    throw Error(ErrorCode::InvalidConfig, "header count exceeds node capacity");
  std::uint8_t* p = frame.data();
  detail::store_u32(p, hdr.page_id);
  detail::store_u16(p + 4, hdr.count);
  p[6] = static_cast<std::uint8_t>(hdr.kind);
  p[7] = 0;
  detail::store_u32(p + 8, hdr.kind == PageKind::Leaf ? kNoPage : hdr.leftmost_child);
  detail::store_u32(p + 12, 0);
}

inline PageHeader decode_header(const PageConfig& cfg, std::span<const std::uint8_t> frame) {
  const std::uint8_t* p = frame.data();
  PageHeader hdr;
  hdr.page_id = detail::load_u32(p);
  hdr.count = detail::load_u16(p + 4);
  if (p[6] > 1)
    throw Error(ErrorCode::CorruptPage, "invalid node kind byte");
  hdr.kind = static_cast<PageKind>(p[6]);
  if (hdr.count > cfg.capacity(hdr.kind))
    throw Error(ErrorCode::CorruptPage, "record count exceeds node capacity");
  // leftmost_child is meaningful only on interior nodes; normalize on leaves
  // so a zero-filled frame decodes to a valid empty leaf.
  hdr.leftmost_child =
      hdr.kind == PageKind::Leaf ? kNoPage : detail::load_u32(p + 8);
  return hdr;
}

inline std::uint32_t record_stride(const PageConfig& cfg, PageKind kind) {
  return kind == PageKind::Leaf ? cfg.record_size : PageConfig::kInteriorEntrySize;
}

inline std::uint32_t key_at(const PageConfig& cfg, std::span<const std::uint8_t> frame,
                            PageKind kind, std::uint32_t index) {
  return detail::load_u32(frame.data() + PageConfig::kHeaderSize +
                          index * record_stride(cfg, kind));
}

/// Leaf value bytes at a record slot.
inline std::span<const std::uint8_t> value_at(const PageConfig& cfg,
                                              std::span<const std::uint8_t> frame,
                                              std::uint32_t index) {
  return frame.subspan(PageConfig::kHeaderSize + index * cfg.record_size +
                           PageConfig::kKeySize,
                       cfg.value_size());
}

/// Interior entry child at an entry slot.
inline PageId child_at(const PageConfig& cfg, std::span<const std::uint8_t> frame,
                       std::uint32_t index) {
  return detail::load_u32(frame.data() + PageConfig::kHeaderSize +
                          index * PageConfig::kInteriorEntrySize + PageConfig::kKeySize);
}

inline void write_leaf_record(const PageConfig& cfg, std::span<std::uint8_t> frame,
                              std::uint32_t index, std::uint32_t key,
                              std::span<const std::uint8_t> value) {
  std::uint8_t* slot = frame.data() + PageConfig::kHeaderSize + index * cfg.record_size;
  detail::store_u32(slot, key);
  std::memcpy(slot + PageConfig::kKeySize, value.data(), cfg.value_size());
}

inline void write_interior_entry(const PageConfig& cfg, std::span<std::uint8_t> frame,
                                 std::uint32_t index, std::uint32_t key, PageId child) {
  std::uint8_t* slot =
      frame.data() + PageConfig::kHeaderSize + index * PageConfig::kInteriorEntrySize;
  detail::store_u32(slot, key);
  detail::store_u32(slot + PageConfig::kKeySize, child);
}

/// Smallest index i in [0, count] with record[i].key >= key. Binary search
/// over the live record area only; slots at or beyond count are never read,
/// so stale bytes left behind by a split cannot influence the result.
inline std::uint32_t find_position(const PageConfig& cfg,
                                   std::span<const std::uint8_t> frame,
                                   std::uint32_t key) {
  const PageHeader hdr = decode_header(cfg, frame);
  std::uint32_t lo = 0;
  std::uint32_t hi = hdr.count;
  while (lo < hi) {
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (key_at(cfg, frame, hdr.kind, mid) < key)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

/// Child slot to descend into for `key`: 0 selects leftmost_child, slot s >= 1
/// selects entry[s-1].child. Keys equal to a separator belong to the child
/// right of it.
inline std::uint32_t descend_slot(const PageConfig& cfg,
                                  std::span<const std::uint8_t> frame,
                                  std::uint32_t key) {
  const PageHeader hdr = decode_header(cfg, frame);
  std::uint32_t lo = 0;
  std::uint32_t hi = hdr.count;
  while (lo < hi) {  // upper bound: first entry with key > `key`
    std::uint32_t mid = lo + (hi - lo) / 2;
    if (key_at(cfg, frame, hdr.kind, mid) <= key)
      lo = mid + 1;
    else
      hi = mid;
  }
  return lo;
}

inline PageId child_by_slot(const PageConfig& cfg, std::span<const std::uint8_t> frame,
                            std::uint32_t slot) {
  const PageHeader hdr = decode_header(cfg, frame);
  PageId child = slot == 0 ? hdr.leftmost_child : child_at(cfg, frame, slot - 1);
  if (child == kNoPage)
    throw Error(ErrorCode::CorruptPage, "interior node references no-page sentinel");
  return child;
}

inline PageId child_for_key(const PageConfig& cfg, std::span<const std::uint8_t> frame,
                            std::uint32_t key) {
  return child_by_slot(cfg, frame, descend_slot(cfg, frame, key));
}

}  // namespace pagetree
