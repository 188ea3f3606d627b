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

// Page-granular storage devices with exact I/O accounting. The model is an
// SD card behind an FTL: logical in-place overwrite, page-at-a-time reads
// and writes, no erase-block bookkeeping. Page 0 is the metadata page; data
// pages are allocated monotonically from 1.

#pragma once

#include <pagetree/page_format.hpp>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

namespace pagetree {

/// Physical I/O tallies. Data-page traffic (id >= 1) and metadata-page
/// traffic (id 0) are accounted separately so benchmark figures count tree
/// pages only; every read_page/write_page call increments exactly one
/// counter of each pair.
struct IoCounters {
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t meta_reads = 0;
  std::uint64_t meta_writes = 0;

  IoCounters operator-(const IoCounters& o) const {
    return {reads - o.reads, writes - o.writes, meta_reads - o.meta_reads,
            meta_writes - o.meta_writes};
  }
};

inline constexpr PageId kMetadataPage = 0;

class PageStore {
 public:
  virtual ~PageStore() = default;

  virtual std::uint32_t page_size() const = 0;

  /// Copies the page's current bytes into dest (dest.size() == page_size).
  /// Allocated-but-never-written pages read as zeros.
  virtual void read_page(PageId id, std::span<std::uint8_t> dest) = 0;

  /// Replaces the page content. Durable after flush().
  virtual void write_page(PageId id, std::span<const std::uint8_t> src) = 0;

  /// Hands out the next data page id. No device I/O is performed.
  virtual PageId allocate_page() = 0;

  virtual void flush() = 0;

  const IoCounters& counters() const { return counters_; }

  /// First unallocated page id (1 on a fresh store).
  PageId next_page() const { return next_page_; }

  /// Restores the allocation cursor when reopening an existing store.
  void set_next_page(PageId next) { next_page_ = next; }

  /// Simulated per-I/O device latency, off by default. Time is accrued in
  /// an accumulator rather than slept so benchmark output stays
  /// deterministic.
  void set_latency(double read_us, double write_us) {
    read_us_ = read_us;
    write_us_ = write_us;
  }
  double simulated_time_us() const { return simulated_us_; }

 protected:
  void check_bounds(PageId id) const {
    if (id != kMetadataPage && id >= next_page_)
      throw Error(ErrorCode::OutOfRange, "page id " + std::to_string(id) +
                                             " not allocated");
  }
  void count_read(PageId id) {
    if (id == kMetadataPage)
      ++counters_.meta_reads;
    else
      ++counters_.reads;
    simulated_us_ += read_us_;
  }
  void count_write(PageId id) {
    if (id == kMetadataPage)
      ++counters_.meta_writes;
    else
      ++counters_.writes;
    simulated_us_ += write_us_;
  }
  PageId take_next_page(PageId max_pages) {
    if (next_page_ >= max_pages)
      throw Error(ErrorCode::StoreFull, "store full at " + std::to_string(max_pages) +
                                            " pages");
    return next_page_++;
  }

  IoCounters counters_;
  PageId next_page_ = 1;
  double read_us_ = 0.0;
  double write_us_ = 0.0;
  double simulated_us_ = 0.0;
};

class MemPageStore final : public PageStore {
 public:
  explicit MemPageStore(std::uint32_t page_size, PageId max_pages = kNoPage)
      : page_size_(page_size), max_pages_(max_pages) {}

  std::uint32_t page_size() const override { return page_size_; }

  void read_page(PageId id, std::span<std::uint8_t> dest) override {
    check_bounds(id);
    count_read(id);
    std::size_t off = std::size_t(id) * page_size_;
    if (off + page_size_ <= bytes_.size())
      std::memcpy(dest.data(), bytes_.data() + off, page_size_);
    else
      std::memset(dest.data(), 0, page_size_);
  }

  void write_page(PageId id, std::span<const std::uint8_t> src) override {
    check_bounds(id);
    count_write(id);
    std::size_t off = std::size_t(id) * page_size_;
    if (off + page_size_ > bytes_.size()) bytes_.resize(off + page_size_, 0);
    std::memcpy(bytes_.data() + off, src.data(), page_size_);
  }

  PageId allocate_page() override { return take_next_page(max_pages_); }

  void flush() override {}

  /// Full store image, page 0 first; used by tests for snapshot comparison.
  const std::vector<std::uint8_t>& bytes() const { return bytes_; }

 private:
  std::uint32_t page_size_;
  PageId max_pages_;
  std::vector<std::uint8_t> bytes_;
};

/// File-backed store: page 0 then pages 1..N back-to-back, page_size bytes
/// each (see FORMAT.md). flush() pads the file out to next_page pages so
/// stores with identical content are byte-identical on disk.
class FilePageStore final : public PageStore {
 public:
  /// Creates or truncates a store file.
  FilePageStore(const std::filesystem::path& path, std::uint32_t page_size,
                PageId max_pages = kNoPage)
      : page_size_(page_size), max_pages_(max_pages) {
    file_ = std::fopen(path.string().c_str(), "w+b");
    if (!file_) throw Error(ErrorCode::IoError, "cannot create " + path.string());
  }

  /// Opens an existing store file read-write. The page size is recovered
  /// from the metadata header at the front of the file; the allocation
  /// cursor is restored by the tree once page 0 has been decoded.
  static FilePageStore open_existing(const std::filesystem::path& path);

  ~FilePageStore() override {
    if (file_) std::fclose(file_);
  }

  FilePageStore(FilePageStore&& o) noexcept
      : page_size_(o.page_size_), max_pages_(o.max_pages_), file_(o.file_) {
    counters_ = o.counters_;
    next_page_ = o.next_page_;
    read_us_ = o.read_us_;
    write_us_ = o.write_us_;
    simulated_us_ = o.simulated_us_;
    o.file_ = nullptr;
  }
  FilePageStore(const FilePageStore&) = delete;
  FilePageStore& operator=(const FilePageStore&) = delete;

  std::uint32_t page_size() const override { return page_size_; }

  void read_page(PageId id, std::span<std::uint8_t> dest) override {
    check_bounds(id);
    count_read(id);
    std::memset(dest.data(), 0, page_size_);
    if (std::fseek(file_, long(std::size_t(id) * page_size_), SEEK_SET) != 0)
      throw Error(ErrorCode::IoError, "seek failed");
    // Short reads past the written extent stay zero-filled.
    std::size_t got = std::fread(dest.data(), 1, page_size_, file_);
    if (got < page_size_ && std::ferror(file_))
      throw Error(ErrorCode::IoError, "read failed");
    std::clearerr(file_);
  }

  void write_page(PageId id, std::span<const std::uint8_t> src) override {
    check_bounds(id);
    count_write(id);
    if (std::fseek(file_, long(std::size_t(id) * page_size_), SEEK_SET) != 0)
      throw Error(ErrorCode::IoError, "seek failed");
    if (std::fwrite(src.data(), 1, page_size_, file_) != page_size_)
      throw Error(ErrorCode::IoError, "write failed");
  }

  PageId allocate_page() override { return take_next_page(max_pages_); }

  void flush() override {
    if (std::fseek(file_, 0, SEEK_END) != 0)
      throw Error(ErrorCode::IoError, "seek failed");
    long size = std::ftell(file_);
    long want = long(std::size_t(next_page_) * page_size_);
    if (size < want) {
      // pad with zeros up to the allocated extent
      std::vector<std::uint8_t> zeros(std::size_t(want - size), 0);
      if (std::fwrite(zeros.data(), 1, zeros.size(), file_) != zeros.size())
        throw Error(ErrorCode::IoError, "write failed");
    }
    if (std::fflush(file_) != 0) throw Error(ErrorCode::IoError, "flush failed");
  }

 private:
  FilePageStore() = default;

  std::uint32_t page_size_ = 0;
  PageId max_pages_ = kNoPage;
  std::FILE* file_ = nullptr;
};

/// Tree metadata persisted in page 0. Byte layout (little-endian):
///   offset 0   magic        u32  "btpg"
///   offset 4   version      u16  (1)
///   offset 6   reserved     u16
///   offset 8   page_size    u32
///   offset 12  record_size  u32
///   offset 16  root         u32
///   offset 20  height       u32
///   offset 24  record_count u64
///   offset 32  next_page    u32
/// Remaining bytes are zero.
struct StoreMetadata {
  static constexpr std::uint32_t kMagic = 0x67707462;  // "btpg"
  static constexpr std::uint16_t kVersion = 1;
  static constexpr std::size_t kEncodedSize = 36;

  PageConfig cfg;
  PageId root = kNoPage;
  std::uint32_t height = 0;
  std::uint64_t record_count = 0;
  PageId next_page = 1;

  void encode(std::span<std::uint8_t> frame) const {
    std::memset(frame.data(), 0, frame.size());
    detail::store_u32(frame.data(), kMagic);
    detail::store_u16(frame.data() + 4, kVersion);
    detail::store_u32(frame.data() + 8, cfg.page_size);
    detail::store_u32(frame.data() + 12, cfg.record_size);
    detail::store_u32(frame.data() + 16, root);
    detail::store_u32(frame.data() + 20, height);
    detail::store_u64(frame.data() + 24, record_count);
    detail::store_u32(frame.data() + 32, next_page);
  }

  static StoreMetadata decode(std::span<const std::uint8_t> frame) {
    if (frame.size() < kEncodedSize || detail::load_u32(frame.data()) != kMagic)
      throw Error(ErrorCode::CorruptMetadata, "bad store magic");
    if (detail::load_u16(frame.data() + 4) != kVersion)
      throw Error(ErrorCode::CorruptMetadata, "unsupported store version");
    StoreMetadata meta;
    meta.cfg.page_size = detail::load_u32(frame.data() + 8);
    meta.cfg.record_size = detail::load_u32(frame.data() + 12);
    meta.root = detail::load_u32(frame.data() + 16);
    meta.height = detail::load_u32(frame.data() + 20);
    meta.record_count = detail::load_u64(frame.data() + 24);
    meta.next_page = detail::load_u32(frame.data() + 32);
    meta.cfg.validate();
    if (meta.root == kNoPage || meta.root >= meta.next_page || meta.height < 1)
      throw Error(ErrorCode::CorruptMetadata, "inconsistent tree metadata");
    return meta;
  }
};

inline FilePageStore FilePageStore::open_existing(const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "r+b");
  if (!f) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::uint8_t head[StoreMetadata::kEncodedSize] = {0};
  std::size_t got = std::fread(head, 1, sizeof head, f);
  std::fclose(f);
  if (got < sizeof head || detail::load_u32(head) != StoreMetadata::kMagic)
    throw Error(ErrorCode::CorruptMetadata, "not a pagetree store: " + path.string());
  std::uint32_t page_size = detail::load_u32(head + 8);
  FilePageStore store;
  store.page_size_ = page_size;
  store.file_ = std::fopen(path.string().c_str(), "r+b");
  if (!store.file_) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  store.next_page_ = detail::load_u32(head + 32);
  return store;
}

}  // namespace pagetree
