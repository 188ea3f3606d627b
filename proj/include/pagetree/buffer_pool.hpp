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

#ifndef PAGETREE_BUFFER_POOL_HPP_
#define PAGETREE_BUFFER_POOL_HPP_

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "pagetree/storage.hpp"

namespace pagetree {

// Running totals for cache behaviour. hits + misses equals the number of
// fetch() and load_write_frame() calls made so far; misses equals the
// number of device reads those calls issued.
struct PoolStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
};

// A fixed pool of M page frames backed by one PageStore.
//
// Frame roles are assigned once at construction and never change:
//   frame 0        the write frame; pages are composed here and pushed to
//                  the device with write_through(). Never serves reads.
//   frame 1        M >= 3: reserved for the pinned root page.
//                  M == 2: the single read frame.
//   frames 2..M-1  read frames replaced least-recently-used first.
//
// All frame memory is acquired in the constructor. No pool operation
// allocates afterwards; allocation_events() stays at 1 for the pool's
// lifetime, which tests use to verify the fixed-memory claim.
class BufferPool {
 public:
  BufferPool(PageStore& store, std::uint32_t frame_count)
      : store_(store),
        page_size_(store.page_size()),
        frame_count_(frame_count) {
    if (frame_count < 2) {
      throw Error(ErrorCode::InvalidConfig,
                  "buffer pool needs at least 2 frames");
    }
    arena_.resize(static_cast<std::size_t>(frame_count) * page_size_);
    frames_.resize(frame_count);
    allocation_events_ = 1;
  }

  BufferPool(const BufferPool&) = delete;
  BufferPool& operator=(const BufferPool&) = delete;

  std::uint32_t frame_count() const { return frame_count_; }
  std::uint32_t page_size() const { return page_size_; }
  const PoolStats& stats() const { return stats_; }
  std::uint64_t allocation_events() const { return allocation_events_; }
  PageId pinned_root() const { return pinned_root_; }

  // Read-only view of page `id`, loading it from the device on a miss.
  // The view is valid only until the next pool operation.
  std::span<const std::uint8_t> fetch(PageId id) {
    if (has_pinned_frame() && id == pinned_root_) {
      if (frames_[kPinnedFrame].page == id) {
        ++stats_.hits;
      } else {
        ++stats_.misses;
        store_.read_page(id, frame_bytes(kPinnedFrame));
        frames_[kPinnedFrame].page = id;
      }
      return frame_bytes(kPinnedFrame);
    }
    if (std::uint32_t f = find_lru(id); f != kNoFrame) {
      ++stats_.hits;
      frames_[f].stamp = next_stamp();
      return frame_bytes(f);
    }
    ++stats_.misses;
    std::uint32_t victim = lru_victim();
    store_.read_page(id, frame_bytes(victim));
    frames_[victim].page = id;
    frames_[victim].stamp = next_stamp();
    return frame_bytes(victim);
  }

  // Mutable view of the write frame. No I/O and no accounting; used when
  // composing a page from scratch.
  std::span<std::uint8_t> write_frame() { return frame_bytes(0); }

  // Fill the write frame with the current content of page `id`. A resident
  // read frame satisfies this as a hit (bytes copied across, recency
  // refreshed); otherwise the device read lands directly in frame 0 and
  // the page is not cached.
  std::span<std::uint8_t> load_write_frame(PageId id) {
    if (has_pinned_frame() && frames_[kPinnedFrame].page == id) {
      ++stats_.hits;
      copy_frame(kPinnedFrame, 0);
      return frame_bytes(0);
    }
    if (std::uint32_t f = find_lru(id); f != kNoFrame) {
      ++stats_.hits;
      frames_[f].stamp = next_stamp();
      copy_frame(f, 0);
      return frame_bytes(0);
    }
    ++stats_.misses;
    store_.read_page(id, frame_bytes(0));
    return frame_bytes(0);
  }

  // Write the write frame to page `id` immediately. Any read frame holding
  // `id` is refreshed in place so later fetches see the new bytes.
  void write_through(PageId id) {
    store_.write_page(id, frame_bytes(0));
    for (std::uint32_t f = read_begin(); f < frame_count_; ++f) {
      if (frames_[f].page == id) copy_frame(0, f);
    }
  }

  // Dedicate frame 1 to page `id`. A no-op at M=2, where there is no frame
  // to spare. Any stale residency for `id` or for the previously pinned
  // page is dropped; the first fetch after a repin reloads from the device.
  void pin_root(PageId id) {
    if (frame_count_ < 3) return;
    if (pinned_root_ == id) return;
    pinned_root_ = id;
    frames_[kPinnedFrame].page = kNoPage;
    if (std::uint32_t f = find_lru(id); f != kNoFrame) {
      frames_[f].page = kNoPage;
    }
  }

  // Number of read frames currently holding a page; bounded by M-1.
  std::uint32_t resident_read_frames() const {
    std::uint32_t n = 0;
    for (std::uint32_t f = read_begin(); f < frame_count_; ++f) {
      if (frames_[f].page != kNoPage) ++n;
    }
    return n;
  }

  // Page resident in a given frame, kNoPage when empty. Test hook.
  PageId frame_page(std::uint32_t frame) const { return frames_[frame].page; }

 private:
  static constexpr std::uint32_t kPinnedFrame = 1;
  static constexpr std::uint32_t kNoFrame = 0xFFFFFFFFu;

  struct FrameInfo {
    PageId page = kNoPage;
    std::uint64_t stamp = 0;
  };

  bool has_pinned_frame() const {
    return frame_count_ >= 3 && pinned_root_ != kNoPage;
  }

  // First frame index eligible to cache reads. Frame 1 belongs to the LRU
  // set only at M=2; at M>=3 it is reserved for the root even while no
  // root is pinned yet.
  std::uint32_t lru_begin() const { return frame_count_ >= 3 ? 2 : 1; }
  std::uint32_t read_begin() const { return 1; }

  std::span<std::uint8_t> frame_bytes(std::uint32_t frame) {
    return {arena_.data() + static_cast<std::size_t>(frame) * page_size_,
            page_size_};
  }

  void copy_frame(std::uint32_t from, std::uint32_t to) {
    std::memcpy(arena_.data() + static_cast<std::size_t>(to) * page_size_,
                arena_.data() + static_cast<std::size_t>(from) * page_size_,
                page_size_);
  }

  std::uint32_t find_lru(PageId id) const {
    for (std::uint32_t f = lru_begin(); f < frame_count_; ++f) {
      if (frames_[f].page == id) return f;
    }
    return kNoFrame;
  }

  std::uint32_t lru_victim() const {
    std::uint32_t victim = lru_begin();
    for (std::uint32_t f = lru_begin(); f < frame_count_; ++f) {
      if (frames_[f].page == kNoPage) return f;
      if (frames_[f].stamp < frames_[victim].stamp) victim = f;
    }
    return victim;
  }

  std::uint64_t next_stamp() { return ++tick_; }

  PageStore& store_;
  std::uint32_t page_size_;
  std::uint32_t frame_count_;
  std::vector<std::uint8_t> arena_;
  std::vector<FrameInfo> frames_;
  PageId pinned_root_ = kNoPage;
  std::uint64_t tick_ = 0;
  std::uint64_t allocation_events_ = 0;
  PoolStats stats_;
};

}  // namespace pagetree

#endif  // PAGETREE_BUFFER_POOL_HPP_
