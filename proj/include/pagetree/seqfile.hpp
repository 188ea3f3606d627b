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

#ifndef PAGETREE_SEQFILE_HPP_
#define PAGETREE_SEQFILE_HPP_

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

#include "pagetree/page_format.hpp"
#include "pagetree/storage.hpp"

namespace pagetree {

// Unindexed append-only record file: the baseline an index is measured
// against. Records pack into pages in arrival order using the leaf page
// layout, so a page holds the same number of records as a tree leaf. A
// point query scans pages from the front and stops at the first match,
// costing N/2 page reads on average for uniformly chosen targets.
//
// One page-sized frame serves both appending and scanning.
class SeqFile {
 public:
  SeqFile(PageStore& store, const PageConfig& cfg)
      : store_(store), cfg_(cfg), frame_(cfg.page_size) {
    cfg_.validate();
    if (store.page_size() != cfg_.page_size) {
      throw Error(ErrorCode::InvalidConfig, "store page size mismatch");
    }
  }

  std::uint64_t record_count() const { return records_; }

  std::uint64_t data_pages() const {
    return pages_full_ + (pending_ > 0 ? 1 : 0);
  }

  // Append one record to the tail page; a filled page goes to the device
  // immediately and a new tail begins.
  void append(std::uint32_t key, std::span<const std::uint8_t> value) {
    if (value.size() != cfg_.value_size()) {
      throw Error(ErrorCode::InvalidConfig, "value size mismatch");
    }
    if (pending_ == 0) {
      std::fill(frame_.begin(), frame_.end(), std::uint8_t{0});
      tail_page_ = store_.allocate_page();
      if (first_page_ == kNoPage) first_page_ = tail_page_;
    } else if (frame_scanned_) {
      // A query reused the frame since the last append; the tail lives on
      // the device (query wrote it out), so bring it back.
      store_.read_page(tail_page_, frame_);
    }
    frame_scanned_ = false;
    write_leaf_record(cfg_, frame_, pending_, key, value);
    ++pending_;
    ++records_;
    if (pending_ == cfg_.leaf_capacity()) {
      write_tail();
      ++pages_full_;
      pending_ = 0;
    }
  }

  // Push a partial tail page out so queries can see every record.
  void flush() {
    if (pending_ > 0 && !frame_scanned_) write_tail();
    store_.flush();
  }

  // Linear scan from the first page. Returns true and fills value_out on a
  // match; device reads tally in the store's counters.
  bool query(std::uint32_t key, std::span<std::uint8_t> value_out) {
    if (value_out.size() < cfg_.value_size()) {
      throw Error(ErrorCode::OutOfRange, "value output span too small");
    }
    if (pending_ > 0 && !frame_scanned_) write_tail();
    frame_scanned_ = true;
    const std::uint64_t pages = data_pages();
    for (std::uint64_t p = 0; p < pages; ++p) {
      const PageId id = first_page_ + static_cast<PageId>(p);
      store_.read_page(id, frame_);
      const PageHeader hdr = decode_header(cfg_, frame_);
      for (std::uint32_t i = 0; i < hdr.count; ++i) {
        if (key_at(cfg_, frame_, PageKind::Leaf, i) != key) continue;
        auto v = value_at(cfg_, frame_, i);
        std::memcpy(value_out.data(), v.data(), v.size());
        return true;
      }
    }
    return false;
  }

 private:
  void write_tail() {
    encode_header(cfg_,
                  PageHeader{tail_page_, static_cast<std::uint16_t>(pending_),
                             PageKind::Leaf, kNoPage},
                  frame_);
    store_.write_page(tail_page_, frame_);
  }

  PageStore& store_;
  PageConfig cfg_;
  std::vector<std::uint8_t> frame_;
  PageId first_page_ = kNoPage;
  PageId tail_page_ = kNoPage;
  std::uint64_t records_ = 0;
  std::uint64_t pages_full_ = 0;
  std::uint32_t pending_ = 0;
  bool frame_scanned_ = false;
};

}  // namespace pagetree

#endif  // PAGETREE_SEQFILE_HPP_
