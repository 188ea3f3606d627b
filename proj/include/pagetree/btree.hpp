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

#ifndef PAGETREE_BTREE_HPP_
#define PAGETREE_BTREE_HPP_

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <ostream>
#include <span>
#include <vector>

#include "pagetree/buffer_pool.hpp"
#include "pagetree/page_format.hpp"
#include "pagetree/storage.hpp"

namespace pagetree {

// Hard ceiling on tree height, fixed at build time. Eight levels cover
// well over 10^9 records at any sane fan-out; exceeding it is an error,
// never a silent reallocation.
inline constexpr std::uint32_t kMaxHeight = 8;

struct PathEntry {
  PageId page = kNoPage;
  std::uint16_t slot = 0;
};

// Root-to-leaf trail recorded during a descent: the page visited at each
// level and the child slot taken out of it. Fixed capacity, no growth.
struct ActivePath {
  PathEntry entries[kMaxHeight] = {};
  std::uint32_t depth = 0;
};

// A B-tree over fixed-size records in page-oriented storage, operated
// entirely through a BufferPool of M pre-allocated frames. Every page
// modification is composed in the pool's single write frame and pushed out
// with write-through; a split rebuilds the right sibling in that same
// frame after the left half is on the device, so one write frame suffices
// no matter how far a split cascades.
//
// Only one scratch region exists outside the frames: temp_record_, a single
// record-sized slot holding the middle record while a node is divided.
//
// Single-writer discipline: one mutating call at a time. Read-only calls
// may be interleaved freely between mutations.
class BTree {
 public:
  static BTree create(PageStore& store, const PageConfig& cfg,
                      std::uint32_t frames) {
    return BTree(store, frames, CreateTag{}, cfg);
  }

  static BTree open(PageStore& store, std::uint32_t frames) {
    return BTree(store, frames, OpenTag{});
  }

  BTree(const BTree&) = delete;
  BTree& operator=(const BTree&) = delete;

  std::uint32_t height() const { return meta_.height; }
  std::uint64_t size() const { return meta_.record_count; }
  PageId root() const { return meta_.root; }
  const PageConfig& config() const { return cfg_; }
  BufferPool& pool() { return pool_; }
  const BufferPool& pool() const { return pool_; }
  const IoCounters& io() const { return store_.counters(); }

  // Scratch buffers acquired since construction; stays at 1 (temp_record_)
  // for the tree's lifetime. Together with pool().allocation_events() this
  // backs the fixed-memory claim in tests.
  std::uint64_t scratch_acquisitions() const { return scratch_acquisitions_; }

  // Point lookup. Copies the value bytes into value_out and returns true,
  // or returns false when the key is absent. Costs exactly height() fetch
  // calls; device reads depend on what the pool holds.
  bool get(std::uint32_t key, std::span<std::uint8_t> value_out) {
    if (value_out.size() < cfg_.value_size()) {
      throw Error(ErrorCode::OutOfRange, "value output span too small");
    }
    Descent d;
    const PageId leaf = descend_to_leaf(key, d);
    auto view = pool_.fetch(leaf);
    const PageHeader hdr = checked_header(view, leaf, PageKind::Leaf);
    const std::uint32_t pos = find_position(cfg_, view, key);
    if (pos >= hdr.count || key_at(cfg_, view, PageKind::Leaf, pos) != key) {
      return false;
    }
    auto value = value_at(cfg_, view, pos);
    std::memcpy(value_out.data(), value.data(), value.size());
    return true;
  }

  // Insert. The descent records the active path, the leaf is loaded into
  // the write frame, and the record goes in at its sorted position; a full
  // leaf triggers the split cascade. Rejects keys already present.
  void put(std::uint32_t key, std::span<const std::uint8_t> value) {
    if (value.size() != cfg_.value_size()) {
      throw Error(ErrorCode::InvalidConfig, "value size mismatch");
    }
    Descent d;
    const PageId leaf = descend_to_leaf(key, d);
    auto wf = pool_.load_write_frame(leaf);
    PageHeader hdr = checked_header(wf, leaf, PageKind::Leaf);
    const std::uint32_t pos = find_position(cfg_, wf, key);
    if (pos < hdr.count && key_at(cfg_, wf, PageKind::Leaf, pos) == key) {
      throw Error(ErrorCode::DuplicateKey, "key already present");
    }

    if (hdr.count < cfg_.leaf_capacity()) {
      shift_records(wf, PageKind::Leaf, pos + 1, pos, hdr.count - pos);
      write_leaf_record(cfg_, wf, pos, key, value);
      hdr.count = static_cast<std::uint16_t>(hdr.count + 1);
      encode_header(cfg_, hdr, wf);
      pool_.write_through(leaf);
    } else {
      // Count the run of full nodes from the leaf upward: that is how many
      // levels the cascade will split. All checks and page allocations
      // happen before the first write so a failure leaves the tree intact.
      std::uint32_t split_levels = 1;
      for (int lvl = static_cast<int>(meta_.height) - 2; lvl >= 0; --lvl) {
        if (d.counts[lvl] != cfg_.interior_capacity()) break;
        ++split_levels;
      }
      const bool grows_root = split_levels == meta_.height;
      if (grows_root && meta_.height == kMaxHeight) {
        throw Error(ErrorCode::TreeFull, "tree at maximum height");
      }
      PageId fresh[kMaxHeight + 1] = {};
      const std::uint32_t n_fresh = split_levels + (grows_root ? 1 : 0);
      for (std::uint32_t i = 0; i < n_fresh; ++i) {
        fresh[i] = store_.allocate_page();
      }
      split_cascade(d, key, value, pos, fresh, split_levels, grows_root);
    }
    meta_.record_count += 1;
  }

  // Delete. The record's leaf is rewritten with the tail shifted down; no
  // merging or rebalancing happens, and an emptied leaf stays in place.
  void remove(std::uint32_t key) {
    Descent d;
    const PageId leaf = descend_to_leaf(key, d);
    auto wf = pool_.load_write_frame(leaf);
    PageHeader hdr = checked_header(wf, leaf, PageKind::Leaf);
    const std::uint32_t pos = find_position(cfg_, wf, key);
    if (pos >= hdr.count || key_at(cfg_, wf, PageKind::Leaf, pos) != key) {
      throw Error(ErrorCode::KeyNotFound, "key not present");
    }
    shift_records(wf, PageKind::Leaf, pos, pos + 1, hdr.count - pos - 1);
    hdr.count = static_cast<std::uint16_t>(hdr.count - 1);
    encode_header(cfg_, hdr, wf);
    pool_.write_through(leaf);
    meta_.record_count -= 1;
  }

  // Visit every record with low <= key <= high in ascending key order.
  // The traversal keeps a cursor stack of (page, slot) pairs and re-fetches
  // interior pages as it advances, so it runs in the pool's frames alone.
  // The visitor receives (key, value view); the view is only valid during
  // the call, and the visitor must not touch the tree.
  template <typename Visitor>
  void range(std::uint32_t low, std::uint32_t high, Visitor&& visit) {
    if (low > high || meta_.record_count == 0) return;

    PageId pages[kMaxHeight];
    std::uint16_t slots[kMaxHeight];
    PageId cur = meta_.root;
    for (std::uint32_t lvl = 0; lvl + 1 < meta_.height; ++lvl) {
      auto view = pool_.fetch(cur);
      checked_header(view, cur, PageKind::Interior);
      const std::uint32_t slot = descend_slot(cfg_, view, low);
      pages[lvl] = cur;
      slots[lvl] = static_cast<std::uint16_t>(slot);
      cur = child_by_slot(cfg_, view, slot);
    }

    bool first_leaf = true;
    while (true) {
      auto view = pool_.fetch(cur);
      const PageHeader hdr = checked_header(view, cur, PageKind::Leaf);
      const std::uint32_t start = first_leaf ? find_position(cfg_, view, low) : 0;
      first_leaf = false;
      for (std::uint32_t i = start; i < hdr.count; ++i) {
        const std::uint32_t k = key_at(cfg_, view, PageKind::Leaf, i);
        if (k > high) return;
        visit(k, value_at(cfg_, view, i));
      }

      // Climb to the deepest ancestor with an unvisited child, then walk
      // down its next subtree's left spine.
      int lvl = static_cast<int>(meta_.height) - 2;
      PageId next = kNoPage;
      while (lvl >= 0) {
        auto pview = pool_.fetch(pages[lvl]);
        const PageHeader ph = checked_header(pview, pages[lvl], PageKind::Interior);
        if (slots[lvl] < ph.count) {
          slots[lvl] = static_cast<std::uint16_t>(slots[lvl] + 1);
          next = child_by_slot(cfg_, pview, slots[lvl]);
          break;
        }
        --lvl;
      }
      if (lvl < 0) return;
      for (std::uint32_t l2 = static_cast<std::uint32_t>(lvl) + 1;
           l2 + 1 < meta_.height; ++l2) {
        auto view2 = pool_.fetch(next);
        checked_header(view2, next, PageKind::Interior);
        pages[l2] = next;
        slots[l2] = 0;
        next = child_by_slot(cfg_, view2, 0);
      }
      cur = next;
    }
  }

  // Rewrite the metadata page and push everything to the device.
  void flush() {
    write_metadata();
    store_.flush();
  }

  // Full structural audit: header/page-id agreement, node kind per level,
  // strict key order inside nodes, separator bounds between parent and
  // child, child ids inside the allocated range, and the leaf record tally
  // against the in-memory count. Throws on the first violation.
  void validate_structure() {
    const std::uint64_t records =
        validate_node(meta_.root, 0, false, 0, false, 0);
    if (records != meta_.record_count) {
      throw Error(ErrorCode::CorruptPage, "leaf record tally mismatch");
    }
  }

  // Human-readable structure listing, one node per line, children indented.
  void dump(std::ostream& os) {
    os << "root=" << meta_.root << " height=" << meta_.height
       << " records=" << meta_.record_count
       << " next_page=" << store_.next_page() << "\n";
    dump_node(meta_.root, 0, os);
  }

 private:
  struct CreateTag {};
  struct OpenTag {};

  struct Descent {
    ActivePath path;
    std::uint16_t counts[kMaxHeight] = {};
  };

  BTree(PageStore& store, std::uint32_t frames, CreateTag, const PageConfig& cfg)
      : store_(store), pool_(store, frames), cfg_(cfg) {
    cfg_.validate();
    if (store.page_size() != cfg_.page_size) {
      throw Error(ErrorCode::InvalidConfig, "store page size mismatch");
    }
    if (store.next_page() != 1) {
      throw Error(ErrorCode::InvalidConfig, "create requires an empty store");
    }
    init_scratch();

    const PageId root = store_.allocate_page();
    auto wf = pool_.write_frame();
    std::fill(wf.begin(), wf.end(), std::uint8_t{0});
    encode_header(cfg_, PageHeader{root, 0, PageKind::Leaf, kNoPage}, wf);
    pool_.write_through(root);

    meta_.cfg = cfg_;
    meta_.root = root;
    meta_.height = 1;
    meta_.record_count = 0;
    write_metadata();
    pool_.pin_root(root);
  }

  BTree(PageStore& store, std::uint32_t frames, OpenTag)
      : store_(store), pool_(store, frames) {
    auto wf = pool_.load_write_frame(kMetadataPage);
    meta_ = StoreMetadata::decode(wf);
    cfg_ = meta_.cfg;
    if (cfg_.page_size != store.page_size()) {
      throw Error(ErrorCode::CorruptMetadata, "metadata page size mismatch");
    }
    if (meta_.height > kMaxHeight) {
      throw Error(ErrorCode::CorruptMetadata, "height beyond build limit");
    }
    // The persisted allocation cursor can lag the live one when the same
    // store object is reopened without an intervening flush; never move
    // the cursor backward.
    if (meta_.next_page > store_.next_page()) {
      store_.set_next_page(meta_.next_page);
    }
    init_scratch();
    pool_.pin_root(meta_.root);
  }

  void init_scratch() {
    temp_record_.resize(std::max<std::uint32_t>(
        cfg_.record_size, PageConfig::kInteriorEntrySize));
    scratch_acquisitions_ = 1;
  }

  PageHeader checked_header(std::span<const std::uint8_t> frame, PageId expect,
                            PageKind kind) const {
    const PageHeader hdr = decode_header(cfg_, frame);
    if (hdr.page_id != expect) {
      throw Error(ErrorCode::CorruptPage, "page id does not match location");
    }
    if (hdr.kind != kind) {
      throw Error(ErrorCode::CorruptPage, "unexpected node kind");
    }
    return hdr;
  }

  // Walk interior levels toward the leaf holding `key`, recording the page,
  // chosen child slot, and record count at every interior level. The leaf
  // itself is not fetched; callers pick the read or write path.
  PageId descend_to_leaf(std::uint32_t key, Descent& d) {
    PageId cur = meta_.root;
    for (std::uint32_t lvl = 0; lvl + 1 < meta_.height; ++lvl) {
      auto view = pool_.fetch(cur);
      const PageHeader hdr = checked_header(view, cur, PageKind::Interior);
      const std::uint32_t slot = descend_slot(cfg_, view, key);
      d.path.entries[lvl] = PathEntry{cur, static_cast<std::uint16_t>(slot)};
      d.counts[lvl] = hdr.count;
      cur = child_by_slot(cfg_, view, slot);
    }
    d.path.entries[meta_.height - 1] = PathEntry{cur, 0};
    d.path.depth = meta_.height;
    return cur;
  }

  std::uint8_t* slot_ptr(std::span<std::uint8_t> frame, PageKind kind,
                         std::uint32_t slot) {
    return frame.data() + PageConfig::kHeaderSize +
           slot * record_stride(cfg_, kind);
  }

  // memmove `n` records/entries from src_slot to dst_slot within a frame.
  void shift_records(std::span<std::uint8_t> frame, PageKind kind,
                     std::uint32_t dst_slot, std::uint32_t src_slot,
                     std::uint32_t n) {
    if (n == 0) return;
    const std::uint32_t stride = record_stride(cfg_, kind);
    std::memmove(slot_ptr(frame, kind, dst_slot),
                 slot_ptr(frame, kind, src_slot),
                 static_cast<std::size_t>(n) * stride);
  }

  // Divide the full leaf held in the write frame around mid = count/2,
  // inserting (key, value) at insert_loc on the way. The left half is
  // written under the leaf's original id with only its count reduced, so
  // the record area beyond it stays physically intact in the frame; the
  // right page is then rebuilt in place from those surviving slots plus
  // the middle record parked in temp_record_. Returns the separator key
  // (the middle record's key, which starts the right leaf).
  std::uint32_t split_leaf(std::span<std::uint8_t> wf, PageId left_id,
                           PageId right_id, std::uint32_t insert_loc,
                           std::uint32_t key,
                           std::span<const std::uint8_t> value) {
    const std::uint32_t n = cfg_.leaf_capacity();
    const std::uint32_t mid = n / 2;
    std::memcpy(temp_record_.data(), slot_ptr(wf, PageKind::Leaf, mid),
                cfg_.record_size);
    const std::uint32_t sep = detail::load_u32(temp_record_.data());

    if (insert_loc <= mid) {
      shift_records(wf, PageKind::Leaf, insert_loc + 1, insert_loc,
                    mid - insert_loc);
      write_leaf_record(cfg_, wf, insert_loc, key, value);
      encode_header(cfg_,
                    PageHeader{left_id, static_cast<std::uint16_t>(mid + 1),
                               PageKind::Leaf, kNoPage},
                    wf);
      pool_.write_through(left_id);

      std::memcpy(slot_ptr(wf, PageKind::Leaf, 0), temp_record_.data(),
                  cfg_.record_size);
      shift_records(wf, PageKind::Leaf, 1, mid + 1, n - 1 - mid);
      encode_header(cfg_,
                    PageHeader{right_id, static_cast<std::uint16_t>(n - mid),
                               PageKind::Leaf, kNoPage},
                    wf);
      pool_.write_through(right_id);
    } else {
      // Left half needs no record copying at all: its records are already
      // in place, the header just claims fewer of them.
      encode_header(cfg_,
                    PageHeader{left_id, static_cast<std::uint16_t>(mid),
                               PageKind::Leaf, kNoPage},
                    wf);
      pool_.write_through(left_id);

      shift_records(wf, PageKind::Leaf, 0, mid, insert_loc - mid);
      write_leaf_record(cfg_, wf, insert_loc - mid, key, value);
      shift_records(wf, PageKind::Leaf, insert_loc - mid + 1, insert_loc,
                    n - insert_loc);
      encode_header(
          cfg_,
          PageHeader{right_id, static_cast<std::uint16_t>(n - mid + 1),
                     PageKind::Leaf, kNoPage},
          wf);
      pool_.write_through(right_id);
    }
    return sep;
  }

  // Interior counterpart. The middle entry moves up: its key is returned
  // as the promoted separator and its child becomes the right node's
  // leftmost_child, so it lands in neither half's entry list.
  std::uint32_t split_interior(std::span<std::uint8_t> wf, PageId left_id,
                               PageId right_id, std::uint32_t insert_loc,
                               std::uint32_t ins_key, PageId ins_child) {
    const std::uint32_t n = cfg_.interior_capacity();
    const std::uint32_t mid = n / 2;
    const PageHeader hdr = decode_header(cfg_, wf);
    const std::uint32_t sep = key_at(cfg_, wf, PageKind::Interior, mid);
    const PageId mid_child = child_at(cfg_, wf, mid);

    if (insert_loc <= mid) {
      shift_records(wf, PageKind::Interior, insert_loc + 1, insert_loc,
                    mid - insert_loc);
      write_interior_entry(cfg_, wf, insert_loc, ins_key, ins_child);
      encode_header(cfg_,
                    PageHeader{left_id, static_cast<std::uint16_t>(mid + 1),
                               PageKind::Interior, hdr.leftmost_child},
                    wf);
      pool_.write_through(left_id);

      shift_records(wf, PageKind::Interior, 0, mid + 1, n - 1 - mid);
      encode_header(
          cfg_,
          PageHeader{right_id, static_cast<std::uint16_t>(n - mid - 1),
                     PageKind::Interior, mid_child},
          wf);
      pool_.write_through(right_id);
    } else {
      encode_header(cfg_,
                    PageHeader{left_id, static_cast<std::uint16_t>(mid),
                               PageKind::Interior, hdr.leftmost_child},
                    wf);
      pool_.write_through(left_id);

      shift_records(wf, PageKind::Interior, 0, mid + 1, insert_loc - mid - 1);
      write_interior_entry(cfg_, wf, insert_loc - mid - 1, ins_key, ins_child);
      shift_records(wf, PageKind::Interior, insert_loc - mid, insert_loc,
                    n - insert_loc);
      encode_header(cfg_,
                    PageHeader{right_id, static_cast<std::uint16_t>(n - mid),
                               PageKind::Interior, mid_child},
                    wf);
      pool_.write_through(right_id);
    }
    return sep;
  }

  // Run the split up the recorded path. `fresh` holds the pre-allocated
  // right-page ids, ordered leaf first, plus the new root id at the end
  // when the cascade reaches it. Exactly 2*split_levels writes happen here
  // plus one more for either the absorbing parent or the new root.
  void split_cascade(const Descent& d, std::uint32_t key,
                     std::span<const std::uint8_t> value,
                     std::uint32_t leaf_pos, const PageId* fresh,
                     std::uint32_t split_levels, bool grows_root) {
    int lvl = static_cast<int>(meta_.height) - 1;
    std::uint32_t sep = split_leaf(pool_.write_frame(),
                                   d.path.entries[lvl].page, fresh[0],
                                   leaf_pos, key, value);
    PageId carry_right = fresh[0];
    std::uint32_t fi = 1;

    const int stop = static_cast<int>(meta_.height) -
                     static_cast<int>(split_levels);
    for (lvl = lvl - 1; lvl >= stop; --lvl) {
      const PageId node = d.path.entries[lvl].page;
      auto wf = pool_.load_write_frame(node);
      sep = split_interior(wf, node, fresh[fi], d.path.entries[lvl].slot, sep,
                           carry_right);
      carry_right = fresh[fi++];
    }

    if (grows_root) {
      const PageId new_root = fresh[fi];
      auto wf = pool_.write_frame();
      std::fill(wf.begin(), wf.end(), std::uint8_t{0});
      encode_header(cfg_,
                    PageHeader{new_root, 1, PageKind::Interior,
                               d.path.entries[0].page},
                    wf);
      write_interior_entry(cfg_, wf, 0, sep, carry_right);
      pool_.write_through(new_root);

      meta_.root = new_root;
      meta_.height += 1;
      pool_.pin_root(new_root);
      write_metadata();
    } else {
      const int parent_lvl = stop - 1;
      const PageId parent = d.path.entries[parent_lvl].page;
      const std::uint32_t s = d.path.entries[parent_lvl].slot;
      auto wf = pool_.load_write_frame(parent);
      PageHeader hdr = checked_header(wf, parent, PageKind::Interior);
      shift_records(wf, PageKind::Interior, s + 1, s, hdr.count - s);
      write_interior_entry(cfg_, wf, s, sep, carry_right);
      hdr.count = static_cast<std::uint16_t>(hdr.count + 1);
      encode_header(cfg_, hdr, wf);
      pool_.write_through(parent);
    }
  }

  // Compose the metadata page in the write frame and push it out. Called
  // on create, on root/height change, and on flush; the record count it
  // carries is therefore best-effort between flushes.
  void write_metadata() {
    meta_.next_page = store_.next_page();
    auto wf = pool_.write_frame();
    meta_.encode(wf);
    pool_.write_through(kMetadataPage);
  }

  std::uint64_t validate_node(PageId id, std::uint32_t level, bool has_lower,
                              std::uint32_t lower, bool has_upper,
                              std::uint32_t upper) {
    auto view = pool_.fetch(id);
    const PageHeader hdr = decode_header(cfg_, view);
    if (hdr.page_id != id) {
      throw Error(ErrorCode::CorruptPage, "page id does not match location");
    }
    const bool expect_leaf = level + 1 == meta_.height;
    if ((hdr.kind == PageKind::Leaf) != expect_leaf) {
      throw Error(ErrorCode::CorruptPage, "node kind does not match level");
    }
    std::uint32_t prev = 0;
    for (std::uint32_t i = 0; i < hdr.count; ++i) {
      const std::uint32_t k = key_at(cfg_, view, hdr.kind, i);
      if (i > 0 && k <= prev) {
        throw Error(ErrorCode::CorruptPage, "keys out of order");
      }
      if (has_lower && k < lower) {
        throw Error(ErrorCode::CorruptPage, "key below subtree lower bound");
      }
      if (has_upper && k >= upper) {
        throw Error(ErrorCode::CorruptPage, "key above subtree upper bound");
      }
      prev = k;
    }
    if (hdr.kind == PageKind::Leaf) return hdr.count;

    std::uint64_t total = 0;
    for (std::uint32_t slot = 0; slot <= hdr.count; ++slot) {
      // Recursion displaces frames, so re-fetch the parent and pull out the
      // child id and its key bounds before descending.
      auto pview = pool_.fetch(id);
      const PageId child = child_by_slot(cfg_, pview, slot);
      if (child >= store_.next_page()) {
        throw Error(ErrorCode::CorruptPage, "child id outside allocated range");
      }
      bool c_has_lower = has_lower;
      std::uint32_t c_lower = lower;
      bool c_has_upper = has_upper;
      std::uint32_t c_upper = upper;
      if (slot > 0) {
        c_has_lower = true;
        c_lower = key_at(cfg_, pview, PageKind::Interior, slot - 1);
      }
      if (slot < hdr.count) {
        c_has_upper = true;
        c_upper = key_at(cfg_, pview, PageKind::Interior, slot);
      }
      total += validate_node(child, level + 1, c_has_lower, c_lower,
                             c_has_upper, c_upper);
    }
    return total;
  }

  void dump_node(PageId id, std::uint32_t depth, std::ostream& os) {
    auto view = pool_.fetch(id);
    const PageHeader hdr = decode_header(cfg_, view);
    for (std::uint32_t i = 0; i < depth; ++i) os << "  ";
    if (hdr.kind == PageKind::Leaf) {
      os << "leaf " << id << " count=" << hdr.count << " keys=[";
      for (std::uint32_t i = 0; i < hdr.count; ++i) {
        if (i > 0) os << " ";
        os << key_at(cfg_, view, PageKind::Leaf, i);
      }
      os << "]\n";
      return;
    }
    os << "interior " << id << " count=" << hdr.count
       << " leftmost=" << hdr.leftmost_child << " keys=[";
    for (std::uint32_t i = 0; i < hdr.count; ++i) {
      if (i > 0) os << " ";
      os << key_at(cfg_, view, PageKind::Interior, i);
    }
    os << "]\n";
    for (std::uint32_t slot = 0; slot <= hdr.count; ++slot) {
      auto pview = pool_.fetch(id);
      dump_node(child_by_slot(cfg_, pview, slot), depth + 1, os);
    }
  }

  PageStore& store_;
  BufferPool pool_;
  PageConfig cfg_;
  StoreMetadata meta_;
  std::vector<std::uint8_t> temp_record_;
  std::uint64_t scratch_acquisitions_ = 0;
};

}  // namespace pagetree

#endif  // PAGETREE_BTREE_HPP_
