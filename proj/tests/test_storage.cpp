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

#include <pagetree/storage.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <random>
#include <vector>

using namespace pagetree;
namespace fs = std::filesystem;

namespace {

constexpr std::uint32_t kPage = 512;

std::vector<std::uint8_t> pattern(std::uint8_t b) {
  return std::vector<std::uint8_t>(kPage, b);
}

fs::path temp_file(const char* name) {
  fs::path p = fs::temp_directory_path() / name;
  fs::remove(p);
  return p;
}

}  // namespace

TEST_CASE("read returns the bytes most recently written") {
  MemPageStore store(kPage);
  PageId p = store.allocate_page();

  auto a = pattern(0x11), b = pattern(0x22);
  std::vector<std::uint8_t> got(kPage);

  store.write_page(p, a);
  store.read_page(p, got);
  CHECK(got == a);

  store.write_page(p, b);
  store.read_page(p, got);
  CHECK(got == b);
}

TEST_CASE("never-written allocated pages read as zeros") {
  MemPageStore store(kPage);
  PageId p = store.allocate_page();
  std::vector<std::uint8_t> got(kPage, 0xFF);
  store.read_page(p, got);
  CHECK(got == std::vector<std::uint8_t>(kPage, 0));
}

TEST_CASE("unallocated page ids are out of range") {
  MemPageStore store(kPage);
  std::vector<std::uint8_t> buf(kPage);
  CHECK_THROWS_AS(store.read_page(1, buf), Error);
  store.allocate_page();
  CHECK_NOTHROW(store.read_page(1, buf));
  CHECK_THROWS_AS(store.read_page(2, buf), Error);
  CHECK_THROWS_AS(store.write_page(5, buf), Error);
}

TEST_CASE("allocation is monotone from 1") {
  MemPageStore store(kPage);
  CHECK(store.allocate_page() == 1);
  CHECK(store.allocate_page() == 2);
  CHECK(store.allocate_page() == 3);
  CHECK(store.next_page() == 4);
}

TEST_CASE("store full stops allocation at max_pages") {
  MemPageStore store(kPage, /*max_pages=*/4);
  CHECK(store.allocate_page() == 1);
  CHECK(store.allocate_page() == 2);
  CHECK(store.allocate_page() == 3);
  CHECK_THROWS_AS(store.allocate_page(), Error);
}

TEST_CASE("counters increment exactly once per call") {
  MemPageStore store(kPage);
  PageId p = store.allocate_page();
  CHECK(store.counters().reads == 0);
  CHECK(store.counters().writes == 0);

  auto buf = pattern(0x33);
  store.write_page(p, buf);
  CHECK(store.counters().writes == 1);
  store.read_page(p, buf);
  CHECK(store.counters().reads == 1);

  // metadata page accounted separately
  store.write_page(kMetadataPage, buf);
  store.read_page(kMetadataPage, buf);
  CHECK(store.counters().writes == 1);
  CHECK(store.counters().reads == 1);
  CHECK(store.counters().meta_writes == 1);
  CHECK(store.counters().meta_reads == 1);
}

TEST_CASE("allocation performs no device I/O") {
  MemPageStore store(kPage);
  for (int i = 0; i < 10; ++i) store.allocate_page();
  CHECK(store.counters().reads == 0);
  CHECK(store.counters().writes == 0);
}

TEST_CASE("file store flush round-trips through reopen") {
  fs::path path = temp_file("pagetree_store_roundtrip.bin");
  auto content = pattern(0x7C);
  {
    FilePageStore store(path, kPage);
    PageId p = store.allocate_page();
    store.write_page(p, content);

    StoreMetadata meta;
    meta.cfg = PageConfig{kPage, 16};
    meta.root = p;
    meta.height = 1;
    meta.next_page = store.next_page();
    std::vector<std::uint8_t> frame(kPage);
    meta.encode(frame);
    store.write_page(kMetadataPage, frame);
    store.flush();
  }
  {
    FilePageStore store = FilePageStore::open_existing(path);
    CHECK(store.page_size() == kPage);
    std::vector<std::uint8_t> frame(kPage);
    store.read_page(kMetadataPage, frame);
    StoreMetadata meta = StoreMetadata::decode(frame);
    CHECK(meta.root == 1);
    CHECK(meta.height == 1);
    CHECK(meta.next_page == 2);
    store.set_next_page(meta.next_page);

    std::vector<std::uint8_t> got(kPage);
    store.read_page(meta.root, got);
    CHECK(got == content);
  }
  fs::remove(path);
}

TEST_CASE("flush on an empty store is a no-op") {
  fs::path path = temp_file("pagetree_store_empty.bin");
  FilePageStore store(path, kPage);
  CHECK_NOTHROW(store.flush());
  CHECK(store.counters().writes == 0);
  fs::remove(path);
}

TEST_CASE("open_existing rejects non-store files") {
  fs::path path = temp_file("pagetree_store_garbage.bin");
  {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    std::vector<std::uint8_t> junk(kPage, 0);
    std::fwrite(junk.data(), 1, junk.size(), f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(FilePageStore::open_existing(path), Error);
  fs::remove(path);
}

TEST_CASE("metadata encode/decode round-trip and validation") {
  StoreMetadata meta;
  meta.cfg = PageConfig{512, 16};
  meta.root = 17;
  meta.height = 3;
  meta.record_count = 12345;
  meta.next_page = 99;

  std::vector<std::uint8_t> frame(kPage);
  meta.encode(frame);
  StoreMetadata got = StoreMetadata::decode(frame);
  CHECK(got.cfg.page_size == 512);
  CHECK(got.cfg.record_size == 16);
  CHECK(got.root == 17);
  CHECK(got.height == 3);
  CHECK(got.record_count == 12345);
  CHECK(got.next_page == 99);

  SECTION("zeroed page is corrupt") {
    std::vector<std::uint8_t> zero(kPage, 0);
    CHECK_THROWS_AS(StoreMetadata::decode(zero), Error);
  }
  SECTION("root outside the allocated range is corrupt") {
    meta.root = 200;
    meta.encode(frame);
    CHECK_THROWS_AS(StoreMetadata::decode(frame), Error);
  }
}

TEST_CASE("memory and file stores are observationally equivalent") {
  fs::path path = temp_file("pagetree_store_diff.bin");
  MemPageStore mem(kPage);
  FilePageStore file(path, kPage);

  std::mt19937 rng(2024);
  std::vector<PageId> allocated;
  std::vector<std::uint8_t> a(kPage), b(kPage);

  for (int op = 0; op < 2000; ++op) {
    int action = rng() % 3;
    if (action == 0 || allocated.empty()) {
      PageId pm = mem.allocate_page();
      PageId pf = file.allocate_page();
      REQUIRE(pm == pf);
      allocated.push_back(pm);
    } else if (action == 1) {
      PageId p = allocated[rng() % allocated.size()];
      auto buf = pattern(static_cast<std::uint8_t>(rng()));
      mem.write_page(p, buf);
      file.write_page(p, buf);
    } else {
      PageId p = allocated[rng() % allocated.size()];
      mem.read_page(p, a);
      file.read_page(p, b);
      REQUIRE(a == b);
    }
  }
  CHECK(mem.counters().reads == file.counters().reads);
  CHECK(mem.counters().writes == file.counters().writes);
  CHECK(mem.next_page() == file.next_page());
  fs::remove(path);
}

TEST_CASE("simulated latency accrues per I/O without sleeping") {
  MemPageStore store(kPage);
  store.set_latency(/*read_us=*/10.0, /*write_us=*/20.0);
  PageId p = store.allocate_page();
  auto buf = pattern(1);
  store.write_page(p, buf);
  store.write_page(p, buf);
  store.read_page(p, buf);
  CHECK(store.simulated_time_us() == Catch::Approx(50.0));
}
