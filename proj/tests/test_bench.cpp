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

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pagetree/bench.hpp"
#include "pagetree/seqfile.hpp"
#include "pagetree/storage.hpp"

using namespace pagetree;

namespace {

WorkloadSpec small_spec(std::uint64_t n, KeyOrder order = KeyOrder::Random) {
  WorkloadSpec spec;
  spec.n_records = n;
  spec.order = order;
  spec.seed = 7;
  spec.buffers = 2;
  spec.page_size = 512;
  spec.record_size = 16;
  spec.interval = 0;
  return spec;
}

}  // namespace

TEST_CASE("workload keys are unique, nonzero, and reproducible") {
  const auto a = workload_keys(5000, KeyOrder::Random, 42);
  const auto b = workload_keys(5000, KeyOrder::Random, 42);
  REQUIRE(a == b);
  REQUIRE(a.size() == 5000);
  const std::set<std::uint32_t> uniq(a.begin(), a.end());
  REQUIRE(uniq.size() == a.size());
  REQUIRE(uniq.count(0) == 0);

  const auto c = workload_keys(5000, KeyOrder::Random, 43);
  REQUIRE(a != c);

  const auto s = workload_keys(4, KeyOrder::Sequential, 9);
  REQUIRE(s == std::vector<std::uint32_t>{1, 2, 3, 4});

  // A longer prefix extends a shorter one; instrumentation that replays the
  // first k keys of a workload sees exactly what the builder inserted.
  const auto full = workload_keys(100, KeyOrder::Random, 42);
  REQUIRE(std::equal(a.begin(), a.begin() + 100, full.begin()));
}

TEST_CASE("record values are deterministic per key and differ across keys") {
  const PageConfig cfg{512, 16};
  REQUIRE(record_value(cfg, 10) == record_value(cfg, 10));
  REQUIRE(record_value(cfg, 10) != record_value(cfg, 11));
  REQUIRE(record_value(cfg, 10).size() == cfg.value_size());
}

TEST_CASE("insert benchmark rows carry exact counter deltas") {
  SECTION("single record") {
    MemPageStore store(512);
    const Report rep = bench_insert(store, small_spec(1));
    REQUIRE(rep.rows.size() == 1);
    const Row& r = rep.rows.back();
    CHECK(r.records == 1);
    CHECK(r.reads == 1);   // the empty root leaf comes in for the insert
    CHECK(r.writes == 1);  // and goes back out with one record
    CHECK(r.height == 1);
    CHECK(r.meta_writes == 0);
  }

  SECTION("sequential fill of one leaf issues no splits") {
    // 512-byte pages hold 31 records; 31 sequential inserts never split.
    MemPageStore store(512);
    const Report rep = bench_insert(store, small_spec(31, KeyOrder::Sequential));
    const Row& r = rep.rows.back();
    CHECK(r.reads == 31);
    CHECK(r.writes == 31);
    CHECK(r.height == 1);
    CHECK(r.meta_writes == 0);
  }

  SECTION("record 32 forces the first split") {
    MemPageStore store(512);
    const Report rep = bench_insert(store, small_spec(32, KeyOrder::Sequential));
    const Row& r = rep.rows.back();
    CHECK(r.writes == 34);  // 32 leaf writes plus two extra pages at the split
    CHECK(r.height == 2);
    CHECK(r.meta_writes == 1);
  }

  SECTION("interval sampling emits a row per step plus the tail") {
    MemPageStore store(512);
    WorkloadSpec spec = small_spec(25, KeyOrder::Sequential);
    spec.interval = 10;
    const Report rep = bench_insert(store, spec);
    REQUIRE(rep.rows.size() == 3);
    CHECK(rep.rows[0].records == 10);
    CHECK(rep.rows[1].records == 20);
    CHECK(rep.rows[2].records == 25);
    CHECK(rep.rows[0].writes <= rep.rows[1].writes);
    CHECK(rep.rows[1].writes <= rep.rows[2].writes);
  }
}

TEST_CASE("query benchmark reads exactly height pages per probe at M=2") {
  MemPageStore store(512);
  WorkloadSpec spec = small_spec(200);
  bench_insert(store, spec);

  WorkloadSpec qspec = spec;
  qspec.n_records = 100;
  const Report rep = bench_query(store, qspec);
  const Row& r = rep.rows.back();
  CHECK(r.height == 2);
  // Two frames cannot cache across a two-level descent, so every probe
  // costs exactly height device reads.
  CHECK(r.reads == 200);
  CHECK(r.misses == 200);
  CHECK(r.hits == 0);
  CHECK(r.writes == 0);
}

TEST_CASE("query benchmark with a pinned root reads two pages per probe") {
  MemPageStore store(512);
  WorkloadSpec spec = small_spec(2000);
  spec.buffers = 3;
  bench_insert(store, spec);

  WorkloadSpec qspec = spec;
  qspec.n_records = 100;
  const Report rep = bench_query(store, qspec);
  const Row& r = rep.rows.back();
  REQUIRE(r.height == 3);
  // The root pins into its frame on first touch and 99 of 100 probes hit
  // it there. Below the root, the interior and leaf of each probe take
  // turns evicting one another from the single remaining frame, so both
  // always come from the device: two reads per probe plus the warmup.
  CHECK(r.reads == 201);
  CHECK(r.hits == 99);
  CHECK(r.misses == 201);
}

TEST_CASE("csv output is byte-identical across runs of the same spec") {
  const WorkloadSpec spec = [] {
    WorkloadSpec s;
    s.n_records = 500;
    s.seed = 11;
    s.interval = 100;
    return s;
  }();

  std::string first;
  std::string second;
  for (std::string* out : {&first, &second}) {
    MemPageStore store(512);
    const Report ins = bench_insert(store, spec);
    const Report qry = bench_query(store, spec);
    *out = csv_string(ins) + csv_string(qry);
  }
  REQUIRE(first == second);
  REQUIRE(first.rfind("records,reads,writes,hits,misses,height,meta_writes\n",
                      0) == 0);
}

TEST_CASE("csv gains a sim_ms column only under simulated latency") {
  WorkloadSpec spec = small_spec(10, KeyOrder::Sequential);
  spec.simulate_latency = true;
  spec.interval = 5;

  MemPageStore store(512);
  const Report rep = bench_insert(store, spec);
  const std::string csv = csv_string(rep);
  REQUIRE(csv.rfind("records,reads,writes,hits,misses,height,meta_writes,sim_ms\n",
                    0) == 0);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].sim_ms > 0.0);
  CHECK(rep.rows[1].sim_ms > rep.rows[0].sim_ms);

  // Identical ops accrue identical simulated time.
  MemPageStore again(512);
  REQUIRE(csv_string(bench_insert(again, spec)) == csv);
}

TEST_CASE("sequential file packs records and scans from the front") {
  const PageConfig cfg{512, 16};

  SECTION("single partial page answers every query in one read") {
    MemPageStore store(512);
    SeqFile file(store, cfg);
    for (std::uint32_t k = 1; k <= 10; ++k) {
      file.append(k, record_value(cfg, k));
    }
    file.flush();
    REQUIRE(file.data_pages() == 1);

    std::vector<std::uint8_t> v(cfg.value_size());
    const auto before = store.counters().reads;
    REQUIRE(file.query(7, v));
    CHECK(store.counters().reads - before == 1);
    CHECK(v == record_value(cfg, 7));
  }

  SECTION("scan cost grows with record position") {
    MemPageStore store(512);
    SeqFile file(store, cfg);
    for (std::uint32_t k = 1; k <= 100; ++k) {
      file.append(k, record_value(cfg, k));
    }
    file.flush();
    REQUIRE(file.data_pages() == 4);  // 31 + 31 + 31 + 7

    std::vector<std::uint8_t> v(cfg.value_size());
    auto reads_for = [&](std::uint32_t key) {
      const auto before = store.counters().reads;
      REQUIRE(file.query(key, v));
      return store.counters().reads - before;
    };
    CHECK(reads_for(1) == 1);
    CHECK(reads_for(31) == 1);
    CHECK(reads_for(32) == 2);
    CHECK(reads_for(100) == 4);

    const auto before = store.counters().reads;
    REQUIRE_FALSE(file.query(999, v));
    CHECK(store.counters().reads - before == 4);
  }

  SECTION("appends after a query keep the tail intact") {
    MemPageStore store(512);
    SeqFile file(store, cfg);
    std::vector<std::uint8_t> v(cfg.value_size());
    for (std::uint32_t k = 1; k <= 40; ++k) {
      file.append(k, record_value(cfg, k));
      if (k % 7 == 0) REQUIRE(file.query(k, v));
    }
    file.flush();
    for (std::uint32_t k = 1; k <= 40; ++k) {
      REQUIRE(file.query(k, v));
      REQUIRE(v == record_value(cfg, k));
    }
  }
}

TEST_CASE("seqfile benchmark reports mean scan cost") {
  MemPageStore store(512);
  WorkloadSpec spec = small_spec(310, KeyOrder::Sequential);
  spec.n_records = 310;
  const Report rep = bench_seqfile(store, spec);
  REQUIRE(rep.data_pages == 10);
  // Uniform targets over ten pages average near half the file.
  CHECK(rep.mean_reads_per_query > 3.5);
  CHECK(rep.mean_reads_per_query < 6.5);
  const Row& r = rep.rows.back();
  CHECK(r.records == 310);
  CHECK(r.hits == 0);
  CHECK(r.height == 0);
}
