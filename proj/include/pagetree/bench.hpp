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

#ifndef PAGETREE_BENCH_HPP_
#define PAGETREE_BENCH_HPP_

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "pagetree/btree.hpp"
#include "pagetree/seqfile.hpp"
#include "pagetree/storage.hpp"

namespace pagetree {

enum class KeyOrder { Random, Sequential };

// Full description of one benchmark run. Two runs with equal specs produce
// identical workloads and, latency aside, identical measurements.
struct WorkloadSpec {
  std::uint64_t n_records = 10000;
  KeyOrder order = KeyOrder::Random;
  std::uint64_t seed = 1;
  std::uint32_t buffers = 2;
  std::uint32_t page_size = 512;
  std::uint32_t record_size = 16;
  std::uint64_t interval = 1000;
  bool simulate_latency = false;

  PageConfig page_config() const { return PageConfig{page_size, record_size}; }
};

// One measurement row: cumulative counter deltas after `records` operations.
struct Row {
  std::uint64_t records = 0;
  std::uint64_t reads = 0;
  std::uint64_t writes = 0;
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint32_t height = 0;
  std::uint64_t meta_writes = 0;
  double sim_ms = 0.0;
};

struct Report {
  std::vector<Row> rows;
  bool with_sim = false;
  // Sequential-file runs also summarize scan cost.
  double mean_reads_per_query = 0.0;
  std::uint64_t data_pages = 0;
};

// Device speeds used when latency simulation is on: a 345 reads/s,
// 175 writes/s disk. Only the accounting moves; nothing sleeps.
inline constexpr double kSimReadUs = 1e6 / 345.0;
inline constexpr double kSimWriteUs = 1e6 / 175.0;

// The insert workload: n distinct keys. Sequential order counts upward from
// 1; random order draws raw 32-bit values from a seeded generator, skipping
// repeats, so a given (seed, n) always names the same keys in the same
// order. Key 0 is reserved to keep sequential runs 1-based everywhere.
inline std::vector<std::uint32_t> workload_keys(std::uint64_t n,
                                                KeyOrder order,
                                                std::uint64_t seed) {
  std::vector<std::uint32_t> keys;
  keys.reserve(n);
  if (order == KeyOrder::Sequential) {
    for (std::uint64_t i = 1; i <= n; ++i) {
      keys.push_back(static_cast<std::uint32_t>(i));
    }
    return keys;
  }
  std::mt19937 gen(static_cast<std::uint32_t>(seed));
  std::unordered_set<std::uint32_t> seen;
  seen.reserve(n * 2);
  while (keys.size() < n) {
    const std::uint32_t k = gen();
    if (k == 0) continue;
    if (seen.insert(k).second) keys.push_back(k);
  }
  return keys;
}

// Deterministic payload for a key, so any copy of a record can be checked
// for corruption without consulting the writer.
inline std::vector<std::uint8_t> record_value(const PageConfig& cfg,
                                              std::uint32_t key) {
  std::vector<std::uint8_t> v(cfg.value_size());
  std::uint32_t x = key * 2654435761u + 12345u;
  for (std::size_t i = 0; i < v.size(); ++i) {
    x ^= x << 13;
    x ^= x >> 17;
    x ^= x << 5;
    v[i] = static_cast<std::uint8_t>(x);
  }
  return v;
}

namespace detail_bench {

struct Baseline {
  IoCounters io;
  PoolStats pool;
  double sim_us = 0.0;
};

inline Baseline snapshot(const PageStore& store, const BTree& tree) {
  return Baseline{store.counters(), tree.pool().stats(),
                  store.simulated_time_us()};
}

inline Row make_row(std::uint64_t records, const PageStore& store,
                    const BTree& tree, const Baseline& base) {
  const IoCounters& io = store.counters();
  const PoolStats& ps = tree.pool().stats();
  Row r;
  r.records = records;
  r.reads = io.reads - base.io.reads;
  r.writes = io.writes - base.io.writes;
  r.hits = ps.hits - base.pool.hits;
  r.misses = ps.misses - base.pool.misses;
  r.height = tree.height();
  r.meta_writes = io.meta_writes - base.io.meta_writes;
  r.sim_ms = (store.simulated_time_us() - base.sim_us) / 1000.0;
  return r;
}

}  // namespace detail_bench

// Builds a fresh tree in `store` and inserts the workload, sampling counters
// every `interval` operations (and always at the end). Counter baselines are
// taken after creation, so rows show insertion cost alone.
inline Report bench_insert(PageStore& store, const WorkloadSpec& spec) {
  const PageConfig cfg = spec.page_config();
  BTree tree = BTree::create(store, cfg, spec.buffers);
  if (spec.simulate_latency) store.set_latency(kSimReadUs, kSimWriteUs);

  const auto keys = workload_keys(spec.n_records, spec.order, spec.seed);
  const auto base = detail_bench::snapshot(store, tree);

  Report rep;
  rep.with_sim = spec.simulate_latency;
  const std::uint64_t step = spec.interval == 0 ? spec.n_records
                                                : spec.interval;
  for (std::uint64_t i = 0; i < keys.size(); ++i) {
    tree.put(keys[i], record_value(cfg, keys[i]));
    const std::uint64_t done = i + 1;
    if (done % step == 0 || done == keys.size()) {
      rep.rows.push_back(detail_bench::make_row(done, store, tree, base));
    }
  }
  tree.flush();
  return rep;
}

// Opens the tree already in `store` and issues `spec.n_records` point
// queries. Targets are drawn uniformly, with replacement, from the keys the
// insert workload with the same seed and order would have produced; the
// store's record count says how many that was.
inline Report bench_query(PageStore& store, const WorkloadSpec& spec) {
  BTree tree = BTree::open(store, spec.buffers);
  if (spec.simulate_latency) store.set_latency(kSimReadUs, kSimWriteUs);
  if (tree.size() == 0) {
    throw Error(ErrorCode::InvalidConfig, "store holds no records to query");
  }

  const auto keys = workload_keys(tree.size(), spec.order, spec.seed);
  const PageConfig cfg = tree.config();
  std::vector<std::uint8_t> value(cfg.value_size());
  std::mt19937 pick(static_cast<std::uint32_t>(spec.seed) * 2654435761u + 1u);

  const auto base = detail_bench::snapshot(store, tree);
  Report rep;
  rep.with_sim = spec.simulate_latency;
  const std::uint64_t step = spec.interval == 0 ? spec.n_records
                                                : spec.interval;
  for (std::uint64_t i = 0; i < spec.n_records; ++i) {
    const std::uint32_t key = keys[pick() % keys.size()];
    if (!tree.get(key, value)) {
      throw Error(ErrorCode::KeyNotFound,
                  "benchmark key missing; store does not match seed/order");
    }
    const std::uint64_t done = i + 1;
    if (done % step == 0 || done == spec.n_records) {
      rep.rows.push_back(detail_bench::make_row(done, store, tree, base));
    }
  }
  return rep;
}

// The unindexed baseline: appends the same workload to a sequential file,
// then queries it `spec.n_records` times with the same target distribution
// the tree query benchmark uses. Rows carry read counts only; hits, misses,
// height, and meta columns stay zero since no index is involved.
inline Report bench_seqfile(PageStore& store, const WorkloadSpec& spec) {
  const PageConfig cfg = spec.page_config();
  SeqFile file(store, cfg);
  const auto keys = workload_keys(spec.n_records, spec.order, spec.seed);
  for (const std::uint32_t k : keys) file.append(k, record_value(cfg, k));
  file.flush();

  if (spec.simulate_latency) store.set_latency(kSimReadUs, kSimWriteUs);
  std::vector<std::uint8_t> value(cfg.value_size());
  std::mt19937 pick(static_cast<std::uint32_t>(spec.seed) * 2654435761u + 1u);

  const IoCounters base = store.counters();
  const double sim0 = store.simulated_time_us();
  Report rep;
  rep.with_sim = spec.simulate_latency;
  rep.data_pages = file.data_pages();
  const std::uint64_t step = spec.interval == 0 ? spec.n_records
                                                : spec.interval;
  for (std::uint64_t i = 0; i < spec.n_records; ++i) {
    const std::uint32_t key = keys[pick() % keys.size()];
    if (!file.query(key, value)) {
      throw Error(ErrorCode::KeyNotFound, "sequential file lost a record");
    }
    const std::uint64_t done = i + 1;
    if (done % step == 0 || done == spec.n_records) {
      Row r;
      r.records = done;
      r.reads = store.counters().reads - base.reads;
      r.writes = store.counters().writes - base.writes;
      r.sim_ms = (store.simulated_time_us() - sim0) / 1000.0;
      rep.rows.push_back(r);
    }
  }
  if (spec.n_records > 0) {
    rep.mean_reads_per_query =
        static_cast<double>(store.counters().reads - base.reads) /
        static_cast<double>(spec.n_records);
  }
  return rep;
}

// CSV schema, versioned by column set: the sim_ms column appears only when
// the run simulated latency. Runs with equal specs emit identical bytes.
inline void write_csv(std::ostream& os, const Report& rep) {
  os << "records,reads,writes,hits,misses,height,meta_writes";
  if (rep.with_sim) os << ",sim_ms";
  os << "\n";
  for (const Row& r : rep.rows) {
    os << r.records << ',' << r.reads << ',' << r.writes << ',' << r.hits
       << ',' << r.misses << ',' << r.height << ',' << r.meta_writes;
    if (rep.with_sim) {
      os << ',' << std::fixed << std::setprecision(3) << r.sim_ms;
      os.unsetf(std::ios::floatfield);
    }
    os << "\n";
  }
}

inline std::string csv_string(const Report& rep) {
  std::ostringstream ss;
  write_csv(ss, rep);
  return ss.str();
}

}  // namespace pagetree

#endif  // PAGETREE_BENCH_HPP_
