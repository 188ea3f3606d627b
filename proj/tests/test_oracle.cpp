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

// Randomized equivalence against std::map. The map is the oracle: every
// mutation goes to both structures and every observation must agree, byte
// for byte, across page geometries and pool sizes.

#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "pagetree/bench.hpp"
#include "pagetree/btree.hpp"
#include "pagetree/storage.hpp"

using namespace pagetree;

namespace {

using Oracle = std::map<std::uint32_t, std::vector<std::uint8_t>>;

struct Tally {
  std::uint64_t puts = 0;
  std::uint64_t gets = 0;
  std::uint64_t removes = 0;
  std::uint64_t ranges = 0;
  std::uint64_t total() const { return puts + gets + removes + ranges; }
};

// Picks a key likely to exist when the oracle is non-empty, so gets and
// removes exercise both outcomes rather than missing almost always.
std::uint32_t pick_key(std::mt19937& gen, const Oracle& oracle) {
  if (!oracle.empty() && gen() % 2 == 0) {
    auto it = oracle.lower_bound(gen() % 50000);
    if (it == oracle.end()) it = oracle.begin();
    return it->first;
  }
  return gen() % 50000;
}

Tally run_workload(BTree& tree, Oracle& oracle, std::mt19937& gen,
                   std::uint64_t ops) {
  const PageConfig& cfg = tree.config();
  std::vector<std::uint8_t> value(cfg.value_size());
  Tally tally;

  for (std::uint64_t i = 0; i < ops; ++i) {
    const std::uint32_t roll = gen() % 100;
    if (roll < 45) {
      const std::uint32_t key = pick_key(gen, oracle);
      const auto payload = record_value(cfg, key);
      if (oracle.count(key)) {
        REQUIRE_THROWS_AS(tree.put(key, payload), Error);
      } else {
        tree.put(key, payload);
        oracle.emplace(key, payload);
      }
      ++tally.puts;
    } else if (roll < 70) {
      const std::uint32_t key = pick_key(gen, oracle);
      const bool found = tree.get(key, value);
      const auto it = oracle.find(key);
      REQUIRE(found == (it != oracle.end()));
      if (found) REQUIRE(value == it->second);
      ++tally.gets;
    } else if (roll < 85) {
      const std::uint32_t key = pick_key(gen, oracle);
      if (oracle.erase(key)) {
        tree.remove(key);
      } else {
        REQUIRE_THROWS_AS(tree.remove(key), Error);
      }
      ++tally.removes;
    } else {
      std::uint32_t lo = gen() % 50000;
      std::uint32_t hi = gen() % 50000;
      if (lo > hi) std::swap(lo, hi);
      std::vector<std::pair<std::uint32_t, std::vector<std::uint8_t>>> got;
      tree.range(lo, hi, [&](std::uint32_t k, std::span<const std::uint8_t> v) {
        got.emplace_back(k, std::vector<std::uint8_t>(v.begin(), v.end()));
      });
      std::vector<std::pair<std::uint32_t, std::vector<std::uint8_t>>> want;
      for (auto it = oracle.lower_bound(lo);
           it != oracle.end() && it->first <= hi; ++it) {
        want.emplace_back(it->first, it->second);
      }
      REQUIRE(got == want);
      ++tally.ranges;
    }

    if ((i + 1) % 3000 == 0) {
      REQUIRE(tree.size() == oracle.size());
      tree.validate_structure();
    }
  }
  REQUIRE(tree.size() == oracle.size());
  tree.validate_structure();
  return tally;
}

}  // namespace

TEST_CASE("tree agrees with a sorted map across geometries and pool sizes") {
  constexpr std::uint64_t kOpsPerCombo = 12000;

  for (const std::uint32_t page_size : {256u, 512u, 1024u}) {
    for (const std::uint32_t frames : {2u, 3u, 5u}) {
      DYNAMIC_SECTION("page_size=" << page_size << " frames=" << frames) {
        const PageConfig cfg{page_size, 16};
        MemPageStore store(page_size);
        BTree tree = BTree::create(store, cfg, frames);
        Oracle oracle;
        std::mt19937 gen(1000u * page_size + frames);

        const Tally tally = run_workload(tree, oracle, gen, kOpsPerCombo);
        REQUIRE(tally.total() == kOpsPerCombo);
        // Every operation class must actually occur in volume.
        REQUIRE(tally.puts > kOpsPerCombo / 3);
        REQUIRE(tally.gets > kOpsPerCombo / 8);
        REQUIRE(tally.removes > kOpsPerCombo / 12);
        REQUIRE(tally.ranges > kOpsPerCombo / 16);

        // The survivors read back exactly, end to end.
        std::vector<std::uint8_t> value(cfg.value_size());
        for (const auto& [k, v] : oracle) {
          REQUIRE(tree.get(k, value));
          REQUIRE(value == v);
        }
      }
    }
  }
}

TEST_CASE("oracle equivalence survives reopen from a file store") {
  const PageConfig cfg{512, 16};
  const auto path = std::filesystem::temp_directory_path() /
                    "pagetree_oracle_reopen.db";
  Oracle oracle;
  std::mt19937 gen(99);

  {
    FilePageStore store(path, 512);
    BTree tree = BTree::create(store, cfg, 3);
    run_workload(tree, oracle, gen, 8000);
    tree.flush();
  }
  {
    FilePageStore store = FilePageStore::open_existing(path);
    BTree tree = BTree::open(store, 3);
    REQUIRE(tree.size() == oracle.size());
    run_workload(tree, oracle, gen, 8000);

    std::vector<std::uint8_t> value(cfg.value_size());
    for (const auto& [k, v] : oracle) {
      REQUIRE(tree.get(k, value));
      REQUIRE(value == v);
    }
  }
  std::filesystem::remove(path);
}
