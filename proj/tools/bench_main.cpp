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
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "pagetree/bench.hpp"
#include "pagetree/btree.hpp"
#include "pagetree/storage.hpp"

namespace {

using namespace pagetree;

struct CliOptions {
  std::uint64_t records = 10000;
  std::string order = "random";
  std::uint64_t seed = 1;
  std::uint32_t buffers = 2;
  std::uint32_t page_size = 512;
  std::uint32_t record_size = 16;
  std::uint64_t interval = 1000;
  std::string store_path;
  std::string csv_path;
  bool simulate = false;
};

WorkloadSpec make_spec(const CliOptions& opt) {
  WorkloadSpec spec;
  spec.n_records = opt.records;
  spec.order = opt.order == "seq" ? KeyOrder::Sequential : KeyOrder::Random;
  spec.seed = opt.seed;
  spec.buffers = opt.buffers;
  spec.page_size = opt.page_size;
  spec.record_size = opt.record_size;
  spec.interval = opt.interval;
  spec.simulate_latency = opt.simulate;
  return spec;
}

void add_workload_flags(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--records", opt.records, "operation count");
  sub->add_option("--order", opt.order, "key order: random or seq")
      ->check(CLI::IsMember({"random", "seq"}));
  sub->add_option("--seed", opt.seed, "workload seed");
  sub->add_option("--interval", opt.interval,
                  "emit a measurement row every K operations (0: end only)");
  sub->add_flag("--simulate-latency", opt.simulate,
                "account simulated device time (345 reads/s, 175 writes/s)");
}

void add_geometry_flags(CLI::App* sub, CliOptions& opt) {
  sub->add_option("--page-size", opt.page_size, "page size in bytes");
  sub->add_option("--record-size", opt.record_size, "record size in bytes");
}

// CSV goes to the named file, or to stdout when no path was given.
void emit_report(const Report& rep, const std::string& csv_path) {
  if (csv_path.empty()) {
    write_csv(std::cout, rep);
    return;
  }
  std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::IoError, "cannot write " + csv_path);
  }
  write_csv(out, rep);
}

std::string sweep_csv_name(const std::string& base, std::uint32_t buffers,
                           const char* phase) {
  const auto dot = base.rfind('.');
  const std::string stem = dot == std::string::npos ? base : base.substr(0, dot);
  const std::string ext = dot == std::string::npos ? ".csv" : base.substr(dot);
  return stem + "_m" + std::to_string(buffers) + "_" + phase + ext;
}

double hit_rate(const Row& r) {
  const std::uint64_t total = r.hits + r.misses;
  return total == 0 ? 0.0 : static_cast<double>(r.hits) / total;
}

int run_insert(const CliOptions& opt) {
  const WorkloadSpec spec = make_spec(opt);
  Report rep;
  if (opt.store_path.empty()) {
    MemPageStore store(opt.page_size);
    rep = bench_insert(store, spec);
  } else {
    FilePageStore store(opt.store_path, opt.page_size);
    rep = bench_insert(store, spec);
  }
  emit_report(rep, opt.csv_path);
  return 0;
}

int run_query(const CliOptions& opt) {
  FilePageStore store = FilePageStore::open_existing(opt.store_path);
  const WorkloadSpec spec = make_spec(opt);
  const Report rep = bench_query(store, spec);
  emit_report(rep, opt.csv_path);
  return 0;
}

// One in-memory build plus query pass per pool size, 2 through 8 frames.
// A summary line per size goes to stderr so stdout stays parseable.
int run_sweep(const CliOptions& opt) {
  for (std::uint32_t m = 2; m <= 8; ++m) {
    CliOptions local = opt;
    local.buffers = m;
    const WorkloadSpec spec = make_spec(local);

    MemPageStore store(opt.page_size);
    const Report ins = bench_insert(store, spec);
    const Report qry = bench_query(store, spec);

    if (opt.csv_path.empty()) {
      std::cout << "# M=" << m << " insert\n";
      write_csv(std::cout, ins);
      std::cout << "# M=" << m << " query\n";
      write_csv(std::cout, qry);
    } else {
      emit_report(ins, sweep_csv_name(opt.csv_path, m, "insert"));
      emit_report(qry, sweep_csv_name(opt.csv_path, m, "query"));
    }

    const Row& ri = ins.rows.back();
    const Row& rq = qry.rows.back();
    std::fprintf(stderr,
                 "M=%u insert reads=%llu writes=%llu hit_rate=%.3f | "
                 "query reads=%llu reads_per_query=%.3f hit_rate=%.3f\n",
                 m, static_cast<unsigned long long>(ri.reads),
                 static_cast<unsigned long long>(ri.writes), hit_rate(ri),
                 static_cast<unsigned long long>(rq.reads),
                 static_cast<double>(rq.reads) /
                     static_cast<double>(rq.records),
                 hit_rate(rq));
  }
  return 0;
}

int run_seqfile(const CliOptions& opt) {
  const WorkloadSpec spec = make_spec(opt);
  Report rep;
  if (opt.store_path.empty()) {
    MemPageStore store(opt.page_size);
    rep = bench_seqfile(store, spec);
  } else {
    FilePageStore store(opt.store_path, opt.page_size);
    rep = bench_seqfile(store, spec);
  }
  emit_report(rep, opt.csv_path);
  std::fprintf(stderr, "seqfile records=%llu data_pages=%llu "
                       "mean_reads_per_query=%.3f\n",
               static_cast<unsigned long long>(opt.records),
               static_cast<unsigned long long>(rep.data_pages),
               rep.mean_reads_per_query);
  return 0;
}

int run_dump(const CliOptions& opt) {
  FilePageStore store = FilePageStore::open_existing(opt.store_path);
  BTree tree = BTree::open(store, opt.buffers);
  tree.dump(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pagetree benchmark harness"};
  app.require_subcommand(1);
  CliOptions opt;

  CLI::App* insert = app.add_subcommand(
      "insert", "build a tree from a generated workload");
  add_workload_flags(insert, opt);
  add_geometry_flags(insert, opt);
  insert->add_option("--buffers", opt.buffers, "page frames (>= 2)");
  insert->add_option("--store", opt.store_path,
                     "store file path (omit for in-memory)");
  insert->add_option("--csv", opt.csv_path, "measurement output path");

  CLI::App* query = app.add_subcommand(
      "query", "point-query an existing store");
  add_workload_flags(query, opt);
  query->add_option("--buffers", opt.buffers, "page frames (>= 2)");
  query->add_option("--store", opt.store_path, "store file path")
      ->required();
  query->add_option("--csv", opt.csv_path, "measurement output path");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "insert and query at every pool size from 2 to 8 frames");
  add_workload_flags(sweep, opt);
  add_geometry_flags(sweep, opt);
  sweep->add_option("--csv", opt.csv_path,
                    "per-size output: PATH_mK_insert.csv / PATH_mK_query.csv");

  CLI::App* seqfile = app.add_subcommand(
      "seqfile", "unindexed sequential-file baseline");
  add_workload_flags(seqfile, opt);
  add_geometry_flags(seqfile, opt);
  seqfile->add_option("--store", opt.store_path,
                      "store file path (omit for in-memory)");
  seqfile->add_option("--csv", opt.csv_path, "measurement output path");

  CLI::App* dump = app.add_subcommand("dump", "print tree structure");
  dump->add_option("--store", opt.store_path, "store file path")->required();
  dump->add_option("--buffers", opt.buffers, "page frames (>= 2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (insert->parsed()) return run_insert(opt);
    if (query->parsed()) return run_query(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (seqfile->parsed()) return run_seqfile(opt);
    if (dump->parsed()) return run_dump(opt);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
