// Copyright 2026 The csdsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// csdsynth: compile unitaries to Clifford+T circuits, verify circuits,
// print cost-model sweeps and build word tables.
//
// Exit codes: 0 ok, 1 verification failed, 2 unreadable input,
// 3 unreachable precision, 4 qubit budget exceeded, 5 resource limit,
// 6 other errors, 64 bad command line.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "csdsynth/circuit_io.hpp"
#include "csdsynth/compiler.hpp"
#include "csdsynth/simulate.hpp"
#include "csdsynth/unitary_io.hpp"

namespace {

using namespace csdsynth;
using json = nlohmann::ordered_json;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitPrecision = 3;
constexpr int kExitQubits = 4;
constexpr int kExitResource = 5;
constexpr int kExitOther = 6;
constexpr int kExitUsage = 64;

// Marks errors raised while reading user files.
struct InputError {
  std::string code;
  std::string message;
  Error::Context context;
};

int emit_error(const std::string &code, const std::string &message,
               const Error::Context &context, int exit_code) {
  json ctx = json::object();
  for (const auto &[k, v] : context) ctx[k] = v;
  json j = {{"code", code}, {"message", message}, {"context", ctx}};
  std::cout << j.dump() << std::endl;
  return exit_code;
}

// Flag values rejected before any work starts.
struct UsageError {
  std::string message;
  Error::Context context;
};

template <typename F>
auto read_input(const std::string &path, F &&reader) {
  try {
    return reader(path);
  } catch (const Error &e) {
    Error::Context ctx = e.context();
    ctx.emplace_back("path", path);
    throw InputError{e.code(), e.what(), ctx};
  }
}

void write_output(const std::string &path, const std::string &data) {
  if (path.empty() || path == "-") {
    std::cout << data;
    std::cout.flush();
  } else {
    write_file_atomic(path, data);
  }
}

struct CompileArgs {
  std::string unitary;
  double eps = 0.1;
  int k = 0;
  std::string strategy = "grouped";
  std::string backend = "naive";
  unsigned depth = 16;
  std::uint64_t seed = 0;
  int prefix_t = -1;
  std::string out;
  std::string report;
};

int cmd_compile(const CompileArgs &a) {
  CompileConfig cfg;
  cfg.eps = a.eps;
  if (a.k > 0) cfg.k = static_cast<unsigned>(a.k);
  cfg.strategy = strategy_from_name(a.strategy);
  cfg.oracle_backend = oracle_backend_from_name(a.backend);
  cfg.ht_table_depth = a.depth;
  cfg.seed = a.seed;
  cfg.pair_prefix_t = a.prefix_t;
  const UnitaryMatrix u = read_input(
      a.unitary, [](const std::string &p) { return read_unitary_file(p); });
  const unsigned n = u.num_qubits();
  if (a.k > 0 && static_cast<unsigned>(a.k) >= n) {
    throw UsageError{"--k must satisfy 1 <= k <= n-1",
                     {{"k", std::to_string(a.k)}, {"n", std::to_string(n)}}};
  }
  const CompileResult r = compile(u, cfg);
  write_output(a.out, serialize(r.circuit));
  if (!a.report.empty()) write_output(a.report, report_to_json(r));
  return 0;
}

struct VerifyArgs {
  std::string circuit;
  std::string unitary;
  double budget = 0.1;
  std::string sim = "auto";
};

int cmd_verify(const VerifyArgs &a) {
  SimMethod method = SimMethod::Auto;
  if (a.sim == "dense") method = SimMethod::Dense;
  else if (a.sim == "sparse") method = SimMethod::Sparse;
  const Circuit c = read_input(a.circuit, [](const std::string &p) {
    return deserialize(read_file(p));
  });
  const UnitaryMatrix u = read_input(
      a.unitary, [](const std::string &p) { return read_unitary_file(p); });
  const VerificationResult v = verify(c, u, a.budget, method);
  json j = {{"distance", v.distance},
            {"phase_sensitive_distance", v.phase_sensitive_distance},
            {"restricted_distance", v.restricted_distance},
            {"ancilla_leakage", v.ancilla_leakage},
            {"phase", v.phase},
            {"budget", a.budget},
            {"passed", v.passed}};
  std::cout << j.dump(2) << std::endl;
  return v.passed ? 0 : kExitVerifyFailed;
}

struct SweepArgs {
  std::string n_range = "6..30";
  double eps = 0.1;
  std::string strategy = "grouped";
  std::string k = "";
  std::string out;
};

std::pair<unsigned, unsigned> parse_range(const std::string &s) {
  unsigned lo = 0, hi = 0;
  char sep1 = 0, sep2 = 0;
  std::istringstream in(s);
  if (!(in >> lo)) throw UsageError{"bad --n-range", {{"value", s}}};
  if (in >> sep1) {
    if (sep1 == '.') in >> sep2;
    if (!(in >> hi) || (sep1 != ':' && sep1 != '-' && sep2 != '.')) {
      throw UsageError{"bad --n-range", {{"value", s}}};
    }
  } else {
    hi = lo;
  }
  if (lo < 2 || hi < lo || hi > 60) {
    throw UsageError{"--n-range must satisfy 2 <= lo <= hi <= 60",
                     {{"value", s}}};
  }
  return {lo, hi};
}

int cmd_sweep(const SweepArgs &a) {
  const auto [lo, hi] = parse_range(a.n_range);
  const Strategy strategy = strategy_from_name(a.strategy);
  // Default: one row per legal k for a single n, choose_k for a range.
  const std::string mode = a.k.empty() ? (lo == hi ? "all" : "auto") : a.k;
  std::ostringstream csv;
  csv.precision(17);
  csv << "n,k,strategy,t_model,ancilla_model\n";
  for (unsigned n = lo; n <= hi; ++n) {
    if (strategy == Strategy::Naive) {
      PredictedCosts p = predict_naive_costs(n, a.eps);
      csv << n << ",0,naive," << p.t_model << "," << p.ancilla_model << "\n";
      continue;
    }
    std::vector<unsigned> ks;
    if (mode == "all") {
      for (unsigned k = 1; k < n; ++k) ks.push_back(k);
    } else if (mode == "auto") {
      ks.push_back(choose_k(n, a.eps));
    } else {
      int k = 0;
      try {
        k = std::stoi(mode);
      } catch (const std::exception &) {
        throw UsageError{"--k must be auto, all or an integer", {{"k", mode}}};
      }
      if (k < 1 || static_cast<unsigned>(k) >= n) {
        throw UsageError{"--k outside [1, n-1]", {{"k", mode}}};
      }
      ks.push_back(static_cast<unsigned>(k));
    }
    for (unsigned k : ks) {
      PredictedCosts p = predict_costs(n, k, a.eps);
      csv << n << "," << k << ",grouped," << p.t_model << ","
          << p.ancilla_model << "\n";
    }
  }
  write_output(a.out, csv.str());
  return 0;
}

struct TableArgs {
  unsigned depth = 16;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

int cmd_table(const TableArgs &a) {
  bool cached = false;
  const WordTable t = load_or_build_word_table(a.depth, {}, &cached);
  json counts = json::array();
  for (std::uint64_t c : t.level_counts()) counts.push_back(c);
  json j = {{"depth", a.depth},
            {"entries", t.size()},
            {"counts_by_t", counts},
            {"max_slots", t.max_slots()},
            {"covering_radius", sampled_covering_radius(t, a.samples, a.seed)},
            {"samples", a.samples},
            {"seed", a.seed},
            {"cache_path", word_table_cache_path(a.depth)},
            {"from_cache", cached}};
  std::cout << j.dump(2) << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Compile unitaries to Clifford+T circuits"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto *compile_cmd = app.add_subcommand("compile", "Compile a unitary");
  compile_cmd->add_option("unitary", ca.unitary, "Unitary file (JSON or binary)")
      ->required();
  compile_cmd->add_option("--eps", ca.eps, "Target error")
      ->check(CLI::PositiveNumber);
  compile_cmd->add_option("--k", ca.k, "Block size (default: automatic)")
      ->check(CLI::NonNegativeNumber);
  compile_cmd->add_option("--strategy", ca.strategy)
      ->check(CLI::IsMember({"grouped", "naive"}));
  compile_cmd->add_option("--oracle-backend", ca.backend)
      ->check(CLI::IsMember({"naive", "select-swap", "select_swap"}));
  compile_cmd->add_option("--ht-table-depth", ca.depth, "Word table T-depth");
  compile_cmd->add_option("--seed", ca.seed);
  compile_cmd->add_option("--pair-prefix-t", ca.prefix_t,
                          "Prefix T-count of the pair search");
  compile_cmd->add_option("--out", ca.out, "Circuit file (default: stdout)");
  compile_cmd->add_option("--report", ca.report, "Report JSON file");

  VerifyArgs va;
  auto *verify_cmd = app.add_subcommand("verify", "Verify a circuit");
  verify_cmd->add_option("circuit", va.circuit)->required();
  verify_cmd->add_option("unitary", va.unitary)->required();
  verify_cmd->add_option("--budget", va.budget)->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--sim", va.sim)
      ->check(CLI::IsMember({"auto", "dense", "sparse"}));

  SweepArgs sa;
  auto *sweep_cmd = app.add_subcommand("sweep", "Cost-model sweep as CSV");
  sweep_cmd->add_option("--n-range", sa.n_range, "lo..hi");
  sweep_cmd->add_option("--eps", sa.eps)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--strategy", sa.strategy)
      ->check(CLI::IsMember({"grouped", "naive"}));
  sweep_cmd->add_option("--k", sa.k, "auto, all or a fixed k");
  sweep_cmd->add_option("--out", sa.out);

  TableArgs ta;
  auto *table_cmd = app.add_subcommand("table", "Build or load a word table");
  table_cmd->add_option("--depth", ta.depth);
  table_cmd->add_option("--samples", ta.samples);
  table_cmd->add_option("--seed", ta.seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return emit_error("usage", e.what(), {}, kExitUsage);
  }

  try {
    if (*compile_cmd) return cmd_compile(ca);
    if (*verify_cmd) return cmd_verify(va);
    if (*sweep_cmd) return cmd_sweep(sa);
    if (*table_cmd) return cmd_table(ta);
  } catch (const UsageError &e) {
    return emit_error("usage", e.message, e.context, kExitUsage);
  } catch (const InputError &e) {
    return emit_error(e.code, e.message, e.context, kExitInput);
  } catch (const UnreachablePrecision &e) {
    return emit_error(e.code(), e.what(), e.context(), kExitPrecision);
  } catch (const QubitBudgetExceeded &e) {
    return emit_error(e.code(), e.what(), e.context(), kExitQubits);
  } catch (const ResourceLimit &e) {
    return emit_error(e.code(), e.what(), e.context(), kExitResource);
  } catch (const Error &e) {
    return emit_error(e.code(), e.what(), e.context(), kExitOther);
  } catch (const std::exception &e) {
    return emit_error("internal", e.what(), {}, kExitOther);
  }
  return kExitOther;
}
