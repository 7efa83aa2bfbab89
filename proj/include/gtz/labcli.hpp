#pragma once

// Config-driven experiment runner, run logs, report emitters, verification suites
// and golden-table reproduction.

#include "gtz/distribution.hpp"

#include "json.hpp"

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gtz {

enum class Check { cluster, moments, rank_bound, equivalence, szego, decomposition };

std::string to_string(Check c);
Check parse_check(const std::string& s);

struct SymbolPair {
  std::string f1, f2;
  std::string label() const { return f1 + "*" + f2; }
};

struct ExperimentConfig {
  std::string name;
  std::vector<SymbolPair> pairs;
  std::vector<Levels> n_grid;
  std::vector<Levels> g_grid;
  std::map<Levels, double> epsilon_by_g;
  std::vector<Check> checks;
  std::int64_t samples_per_dim = 0; // 0: smallest power of two >= 8x the band
  std::string output_dir = "runs";
  int parallelism = 0;              // 0: available cores
  int moment_degree = 3;
  int rank_m = 4;
  bool store_eigenvalues = true;
};

/// Validates and fills defaults. Errors are ConfigError naming the JSON field path,
/// except an empty checks list, which is a UsageError.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json to_json(const ExperimentConfig& cfg);
/// Stable hash of the canonical config, excluding output_dir and parallelism.
std::string config_hash(const ExperimentConfig& cfg);

/// Worker count: explicit request, else GTLAB_JOBS, else the config value, else available cores.
int resolve_jobs(const ExperimentConfig& cfg, std::optional<int> requested = std::nullopt);

struct CellResult {
  std::size_t index = 0;
  SymbolPair pair;
  Levels n, g;
  bool ok = false;
  std::string error;
  nlohmann::json results = nlohmann::json::object(); // keyed by check name
  double seconds = 0.0;

  std::string key() const; // "f1*f2:n:g"
};

struct RunRecord {
  std::string config_hash;
  std::string started;
  std::string finished;
  nlohmann::json config;
  std::vector<CellResult> cells;
  std::size_t failed = 0;
};

struct RunOptions {
  std::optional<int> jobs;
  std::optional<std::string> output_dir;
  /// Called once per finished cell in grid order.
  std::function<void(const CellResult&)> on_cell;
};

/// Runs every (pair, n, g) cell on a bounded worker pool and appends the run to
/// <output_dir>/runlog.jsonl. Per-cell failures are recorded and the run continues.
RunRecord run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

/// Runs one cell synchronously (no logging).
CellResult run_cell(const ExperimentConfig& cfg, const SymbolPair& pair, const Levels& n, const Levels& g);

/// Reads the last complete run from a runlog.jsonl file.
RunRecord load_runlog(const std::string& path);

/// Result payload of a cell as logged (deterministic: excludes timing).
nlohmann::json cell_payload(const CellResult& c);

std::vector<ClusterReport> cluster_reports(const RunRecord& rec);

enum class TableFormat { markdown, csv };
void emit_tables(const RunRecord& rec, TableFormat format, std::ostream& os);

/// Cell spec "PAIR:N:G", e.g. "test1_f1*test1_f2:50:2" or "test4_f1*test4_f2:50x50:2x2".
/// PAIR may be abbreviated to the index in the pair list.
const CellResult& find_cell(const RunRecord& rec, const std::string& spec);
void emit_spectrum_scatter(const RunRecord& rec, const std::string& spec, std::ostream& csv, std::ostream* svg);

// Verification suites

struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Suites: "lemmas", "props", "szego", "all".
std::vector<SuiteCheck> run_suite(const std::string& suite);

// Golden tables from the published experiments

struct GoldenRow {
  Levels g;
  double epsilon = 0.0;
  std::vector<std::int64_t> counts; // one per n
};

struct GoldenTable {
  int test = 0;
  SymbolPair pair;
  std::vector<Levels> n;
  std::vector<GoldenRow> rows;
  std::int64_t tolerance = 0; // accepted count deviation
};

/// include_large adds the (100,100) column for test 4.
GoldenTable golden_table(int test, bool include_large = false);

struct ReproCell {
  Levels n, g;
  double epsilon = 0.0;
  std::int64_t expected = 0;
  std::int64_t observed = 0;
  bool pass = false;
  std::vector<double> boundary; // |lambda| within 1e-3 of epsilon when off by one
  double max_modulus = 0.0;
  double seconds = 0.0;
  std::string error;
};

struct ReproReport {
  int test = 0;
  std::vector<ReproCell> cells;
  bool pass = false;
  double seconds = 0.0;
};

ReproReport reproduce(int test, bool include_large = false, std::optional<int> jobs = std::nullopt);
void print_repro(const ReproReport& r, std::ostream& os);

} // namespace gtz
