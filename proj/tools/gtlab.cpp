// gtlab: experiment runner and report tool over the gtz C API.

#include "gtz/gtz.h"

#include "CLI11.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kNumeric = 3, kMismatch = 4 };

int exit_for(gtz_status s) {
  switch (s) {
  case GTZ_OK: return kOk;
  case GTZ_E_CONFIG:
  case GTZ_E_USAGE: return kConfig;
  case GTZ_E_NUMERIC:
  case GTZ_E_SOLVER: return kNumeric;
  default: return kFailure;
  }
}

int report(gtz_status s) {
  std::fprintf(stderr, "gtlab: %s: %s\n", gtz_status_name(s), gtz_last_error());
  return exit_for(s);
}

struct StringDeleter {
  void operator()(char* p) const { gtz_string_free(p); }
};
using CString = std::unique_ptr<char, StringDeleter>;

struct RunDeleter {
  void operator()(gtz_run* r) const { gtz_run_free(r); }
};
struct ConfigDeleter {
  void operator()(gtz_config* c) const { gtz_config_free(c); }
};

bool write_text(const std::string& path, const char* text) {
  if (path.empty() || path == "-") {
    std::fputs(text, stdout);
    return true;
  }
  std::ofstream os(path);
  os << text;
  if (!os) {
    std::fprintf(stderr, "gtlab: cannot write '%s'\n", path.c_str());
    return false;
  }
  return true;
}

void on_cell(void*, size_t index, const char* key, int ok, double seconds, const char* error) {
  if (ok)
    std::fprintf(stderr, "[%3zu] %-40s ok   %.2fs\n", index, key, seconds);
  else
    std::fprintf(stderr, "[%3zu] %-40s FAIL %s\n", index, key, error);
}

int cmd_run(const std::string& config_path, const std::string& out_dir, int jobs) {
  gtz_config* raw = nullptr;
  if (gtz_status s = gtz_config_load(config_path.c_str(), &raw)) return report(s);
  std::unique_ptr<gtz_config, ConfigDeleter> cfg(raw);

  char* dir_raw = nullptr;
  if (gtz_status s = gtz_config_output_dir(cfg.get(), &dir_raw)) return report(s);
  CString cfg_dir(dir_raw);
  const std::string dir = out_dir.empty() ? cfg_dir.get() : out_dir;
  std::fprintf(stderr, "running with %d worker(s)\n", gtz_config_jobs(cfg.get(), jobs));

  gtz_run* run_raw = nullptr;
  if (gtz_status s = gtz_run_experiment(cfg.get(), dir.c_str(), jobs, on_cell, nullptr, &run_raw)) return report(s);
  std::unique_ptr<gtz_run, RunDeleter> run(run_raw);
  const size_t failed = gtz_run_failed_count(run.get());
  std::printf("%zu cells, %zu failed; log appended to %s\n", gtz_run_cell_count(run.get()), failed,
              (std::filesystem::path(dir) / "runlog.jsonl").string().c_str());
  return failed ? kNumeric : kOk;
}

int cmd_tables(const std::string& log, const std::string& format, const std::string& output) {
  gtz_run* raw = nullptr;
  if (gtz_status s = gtz_run_load(log.c_str(), &raw)) return report(s);
  std::unique_ptr<gtz_run, RunDeleter> run(raw);
  char* text = nullptr;
  if (gtz_status s = gtz_run_tables(run.get(), format == "csv" ? GTZ_TABLE_CSV : GTZ_TABLE_MARKDOWN, &text))
    return report(s);
  CString owned(text);
  return write_text(output, text) ? kOk : kFailure;
}

int cmd_scatter(const std::string& log, const std::string& cell, const std::string& csv_path,
                const std::string& svg_path) {
  gtz_run* raw = nullptr;
  if (gtz_status s = gtz_run_load(log.c_str(), &raw)) return report(s);
  std::unique_ptr<gtz_run, RunDeleter> run(raw);
  char* csv = nullptr;
  char* svg = nullptr;
  if (gtz_status s = gtz_run_scatter(run.get(), cell.c_str(), &csv, svg_path.empty() ? nullptr : &svg))
    return report(s);
  CString c(csv), v(svg);
  if (!write_text(csv_path, csv)) return kFailure;
  if (svg && !write_text(svg_path, svg)) return kFailure;
  return kOk;
}

int cmd_verify(const std::string& suite) {
  char* text = nullptr;
  int failures = 0;
  if (gtz_status s = gtz_verify(suite.c_str(), &text, &failures)) return report(s);
  CString owned(text);
  std::fputs(text, stdout);
  std::printf("%d failing check(s)\n", failures);
  return failures ? kMismatch : kOk;
}

int cmd_repro(int test, bool large, int jobs) {
  char* text = nullptr;
  int passed = 0;
  if (gtz_status s = gtz_repro(test, large ? 1 : 0, jobs, &text, &passed)) return report(s);
  CString owned(text);
  std::fputs(text, stdout);
  return passed ? kOk : kMismatch;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"g-Toeplitz spectral experiment runner"};
  app.require_subcommand(1);
  app.set_version_flag("--version", gtz_version());

  std::string config, out_dir, log, format = "md", output, cell, csv_path, svg_path, suite = "all";
  int jobs = 0, test = 1;
  bool large = false;

  auto* run = app.add_subcommand("run", "Run every cell of an experiment config and append to its run log");
  run->add_option("config", config, "Experiment config (JSON)")->required();
  run->add_option("--out", out_dir, "Output directory (overrides the config)");
  run->add_option("--jobs", jobs, "Worker count (overrides GTLAB_JOBS and the config)")->check(CLI::PositiveNumber);

  auto* tables = app.add_subcommand("tables", "Outlier count tables from a run log");
  tables->add_option("runlog", log, "runlog.jsonl")->required();
  tables->add_option("--format", format, "md or csv")->check(CLI::IsMember({"md", "csv"}));
  tables->add_option("-o,--output", output, "Output file (default stdout)");

  auto* scatter = app.add_subcommand("scatter", "Eigenvalue scatter for one cell");
  scatter->add_option("runlog", log, "runlog.jsonl")->required();
  scatter->add_option("--cell", cell, "PAIR:N:G, e.g. test1_f1*test1_f2:50:2")->required();
  scatter->add_option("--csv", csv_path, "CSV output (default stdout)");
  scatter->add_option("--svg", svg_path, "SVG output with the epsilon circle");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("--suite", suite, "lemmas, props, szego or all")
      ->check(CLI::IsMember({"lemmas", "props", "szego", "all"}));

  auto* repro = app.add_subcommand("repro", "Reproduce a published outlier table");
  repro->add_option("--test", test, "Test number")->required()->check(CLI::Range(1, 4));
  repro->add_flag("--large", large, "Include the (100,100) column for test 4");
  repro->add_option("--jobs", jobs, "Worker count")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  if (*run) return cmd_run(config, out_dir, jobs);
  if (*tables) return cmd_tables(log, format, output);
  if (*scatter) return cmd_scatter(log, cell, csv_path, svg_path);
  if (*verify) return cmd_verify(suite);
  if (*repro) return cmd_repro(test, large, jobs);
  return kFailure;
}
