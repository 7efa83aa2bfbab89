#include "gtz/labcli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <thread>

namespace gtz {

namespace {

struct Step {
  std::int64_t g;
  double epsilon;
};

constexpr Step kSteps[] = {{2, 0.1}, {5, 0.05}, {10, 0.02}, {20, 0.01}};

GoldenTable unilevel(int test, const char* f1, const char* f2, const std::int64_t (&counts)[4][4]) {
  GoldenTable t;
  t.test = test;
  t.pair = {f1, f2};
  for (std::int64_t n : {50, 100, 200, 400}) t.n.push_back(Levels{n});
  for (int i = 0; i < 4; ++i)
    t.rows.push_back({Levels{kSteps[i].g}, kSteps[i].epsilon, {counts[i][0], counts[i][1], counts[i][2], counts[i][3]}});
  return t;
}

} // namespace

GoldenTable golden_table(int test, bool include_large) {
  switch (test) {
  case 1: {
    static constexpr std::int64_t c[4][4] = {{25, 25, 25, 25}, {2, 4, 6, 11}, {1, 1, 1, 2}, {5, 1, 1, 1}};
    return unilevel(1, "test1_f1", "test1_f2", c);
  }
  case 2: {
    static constexpr std::int64_t c[4][4] = {{25, 25, 25, 25}, {1, 3, 5, 9}, {1, 1, 1, 1}, {1, 1, 1, 1}};
    return unilevel(2, "test2_f1", "test2_f2", c);
  }
  case 3: {
    static constexpr std::int64_t c[4][4] = {};
    return unilevel(3, "test3_f1", "test3_f2", c);
  }
  case 4: {
    // The (200,200) column (625, 23, 1, 1) is beyond dense desk-scale eigensolves.
    GoldenTable t;
    t.test = 4;
    t.pair = {"test4_f1", "test4_f2"};
    t.tolerance = 1;
    t.n.push_back(Levels{50, 50});
    if (include_large) t.n.push_back(Levels{100, 100});
    const std::int64_t c50[4] = {625, 1, 1, 2}, c100[4] = {625, 8, 1, 1};
    for (int i = 0; i < 4; ++i) {
      GoldenRow row{Levels{kSteps[i].g, kSteps[i].g}, kSteps[i].epsilon, {c50[i]}};
      if (include_large) row.counts.push_back(c100[i]);
      t.rows.push_back(row);
    }
    return t;
  }
  default:
    throw UsageError("unknown test " + std::to_string(test) + " (expected 1..4)");
  }
}

ReproReport reproduce(int test, bool include_large, std::optional<int> jobs) {
  const GoldenTable table = golden_table(test, include_large);
  const auto start = std::chrono::steady_clock::now();

  ExperimentConfig cfg;
  cfg.name = "repro" + std::to_string(test);
  cfg.pairs = {table.pair};
  cfg.n_grid = table.n;
  cfg.checks = {Check::cluster};
  for (const auto& row : table.rows) {
    cfg.g_grid.push_back(row.g);
    cfg.epsilon_by_g[row.g] = row.epsilon;
  }

  ReproReport rep;
  rep.test = test;
  for (const auto& row : table.rows)
    for (std::size_t k = 0; k < table.n.size(); ++k) {
      ReproCell c;
      c.n = table.n[k];
      c.g = row.g;
      c.epsilon = row.epsilon;
      c.expected = row.counts[k];
      rep.cells.push_back(c);
    }

  // Largest cells first so a small pool finishes evenly.
  std::vector<std::size_t> order(rep.cells.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rep.cells[a].n.product() > rep.cells[b].n.product(); });

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= order.size()) return;
      ReproCell& c = rep.cells[order[k]];
      const CellResult r = run_cell(cfg, table.pair, c.n, c.g);
      c.seconds = r.seconds;
      if (!r.ok) {
        c.error = r.error;
        continue;
      }
      const auto& j = r.results["cluster"];
      c.observed = j["count"].get<std::int64_t>();
      for (const auto& z : j["eigenvalues"])
        c.max_modulus = std::max(c.max_modulus, std::abs(cplx(z[0].get<double>(), z[1].get<double>())));
      const std::int64_t miss = std::abs(c.observed - c.expected);
      c.pass = miss <= table.tolerance;
      if (miss == 1) c.boundary = j["boundary"].get<std::vector<double>>();
    }
  };
  const int n_jobs = std::min<int>(resolve_jobs(cfg, jobs), static_cast<int>(order.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < n_jobs; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  rep.pass = std::all_of(rep.cells.begin(), rep.cells.end(), [](const ReproCell& c) { return c.pass; });
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

void print_repro(const ReproReport& r, std::ostream& os) {
  char buf[256];
  os << "test " << r.test << '\n';
  for (const auto& c : r.cells) {
    std::snprintf(buf, sizeof buf, "  n=%-8s g=%-6s eps=%-5g expected=%-4lld observed=%-4lld rate=%.4f %s",
                  c.n.to_string().c_str(), c.g.to_string().c_str(), c.epsilon, static_cast<long long>(c.expected),
                  static_cast<long long>(c.observed),
                  static_cast<double>(c.observed) / static_cast<double>(c.n.product()), c.pass ? "ok" : "MISMATCH");
    os << buf;
    if (!c.error.empty()) os << " error: " << c.error;
    os << '\n';
    if (!c.boundary.empty()) {
      os << "    boundary eigenvalues within 1e-3 of eps:";
      for (double m : c.boundary) {
        std::snprintf(buf, sizeof buf, " %.6g", m);
        os << buf;
      }
      os << '\n';
    } else if (std::abs(c.observed - c.expected) == 1 && c.error.empty()) {
      os << "    no eigenvalue modulus within 1e-3 of eps\n";
    }
  }
  std::snprintf(buf, sizeof buf, "%s (%.1f s)\n", r.pass ? "PASS" : "FAIL", r.seconds);
  os << buf;
}

} // namespace gtz
