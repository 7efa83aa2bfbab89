#include "gtz/labcli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

namespace gtz {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Check c) {
  switch (c) {
  case Check::cluster: return "cluster";
  case Check::moments: return "moments";
  case Check::rank_bound: return "rank_bound";
  case Check::equivalence: return "equivalence";
  case Check::szego: return "szego";
  case Check::decomposition: return "decomposition";
  }
  return "?";
}

Check parse_check(const std::string& s) {
  for (Check c : {Check::cluster, Check::moments, Check::rank_bound, Check::equivalence, Check::szego,
                  Check::decomposition})
    if (to_string(c) == s) return c;
  throw UsageError("unknown check '" + s + "'");
}

namespace {

[[noreturn]] void config_fail(const std::string& path, const std::string& msg) { throw ConfigError(path + ": " + msg); }

Levels levels_from_json(const json& v, const std::string& path) {
  try {
    if (v.is_number_integer()) return Levels{v.get<std::int64_t>()};
    if (v.is_array() && (v.size() == 1 || v.size() == 2)) {
      for (const auto& e : v)
        if (!e.is_number_integer()) config_fail(path, "expected integers");
      return v.size() == 1 ? Levels{v[0].get<std::int64_t>()} : Levels{v[0].get<std::int64_t>(), v[1].get<std::int64_t>()};
    }
    if (v.is_string()) return Levels::parse(v.get<std::string>());
  } catch (const UsageError& e) {
    config_fail(path, e.what());
  }
  config_fail(path, "expected an integer or a list of one or two integers");
}

json levels_to_json(const Levels& l) {
  if (l.arity() == 1) return l[0];
  return json::array({l[0], l[1]});
}

json levels_array(const Levels& l) {
  json a = json::array();
  for (int j = 0; j < l.arity(); ++j) a.push_back(l[j]);
  return a;
}

Levels levels_from_array(const json& a) {
  if (a.size() == 1) return Levels{a[0].get<std::int64_t>()};
  return Levels{a[0].get<std::int64_t>(), a[1].get<std::int64_t>()};
}

template <class T>
T get_field(const json& j, const char* key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    config_fail(path + "." + key, "wrong type");
  }
}

std::string now_iso() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

} // namespace

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) config_fail("$", "config must be a JSON object");
  ExperimentConfig cfg;
  cfg.name = get_field<std::string>(j, "name", "$", "experiment");

  if (!j.contains("pairs") || !j["pairs"].is_array() || j["pairs"].empty())
    config_fail("$.pairs", "a non-empty list of symbol pairs is required");
  int arity = 0;
  for (std::size_t i = 0; i < j["pairs"].size(); ++i) {
    const json& p = j["pairs"][i];
    const std::string path = "$.pairs[" + std::to_string(i) + "]";
    if (!p.is_array() || p.size() != 2) config_fail(path, "expected [symbol_id_1, symbol_id_2]");
    SymbolPair sp;
    for (int k = 0; k < 2; ++k) {
      const std::string kpath = path + "[" + std::to_string(k) + "]";
      if (!p[k].is_string()) config_fail(kpath, "expected a symbol id string");
      const std::string id = p[k].get<std::string>();
      int a = 0;
      try {
        a = make_symbol(id).arity();
      } catch (const UsageError&) {
        config_fail(kpath, "unknown symbol id '" + id + "'");
      }
      if (arity != 0 && a != arity) config_fail(kpath, "symbol arity differs from the rest of the config");
      arity = a;
      (k == 0 ? sp.f1 : sp.f2) = id;
    }
    cfg.pairs.push_back(sp);
  }

  auto grid = [&](const char* key, std::int64_t min_value) {
    const std::string path = std::string("$.") + key;
    if (!j.contains(key) || !j[key].is_array() || j[key].empty()) config_fail(path, "a non-empty list is required");
    std::vector<Levels> out;
    for (std::size_t i = 0; i < j[key].size(); ++i) {
      const std::string ipath = path + "[" + std::to_string(i) + "]";
      const Levels l = levels_from_json(j[key][i], ipath);
      if (l.arity() != arity) config_fail(ipath, "arity " + std::to_string(l.arity()) + " does not match the symbols");
      for (int d = 0; d < l.arity(); ++d)
        if (l[d] < min_value) config_fail(ipath, "entries must be >= " + std::to_string(min_value));
      out.push_back(l);
    }
    return out;
  };
  cfg.n_grid = grid("n_grid", 1);
  cfg.g_grid = grid("g_grid", 1);

  if (!j.contains("checks") || !j["checks"].is_array()) config_fail("$.checks", "a list of checks is required");
  if (j["checks"].empty()) throw UsageError("$.checks: at least one check must be requested");
  for (std::size_t i = 0; i < j["checks"].size(); ++i) {
    const std::string path = "$.checks[" + std::to_string(i) + "]";
    if (!j["checks"][i].is_string()) config_fail(path, "expected a check name");
    try {
      cfg.checks.push_back(parse_check(j["checks"][i].get<std::string>()));
    } catch (const UsageError& e) {
      config_fail(path, e.what());
    }
  }

  if (j.contains("epsilon_by_g")) {
    const json& e = j["epsilon_by_g"];
    if (!e.is_object()) config_fail("$.epsilon_by_g", "expected an object mapping g to epsilon");
    for (const auto& [key, value] : e.items()) {
      const std::string path = "$.epsilon_by_g." + key;
      Levels g;
      try {
        g = Levels::parse(key);
      } catch (const UsageError& ex) {
        config_fail(path, ex.what());
      }
      if (!value.is_number() || !(value.get<double>() > 0.0)) config_fail(path, "epsilon must be a positive number");
      cfg.epsilon_by_g[g] = value.get<double>();
    }
  }
  const bool needs_eps = std::find(cfg.checks.begin(), cfg.checks.end(), Check::cluster) != cfg.checks.end();
  if (needs_eps)
    for (const Levels& g : cfg.g_grid)
      if (!cfg.epsilon_by_g.count(g)) config_fail("$.epsilon_by_g", "missing epsilon for g=" + g.to_string(','));

  if (j.contains("quadrature")) {
    const json& q = j["quadrature"];
    if (!q.is_object()) config_fail("$.quadrature", "expected an object");
    cfg.samples_per_dim = get_field<std::int64_t>(q, "samples_per_dim", "$.quadrature", 0);
    if (cfg.samples_per_dim < 0) config_fail("$.quadrature.samples_per_dim", "must be nonnegative");
  }
  cfg.output_dir = get_field<std::string>(j, "output_dir", "$", "runs/" + cfg.name);
  cfg.parallelism = get_field<int>(j, "parallelism", "$", 0);
  if (cfg.parallelism < 0) config_fail("$.parallelism", "must be nonnegative");
  cfg.moment_degree = get_field<int>(j, "moment_degree", "$", 3);
  if (cfg.moment_degree < 1 || cfg.moment_degree > 8) config_fail("$.moment_degree", "must be in 1..8");
  cfg.rank_m = get_field<int>(j, "rank_m", "$", 4);
  if (cfg.rank_m < 0) config_fail("$.rank_m", "must be nonnegative");
  cfg.store_eigenvalues = get_field<bool>(j, "store_eigenvalues", "$", true);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": malformed JSON: " + e.what());
  }
  return parse_config(j);
}

json to_json(const ExperimentConfig& cfg) {
  json pairs = json::array();
  for (const auto& p : cfg.pairs) pairs.push_back({p.f1, p.f2});
  json n = json::array(), g = json::array(), checks = json::array();
  for (const auto& l : cfg.n_grid) n.push_back(levels_to_json(l));
  for (const auto& l : cfg.g_grid) g.push_back(levels_to_json(l));
  for (Check c : cfg.checks) checks.push_back(to_string(c));
  json eps = json::object();
  for (const auto& [k, v] : cfg.epsilon_by_g) eps[k.to_string(',')] = v;
  return {{"name", cfg.name},
          {"pairs", pairs},
          {"n_grid", n},
          {"g_grid", g},
          {"epsilon_by_g", eps},
          {"checks", checks},
          {"quadrature", {{"samples_per_dim", cfg.samples_per_dim}}},
          {"output_dir", cfg.output_dir},
          {"parallelism", cfg.parallelism},
          {"moment_degree", cfg.moment_degree},
          {"rank_m", cfg.rank_m},
          {"store_eigenvalues", cfg.store_eigenvalues}};
}

std::string config_hash(const ExperimentConfig& cfg) {
  json j = to_json(cfg);
  j.erase("output_dir");
  j.erase("parallelism");
  const std::string text = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int resolve_jobs(const ExperimentConfig& cfg, std::optional<int> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("GTLAB_JOBS")) {
    try {
      const int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::logic_error&) {
    }
  }
  if (cfg.parallelism > 0) return cfg.parallelism;
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string CellResult::key() const { return pair.label() + ":" + n.to_string() + ":" + g.to_string(); }

namespace {

std::vector<cplx> cplx_from_json(const json& a) {
  std::vector<cplx> out;
  out.reserve(a.size());
  for (const auto& z : a) out.emplace_back(z[0].get<double>(), z[1].get<double>());
  return out;
}

bool wants(const ExperimentConfig& cfg, Check c) {
  return std::find(cfg.checks.begin(), cfg.checks.end(), c) != cfg.checks.end();
}

std::string kind_name(ErrorKind k) {
  switch (k) {
  case ErrorKind::usage: return "usage";
  case ErrorKind::numeric: return "numeric";
  case ErrorKind::solver: return "solver";
  case ErrorKind::config: return "config";
  case ErrorKind::io: return "io";
  }
  return "error";
}

} // namespace

CellResult run_cell(const ExperimentConfig& cfg, const SymbolPair& pair, const Levels& n, const Levels& g) {
  CellResult cell;
  cell.pair = pair;
  cell.n = n;
  cell.g = g;
  const auto start = std::chrono::steady_clock::now();
  try {
    const Symbol f1 = make_symbol(pair.f1), f2 = make_symbol(pair.f2);
    const Symbol h = pointwise_product(f1, f2);
    const GMatrix a = product_matrix(f1, f2, n, g, cfg.samples_per_dim);
    const int grid = n.arity() == 1 ? 4096 : 256;

    std::optional<SpectrumResult> spec;
    if (wants(cfg, Check::cluster) || wants(cfg, Check::szego)) spec = eigenvalues(a);

    if (wants(cfg, Check::cluster)) {
      const ClusterReport r = cluster_report(spec->eigenvalues, cfg.epsilon_by_g.at(g), n, g);
      json j = to_json(r, cfg.store_eigenvalues);
      if (spec->info.backward_error) j["backward_error"] = *spec->info.backward_error;
      j["boundary"] = boundary_moduli(spec->eigenvalues, r.epsilon);
      cell.results["cluster"] = std::move(j);
    }
    if (wants(cfg, Check::moments)) cell.results["moments"] = to_json(moment_check(a, h, cfg.moment_degree, grid));
    if (wants(cfg, Check::rank_bound)) {
      if (n.arity() != 1)
        cell.results["rank_bound"] = {{"skipped", "unilevel only"}};
      else if (n[0] <= 2 * static_cast<std::int64_t>(cfg.rank_m) + 1)
        cell.results["rank_bound"] = {{"skipped", "needs n > 2m+1"}};
      else
        cell.results["rank_bound"] = to_json(rank_bound_check(f1, f2, cfg.rank_m, n[0], g[0]));
    }
    if (wants(cfg, Check::equivalence)) {
      const GMatrix th = g_toeplitz_matrix(h, n, g, cfg.samples_per_dim);
      const double value = schatten_norm(Matrix(a.data - th.data), 1.0) / static_cast<double>(n.product());
      cell.results["equivalence"] = {{"kind", "equivalence"}, {"value", value}};
    }
    if (wants(cfg, Check::szego)) {
      json rows = json::array();
      const int theta = theta_weight(g);
      for (const char* id : {"re2", "abs"}) {
        const TestFunction f = make_test_function(id);
        const cplx mean = lambda_mean(f, *spec);
        const cplx ref = theta == 1 ? reference_integral(f, h, grid).value : f(0.0);
        rows.push_back({{"F", id},
                        {"mean", json::array({mean.real(), mean.imag()})},
                        {"reference", json::array({ref.real(), ref.imag()})},
                        {"gap", std::abs(mean - ref)}});
      }
      cell.results["szego"] = {{"kind", "szego"}, {"theta", theta}, {"functions", rows}};
    }
    if (wants(cfg, Check::decomposition)) {
      if (n.arity() != 1) {
        cell.results["decomposition"] = {{"skipped", "unilevel only"}};
      } else {
        double worst = 0.0;
        for (const Symbol* f : {&f1, &f2}) {
          const auto [lo, hi] = required_box(n, g);
          const CoeffTable t = cfg.samples_per_dim > 0 ? fourier_coefficients(*f, lo, hi, cfg.samples_per_dim)
                                                       : fourier_coefficients(*f, lo, hi);
          const Decomposition d = decompose_eq11(t, n[0], g[0]);
          const Matrix gap = build_g_toeplitz(t, n, g).data - (d.left.data + d.right.data);
          worst = std::max(worst, gap.cwiseAbs().maxCoeff());
        }
        cell.results["decomposition"] = {{"kind", "decomposition"}, {"max_gap", worst}, {"pass", worst == 0.0}};
      }
    }
    cell.ok = true;
  } catch (const Error& e) {
    cell.ok = false;
    cell.error = kind_name(e.kind()) + ": " + e.what();
    cell.results = json::object();
  } catch (const std::exception& e) {
    cell.ok = false;
    cell.error = std::string("internal: ") + e.what();
    cell.results = json::object();
  }
  cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return cell;
}

json cell_payload(const CellResult& c) {
  json j{{"index", c.index},
         {"pair", json::array({c.pair.f1, c.pair.f2})},
         {"n", levels_array(c.n)},
         {"g", levels_array(c.g)},
         {"ok", c.ok},
         {"results", c.results}};
  if (!c.ok) j["error"] = c.error;
  return j;
}

RunRecord run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  struct Task {
    SymbolPair pair;
    Levels n, g;
  };
  std::vector<Task> tasks;
  for (const auto& p : cfg.pairs)
    for (const auto& g : cfg.g_grid)
      for (const auto& n : cfg.n_grid) tasks.push_back({p, n, g});

  RunRecord rec;
  rec.config_hash = config_hash(cfg);
  rec.config = to_json(cfg);
  rec.started = now_iso();

  const fs::path dir = opts.output_dir ? fs::path(*opts.output_dir) : fs::path(cfg.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::ofstream log(dir / "runlog.jsonl", std::ios::app);
  if (!log) throw IoError("cannot open run log in '" + dir.string() + "'");
  log << json{{"type", "run_start"}, {"config_hash", rec.config_hash}, {"timestamp", rec.started},
              {"cells", tasks.size()}, {"config", rec.config}}.dump()
      << '\n'
      << std::flush;

  std::vector<std::optional<CellResult>> slots(tasks.size());
  std::mutex mu;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  const int jobs = std::min<int>(resolve_jobs(cfg, opts.jobs), static_cast<int>(std::max<std::size_t>(1, tasks.size())));

  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w)
    workers.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        CellResult r = run_cell(cfg, tasks[i].pair, tasks[i].n, tasks[i].g);
        r.index = i;
        {
          std::lock_guard<std::mutex> lock(mu);
          slots[i] = std::move(r);
        }
        ready.notify_one();
      }
    });

  // Single appender: cells are written in grid order regardless of completion order.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::unique_lock<std::mutex> lock(mu);
    ready.wait(lock, [&] { return slots[i].has_value(); });
    CellResult cell = std::move(*slots[i]);
    slots[i].reset();
    lock.unlock();
    json line = cell_payload(cell);
    line["type"] = "cell";
    line["config_hash"] = rec.config_hash;
    line["seconds"] = cell.seconds;
    log << line.dump() << '\n' << std::flush;
    if (!cell.ok) ++rec.failed;
    if (opts.on_cell) opts.on_cell(cell);
    rec.cells.push_back(std::move(cell));
  }
  for (auto& t : workers) t.join();

  rec.finished = now_iso();
  log << json{{"type", "run_end"}, {"config_hash", rec.config_hash}, {"timestamp", rec.finished},
              {"cells", rec.cells.size()}, {"failed", rec.failed}}.dump()
      << '\n';
  if (!log) throw IoError("failed writing run log");
  return rec;
}

RunRecord load_runlog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open run log '" + path + "'");
  std::optional<RunRecord> current, complete;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error&) {
      throw IoError(path + ":" + std::to_string(lineno) + ": malformed run log line");
    }
    const std::string type = j.value("type", "");
    if (type == "run_start") {
      current = RunRecord{};
      current->config_hash = j.value("config_hash", "");
      current->started = j.value("timestamp", "");
      current->config = j.value("config", json::object());
    } else if (type == "cell" && current) {
      CellResult c;
      c.index = j.value("index", std::size_t{0});
      c.pair = SymbolPair{j["pair"][0].get<std::string>(), j["pair"][1].get<std::string>()};
      c.n = levels_from_array(j["n"]);
      c.g = levels_from_array(j["g"]);
      c.ok = j.value("ok", false);
      c.error = j.value("error", "");
      c.results = j.value("results", json::object());
      c.seconds = j.value("seconds", 0.0);
      if (!c.ok) ++current->failed;
      current->cells.push_back(std::move(c));
    } else if (type == "run_end" && current) {
      current->finished = j.value("timestamp", "");
      complete = std::move(current);
      current.reset();
    }
  }
  if (complete) return *complete;
  if (current) return *current;
  throw IoError("run log '" + path + "' contains no runs");
}

std::vector<ClusterReport> cluster_reports(const RunRecord& rec) {
  std::vector<ClusterReport> out;
  for (const auto& c : rec.cells) {
    if (!c.ok || !c.results.contains("cluster")) continue;
    const json& j = c.results["cluster"];
    ClusterReport r;
    r.n = c.n;
    r.g = c.g;
    r.epsilon = j.at("epsilon").get<double>();
    r.count = j.at("count").get<std::int64_t>();
    r.rate = j.at("rate").get<double>();
    if (j.contains("eigenvalues")) r.eigenvalues = cplx_from_json(j["eigenvalues"]);
    out.push_back(std::move(r));
  }
  return out;
}

void emit_tables(const RunRecord& rec, TableFormat format, std::ostream& os) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<ClusterReport>> by_pair;
  for (const auto& c : rec.cells) {
    if (!c.ok || !c.results.contains("cluster")) continue;
    const std::string label = c.pair.label();
    if (!by_pair.count(label)) order.push_back(label);
    RunRecord one;
    one.cells.push_back(c);
    auto reps = cluster_reports(one);
    by_pair[label].push_back(std::move(reps.front()));
  }
  if (format == TableFormat::markdown) {
    os << "# Outlier counts N(n,eps) and rates r(n,eps)\n";
    for (const auto& label : order) {
      os << "\n## " << label << '\n';
      write_cluster_tables_md(by_pair[label], os);
    }
    return;
  }
  os << "pair,g,epsilon,n,count,rate\n";
  for (const auto& label : order) {
    std::ostringstream body;
    write_cluster_tables_csv(by_pair[label], body);
    std::istringstream lines(body.str());
    std::string line;
    std::getline(lines, line); // per-pair header
    while (std::getline(lines, line)) os << label << ',' << line << '\n';
  }
}

const CellResult& find_cell(const RunRecord& rec, const std::string& spec) {
  const auto last = spec.rfind(':');
  const auto mid = last == std::string::npos || last == 0 ? std::string::npos : spec.rfind(':', last - 1);
  if (mid == std::string::npos) throw UsageError("cell spec must look like PAIR:N:G, got '" + spec + "'");
  const std::string pair = spec.substr(0, mid);
  Levels n, g;
  try {
    n = Levels::parse(spec.substr(mid + 1, last - mid - 1));
    g = Levels::parse(spec.substr(last + 1));
  } catch (const UsageError&) {
    throw UsageError("cell spec must look like PAIR:N:G, got '" + spec + "'");
  }
  std::vector<std::string> labels;
  for (const auto& c : rec.cells)
    if (std::find(labels.begin(), labels.end(), c.pair.label()) == labels.end()) labels.push_back(c.pair.label());
  std::string label = pair;
  if (!pair.empty() && std::all_of(pair.begin(), pair.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    const std::size_t idx = std::stoul(pair);
    if (idx < labels.size()) label = labels[idx];
  }
  for (const auto& c : rec.cells)
    if (c.pair.label() == label && c.n == n && c.g == g) return c;
  throw UsageError("no cell '" + spec + "' in the run log");
}

void emit_spectrum_scatter(const RunRecord& rec, const std::string& spec, std::ostream& csv, std::ostream* svg) {
  const CellResult& cell = find_cell(rec, spec);
  if (!cell.ok) throw UsageError("cell '" + spec + "' failed: " + cell.error);
  if (!cell.results.contains("cluster") || !cell.results["cluster"].contains("eigenvalues"))
    throw UsageError("cell '" + spec + "' has no stored eigenvalues");
  const std::vector<cplx> eig = cplx_from_json(cell.results["cluster"]["eigenvalues"]);
  const double eps = cell.results["cluster"]["epsilon"].get<double>();

  csv << "re,im,abs\n";
  csv.precision(17);
  for (const cplx& z : eig) csv << z.real() << ',' << z.imag() << ',' << std::abs(z) << '\n';
  if (!svg) return;

  std::map<std::pair<double, double>, int> mult;
  double extent = eps;
  for (const cplx& z : eig) {
    ++mult[{z.real(), z.imag()}];
    extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
  }
  extent *= 1.15;
  const double size = 480.0, half = size / 2.0, scale = half / extent;
  auto px = [&](double x) { return half + x * scale; };
  auto py = [&](double y) { return half - y * scale; };
  std::ostream& s = *svg;
  char buf[256];
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
    << size << ' ' << size << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  s << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << size << "\" y2=\"" << half << "\" stroke=\"#bbb\"/>\n";
  s << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size << "\" stroke=\"#bbb\"/>\n";
  std::snprintf(buf, sizeof buf,
                "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"none\" stroke=\"#d33\" stroke-dasharray=\"4 3\"/>\n",
                half, half, eps * scale);
  s << buf;
  for (const auto& [pt, k] : mult) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.3f\" cy=\"%.3f\" r=\"2\" fill=\"#236\"/>\n", px(pt.first),
                  py(pt.second));
    s << buf;
    if (k > 1) {
      std::snprintf(buf, sizeof buf, "<text x=\"%.3f\" y=\"%.3f\" font-size=\"11\">x%d</text>\n", px(pt.first) + 4,
                    py(pt.second) - 4, k);
      s << buf;
    }
  }
  std::snprintf(buf, sizeof buf, "<text x=\"6\" y=\"16\" font-size=\"12\">%s  eps=%g  N=%lld</text>\n",
                cell.key().c_str(), eps,
                static_cast<long long>(std::count_if(eig.begin(), eig.end(), [&](cplx z) { return std::abs(z) >= eps; })));
  s << buf << "</svg>\n";
}

} // namespace gtz
