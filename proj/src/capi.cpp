#include "gtz/gtz.h"

#include "gtz/labcli.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

struct gtz_symbol {
  gtz::Symbol sym;
};
struct gtz_matrix {
  gtz::GMatrix m;
};
struct gtz_config {
  gtz::ExperimentConfig cfg;
};
struct gtz_run {
  gtz::RunRecord rec;
};

namespace {

thread_local std::string last_error;

gtz_status status_of(gtz::ErrorKind k) {
  switch (k) {
  case gtz::ErrorKind::usage: return GTZ_E_USAGE;
  case gtz::ErrorKind::numeric: return GTZ_E_NUMERIC;
  case gtz::ErrorKind::solver: return GTZ_E_SOLVER;
  case gtz::ErrorKind::config: return GTZ_E_CONFIG;
  case gtz::ErrorKind::io: return GTZ_E_IO;
  }
  return GTZ_E_INTERNAL;
}

template <class F>
gtz_status guard(F&& f) {
  try {
    f();
    last_error.clear();
    return GTZ_OK;
  } catch (const gtz::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::exception& e) {
    last_error = e.what();
    return GTZ_E_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return GTZ_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw gtz::UsageError(what);
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (!p) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

gtz::Levels levels(int d, const int64_t* v) {
  require(v != nullptr, "null level vector");
  if (d == 1) return gtz::Levels{v[0]};
  if (d == 2) return gtz::Levels{v[0], v[1]};
  throw gtz::UsageError("level count must be 1 or 2");
}

} // namespace

extern "C" {

const char* gtz_version(void) { return "0.1.0"; }
const char* gtz_last_error(void) { return last_error.c_str(); }

const char* gtz_status_name(gtz_status s) {
  switch (s) {
  case GTZ_OK: return "ok";
  case GTZ_E_USAGE: return "usage error";
  case GTZ_E_NUMERIC: return "numeric error";
  case GTZ_E_SOLVER: return "solver error";
  case GTZ_E_CONFIG: return "config error";
  case GTZ_E_IO: return "io error";
  case GTZ_E_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void gtz_string_free(char* s) { std::free(s); }

gtz_status gtz_symbol_create(const char* id, gtz_symbol** out) {
  return guard([&] {
    require(id && out, "null argument");
    *out = new gtz_symbol{gtz::make_symbol(id)};
  });
}

gtz_status gtz_symbol_product(const gtz_symbol* f1, const gtz_symbol* f2, gtz_symbol** out) {
  return guard([&] {
    require(f1 && f2 && out, "null argument");
    *out = new gtz_symbol{gtz::pointwise_product(f1->sym, f2->sym)};
  });
}

void gtz_symbol_free(gtz_symbol* s) { delete s; }

int gtz_symbol_arity(const gtz_symbol* s) { return s ? s->sym.arity() : 0; }

gtz_status gtz_symbol_eval(const gtz_symbol* s, const double* t, double* re, double* im) {
  return guard([&] {
    require(s && t && re && im, "null argument");
    const gtz::cplx v = gtz::eval_symbol(s->sym, std::span<const double>(t, static_cast<std::size_t>(s->sym.arity())));
    *re = v.real();
    *im = v.imag();
  });
}

gtz_status gtz_symbol_catalog(char** out) {
  return guard([&] {
    require(out, "null argument");
    std::string s;
    for (const auto& id : gtz::catalog_ids()) s += id + "\n";
    *out = dup(s);
  });
}

gtz_status gtz_matrix_g_toeplitz(const gtz_symbol* f, int d, const int64_t* n, const int64_t* g,
                                 int64_t samples_per_dim, gtz_matrix** out) {
  return guard([&] {
    require(f && out, "null argument");
    *out = new gtz_matrix{gtz::g_toeplitz_matrix(f->sym, levels(d, n), levels(d, g), samples_per_dim)};
  });
}

gtz_status gtz_matrix_product(const gtz_symbol* f1, const gtz_symbol* f2, int d, const int64_t* n, const int64_t* g,
                              int64_t samples_per_dim, gtz_matrix** out) {
  return guard([&] {
    require(f1 && f2 && out, "null argument");
    *out = new gtz_matrix{gtz::product_matrix(f1->sym, f2->sym, levels(d, n), levels(d, g), samples_per_dim)};
  });
}

gtz_status gtz_matrix_selection(int d, const int64_t* n, const int64_t* g, gtz_matrix** out) {
  return guard([&] {
    require(out != nullptr, "null argument");
    *out = new gtz_matrix{gtz::build_selection(levels(d, n), levels(d, g)).zhat_padded};
  });
}

gtz_status gtz_matrix_from_data(int64_t order, const double* re, const double* im, gtz_matrix** out) {
  return guard([&] {
    require(re && out, "null argument");
    require(order >= 1, "order must be positive");
    gtz::Matrix m(order, order);
    for (int64_t i = 0; i < order; ++i)
      for (int64_t j = 0; j < order; ++j)
        m(i, j) = gtz::cplx(re[i * order + j], im ? im[i * order + j] : 0.0);
    *out = new gtz_matrix{gtz::derived(std::move(m))};
  });
}

gtz_status gtz_matrix_multiply(const gtz_matrix* a, const gtz_matrix* b, gtz_matrix** out) {
  return guard([&] {
    require(a && b && out, "null argument");
    *out = new gtz_matrix{gtz::multiply(a->m, b->m)};
  });
}

void gtz_matrix_free(gtz_matrix* m) { delete m; }

int64_t gtz_matrix_order(const gtz_matrix* m) { return m ? m->m.order() : 0; }

gtz_status gtz_matrix_get(const gtz_matrix* m, int64_t row, int64_t col, double* re, double* im) {
  return guard([&] {
    require(m && re && im, "null argument");
    require(row >= 0 && col >= 0 && row < m->m.order() && col < m->m.order(), "index out of range");
    const gtz::cplx v = m->m.data(row, col);
    *re = v.real();
    *im = v.imag();
  });
}

gtz_status gtz_matrix_write_binary(const gtz_matrix* m, const char* path) {
  return guard([&] {
    require(m && path, "null argument");
    std::ofstream os(path, std::ios::binary);
    if (!os) throw gtz::IoError(std::string("cannot open '") + path + "' for writing");
    gtz::write_binary(m->m, os);
    if (!os) throw gtz::IoError(std::string("failed writing '") + path + "'");
  });
}

gtz_status gtz_matrix_read_binary(const char* path, gtz_matrix** out) {
  return guard([&] {
    require(path && out, "null argument");
    std::ifstream is(path, std::ios::binary);
    if (!is) throw gtz::IoError(std::string("cannot open '") + path + "'");
    *out = new gtz_matrix{gtz::read_binary(is)};
  });
}

gtz_status gtz_eigenvalues(const gtz_matrix* m, double* re, double* im, double* backward_error) {
  return guard([&] {
    require(m && re && im, "null argument");
    gtz::EigenOptions opts;
    if (backward_error) opts.schur_vectors = gtz::EigenOptions::Vectors::always;
    const gtz::SpectrumResult r = gtz::eigenvalues(m->m, opts);
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
      re[i] = r.eigenvalues[i].real();
      im[i] = r.eigenvalues[i].imag();
    }
    if (backward_error) *backward_error = r.info.backward_error.value_or(-1.0);
  });
}

gtz_status gtz_singular_values(const gtz_matrix* m, double* sigma) {
  return guard([&] {
    require(m && sigma, "null argument");
    const auto s = gtz::singular_values(m->m);
    std::copy(s.begin(), s.end(), sigma);
  });
}

gtz_status gtz_schatten_norm(const gtz_matrix* m, double p, double* out) {
  return guard([&] {
    require(m && out, "null argument");
    *out = gtz::schatten_norm(m->m.data, p);
  });
}

gtz_status gtz_cluster_count(const double* re, const double* im, size_t count, double epsilon, int64_t* out) {
  return guard([&] {
    require(re && im && out, "null argument");
    std::vector<gtz::cplx> v(count);
    for (size_t i = 0; i < count; ++i) v[i] = gtz::cplx(re[i], im[i]);
    *out = gtz::cluster_report(v, epsilon, gtz::Levels{static_cast<std::int64_t>(std::max<size_t>(count, 1))},
                               gtz::Levels{1})
               .count;
  });
}

gtz_status gtz_config_load(const char* path, gtz_config** out) {
  return guard([&] {
    require(path && out, "null argument");
    *out = new gtz_config{gtz::load_config(path)};
  });
}

gtz_status gtz_config_parse(const char* json_text, gtz_config** out) {
  return guard([&] {
    require(json_text && out, "null argument");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw gtz::ConfigError(std::string("malformed JSON: ") + e.what());
    }
    *out = new gtz_config{gtz::parse_config(j)};
  });
}

void gtz_config_free(gtz_config* c) { delete c; }

gtz_status gtz_config_hash(const gtz_config* c, char** out) {
  return guard([&] {
    require(c && out, "null argument");
    *out = dup(gtz::config_hash(c->cfg));
  });
}

gtz_status gtz_config_json(const gtz_config* c, char** out) {
  return guard([&] {
    require(c && out, "null argument");
    *out = dup(gtz::to_json(c->cfg).dump(2));
  });
}

gtz_status gtz_config_output_dir(const gtz_config* c, char** out) {
  return guard([&] {
    require(c && out, "null argument");
    *out = dup(c->cfg.output_dir);
  });
}

int gtz_config_jobs(const gtz_config* c, int requested) {
  if (!c) return 1;
  return gtz::resolve_jobs(c->cfg, requested > 0 ? std::optional<int>(requested) : std::nullopt);
}

gtz_status gtz_run_experiment(const gtz_config* c, const char* out_dir, int jobs, gtz_cell_callback cb, void* user,
                              gtz_run** out) {
  return guard([&] {
    require(c && out, "null argument");
    gtz::RunOptions opts;
    if (jobs > 0) opts.jobs = jobs;
    if (out_dir) opts.output_dir = out_dir;
    if (cb)
      opts.on_cell = [&](const gtz::CellResult& cell) {
        cb(user, cell.index, cell.key().c_str(), cell.ok ? 1 : 0, cell.seconds, cell.error.c_str());
      };
    *out = new gtz_run{gtz::run_experiment(c->cfg, opts)};
  });
}

gtz_status gtz_run_load(const char* runlog_path, gtz_run** out) {
  return guard([&] {
    require(runlog_path && out, "null argument");
    *out = new gtz_run{gtz::load_runlog(runlog_path)};
  });
}

void gtz_run_free(gtz_run* r) { delete r; }

size_t gtz_run_cell_count(const gtz_run* r) { return r ? r->rec.cells.size() : 0; }
size_t gtz_run_failed_count(const gtz_run* r) { return r ? r->rec.failed : 0; }

gtz_status gtz_run_cell_json(const gtz_run* r, size_t i, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    require(i < r->rec.cells.size(), "cell index out of range");
    *out = dup(gtz::cell_payload(r->rec.cells[i]).dump());
  });
}

gtz_status gtz_run_tables(const gtz_run* r, gtz_table_format format, char** out) {
  return guard([&] {
    require(r && out, "null argument");
    std::ostringstream os;
    gtz::emit_tables(r->rec, format == GTZ_TABLE_CSV ? gtz::TableFormat::csv : gtz::TableFormat::markdown, os);
    *out = dup(os.str());
  });
}

gtz_status gtz_run_scatter(const gtz_run* r, const char* cell, char** csv, char** svg) {
  return guard([&] {
    require(r && cell && csv, "null argument");
    std::ostringstream c, s;
    gtz::emit_spectrum_scatter(r->rec, cell, c, svg ? &s : nullptr);
    *csv = dup(c.str());
    if (svg) *svg = dup(s.str());
  });
}

gtz_status gtz_verify(const char* suite, char** report, int* failures) {
  return guard([&] {
    require(suite && report && failures, "null argument");
    const auto checks = gtz::run_suite(suite);
    std::string text;
    int bad = 0;
    for (const auto& c : checks) {
      text += (c.pass ? "PASS  " : "FAIL  ") + c.name + "  (" + c.detail + ")\n";
      bad += c.pass ? 0 : 1;
    }
    *report = dup(text);
    *failures = bad;
  });
}

gtz_status gtz_repro(int test, int include_large, int jobs, char** report, int* passed) {
  return guard([&] {
    require(report && passed, "null argument");
    const gtz::ReproReport r =
        gtz::reproduce(test, include_large != 0, jobs > 0 ? std::optional<int>(jobs) : std::nullopt);
    std::ostringstream os;
    gtz::print_repro(r, os);
    *report = dup(os.str());
    *passed = r.pass ? 1 : 0;
  });
}

} // extern "C"
