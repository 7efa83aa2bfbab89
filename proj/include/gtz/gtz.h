#ifndef GTZ_GTZ_H
#define GTZ_GTZ_H

/* C interface to the g-Toeplitz library. Every call returns a gtz_status; on
   failure gtz_last_error() describes the error for the calling thread. Strings
   returned through char** out-parameters are owned by the caller and released
   with gtz_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define GTZ_API __declspec(dllexport)
#else
#define GTZ_API __attribute__((visibility("default")))
#endif

typedef enum gtz_status {
  GTZ_OK = 0,
  GTZ_E_USAGE = 1,
  GTZ_E_NUMERIC = 2,
  GTZ_E_SOLVER = 3,
  GTZ_E_CONFIG = 4,
  GTZ_E_IO = 5,
  GTZ_E_INTERNAL = 6
} gtz_status;

typedef struct gtz_symbol gtz_symbol;
typedef struct gtz_matrix gtz_matrix;
typedef struct gtz_config gtz_config;
typedef struct gtz_run gtz_run;

typedef enum gtz_table_format { GTZ_TABLE_MARKDOWN = 0, GTZ_TABLE_CSV = 1 } gtz_table_format;

GTZ_API const char* gtz_version(void);
GTZ_API const char* gtz_last_error(void);
GTZ_API const char* gtz_status_name(gtz_status s);
GTZ_API void gtz_string_free(char* s);

/* Symbols */
GTZ_API gtz_status gtz_symbol_create(const char* id, gtz_symbol** out);
GTZ_API gtz_status gtz_symbol_product(const gtz_symbol* f1, const gtz_symbol* f2, gtz_symbol** out);
GTZ_API void gtz_symbol_free(gtz_symbol* s);
GTZ_API int gtz_symbol_arity(const gtz_symbol* s);
/* t holds arity() points in [-pi, pi]. */
GTZ_API gtz_status gtz_symbol_eval(const gtz_symbol* s, const double* t, double* re, double* im);
/* Newline-separated catalog ids. */
GTZ_API gtz_status gtz_symbol_catalog(char** out);

/* Matrices. Level vectors n and g have d entries (d = 1 or 2); samples_per_dim = 0
   selects the default quadrature resolution. */
GTZ_API gtz_status gtz_matrix_g_toeplitz(const gtz_symbol* f, int d, const int64_t* n, const int64_t* g,
                                         int64_t samples_per_dim, gtz_matrix** out);
GTZ_API gtz_status gtz_matrix_product(const gtz_symbol* f1, const gtz_symbol* f2, int d, const int64_t* n,
                                      const int64_t* g, int64_t samples_per_dim, gtz_matrix** out);
/* Padded selection [Zhat | 0]. */
GTZ_API gtz_status gtz_matrix_selection(int d, const int64_t* n, const int64_t* g, gtz_matrix** out);
GTZ_API gtz_status gtz_matrix_from_data(int64_t order, const double* re, const double* im, gtz_matrix** out);
GTZ_API gtz_status gtz_matrix_multiply(const gtz_matrix* a, const gtz_matrix* b, gtz_matrix** out);
GTZ_API void gtz_matrix_free(gtz_matrix* m);
GTZ_API int64_t gtz_matrix_order(const gtz_matrix* m);
GTZ_API gtz_status gtz_matrix_get(const gtz_matrix* m, int64_t row, int64_t col, double* re, double* im);
GTZ_API gtz_status gtz_matrix_write_binary(const gtz_matrix* m, const char* path);
GTZ_API gtz_status gtz_matrix_read_binary(const char* path, gtz_matrix** out);

/* Spectra. Output arrays hold gtz_matrix_order(m) entries. backward_error may be NULL. */
GTZ_API gtz_status gtz_eigenvalues(const gtz_matrix* m, double* re, double* im, double* backward_error);
GTZ_API gtz_status gtz_singular_values(const gtz_matrix* m, double* sigma);
/* p >= 1; p = INFINITY gives the spectral norm. */
GTZ_API gtz_status gtz_schatten_norm(const gtz_matrix* m, double p, double* out);
GTZ_API gtz_status gtz_cluster_count(const double* re, const double* im, size_t count, double epsilon,
                                     int64_t* out);

/* Experiments */
GTZ_API gtz_status gtz_config_load(const char* path, gtz_config** out);
GTZ_API gtz_status gtz_config_parse(const char* json_text, gtz_config** out);
GTZ_API void gtz_config_free(gtz_config* c);
GTZ_API gtz_status gtz_config_hash(const gtz_config* c, char** out);
GTZ_API gtz_status gtz_config_json(const gtz_config* c, char** out);
GTZ_API gtz_status gtz_config_output_dir(const gtz_config* c, char** out);
/* requested <= 0 defers to GTLAB_JOBS, then the config, then the core count. */
GTZ_API int gtz_config_jobs(const gtz_config* c, int requested);

typedef void (*gtz_cell_callback)(void* user, size_t index, const char* key, int ok, double seconds,
                                  const char* error);

/* out_dir may be NULL to use the config value. jobs <= 0 resolves as in gtz_config_jobs. */
GTZ_API gtz_status gtz_run_experiment(const gtz_config* c, const char* out_dir, int jobs, gtz_cell_callback cb,
                                      void* user, gtz_run** out);
GTZ_API gtz_status gtz_run_load(const char* runlog_path, gtz_run** out);
GTZ_API void gtz_run_free(gtz_run* r);
GTZ_API size_t gtz_run_cell_count(const gtz_run* r);
GTZ_API size_t gtz_run_failed_count(const gtz_run* r);
/* Logged payload of cell i as JSON. */
GTZ_API gtz_status gtz_run_cell_json(const gtz_run* r, size_t i, char** out);
GTZ_API gtz_status gtz_run_tables(const gtz_run* r, gtz_table_format format, char** out);
/* cell is "PAIR:N:G". svg may be NULL. */
GTZ_API gtz_status gtz_run_scatter(const gtz_run* r, const char* cell, char** csv, char** svg);

/* Verification suites: "lemmas", "props", "szego", "all". */
GTZ_API gtz_status gtz_verify(const char* suite, char** report, int* failures);
/* Golden-table reproduction for tests 1..4. passed receives 1 when every cell matches. */
GTZ_API gtz_status gtz_repro(int test, int include_large, int jobs, char** report, int* passed);

#ifdef __cplusplus
}
#endif

#endif
