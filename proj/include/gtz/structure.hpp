#pragma once

// Dense g-Toeplitz matrices, selection matrices and the column-splitting decomposition
// T_{n,g}(f) = T_n(f) [Zhat | 0] + [0 | tail].

#include "gtz/core.hpp"
#include "gtz/symbols.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <utility>

namespace gtz {

using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

/// Dense square matrix of order prod(n), tagged with its level sizes, strides and origin.
/// Multi-indices flatten lexicographically: (r1, r2) -> r1 * n2 + r2.
struct GMatrix {
  Matrix data;
  Levels n;
  Levels g;
  std::string origin;

  std::int64_t order() const noexcept { return data.rows(); }
};

/// Coefficient box needed to build T_{n,g}: k_j in [-g_j (n_j - 1), n_j - 1].
std::pair<Levels, Levels> required_box(const Levels& n, const Levels& g);

/// Entry (r, s) is the coefficient at r - g*s (componentwise), with no modular reduction.
GMatrix build_g_toeplitz(const CoeffTable& table, const Levels& n, const Levels& g,
                         const std::string& symbol_id = "?");
GMatrix build_toeplitz(const CoeffTable& table, const Levels& n, const std::string& symbol_id = "?");

/// Convenience: compute the coefficient box and build.
GMatrix build_g_toeplitz(const Symbol& sym, const Levels& n, const Levels& g);

struct Selection {
  GMatrix z;            // [delta_{r - g s}], delta_k = 1 iff k = 0 mod n
  GMatrix zhat_padded;  // first mu columns of z followed by zero columns
  std::int64_t mu = 0;  // ceil(n / g)
};

Selection build_selection(std::int64_t n, std::int64_t g);
/// Multilevel selection as the Kronecker product of the per-level selections.
Selection build_selection(const Levels& n, const Levels& g);

struct Decomposition {
  GMatrix left;  // T_n(f) [Zhat | 0]
  GMatrix right; // [0 | last n - mu columns of T_{n,g}(f)]
};

Decomposition decompose_eq11(const CoeffTable& table, std::int64_t n, std::int64_t g);

GMatrix multiply(const GMatrix& a, const GMatrix& b);
GMatrix derived(Matrix data, std::string origin = "derived");

// Export. Binary layout: 32-byte little-endian header {char magic[4] = "GTPZ"; u32 d;
// u32 n[2]; u32 g[2]; u32 reserved[2]} then order^2 complex128 values, row-major.
void write_binary(const GMatrix& m, std::ostream& os);
GMatrix read_binary(std::istream& is);
/// CSV with one row per matrix row, entries "re+imi"; refused above order 64.
void write_csv(const GMatrix& m, std::ostream& os);

} // namespace gtz
