#pragma once

// Dense eigenvalues and singular values of general complex matrices.

#include "gtz/structure.hpp"

#include <iosfwd>
#include <limits>
#include <optional>
#include <vector>

namespace gtz {

struct SolverInfo {
  /// Active block [ilo, ihi] (1-based) left after balancing isolated eigenvalues.
  int ilo = 0;
  int ihi = 0;
  /// ||B V - V T||_F / ||B||_F for the balanced matrix B with Schur form T and unitary V.
  /// Present only when Schur vectors were accumulated.
  std::optional<double> backward_error;
};

struct SpectrumResult {
  std::vector<cplx> eigenvalues;                    // unordered, multiplicities kept
  std::optional<std::vector<double>> singular_values; // descending
  SolverInfo info;
};

struct EigenOptions {
  enum class Vectors { automatic, always, never };
  /// Schur vectors cost roughly double; automatic accumulates them up to order 512.
  Vectors schur_vectors = Vectors::automatic;
};

/// Balancing (permutation and scaling), Hessenberg reduction and implicitly shifted QR.
SpectrumResult eigenvalues(const Matrix& m, const EigenOptions& opts = {});
SpectrumResult eigenvalues(const GMatrix& m, const EigenOptions& opts = {});

/// All singular values, descending.
std::vector<double> singular_values(const Matrix& m);
std::vector<double> singular_values(const GMatrix& m);

/// (sum sigma_i^p)^(1/p); p = infinity gives sigma_1. p < 1 is rejected.
double schatten_norm(const std::vector<double>& sigma, double p);
double schatten_norm(const Matrix& m, double p);
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Number of singular values above tol * sigma_1.
std::int64_t numerical_rank(const std::vector<double>& sigma, double tol);
std::int64_t numerical_rank(const Matrix& m, double tol);

/// CSV with columns index,re,im,abs.
void write_spectrum_csv(const std::vector<cplx>& eig, std::ostream& os);

} // namespace gtz
