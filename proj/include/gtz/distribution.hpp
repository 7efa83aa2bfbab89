#pragma once

// Distribution functionals, outlier counts and proposition-level checks on
// products A_{n,g} = T_{n,g}(f1) T_{n,g}(f2).

#include "gtz/spectra.hpp"
#include "gtz/structure.hpp"
#include "gtz/symbols.hpp"

#include "json.hpp"

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace gtz {

struct TestFunction {
  std::string id;
  std::function<cplx(cplx)> eval;

  cplx operator()(cplx z) const { return eval(z); }

  /// sum_r c[r] z^r
  static TestFunction polynomial(std::vector<cplx> coeffs, std::string id = {});
  static TestFunction power(int d);
};

/// Ids: "1", "z", "z^d", "re2" (Re(z)^2), "abs" (|z|), "poly:c0,c1,..." (real coefficients).
TestFunction make_test_function(const std::string& id);

/// 1 iff every stride is 1, else 0. Strides must be >= 1.
int theta_weight(const Levels& g);

enum class SpectrumMode { eigen, singular };

/// (1/N) sum F(lambda_j), or over singular values in singular mode.
cplx lambda_mean(const TestFunction& f, const SpectrumResult& spec, SpectrumMode mode = SpectrumMode::eigen);
cplx lambda_mean(const TestFunction& f, const std::vector<cplx>& values);

struct IntegralEstimate {
  cplx value;
  double error_estimate = 0.0; // Richardson estimate from the half-resolution grid
  int grid_per_dim = 0;
};

/// (2 pi)^-d times the integral of F(sym(t)) over [-pi, pi]^d, tensor trapezoid with
/// grid_per_dim intervals per dimension.
IntegralEstimate reference_integral(const TestFunction& f, const Symbol& sym, int grid_per_dim);

struct ClusterReport {
  Levels n, g;
  double epsilon = 0.0;
  std::int64_t count = 0; // #{ |lambda| >= epsilon }
  double rate = 0.0;      // count / prod(n)
  std::vector<cplx> eigenvalues;
};

ClusterReport cluster_report(const std::vector<cplx>& eig, double epsilon, const Levels& n, const Levels& g);

/// Moduli within `window` of epsilon, ascending. Used to explain off-by-one counts.
std::vector<double> boundary_moduli(const std::vector<cplx>& eig, double epsilon, double window = 1e-3);

/// Coefficient tables for both factors at the box T_{n,g} needs, then the dense product.
/// samples_per_dim = 0 selects the default quadrature resolution.
GMatrix product_matrix(const Symbol& f1, const Symbol& f2, const Levels& n, const Levels& g,
                       std::int64_t samples_per_dim = 0);
/// T_{n,g}(f) with coefficients over exactly the box it needs.
GMatrix g_toeplitz_matrix(const Symbol& f, const Levels& n, const Levels& g, std::int64_t samples_per_dim = 0);

struct MomentReport {
  Levels n, g;
  int d_max = 0;
  std::vector<cplx> empirical; // (1/N) tr(A^d), d = 1..d_max
  std::vector<cplx> reference; // theta_g * (2 pi)^-d' integral of h^d
  std::vector<double> gaps;
};

MomentReport moment_check(const Symbol& f1, const Symbol& f2, const Levels& n, const Levels& g, int d_max);
MomentReport moment_check(const GMatrix& a, const Symbol& h, int d_max, int grid_per_dim = 4096);

struct RankBoundReport {
  int m = 0;
  std::int64_t n = 0, g = 0;
  std::int64_t defect_rank = 0;
  std::int64_t bound = 0; // 2 floor(m / g)
  bool pass = false;
  bool asserted = false; // the bound is only claimed for g = 1
};

/// Rank of T_{n,g}(P1) T_{n,g}(P2) - T_{n,g}(P1 P2) for the order-m Fejer means P1, P2.
RankBoundReport rank_bound_check(const Symbol& f1, const Symbol& f2, int m, std::int64_t n, std::int64_t g);

struct EquivalencePoint {
  std::int64_t n = 0;
  double value = 0.0; // (1/n) || A_{n,g} - T_{n,g}(f1 f2) ||_1
};

struct EquivalenceReport {
  std::int64_t g = 0;
  std::vector<EquivalencePoint> points;
  bool non_increasing = false; // within 5% slack
};

EquivalenceReport equivalence_check(const Symbol& f1, const Symbol& f2, const std::vector<std::int64_t>& n_list,
                                    std::int64_t g);

struct PolyTraceReport {
  std::int64_t n = 0, g = 0;
  std::vector<cplx> poly;
  double lhs = 0.0;       // || P(A_{n,g}) ||_1 / n
  double reference = 0.0; // (1/2pi) integral of |P(theta_g h)|
  double c0 = 0.0;        // grid sup |f1| times grid sup |f2|
  double c_hat = 0.0;     // sum_r |a_r| r (2 c0)^(r-1)
  double bound = 0.0;     // reference + c_hat c0 ceil(n/g)/n + slack
  bool pass = false;
};

inline constexpr double kPolyTraceSlack = 0.05;

PolyTraceReport poly_tracenorm_check(const Symbol& f1, const Symbol& f2, const std::vector<cplx>& poly,
                                     std::int64_t n, std::int64_t g);

/// (1/n) || [0 | tail] ||_1 for the tail columns of T_{n,g}(f).
double tail_tracenorm_ratio(const Symbol& f, std::int64_t n, std::int64_t g);

struct SzegoReport {
  std::int64_t n = 0;
  cplx mean;
  IntegralEstimate reference;
  double gap = 0.0;
};

/// Eigenvalue mean of F over T_n(f) against the symbol integral.
SzegoReport szego_check(const TestFunction& f, const Symbol& sym, std::int64_t n);

// Serialization

nlohmann::json to_json(const ClusterReport& r, bool with_eigenvalues = false);
nlohmann::json to_json(const MomentReport& r);
nlohmann::json to_json(const RankBoundReport& r);
nlohmann::json to_json(const EquivalenceReport& r);
nlohmann::json to_json(const PolyTraceReport& r);

/// Markdown sections, one table per g: columns per n, a row of counts then a row of rates (4 decimals).
void write_cluster_tables_md(const std::vector<ClusterReport>& reports, std::ostream& os);
/// CSV with columns g,epsilon,n,count,rate.
void write_cluster_tables_csv(const std::vector<ClusterReport>& reports, std::ostream& os);

} // namespace gtz
