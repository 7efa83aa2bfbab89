#pragma once

// Generating functions on (-pi, pi]^d, their Fourier coefficients, Fejer means and products.

#include "gtz/core.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gtz {

class Symbol;
struct TrigPoly;

enum class CoeffSource { exact, quadrature };

/// Dense table of Fourier coefficients over the index box [lo, hi].
/// Access outside the box throws; it never reads as zero.
class CoeffTable {
public:
  CoeffTable() = default;
  CoeffTable(Levels lo, Levels hi, CoeffSource source, std::int64_t samples_per_dim = 0);

  int arity() const noexcept { return lo_.arity(); }
  const Levels& lo() const noexcept { return lo_; }
  const Levels& hi() const noexcept { return hi_; }
  CoeffSource source() const noexcept { return source_; }
  std::int64_t samples_per_dim() const noexcept { return samples_; }
  /// Set when the extreme covered coefficients are not small relative to the largest one.
  bool decay_warning() const noexcept { return decay_warning_; }
  void set_decay_warning(bool w) noexcept { decay_warning_ = w; }

  std::int64_t width(int j) const { return hi_[j] - lo_[j] + 1; }
  bool covers(const Levels& lo, const Levels& hi) const;

  cplx at(std::int64_t k) const;
  cplx at(std::int64_t k1, std::int64_t k2) const;
  cplx at(const Levels& k) const;
  cplx& ref(const Levels& k);

  /// Unchecked flat access; layout is row-major over the shifted box.
  const std::vector<cplx>& values() const noexcept { return values_; }
  std::vector<cplx>& values() noexcept { return values_; }
  std::size_t flat(const Levels& k) const;

  double max_abs() const;

  /// CSV with columns k,re,im (d=1) or k1,k2,re,im (d=2).
  void write_csv(std::ostream& os) const;

private:
  Levels lo_, hi_;
  CoeffSource source_ = CoeffSource::exact;
  std::int64_t samples_ = 0;
  bool decay_warning_ = false;
  std::vector<cplx> values_;
};

/// Algebraic polynomial sum_j a_j x^j in the angle variable, on (-pi, pi].
struct AlgebraicPoly {
  std::vector<cplx> coeffs; // coeffs[j] multiplies x^j

  cplx operator()(double x) const;
  /// (1/2pi) * integral over [-pi, pi] of p(x) e^{-ikx} dx, in closed form.
  cplx fourier(std::int64_t k) const;
  AlgebraicPoly operator*(const AlgebraicPoly& other) const;
};

/// Immutable generating function. Copies share state.
class Symbol {
public:
  using Evaluator = std::function<cplx(std::span<const double>)>;
  using CoeffRule = std::function<cplx(const Levels&)>;

  /// One summand c * u(x) * v(y) of a bivariate symbol written as a sum of separable terms.
  struct SeparableTerm {
    cplx scale;
    std::shared_ptr<const Symbol> x;
    std::shared_ptr<const Symbol> y;
  };

  Symbol(std::string id, int arity, Evaluator evaluator);

  const std::string& id() const noexcept { return state_->id; }
  int arity() const noexcept { return state_->arity; }
  bool real_valued() const noexcept { return state_->real_valued; }
  std::optional<double> sup_bound() const noexcept { return state_->sup_bound; }
  bool has_exact_coeffs() const noexcept { return static_cast<bool>(state_->exact); }
  cplx exact_coeff(const Levels& k) const;
  const std::vector<SeparableTerm>& separable_terms() const noexcept { return state_->separable; }
  const std::shared_ptr<const TrigPoly>& trig_poly() const noexcept { return state_->trig; }
  const std::optional<AlgebraicPoly>& algebraic_poly() const noexcept { return state_->algebraic; }

  /// f(t); throws UsageError if t has the wrong length.
  cplx operator()(std::span<const double> t) const;
  cplx operator()(double t) const;
  cplx operator()(double x, double y) const;

  // Builder-style setters return modified copies.
  Symbol with_exact(CoeffRule rule) const;
  Symbol with_sup_bound(double bound) const;
  Symbol with_real_valued(bool real) const;
  Symbol with_separable(std::vector<SeparableTerm> terms) const;
  Symbol with_trig(std::shared_ptr<const TrigPoly> trig) const;
  Symbol with_algebraic(AlgebraicPoly poly) const;
  Symbol renamed(std::string id) const;

private:
  struct State {
    std::string id;
    int arity = 1;
    Evaluator eval;
    CoeffRule exact;
    std::optional<double> sup_bound;
    bool real_valued = false;
    std::vector<SeparableTerm> separable;
    std::shared_ptr<const TrigPoly> trig;
    std::optional<AlgebraicPoly> algebraic;
  };
  std::shared_ptr<const State> state_;
  Symbol with(const std::function<void(State&)>& edit) const;
};

/// Trigonometric polynomial of degree `degree` per dimension.
struct TrigPoly {
  int arity = 1;
  int degree = 0;
  CoeffTable coeffs; // covers [-degree, degree]^d

  cplx operator()(std::span<const double> t) const;
  Symbol as_symbol(std::string id) const;
};

cplx eval_symbol(const Symbol& sym, std::span<const double> t);

/// Smallest power of two >= 8 * widest band of the box.
std::int64_t default_samples(const Levels& lo, const Levels& hi);

/// Fourier coefficients over [lo, hi]. Uses the exact rule when the symbol has one,
/// otherwise the equispaced trapezoid rule (a DFT of the samples).
CoeffTable fourier_coefficients(const Symbol& sym, const Levels& lo, const Levels& hi,
                                std::int64_t samples_per_dim);
CoeffTable fourier_coefficients(const Symbol& sym, const Levels& lo, const Levels& hi);

/// Quadrature only, ignoring any exact rule (used to cross-check exact coefficients).
CoeffTable quadrature_coefficients(const Symbol& sym, const Levels& lo, const Levels& hi,
                                   std::int64_t samples_per_dim);

/// Cesaro mean of order m: coefficient k weighted by prod_j (1 - |k_j|/(m+1)).
TrigPoly fejer_mean(const CoeffTable& table, int m);

/// h = f1 * f2. Exact coefficients survive when both factors are trigonometric
/// or both are algebraic polynomials.
Symbol pointwise_product(const Symbol& f1, const Symbol& f2);

/// max |f| over the closed grid of points_per_dim + 1 equispaced points per dimension on [-pi, pi].
double grid_sup(const Symbol& sym, int points_per_dim);

// Catalog

Symbol make_symbol(const std::string& id);
std::vector<std::string> catalog_ids();
bool is_catalog_id(const std::string& id);

Symbol constant_symbol(cplx value, int arity = 1);
Symbol mode_symbol(std::int64_t k, cplx scale = 1.0);
Symbol algebraic_symbol(std::string id, AlgebraicPoly poly);

} // namespace gtz
