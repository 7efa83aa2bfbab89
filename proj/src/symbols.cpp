#include "gtz/symbols.hpp"

#include "fft.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

namespace gtz {

namespace {

std::string box_string(const Levels& lo, const Levels& hi) {
  std::ostringstream os;
  os << '[';
  for (int j = 0; j < lo.arity(); ++j) {
    if (j) os << " x ";
    os << lo[j] << ".." << hi[j];
  }
  os << ']';
  return os.str();
}

double sign_pow(std::int64_t k) { return (k % 2 == 0) ? 1.0 : -1.0; }

} // namespace

// CoeffTable

CoeffTable::CoeffTable(Levels lo, Levels hi, CoeffSource source, std::int64_t samples_per_dim)
    : lo_(lo), hi_(hi), source_(source), samples_(samples_per_dim) {
  if (lo.arity() != hi.arity() || lo.arity() == 0) throw UsageError("coefficient box arity mismatch");
  std::size_t total = 1;
  for (int j = 0; j < lo.arity(); ++j) {
    if (hi[j] < lo[j]) throw UsageError("empty coefficient box " + box_string(lo, hi));
    total *= static_cast<std::size_t>(hi[j] - lo[j] + 1);
  }
  values_.assign(total, cplx{});
}

bool CoeffTable::covers(const Levels& lo, const Levels& hi) const {
  if (lo.arity() != arity()) return false;
  for (int j = 0; j < arity(); ++j)
    if (lo[j] < lo_[j] || hi[j] > hi_[j]) return false;
  return true;
}

std::size_t CoeffTable::flat(const Levels& k) const {
  if (k.arity() != arity()) throw UsageError("coefficient index arity mismatch");
  std::size_t idx = 0;
  for (int j = 0; j < arity(); ++j) {
    if (k[j] < lo_[j] || k[j] > hi_[j])
      throw UsageError("coefficient index (" + k.to_string(',') + ") outside covered box " +
                       box_string(lo_, hi_));
    idx = idx * static_cast<std::size_t>(width(j)) + static_cast<std::size_t>(k[j] - lo_[j]);
  }
  return idx;
}

cplx CoeffTable::at(std::int64_t k) const { return at(Levels{k}); }
cplx CoeffTable::at(std::int64_t k1, std::int64_t k2) const { return at(Levels{k1, k2}); }
cplx CoeffTable::at(const Levels& k) const { return values_[flat(k)]; }
cplx& CoeffTable::ref(const Levels& k) { return values_[flat(k)]; }

double CoeffTable::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

void CoeffTable::write_csv(std::ostream& os) const {
  os.precision(17);
  if (arity() == 1) {
    os << "k,re,im\n";
    for (std::int64_t k = lo_[0]; k <= hi_[0]; ++k) {
      const cplx v = at(k);
      os << k << ',' << v.real() << ',' << v.imag() << '\n';
    }
  } else {
    os << "k1,k2,re,im\n";
    for (std::int64_t k1 = lo_[0]; k1 <= hi_[0]; ++k1)
      for (std::int64_t k2 = lo_[1]; k2 <= hi_[1]; ++k2) {
        const cplx v = at(k1, k2);
        os << k1 << ',' << k2 << ',' << v.real() << ',' << v.imag() << '\n';
      }
  }
}

// AlgebraicPoly

cplx AlgebraicPoly::operator()(double x) const {
  cplx acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

cplx AlgebraicPoly::fourier(std::int64_t k) const {
  cplx sum{};
  if (k == 0) {
    for (std::size_t j = 0; j < coeffs.size(); j += 2)
      sum += coeffs[j] * std::pow(kPi, static_cast<double>(j)) / static_cast<double>(j + 1);
    return sum;
  }
  // Integration by parts: I_j = s (pi^j - (-pi)^j) / (-2 pi i k) + j/(i k) I_{j-1}, I_0 = 0.
  const double s = sign_pow(k);
  const cplx ik(0.0, static_cast<double>(k));
  cplx moment{};
  for (std::size_t j = 1; j < coeffs.size(); ++j) {
    const double pj = std::pow(kPi, static_cast<double>(j));
    const double boundary = s * (pj - ((j % 2 == 0) ? pj : -pj));
    moment = boundary / (-2.0 * kPi * ik) + static_cast<double>(j) / ik * moment;
    sum += coeffs[j] * moment;
  }
  return sum;
}

AlgebraicPoly AlgebraicPoly::operator*(const AlgebraicPoly& other) const {
  if (coeffs.empty() || other.coeffs.empty()) return {};
  AlgebraicPoly out;
  out.coeffs.assign(coeffs.size() + other.coeffs.size() - 1, cplx{});
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    for (std::size_t j = 0; j < other.coeffs.size(); ++j) out.coeffs[i + j] += coeffs[i] * other.coeffs[j];
  return out;
}

// Symbol

Symbol::Symbol(std::string id, int arity, Evaluator evaluator) {
  if (arity < 1 || arity > Levels::kMaxArity) throw UsageError("symbol arity must be 1 or 2");
  auto s = std::make_shared<State>();
  s->id = std::move(id);
  s->arity = arity;
  s->eval = std::move(evaluator);
  state_ = std::move(s);
}

Symbol Symbol::with(const std::function<void(State&)>& edit) const {
  auto s = std::make_shared<State>(*state_);
  edit(*s);
  Symbol copy = *this;
  copy.state_ = std::move(s);
  return copy;
}

Symbol Symbol::with_exact(CoeffRule rule) const {
  return with([&](State& s) { s.exact = std::move(rule); });
}
Symbol Symbol::with_sup_bound(double bound) const {
  return with([&](State& s) { s.sup_bound = bound; });
}
Symbol Symbol::with_real_valued(bool real) const {
  return with([&](State& s) { s.real_valued = real; });
}
Symbol Symbol::with_separable(std::vector<SeparableTerm> terms) const {
  if (arity() != 2) throw UsageError("separable terms require a bivariate symbol");
  return with([&](State& s) { s.separable = std::move(terms); });
}
Symbol Symbol::with_trig(std::shared_ptr<const TrigPoly> trig) const {
  return with([&](State& s) { s.trig = std::move(trig); });
}
Symbol Symbol::with_algebraic(AlgebraicPoly poly) const {
  return with([&](State& s) { s.algebraic = std::move(poly); });
}
Symbol Symbol::renamed(std::string id) const {
  return with([&](State& s) { s.id = std::move(id); });
}

cplx Symbol::exact_coeff(const Levels& k) const {
  if (!state_->exact) throw UsageError("symbol '" + id() + "' has no exact coefficient rule");
  return state_->exact(k);
}

cplx Symbol::operator()(std::span<const double> t) const {
  if (static_cast<int>(t.size()) != arity())
    throw UsageError("symbol '" + id() + "' has arity " + std::to_string(arity()) + ", got " +
                     std::to_string(t.size()) + " arguments");
  return state_->eval(t);
}

cplx Symbol::operator()(double t) const {
  const double a[1] = {t};
  return (*this)(std::span<const double>(a, 1));
}

cplx Symbol::operator()(double x, double y) const {
  const double a[2] = {x, y};
  return (*this)(std::span<const double>(a, 2));
}

cplx eval_symbol(const Symbol& sym, std::span<const double> t) { return sym(t); }

// TrigPoly

cplx TrigPoly::operator()(std::span<const double> t) const {
  cplx acc{};
  if (arity == 1) {
    for (std::int64_t k = -degree; k <= degree; ++k) {
      const cplx c = coeffs.at(k);
      if (c != cplx{}) acc += c * std::polar(1.0, static_cast<double>(k) * t[0]);
    }
  } else {
    for (std::int64_t k1 = -degree; k1 <= degree; ++k1)
      for (std::int64_t k2 = -degree; k2 <= degree; ++k2) {
        const cplx c = coeffs.at(k1, k2);
        if (c != cplx{})
          acc += c * std::polar(1.0, static_cast<double>(k1) * t[0] + static_cast<double>(k2) * t[1]);
      }
  }
  return acc;
}

Symbol TrigPoly::as_symbol(std::string id) const {
  auto poly = std::make_shared<const TrigPoly>(*this);
  Symbol sym(std::move(id), arity, [poly](std::span<const double> t) { return (*poly)(t); });
  sym = sym.with_exact([poly](const Levels& k) {
            for (int j = 0; j < k.arity(); ++j)
              if (k[j] < -poly->degree || k[j] > poly->degree) return cplx{};
            return poly->coeffs.at(k);
          })
            .with_trig(poly);
  // Real-valued iff coefficients are conjugate symmetric.
  bool real = true;
  for (std::int64_t k1 = -degree; k1 <= degree && real; ++k1) {
    if (arity == 1) {
      real = std::abs(coeffs.at(k1) - std::conj(coeffs.at(-k1))) <= 1e-14 * (1.0 + coeffs.max_abs());
    } else {
      for (std::int64_t k2 = -degree; k2 <= degree && real; ++k2)
        real = std::abs(coeffs.at(k1, k2) - std::conj(coeffs.at(-k1, -k2))) <= 1e-14 * (1.0 + coeffs.max_abs());
    }
  }
  sym = sym.with_real_valued(real);
  return sym.with_sup_bound(grid_sup(sym, arity == 1 ? 2048 : 256));
}

// Coefficients

std::int64_t default_samples(const Levels& lo, const Levels& hi) {
  std::int64_t widest = 1;
  for (int j = 0; j < lo.arity(); ++j) widest = std::max(widest, hi[j] - lo[j] + 1);
  std::int64_t m = 1;
  while (m < 8 * widest) m <<= 1;
  return m;
}

namespace {

void check_box(const Symbol& sym, const Levels& lo, const Levels& hi) {
  if (lo.arity() != sym.arity() || hi.arity() != sym.arity())
    throw UsageError("coefficient box arity does not match symbol '" + sym.id() + "'");
  for (int j = 0; j < lo.arity(); ++j)
    if (lo[j] > 0 || hi[j] < 0) throw UsageError("coefficient box must satisfy lo <= 0 <= hi");
}

void check_oversampling(const Levels& lo, const Levels& hi, std::int64_t samples) {
  for (int j = 0; j < lo.arity(); ++j) {
    const std::int64_t need = 8 * (hi[j] - lo[j] + 1);
    if (samples < need)
      throw UsageError("samples_per_dim = " + std::to_string(samples) + " is below the oversampling minimum " +
                       std::to_string(need) + " for dimension " + std::to_string(j));
  }
}

double grid_point(std::int64_t j, std::int64_t m) {
  return -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(m);
}

cplx checked_eval(const Symbol& sym, std::span<const double> t) {
  const cplx v = sym(t);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
    std::ostringstream os;
    os << "symbol '" << sym.id() << "' is not finite at grid point (";
    for (std::size_t j = 0; j < t.size(); ++j) os << (j ? ", " : "") << t[j];
    os << ')';
    throw NumericError(os.str());
  }
  return v;
}

void flag_decay(CoeffTable& table) {
  const double top = table.max_abs();
  if (top == 0.0) return;
  const double a = std::abs(table.at(table.lo()));
  const double b = std::abs(table.at(table.hi()));
  table.set_decay_warning(std::max(a, b) >= 1e-6 * top);
}

// Sample at t_j = -pi + 2 pi j / M; slot 0 holds the average of the two endpoint
// values, which is the closed-interval trapezoid rule for a non-periodic symbol.
CoeffTable quadrature_1d(const Symbol& sym, std::int64_t lo, std::int64_t hi, std::int64_t m) {
  std::vector<cplx> v(static_cast<std::size_t>(m));
  {
    const double lo_end = -kPi, hi_end = kPi;
    v[0] = 0.5 * (checked_eval(sym, std::span<const double>(&lo_end, 1)) +
                  checked_eval(sym, std::span<const double>(&hi_end, 1)));
  }
  for (std::int64_t j = 1; j < m; ++j) {
    const double t = grid_point(j, m);
    v[static_cast<std::size_t>(j)] = checked_eval(sym, std::span<const double>(&t, 1));
  }
  const auto spectrum = detail::dft(std::move(v));
  CoeffTable table(Levels{lo}, Levels{hi}, CoeffSource::quadrature, m);
  const double inv = 1.0 / static_cast<double>(m);
  for (std::int64_t k = lo; k <= hi; ++k) {
    const std::int64_t idx = ((k % m) + m) % m;
    table.ref(Levels{k}) = sign_pow(k) * inv * spectrum[static_cast<std::size_t>(idx)];
  }
  return table;
}

CoeffTable quadrature_2d(const Symbol& sym, const Levels& lo, const Levels& hi, std::int64_t m) {
  const auto mm = static_cast<std::size_t>(m);
  if (mm * mm > (std::size_t{1} << 26))
    throw UsageError("bivariate quadrature grid " + std::to_string(m) + "^2 exceeds the memory cap; "
                     "provide an exact rule or separable terms for symbol '" + sym.id() + "'");
  std::vector<cplx> v(mm * mm);
  auto value = [&](std::int64_t j1, std::int64_t j2) {
    // Index 0 in a dimension averages the two endpoints of that dimension.
    const double x0[2] = {j1 == 0 ? -kPi : grid_point(j1, m), j1 == 0 ? kPi : grid_point(j1, m)};
    const double y0[2] = {j2 == 0 ? -kPi : grid_point(j2, m), j2 == 0 ? kPi : grid_point(j2, m)};
    const int nx = j1 == 0 ? 2 : 1, ny = j2 == 0 ? 2 : 1;
    cplx acc{};
    for (int a = 0; a < nx; ++a)
      for (int b = 0; b < ny; ++b) {
        const double t[2] = {x0[a], y0[b]};
        acc += checked_eval(sym, std::span<const double>(t, 2));
      }
    return acc / static_cast<double>(nx * ny);
  };
  for (std::int64_t j1 = 0; j1 < m; ++j1)
    for (std::int64_t j2 = 0; j2 < m; ++j2) v[static_cast<std::size_t>(j1) * mm + static_cast<std::size_t>(j2)] = value(j1, j2);
  const auto spectrum = detail::dft2(std::move(v), mm, mm);
  CoeffTable table(lo, hi, CoeffSource::quadrature, m);
  const double inv = 1.0 / (static_cast<double>(m) * static_cast<double>(m));
  for (std::int64_t k1 = lo[0]; k1 <= hi[0]; ++k1)
    for (std::int64_t k2 = lo[1]; k2 <= hi[1]; ++k2) {
      const auto i1 = static_cast<std::size_t>(((k1 % m) + m) % m);
      const auto i2 = static_cast<std::size_t>(((k2 % m) + m) % m);
      table.ref(Levels{k1, k2}) = sign_pow(k1 + k2) * inv * spectrum[i1 * mm + i2];
    }
  return table;
}

CoeffTable exact_table(const Symbol& sym, const Levels& lo, const Levels& hi) {
  CoeffTable table(lo, hi, CoeffSource::exact);
  if (sym.arity() == 1) {
    for (std::int64_t k = lo[0]; k <= hi[0]; ++k) table.ref(Levels{k}) = sym.exact_coeff(Levels{k});
  } else {
    for (std::int64_t k1 = lo[0]; k1 <= hi[0]; ++k1)
      for (std::int64_t k2 = lo[1]; k2 <= hi[1]; ++k2)
        table.ref(Levels{k1, k2}) = sym.exact_coeff(Levels{k1, k2});
  }
  return table;
}

CoeffTable separable_table(const Symbol& sym, const Levels& lo, const Levels& hi, std::int64_t samples,
                           bool force_quadrature) {
  bool all_exact = true;
  CoeffTable table(lo, hi, CoeffSource::exact);
  for (const auto& term : sym.separable_terms()) {
    auto factor = [&](const Symbol& u, std::int64_t a, std::int64_t b) {
      if (u.has_exact_coeffs() && !force_quadrature) return fourier_coefficients(u, Levels{a}, Levels{b});
      all_exact = false;
      return quadrature_1d(u, a, b, samples);
    };
    const CoeffTable tx = factor(*term.x, lo[0], hi[0]);
    const CoeffTable ty = factor(*term.y, lo[1], hi[1]);
    for (std::int64_t k1 = lo[0]; k1 <= hi[0]; ++k1) {
      const cplx cx = term.scale * tx.at(k1);
      if (cx == cplx{}) continue;
      for (std::int64_t k2 = lo[1]; k2 <= hi[1]; ++k2) table.ref(Levels{k1, k2}) += cx * ty.at(k2);
    }
  }
  if (all_exact) return table;
  CoeffTable out(lo, hi, CoeffSource::quadrature, samples);
  out.values() = std::move(table.values());
  flag_decay(out);
  return out;
}

} // namespace

CoeffTable quadrature_coefficients(const Symbol& sym, const Levels& lo, const Levels& hi,
                                   std::int64_t samples_per_dim) {
  check_box(sym, lo, hi);
  check_oversampling(lo, hi, samples_per_dim);
  if (sym.arity() == 2 && !sym.separable_terms().empty())
    return separable_table(sym, lo, hi, samples_per_dim, true);
  CoeffTable table = sym.arity() == 1 ? quadrature_1d(sym, lo[0], hi[0], samples_per_dim)
                                      : quadrature_2d(sym, lo, hi, samples_per_dim);
  flag_decay(table);
  return table;
}

CoeffTable fourier_coefficients(const Symbol& sym, const Levels& lo, const Levels& hi,
                                std::int64_t samples_per_dim) {
  check_box(sym, lo, hi);
  if (sym.has_exact_coeffs()) return exact_table(sym, lo, hi);
  check_oversampling(lo, hi, samples_per_dim);
  if (sym.arity() == 2 && !sym.separable_terms().empty())
    return separable_table(sym, lo, hi, samples_per_dim, false);
  return quadrature_coefficients(sym, lo, hi, samples_per_dim);
}

CoeffTable fourier_coefficients(const Symbol& sym, const Levels& lo, const Levels& hi) {
  return fourier_coefficients(sym, lo, hi, default_samples(lo, hi));
}

TrigPoly fejer_mean(const CoeffTable& table, int m) {
  if (m < 0) throw UsageError("Fejer order m must be nonnegative");
  const int d = table.arity();
  const Levels box_lo = Levels::uniform(d, -m), box_hi = Levels::uniform(d, m);
  if (!table.covers(box_lo, box_hi))
    throw UsageError("coefficient table does not cover [-" + std::to_string(m) + ", " + std::to_string(m) +
                     "] in every dimension");
  TrigPoly p;
  p.arity = d;
  p.degree = m;
  p.coeffs = CoeffTable(box_lo, box_hi, CoeffSource::exact);
  const double denom = static_cast<double>(m) + 1.0;
  auto weight = [&](std::int64_t k) { return 1.0 - static_cast<double>(std::abs(k)) / denom; };
  if (d == 1) {
    for (std::int64_t k = -m; k <= m; ++k) p.coeffs.ref(Levels{k}) = weight(k) * table.at(k);
  } else {
    for (std::int64_t k1 = -m; k1 <= m; ++k1)
      for (std::int64_t k2 = -m; k2 <= m; ++k2)
        p.coeffs.ref(Levels{k1, k2}) = weight(k1) * weight(k2) * table.at(k1, k2);
  }
  return p;
}

namespace {

TrigPoly convolve(const TrigPoly& a, const TrigPoly& b) {
  TrigPoly out;
  out.arity = a.arity;
  out.degree = a.degree + b.degree;
  out.coeffs = CoeffTable(Levels::uniform(a.arity, -out.degree), Levels::uniform(a.arity, out.degree),
                          CoeffSource::exact);
  if (a.arity == 1) {
    for (std::int64_t i = -a.degree; i <= a.degree; ++i)
      for (std::int64_t j = -b.degree; j <= b.degree; ++j)
        out.coeffs.ref(Levels{i + j}) += a.coeffs.at(i) * b.coeffs.at(j);
  } else {
    for (std::int64_t i1 = -a.degree; i1 <= a.degree; ++i1)
      for (std::int64_t i2 = -a.degree; i2 <= a.degree; ++i2) {
        const cplx ca = a.coeffs.at(i1, i2);
        if (ca == cplx{}) continue;
        for (std::int64_t j1 = -b.degree; j1 <= b.degree; ++j1)
          for (std::int64_t j2 = -b.degree; j2 <= b.degree; ++j2)
            out.coeffs.ref(Levels{i1 + j1, i2 + j2}) += ca * b.coeffs.at(j1, j2);
      }
  }
  return out;
}

} // namespace

Symbol pointwise_product(const Symbol& f1, const Symbol& f2) {
  if (f1.arity() != f2.arity())
    throw UsageError("pointwise product of symbols with arity " + std::to_string(f1.arity()) + " and " +
                     std::to_string(f2.arity()));
  const std::string id = "(" + f1.id() + "*" + f2.id() + ")";
  if (f1.trig_poly() && f2.trig_poly()) {
    Symbol h = convolve(*f1.trig_poly(), *f2.trig_poly()).as_symbol(id);
    if (f1.algebraic_poly() && f2.algebraic_poly()) h = h.with_algebraic(*f1.algebraic_poly() * *f2.algebraic_poly());
    return h;
  }
  if (f1.algebraic_poly() && f2.algebraic_poly()) return algebraic_symbol(id, *f1.algebraic_poly() * *f2.algebraic_poly());

  Symbol h(id, f1.arity(), [f1, f2](std::span<const double> t) { return f1(t) * f2(t); });
  h = h.with_real_valued(false);
  if (f1.sup_bound() && f2.sup_bound()) h = h.with_sup_bound(*f1.sup_bound() * *f2.sup_bound());
  if (f1.arity() == 2 && !f1.separable_terms().empty() && !f2.separable_terms().empty()) {
    std::vector<Symbol::SeparableTerm> terms;
    for (const auto& a : f1.separable_terms())
      for (const auto& b : f2.separable_terms())
        terms.push_back({a.scale * b.scale, std::make_shared<const Symbol>(pointwise_product(*a.x, *b.x)),
                         std::make_shared<const Symbol>(pointwise_product(*a.y, *b.y))});
    h = h.with_separable(std::move(terms));
  }
  return h;
}

double grid_sup(const Symbol& sym, int points_per_dim) {
  if (points_per_dim < 1) throw UsageError("grid_sup needs at least one interval per dimension");
  double best = 0.0;
  if (sym.arity() == 1) {
    for (int j = 0; j <= points_per_dim; ++j) best = std::max(best, std::abs(sym(grid_point(j, points_per_dim))));
  } else {
    for (int j1 = 0; j1 <= points_per_dim; ++j1)
      for (int j2 = 0; j2 <= points_per_dim; ++j2)
        best = std::max(best, std::abs(sym(grid_point(j1, points_per_dim), grid_point(j2, points_per_dim))));
  }
  return best;
}

} // namespace gtz
