#include "gtz/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <ostream>
#include <sstream>

namespace gtz {

TestFunction TestFunction::polynomial(std::vector<cplx> coeffs, std::string id) {
  if (id.empty()) {
    std::ostringstream os;
    os << "poly:";
    for (std::size_t r = 0; r < coeffs.size(); ++r) os << (r ? "," : "") << coeffs[r].real();
    id = os.str();
  }
  return TestFunction{std::move(id), [c = std::move(coeffs)](cplx z) {
                        cplx acc = 0.0;
                        for (std::size_t r = c.size(); r-- > 0;) acc = acc * z + c[r];
                        return acc;
                      }};
}

TestFunction TestFunction::power(int d) {
  if (d < 0) throw UsageError("test function power must be nonnegative");
  std::vector<cplx> c(static_cast<std::size_t>(d) + 1, 0.0);
  c.back() = 1.0;
  return polynomial(std::move(c), d == 0 ? "1" : d == 1 ? "z" : "z^" + std::to_string(d));
}

TestFunction make_test_function(const std::string& id) {
  if (id == "1") return TestFunction::power(0);
  if (id == "z") return TestFunction::power(1);
  if (id.rfind("z^", 0) == 0) {
    try {
      return TestFunction::power(std::stoi(id.substr(2)));
    } catch (const std::logic_error&) {
    }
  }
  if (id == "re2") return TestFunction{id, [](cplx z) { return cplx(z.real() * z.real()); }};
  if (id == "abs") return TestFunction{id, [](cplx z) { return cplx(std::abs(z)); }};
  if (id.rfind("poly:", 0) == 0) {
    std::vector<cplx> c;
    std::stringstream ss(id.substr(5));
    std::string item;
    try {
      while (std::getline(ss, item, ',')) c.emplace_back(std::stod(item));
    } catch (const std::logic_error&) {
      throw UsageError("bad polynomial test function '" + id + "'");
    }
    if (!c.empty()) return TestFunction::polynomial(std::move(c), id);
  }
  throw UsageError("unknown test function '" + id + "'");
}

int theta_weight(const Levels& g) {
  for (int j = 0; j < g.arity(); ++j)
    if (g[j] < 1) throw UsageError("theta weight needs strides >= 1");
  return g.all_equal(1) ? 1 : 0;
}

cplx lambda_mean(const TestFunction& f, const std::vector<cplx>& values) {
  if (values.empty()) throw UsageError("mean over an empty spectrum");
  cplx acc = 0.0;
  for (const cplx& z : values) acc += f(z);
  return acc / static_cast<double>(values.size());
}

cplx lambda_mean(const TestFunction& f, const SpectrumResult& spec, SpectrumMode mode) {
  if (mode == SpectrumMode::eigen) return lambda_mean(f, spec.eigenvalues);
  if (!spec.singular_values || spec.singular_values->empty()) throw UsageError("mean over an empty spectrum");
  const auto& sv = *spec.singular_values;
  return lambda_mean(f, std::vector<cplx>(sv.begin(), sv.end()));
}

IntegralEstimate reference_integral(const TestFunction& f, const Symbol& sym, int grid_per_dim) {
  if (grid_per_dim < 256 || grid_per_dim % 2 != 0) throw UsageError("reference integral needs an even grid >= 256");
  const int n = grid_per_dim;
  auto t = [n](int j) { return -kPi + 2.0 * kPi * j / n; };
  auto value = [&](std::span<const double> pt) {
    const cplx v = f(sym(pt));
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      std::ostringstream os;
      os << "test function '" << f.id << "' of symbol '" << sym.id() << "' is not finite at (";
      for (std::size_t j = 0; j < pt.size(); ++j) os << (j ? ", " : "") << pt[j];
      os << ')';
      throw NumericError(os.str());
    }
    return v;
  };
  auto w = [n](int j) { return (j == 0 || j == n) ? 0.5 : 1.0; };

  cplx full = 0.0, half = 0.0;
  if (sym.arity() == 1) {
    for (int j = 0; j <= n; ++j) {
      const double x = t(j);
      const cplx v = value(std::span<const double>(&x, 1));
      full += w(j) * v;
      if (j % 2 == 0) half += w(j) * v;
    }
    full /= static_cast<double>(n);
    half /= static_cast<double>(n / 2);
  } else {
    for (int a = 0; a <= n; ++a)
      for (int b = 0; b <= n; ++b) {
        const double x[2] = {t(a), t(b)};
        const cplx v = value(std::span<const double>(x, 2));
        full += w(a) * w(b) * v;
        if (a % 2 == 0 && b % 2 == 0) half += w(a) * w(b) * v;
      }
    full /= static_cast<double>(n) * n;
    half /= static_cast<double>(n / 2) * (n / 2);
  }
  return IntegralEstimate{full, std::abs(full - half) / 3.0, n};
}

ClusterReport cluster_report(const std::vector<cplx>& eig, double epsilon, const Levels& n, const Levels& g) {
  if (!(epsilon > 0.0)) throw UsageError("cluster threshold must be positive");
  ClusterReport r{n, g, epsilon, 0, 0.0, eig};
  r.count = std::count_if(eig.begin(), eig.end(), [&](cplx z) { return std::abs(z) >= epsilon; });
  r.rate = static_cast<double>(r.count) / static_cast<double>(n.product());
  return r;
}

std::vector<double> boundary_moduli(const std::vector<cplx>& eig, double epsilon, double window) {
  std::vector<double> out;
  for (const cplx& z : eig)
    if (std::abs(std::abs(z) - epsilon) <= window) out.push_back(std::abs(z));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

CoeffTable table_for(const Symbol& sym, const Levels& n, const Levels& g, std::int64_t samples = 0) {
  const auto [lo, hi] = required_box(n, g);
  return samples > 0 ? fourier_coefficients(sym, lo, hi, samples) : fourier_coefficients(sym, lo, hi);
}

GMatrix g_toeplitz(const Symbol& sym, const Levels& n, const Levels& g, std::int64_t samples = 0) {
  return build_g_toeplitz(table_for(sym, n, g, samples), n, g, sym.id());
}

int default_grid(const Symbol& sym) { return sym.arity() == 1 ? 4096 : 256; }

} // namespace

GMatrix product_matrix(const Symbol& f1, const Symbol& f2, const Levels& n, const Levels& g,
                       std::int64_t samples_per_dim) {
  if (f1.arity() != n.arity() || f2.arity() != n.arity()) throw UsageError("symbol arity does not match size vector");
  return multiply(g_toeplitz(f1, n, g, samples_per_dim), g_toeplitz(f2, n, g, samples_per_dim));
}

GMatrix g_toeplitz_matrix(const Symbol& f, const Levels& n, const Levels& g, std::int64_t samples_per_dim) {
  return g_toeplitz(f, n, g, samples_per_dim);
}

MomentReport moment_check(const GMatrix& a, const Symbol& h, int d_max, int grid_per_dim) {
  if (d_max < 1 || d_max > 8) throw UsageError("moment degree must be in 1..8");
  MomentReport r;
  r.n = a.n;
  r.g = a.g;
  r.d_max = d_max;
  const int theta = theta_weight(a.g);
  const double order = static_cast<double>(a.order());
  Matrix power = a.data;
  for (int d = 1; d <= d_max; ++d) {
    if (d > 1) power = (power * a.data).eval();
    const cplx emp = power.trace() / order;
    const cplx ref = theta == 0 ? cplx(0.0) : reference_integral(TestFunction::power(d), h, grid_per_dim).value;
    r.empirical.push_back(emp);
    r.reference.push_back(ref);
    r.gaps.push_back(std::abs(emp - ref));
  }
  return r;
}

MomentReport moment_check(const Symbol& f1, const Symbol& f2, const Levels& n, const Levels& g, int d_max) {
  if (d_max < 1 || d_max > 8) throw UsageError("moment degree must be in 1..8");
  const Symbol h = pointwise_product(f1, f2);
  return moment_check(product_matrix(f1, f2, n, g), h, d_max, default_grid(h));
}

RankBoundReport rank_bound_check(const Symbol& f1, const Symbol& f2, int m, std::int64_t n, std::int64_t g) {
  if (f1.arity() != 1 || f2.arity() != 1) throw UsageError("rank bound check is unilevel");
  if (m < 0) throw UsageError("Fejer order must be nonnegative");
  if (g < 1) throw UsageError("rank bound check needs g >= 1");
  if (n <= 2 * static_cast<std::int64_t>(m) + 1) throw UsageError("rank bound check needs n > 2m + 1");
  const Symbol p1 = fejer_mean(fourier_coefficients(f1, Levels{-m}, Levels{m}), m).as_symbol("P(" + f1.id() + ")");
  const Symbol p2 = fejer_mean(fourier_coefficients(f2, Levels{-m}, Levels{m}), m).as_symbol("P(" + f2.id() + ")");
  const Symbol p12 = pointwise_product(p1, p2);
  const Levels nv{n}, gv{g};
  const GMatrix t1 = g_toeplitz(p1, nv, gv), t2 = g_toeplitz(p2, nv, gv);
  const Matrix d = t1.data * t2.data - g_toeplitz(p12, nv, gv).data;

  // Relative to the scale of the product, so a defect that is pure roundoff counts as zero.
  const auto sd = singular_values(d);
  const double scale = std::max(sd.empty() ? 0.0 : sd.front(),
                                singular_values(t1).front() * singular_values(t2).front());
  RankBoundReport r;
  r.m = m;
  r.n = n;
  r.g = g;
  r.defect_rank = std::count_if(sd.begin(), sd.end(), [&](double s) { return s > 1e-8 * scale; });
  r.bound = 2 * (m / g);
  r.pass = r.defect_rank <= r.bound;
  r.asserted = g == 1;
  return r;
}

EquivalenceReport equivalence_check(const Symbol& f1, const Symbol& f2, const std::vector<std::int64_t>& n_list,
                                    std::int64_t g) {
  if (n_list.empty()) throw UsageError("equivalence check needs at least one size");
  const Symbol h = pointwise_product(f1, f2);
  EquivalenceReport r;
  r.g = g;
  for (std::int64_t n : n_list) {
    const Levels nv{n}, gv{g};
    const GMatrix a = product_matrix(f1, f2, nv, gv);
    const Matrix diff = a.data - g_toeplitz(h, nv, gv).data;
    r.points.push_back({n, schatten_norm(diff, 1.0) / static_cast<double>(n)});
  }
  r.non_increasing = true;
  for (std::size_t i = 1; i < r.points.size(); ++i)
    if (r.points[i].value > 1.05 * r.points[i - 1].value) r.non_increasing = false;
  return r;
}

PolyTraceReport poly_tracenorm_check(const Symbol& f1, const Symbol& f2, const std::vector<cplx>& poly,
                                     std::int64_t n, std::int64_t g) {
  if (poly.size() > 7) throw UsageError("polynomial degree must be at most 6");
  if (f1.arity() != 1 || f2.arity() != 1) throw UsageError("trace-norm check is unilevel");
  PolyTraceReport r;
  r.n = n;
  r.g = g;
  r.poly = poly;
  const Levels nv{n}, gv{g};
  const GMatrix a = product_matrix(f1, f2, nv, gv);
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t k = poly.size(); k-- > 0;) {
    p = (p * a.data).eval();
    p.diagonal().array() += poly[k];
  }
  r.lhs = schatten_norm(p, 1.0) / static_cast<double>(n);

  const TestFunction absp{"|P|", [fp = TestFunction::polynomial(poly, "P")](cplx z) { return cplx(std::abs(fp(z))); }};
  if (theta_weight(gv) == 1)
    r.reference = reference_integral(absp, pointwise_product(f1, f2), 4096).value.real();
  else
    r.reference = poly.empty() ? 0.0 : std::abs(poly[0]);

  r.c0 = grid_sup(f1, 4096) * grid_sup(f2, 4096);
  for (std::size_t k = 1; k < poly.size(); ++k)
    r.c_hat += std::abs(poly[k]) * static_cast<double>(k) * std::pow(2.0 * r.c0, static_cast<double>(k) - 1.0);
  const double mu = static_cast<double>((n + g - 1) / g);
  r.bound = r.reference + r.c_hat * r.c0 * mu / static_cast<double>(n) + kPolyTraceSlack;
  r.pass = r.lhs <= r.bound;
  return r;
}

double tail_tracenorm_ratio(const Symbol& f, std::int64_t n, std::int64_t g) {
  const Levels nv{n}, gv{g};
  const Decomposition d = decompose_eq11(table_for(f, nv, gv), n, g);
  return schatten_norm(d.right.data, 1.0) / static_cast<double>(n);
}

SzegoReport szego_check(const TestFunction& f, const Symbol& sym, std::int64_t n) {
  if (sym.arity() != 1) throw UsageError("Szego check is unilevel");
  SzegoReport r;
  r.n = n;
  const GMatrix t = g_toeplitz(sym, Levels{n}, Levels{1});
  r.mean = lambda_mean(f, eigenvalues(t).eigenvalues);
  r.reference = reference_integral(f, sym, 4096);
  r.gap = std::abs(r.mean - r.reference.value);
  return r;
}

namespace {

nlohmann::json levels_json(const Levels& l) {
  nlohmann::json a = nlohmann::json::array();
  for (int j = 0; j < l.arity(); ++j) a.push_back(l[j]);
  return a;
}

nlohmann::json cplx_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

} // namespace

nlohmann::json to_json(const ClusterReport& r, bool with_eigenvalues) {
  nlohmann::json j{{"kind", "cluster"}, {"n", levels_json(r.n)}, {"g", levels_json(r.g)},
                   {"epsilon", r.epsilon},  {"count", r.count},      {"rate", r.rate}};
  if (with_eigenvalues) {
    nlohmann::json e = nlohmann::json::array();
    for (const cplx& z : r.eigenvalues) e.push_back(cplx_json(z));
    j["eigenvalues"] = std::move(e);
  }
  return j;
}

nlohmann::json to_json(const MomentReport& r) {
  nlohmann::json j{{"kind", "moments"}, {"n", levels_json(r.n)}, {"g", levels_json(r.g)}, {"d_max", r.d_max}};
  nlohmann::json rows = nlohmann::json::array();
  for (int d = 0; d < r.d_max; ++d)
    rows.push_back({{"degree", d + 1},
                    {"empirical", cplx_json(r.empirical[d])},
                    {"reference", cplx_json(r.reference[d])},
                    {"gap", r.gaps[d]}});
  j["degrees"] = std::move(rows);
  return j;
}

nlohmann::json to_json(const RankBoundReport& r) {
  return {{"kind", "rank_bound"}, {"m", r.m},         {"n", r.n},       {"g", r.g},
          {"defect_rank", r.defect_rank}, {"bound", r.bound}, {"pass", r.pass}, {"asserted", r.asserted}};
}

nlohmann::json to_json(const EquivalenceReport& r) {
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : r.points) pts.push_back({{"n", p.n}, {"value", p.value}});
  return {{"kind", "equivalence"}, {"g", r.g}, {"points", std::move(pts)}, {"non_increasing", r.non_increasing}};
}

nlohmann::json to_json(const PolyTraceReport& r) {
  nlohmann::json p = nlohmann::json::array();
  for (const cplx& c : r.poly) p.push_back(cplx_json(c));
  return {{"kind", "poly_tracenorm"}, {"n", r.n},       {"g", r.g},         {"poly", std::move(p)},
          {"lhs", r.lhs},             {"reference", r.reference}, {"c0", r.c0}, {"c_hat", r.c_hat},
          {"bound", r.bound},         {"pass", r.pass}};
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::map<Levels, std::vector<const ClusterReport*>> by_g(const std::vector<ClusterReport>& reports) {
  std::map<Levels, std::vector<const ClusterReport*>> groups;
  for (const auto& r : reports) groups[r.g].push_back(&r);
  for (auto& [g, v] : groups)
    std::stable_sort(v.begin(), v.end(), [](const ClusterReport* a, const ClusterReport* b) { return a->n < b->n; });
  return groups;
}

} // namespace

void write_cluster_tables_md(const std::vector<ClusterReport>& reports, std::ostream& os) {
  for (const auto& [g, rows] : by_g(reports)) {
    os << "\n### g = " << g.to_string(',') << ", eps = " << fmt("%g", rows.front()->epsilon) << "\n\n|  |";
    for (const auto* r : rows) os << " n = " << r->n.to_string(',') << " |";
    os << "\n|---|";
    for (std::size_t i = 0; i < rows.size(); ++i) os << "---:|";
    os << "\n| N |";
    for (const auto* r : rows) os << ' ' << r->count << " |";
    os << "\n| r |";
    for (const auto* r : rows) os << ' ' << fmt("%.4f", r->rate) << " |";
    os << '\n';
  }
}

void write_cluster_tables_csv(const std::vector<ClusterReport>& reports, std::ostream& os) {
  os << "g,epsilon,n,count,rate\n";
  for (const auto& [g, rows] : by_g(reports))
    for (const auto* r : rows)
      os << g.to_string('x') << ',' << fmt("%.17g", r->epsilon) << ',' << r->n.to_string('x') << ',' << r->count
         << ',' << fmt("%.4f", r->rate) << '\n';
}

} // namespace gtz
