#include "gtz/labcli.hpp"

#include <cstdio>
#include <random>

namespace gtz {

namespace {

const char* const kUnilevel[] = {"test1_f1", "test1_f2", "test2_f1", "test2_f2", "test3_f1",
                                 "test3_f2", "test3_f2_conj", "const", "mode:1", "twocos"};
const char* const kBilevel[] = {"test4_f1", "test4_f2", "const2"};

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

void add(std::vector<SuiteCheck>& out, std::string name, bool pass, std::string detail) {
  out.push_back({std::move(name), pass, std::move(detail)});
}

Matrix random_matrix(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) m(i, j) = cplx(d(rng), d(rng));
  return m;
}

void lemmas(std::vector<SuiteCheck>& out) {
  // Exact reconstruction of T_{n,g} from its two pieces.
  for (const char* id : kUnilevel) {
    const Symbol f = make_symbol(id);
    double worst = 0.0;
    for (std::int64_t n : {8, 50})
      for (std::int64_t g : {1, 2, 5}) {
        const auto [lo, hi] = required_box(Levels{n}, Levels{g});
        const CoeffTable t = fourier_coefficients(f, lo, hi);
        const Decomposition d = decompose_eq11(t, n, g);
        const Matrix gap = build_g_toeplitz(t, Levels{n}, Levels{g}).data - d.left.data - d.right.data;
        worst = std::max(worst, gap.cwiseAbs().maxCoeff());
      }
    add(out, std::string("decomposition ") + id, worst == 0.0, fmt("max entry gap %.3g", worst));
  }

  // Selection identities.
  bool sel_ok = true;
  std::string sel_detail = "n in {8,50}, g in {1,2,5}";
  for (std::int64_t n : {8, 50})
    for (std::int64_t g : {1, 2, 5}) {
      const Selection s = build_selection(n, g);
      const Matrix& z = s.zhat_padded.data;
      const double spec = schatten_norm(z, kInfinity);
      const double l1 = schatten_norm(z, 1.0);
      Matrix expect = Matrix::Zero(n, n);
      expect.topLeftCorner(s.mu, s.mu).setIdentity();
      // An exact 0/1 diagonal Gram matrix pins the singular values, so the trace norm is its trace.
      const Matrix gram = z.adjoint() * z;
      const bool ok = std::abs(spec - 1.0) <= 1e-12 && gram == expect && gram.trace().real() == static_cast<double>(s.mu) &&
                      std::abs(l1 - static_cast<double>(s.mu)) <= 1e-12;
      if (!ok) {
        sel_ok = false;
        sel_detail = fmt("failed at n=%g g=%g", static_cast<double>(n), static_cast<double>(g));
      }
    }
  add(out, "selection identities", sel_ok, sel_detail);

  // Spectral norm bounded by the sampled sup of the symbol.
  for (const char* id : kUnilevel) {
    const Symbol f = make_symbol(id);
    const double sup = grid_sup(f, 4096);
    double worst = -1e300;
    for (std::int64_t n : {8, 50, 100})
      for (std::int64_t g : {1, 2, 5})
        worst = std::max(worst, schatten_norm(build_g_toeplitz(f, Levels{n}, Levels{g}).data, kInfinity) - sup);
    add(out, std::string("norm bound ") + id, worst <= 1e-6, fmt("max ||T|| - sup|f| = %.3g", worst));
  }
  for (const char* id : kBilevel) {
    const Symbol f = make_symbol(id);
    const double sup = grid_sup(f, 256);
    double worst = -1e300;
    for (std::int64_t g : {1, 2, 5})
      worst = std::max(worst,
                       schatten_norm(build_g_toeplitz(f, Levels{12, 12}, Levels{g, g}).data, kInfinity) - sup);
    add(out, std::string("norm bound ") + id, worst <= 1e-6, fmt("max ||T|| - sup|f| = %.3g", worst));
  }

  // Holder inequality for the trace norm.
  std::mt19937_64 rng(20240611);
  double worst = -1e300;
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix x = random_matrix(rng, 30), y = random_matrix(rng, 30);
    const double lhs = schatten_norm(Matrix(x * y), 1.0);
    const double rhs = schatten_norm(x, 1.0) * schatten_norm(y, kInfinity);
    worst = std::max(worst, (lhs - rhs) / rhs);
  }
  add(out, "holder trace norm", worst <= 1e-12, fmt("max relative excess %.3g", worst));

  // Tail columns: (1/n) ||[0 | tail]||_1 should not grow with n.
  for (const char* id : {"test1_f1", "test2_f1"})
    for (std::int64_t g : {2, 5}) {
      double prev = 1e300;
      bool ok = true;
      std::string vals;
      for (std::int64_t n : {50, 100, 200}) {
        const double v = tail_tracenorm_ratio(make_symbol(id), n, g);
        ok = ok && v <= prev * 1.05;
        prev = v;
        vals += fmt(" %.4g", v);
      }
      add(out, std::string("tail trend ") + id + " g=" + std::to_string(g), ok, "values" + vals);
    }
}

void props(std::vector<SuiteCheck>& out) {
  for (int test : {1, 2}) {
    const std::string p = "test" + std::to_string(test);
    const Symbol f1 = make_symbol(p + "_f1"), f2 = make_symbol(p + "_f2");
    for (int m : {1, 2, 4}) {
      const RankBoundReport r = rank_bound_check(f1, f2, m, 64, 1);
      add(out, "rank bound " + p + " m=" + std::to_string(m), r.pass,
          fmt("defect rank %g, bound %g", static_cast<double>(r.defect_rank), static_cast<double>(r.bound)));
    }
  }

  const Symbol f1 = make_symbol("test1_f1"), f2 = make_symbol("test1_f2");
  const EquivalenceReport e = equivalence_check(f1, f2, {50, 100, 200}, 2);
  std::string vals;
  for (const auto& pt : e.points) vals += fmt(" %.4g", pt.value);
  const bool halves = e.points.back().value <= 0.5 * e.points.front().value;
  add(out, "equivalence trend test1 g=2", e.non_increasing && halves, "values" + vals);

  for (int d : {1, 2}) {
    std::vector<cplx> poly(static_cast<std::size_t>(d) + 1, 0.0);
    poly.back() = 1.0;
    const PolyTraceReport r = poly_tracenorm_check(f1, f2, poly, 100, 2);
    add(out, "poly trace norm test1 z^" + std::to_string(d), r.pass,
        fmt("lhs %.4g, bound %.4g", r.lhs, r.bound));
  }
}

void szego(std::vector<SuiteCheck>& out) {
  for (const char* id : {"re2", "abs"}) {
    const SzegoReport r = szego_check(make_test_function(id), make_symbol("twocos"), 256);
    add(out, std::string("szego twocos F=") + id, r.gap <= 0.05, fmt("gap %.3g", r.gap));
  }

  const Symbol f1 = make_symbol("test1_f1"), f2 = make_symbol("test1_f2");
  const MomentReport g1 = moment_check(f1, f2, Levels{100}, Levels{1}, 3);
  for (int d = 0; d < 3; ++d)
    add(out, "moment test1 g=1 d=" + std::to_string(d + 1), g1.gaps[static_cast<std::size_t>(d)] <= 0.05,
        fmt("gap %.4g at n=100", g1.gaps[static_cast<std::size_t>(d)]));

  for (std::int64_t g : {2, 5}) {
    double prev = 1e300;
    bool ok = true;
    std::string vals;
    for (std::int64_t n : {50, 100, 200}) {
      const MomentReport r = moment_check(f1, f2, Levels{n}, Levels{g}, 1);
      const double v = std::abs(r.empirical[0]);
      ok = ok && v <= prev * 1.05;
      prev = v;
      vals += fmt(" %.4g", v);
    }
    add(out, "trace mean decay test1 g=" + std::to_string(g), ok, "|tr(A)|/n" + vals);
  }
}

} // namespace

std::vector<SuiteCheck> run_suite(const std::string& suite) {
  std::vector<SuiteCheck> out;
  if (suite == "lemmas" || suite == "all") lemmas(out);
  if (suite == "props" || suite == "all") props(out);
  if (suite == "szego" || suite == "all") szego(out);
  if (suite != "lemmas" && suite != "props" && suite != "szego" && suite != "all")
    throw UsageError("unknown suite '" + suite + "' (expected lemmas, props, szego or all)");
  return out;
}

} // namespace gtz
