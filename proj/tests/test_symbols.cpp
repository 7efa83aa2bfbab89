#include "doctest.h"

#include "gtz/symbols.hpp"

#include <cmath>
#include <sstream>
#include <vector>

using namespace gtz;

namespace {

constexpr cplx I{0.0, 1.0};

double grid_l1_gap(const TrigPoly& p, const Symbol& f, int points) {
  double acc = 0.0;
  for (int i = 0; i < points; ++i) {
    const double t = -kPi + 2.0 * kPi * i / points;
    acc += std::abs(p(std::span<const double>(&t, 1)) - f(t));
  }
  return acc / points;
}

double grid_max(const std::function<cplx(double)>& f, int points) {
  double best = 0.0;
  for (int i = 0; i < points; ++i) best = std::max(best, std::abs(f(-kPi + 2.0 * kPi * i / points)));
  return best;
}

} // namespace

TEST_CASE("evaluation of catalog symbols") {
  CHECK(make_symbol("const")(0.3) == cplx(1.0, 0.0));
  CHECK(std::abs(make_symbol("mode:1")(0.0) - cplx(1.0)) < 1e-15);
  const cplx v = make_symbol("test1_f1")(kPi);
  CHECK(std::abs(v - (1.0 + kPi + I * kPi * kPi)) < 1e-12);
  CHECK(std::abs(make_symbol("test4_f1")(0.5, -1.0) - (3.5 + I)) < 1e-15);
}

TEST_CASE("arity mismatch is a usage error") {
  const Symbol f = make_symbol("test1_f1");
  const double t2[2] = {0.1, 0.2};
  CHECK_THROWS_AS(f(std::span<const double>(t2, 2)), UsageError);
  CHECK_THROWS_AS(make_symbol("test4_f1")(0.3), UsageError);
  CHECK_THROWS_AS(pointwise_product(f, make_symbol("test4_f2")), UsageError);
  CHECK_THROWS_AS(make_symbol("no_such_symbol"), UsageError);
}

TEST_CASE("single mode and constant coefficients") {
  const CoeffTable t = fourier_coefficients(make_symbol("mode:1"), Levels{-3}, Levels{3});
  for (std::int64_t k = -3; k <= 3; ++k) CHECK(std::abs(t.at(k) - cplx(k == 1 ? 1.0 : 0.0)) < 1e-12);
  const CoeffTable c = fourier_coefficients(make_symbol("const"), Levels{-2}, Levels{2});
  for (std::int64_t k = -2; k <= 2; ++k) CHECK(std::abs(c.at(k) - cplx(k == 0 ? 1.0 : 0.0)) < 1e-12);
  CHECK_THROWS_AS(c.at(3), UsageError);
}

TEST_CASE("closed-form coefficient of the first Test 1 symbol") {
  const Symbol f = make_symbol("test1_f1");
  const CoeffTable exact = fourier_coefficients(f, Levels{-4}, Levels{4});
  CHECK(exact.source() == CoeffSource::exact);
  CHECK(std::abs(exact.at(1) - cplx(0.0, -3.0)) < 1e-12);
  CHECK(std::abs(exact.at(0) - (1.0 + I * kPi * kPi / 3.0)) < 1e-12);

  // Endpoint-averaged trapezoid converges like O(1/M^2) for the non-periodic polynomial.
  const CoeffTable quad = quadrature_coefficients(f, Levels{-4}, Levels{4}, 4096);
  CHECK(quad.source() == CoeffSource::quadrature);
  CHECK(std::abs(quad.at(1) - cplx(0.0, -3.0)) < 1e-5);
}

TEST_CASE("quadrature reproduces exact trigonometric coefficients") {
  for (const char* id : {"twocos", "test3_f1", "test3_f2", "test3_f2_conj", "const", "mode:-4"}) {
    const Symbol s = make_symbol(id);
    const CoeffTable exact = fourier_coefficients(s, Levels{-6}, Levels{6});
    const CoeffTable quad = quadrature_coefficients(s, Levels{-6}, Levels{6}, 128);
    for (std::int64_t k = -6; k <= 6; ++k) CHECK(std::abs(exact.at(k) - quad.at(k)) < 1e-10);
  }
}

TEST_CASE("conjugate symmetry for real-valued symbols") {
  for (const char* id : {"twocos", "const"}) {
    const CoeffTable t = quadrature_coefficients(make_symbol(id), Levels{-8}, Levels{8}, 256);
    for (std::int64_t k = 0; k <= 8; ++k) CHECK(std::abs(t.at(-k) - std::conj(t.at(k))) < 1e-10);
  }
  const Symbol real_poly = algebraic_symbol("1+x^2", AlgebraicPoly{{1.0, 0.0, 1.0}});
  CHECK(real_poly.real_valued());
  const CoeffTable t = fourier_coefficients(real_poly, Levels{-8}, Levels{8});
  for (std::int64_t k = 0; k <= 8; ++k) CHECK(std::abs(t.at(-k) - std::conj(t.at(k))) < 1e-10);
}

TEST_CASE("oversampling rule and non-finite samples") {
  const Symbol f = make_symbol("test2_f1");
  CHECK_THROWS_AS(fourier_coefficients(f, Levels{-10}, Levels{10}, 100), UsageError);
  CHECK_NOTHROW(fourier_coefficients(f, Levels{-10}, Levels{10}, 168));
  CHECK(default_samples(Levels{-10}, Levels{10}) == 256);
  CHECK_THROWS_AS(fourier_coefficients(f, Levels{1}, Levels{3}), UsageError);

  const Symbol bad("bad", 1, [](std::span<const double> t) { return cplx(1.0 / t[0]); });
  try {
    (void)fourier_coefficients(bad, Levels{-2}, Levels{2}, 64);
    FAIL("expected a numeric error");
  } catch (const NumericError& e) {
    CHECK(std::string(e.what()).find("grid point") != std::string::npos);
  }
}

TEST_CASE("decay warning flags truncated spectra") {
  CHECK(quadrature_coefficients(make_symbol("test1_f1"), Levels{-8}, Levels{8}, 256).decay_warning());
  CHECK(fourier_coefficients(make_symbol("test2_f2"), Levels{-64}, Levels{64}).decay_warning());
  const Symbol smooth("smooth", 1, [](std::span<const double> t) { return cplx(1.0 / (2.0 + std::cos(t[0]))); });
  CHECK_FALSE(fourier_coefficients(smooth, Levels{-64}, Levels{64}).decay_warning());
}

TEST_CASE("bivariate separable quadrature agrees with direct 2D quadrature") {
  for (const char* id : {"test4_f1", "test4_f2"}) {
    const Symbol s = make_symbol(id);
    CHECK(s.arity() == 2);
    const CoeffTable fast = quadrature_coefficients(s, Levels{-6, -6}, Levels{6, 6}, 128);
    const Symbol plain(s.id(), 2, [s](std::span<const double> t) { return s(t); });
    const CoeffTable direct = fourier_coefficients(plain, Levels{-6, -6}, Levels{6, 6}, 128);
    for (std::int64_t a = -6; a <= 6; ++a)
      for (std::int64_t b = -6; b <= 6; ++b) CHECK(std::abs(fast.at(a, b) - direct.at(a, b)) < 1e-10);
  }
}

TEST_CASE("Fejer mean weights") {
  const CoeffTable e = fourier_coefficients(make_symbol("mode:1"), Levels{-1}, Levels{1});
  const TrigPoly p1 = fejer_mean(e, 1);
  CHECK(std::abs(p1.coeffs.at(1) - cplx(0.5)) < 1e-15);

  const CoeffTable t = fourier_coefficients(make_symbol("test1_f1"), Levels{-2}, Levels{2});
  const TrigPoly p0 = fejer_mean(t, 0);
  CHECK(p0.degree == 0);
  CHECK(std::abs(p0.coeffs.at(0) - t.at(0)) < 1e-15);
  const TrigPoly p2 = fejer_mean(t, 2);
  for (std::int64_t k = -2; k <= 2; ++k)
    CHECK(std::abs(p2.coeffs.at(k) - (1.0 - std::abs(k) / 3.0) * t.at(k)) < 1e-15);
  CHECK_THROWS_AS(fejer_mean(t, 3), UsageError);

  const CoeffTable b = fourier_coefficients(make_symbol("test4_f1"), Levels{-2, -2}, Levels{2, 2});
  const TrigPoly pb = fejer_mean(b, 2);
  CHECK(std::abs(pb.coeffs.at(1, -1) - (2.0 / 3.0) * (2.0 / 3.0) * b.at(1, -1)) < 1e-15);
}

TEST_CASE("Fejer means contract the sup norm") {
  for (const char* id : {"test1_f1", "test1_f2", "test2_f1", "test2_f2", "test3_f1", "test3_f2", "twocos"}) {
    const Symbol f = make_symbol(id);
    const double fmax = grid_max([&](double t) { return f(t); }, 2048);
    const CoeffTable t = fourier_coefficients(f, Levels{-32}, Levels{32});
    for (int m = 1; m <= 32; ++m) {
      const TrigPoly p = fejer_mean(t, m);
      const double pmax = grid_max([&](double x) { return p(std::span<const double>(&x, 1)); }, 2048);
      CHECK_MESSAGE(pmax <= fmax + 1e-8, id << " m=" << m);
    }
  }
}

TEST_CASE("Fejer means converge in mean") {
  for (const char* id : {"test1_f1", "test1_f2", "test2_f1", "test2_f2"}) {
    const Symbol f = make_symbol(id);
    const CoeffTable t = fourier_coefficients(f, Levels{-64}, Levels{64}, 1 << 14);
    std::vector<double> gaps;
    for (int m : {4, 8, 16, 32, 64}) gaps.push_back(grid_l1_gap(fejer_mean(t, m), f, 2048));
    for (std::size_t i = 1; i < gaps.size(); ++i) CHECK_MESSAGE(gaps[i] <= 1.05 * gaps[i - 1], id);
    // The Test 1 polynomials jump at the seam of the periodic extension, so their
    // Cesaro means converge only like log(m)/m.
    if (std::string(id).rfind("test2", 0) == 0) CHECK_MESSAGE(gaps.back() < 0.05, id);
  }
}

TEST_CASE("pointwise products") {
  const Symbol h = pointwise_product(make_symbol("mode:1"), make_symbol("test3_f2"));
  REQUIRE(h.has_exact_coeffs());
  CHECK(std::abs(h.exact_coeff(Levels{3}) - cplx(3.0)) < 1e-15);
  CHECK(std::abs(h.exact_coeff(Levels{1})) == 0.0);

  const Symbol f2 = make_symbol("test2_f2");
  const Symbol id = pointwise_product(make_symbol("const"), f2);
  for (double t : {-3.0, -0.5, 0.0, 1.7}) CHECK(std::abs(id(t) - f2(t)) < 1e-15);

  const Symbol p = pointwise_product(make_symbol("test1_f1"), make_symbol("test1_f2"));
  CHECK(std::abs(p(0.0) - cplx(1.0)) < 1e-15);
  REQUIRE(p.has_exact_coeffs());
  const CoeffTable ex = fourier_coefficients(p, Levels{-3}, Levels{3});
  const CoeffTable qu = quadrature_coefficients(p, Levels{-3}, Levels{3}, 1 << 16);
  for (std::int64_t k = -3; k <= 3; ++k) CHECK(std::abs(ex.at(k) - qu.at(k)) < 1e-4 * (1.0 + std::abs(ex.at(k))));
}

TEST_CASE("coefficient CSV export") {
  std::ostringstream os;
  fourier_coefficients(make_symbol("mode:1"), Levels{-1}, Levels{1}).write_csv(os);
  CHECK(os.str().rfind("k,re,im\n", 0) == 0);
  std::ostringstream os2;
  fourier_coefficients(make_symbol("test4_f1"), Levels{-1, -1}, Levels{1, 1}, 64).write_csv(os2);
  CHECK(os2.str().rfind("k1,k2,re,im\n", 0) == 0);
}
