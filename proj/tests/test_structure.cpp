#include "doctest.h"

#include "gtz/spectra.hpp"
#include "gtz/structure.hpp"

#include <cmath>
#include <cstring>
#include <sstream>

using namespace gtz;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

GMatrix build(const std::string& id, std::int64_t n, std::int64_t g) {
  return build_g_toeplitz(make_symbol(id), Levels{n}, Levels{g});
}

} // namespace

TEST_CASE("delta coefficient placement") {
  const GMatrix t = build("mode:1", 4, 2);
  CHECK(t.origin == "gtoeplitz(mode:1)");
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) {
      const bool one = (r == 1 && s == 0) || (r == 3 && s == 1);
      CHECK(t.data(r, s) == cplx(one ? 1.0 : 0.0));
    }
  const GMatrix c = build("const", 3, 1);
  CHECK(c.data == Matrix::Identity(3, 3));
  CHECK(c.origin == "toeplitz(const)");
}

TEST_CASE("classical Toeplitz examples") {
  const CoeffTable tc = fourier_coefficients(make_symbol("twocos"), Levels{-3}, Levels{3});
  const GMatrix t = build_toeplitz(tc, Levels{4}, "twocos");
  for (int r = 0; r < 4; ++r)
    for (int s = 0; s < 4; ++s) CHECK(t.data(r, s) == cplx(std::abs(r - s) == 1 ? 1.0 : 0.0));

  const CoeffTable f1 = fourier_coefficients(make_symbol("test1_f1"), Levels{0}, Levels{0});
  const GMatrix one = build_toeplitz(f1, Levels{1});
  CHECK(one.order() == 1);
  CHECK(one.data(0, 0) == f1.at(0));

  // Hermitian part of T_n(f1) is T_n(Re f1); its eigenvalue mean is the mean of Re f1 = 1.
  const GMatrix big = build("test1_f1", 100, 1);
  const Matrix herm = 0.5 * (big.data + big.data.adjoint());
  const auto ev = eigenvalues(herm);
  cplx mean = 0.0;
  for (const cplx& z : ev.eigenvalues) mean += z;
  mean /= 100.0;
  CHECK(std::abs(mean.real() - 1.0) < 0.05);
}

TEST_CASE("g-Toeplitz spectral norm is bounded by the symbol") {
  const GMatrix t = build("test1_f1", 50, 2);
  const double sup = grid_sup(make_symbol("test1_f1"), 4096);
  CHECK(singular_values(t).front() <= sup + 1e-6);
}

TEST_CASE("coverage shortfall names the missing box") {
  const CoeffTable small = fourier_coefficients(make_symbol("test1_f1"), Levels{-3}, Levels{3});
  try {
    (void)build_g_toeplitz(small, Levels{4}, Levels{2});
    FAIL("expected a usage error");
  } catch (const UsageError& e) {
    CHECK(std::string(e.what()).find("-6..-4") != std::string::npos);
  }
  CHECK_THROWS_AS(build_g_toeplitz(small, Levels{4, 4}, Levels{1, 1}), UsageError);
}

TEST_CASE("stride zero repeats the first column") {
  const CoeffTable t = fourier_coefficients(make_symbol("test1_f1"), Levels{0}, Levels{5});
  const GMatrix m = build_g_toeplitz(t, Levels{6}, Levels{0});
  for (int s = 0; s < 6; ++s) CHECK(m.data.col(s) == m.data.col(0));
  CHECK(numerical_rank(m.data, 1e-10) == 1);
}

TEST_CASE("selection matrices") {
  const Selection s41 = build_selection(4, 1);
  CHECK(s41.mu == 4);
  CHECK(s41.z.data == Matrix::Identity(4, 4));
  CHECK(s41.zhat_padded.data == Matrix::Identity(4, 4));

  const Selection s52 = build_selection(5, 2);
  CHECK(s52.mu == 3);
  CHECK(s52.zhat_padded.data(0, 0) == cplx(1.0));
  CHECK(s52.zhat_padded.data(2, 1) == cplx(1.0));
  CHECK(s52.zhat_padded.data(4, 2) == cplx(1.0));
  CHECK(s52.zhat_padded.data.cwiseAbs().sum() == 3.0);
  // Columns 3 and 4 of Z wrap modulo n.
  CHECK(s52.z.data(1, 3) == cplx(1.0));
  CHECK(s52.z.data(3, 4) == cplx(1.0));
  CHECK(std::abs(singular_values(s52.zhat_padded).front() - 1.0) < 1e-12);
  const auto sv = singular_values(s52.zhat_padded);
  for (int i = 0; i < 5; ++i) CHECK(std::abs(sv[i] - (i < 3 ? 1.0 : 0.0)) < 1e-12);

  CHECK(std::abs(schatten_norm(build_selection(6, 2).zhat_padded.data, 1.0) - 3.0) < 1e-12);
  CHECK_THROWS_AS(build_selection(5, 0), UsageError);

  for (std::int64_t n : {7, 8, 50, 100})
    for (std::int64_t g : {1, 2, 3, 5, 20}) {
      const Selection s = build_selection(n, g);
      const Matrix gram = s.zhat_padded.data.adjoint() * s.zhat_padded.data;
      Matrix expect = Matrix::Zero(n, n);
      expect.topLeftCorner(s.mu, s.mu).setIdentity();
      CHECK(gram == expect);
      CHECK(s.mu == (n + g - 1) / g);
    }

  const Selection two = build_selection(Levels{4, 5}, Levels{2, 2});
  CHECK(two.mu == 2 * 3);
  CHECK(two.zhat_padded.data == kron(build_selection(4, 2).zhat_padded.data, build_selection(5, 2).zhat_padded.data));
}

TEST_CASE("column-splitting decomposition reconstructs exactly") {
  const CoeffTable e = fourier_coefficients(make_symbol("mode:1"), Levels{-6}, Levels{3});
  const Decomposition d = decompose_eq11(e, 4, 2);
  CHECK((d.left.data + d.right.data) == build_g_toeplitz(e, Levels{4}, Levels{2}).data);

  const CoeffTable t = fourier_coefficients(make_symbol("test1_f2"), Levels{-7}, Levels{7});
  const Decomposition d1 = decompose_eq11(t, 8, 1);
  CHECK(d1.right.data == Matrix::Zero(8, 8));
  CHECK(d1.left.data == build_toeplitz(t, Levels{8}).data);

  const CoeffTable r = fourier_coefficients(make_symbol("test2_f1"), Levels{-245}, Levels{49});
  const Decomposition d5 = decompose_eq11(r, 50, 5);
  const Matrix gap = build_g_toeplitz(r, Levels{50}, Levels{5}).data - (d5.left.data + d5.right.data);
  CHECK(gap.cwiseAbs().maxCoeff() == 0.0);
  CHECK(d5.right.data.leftCols(10) == Matrix::Zero(50, 10));
}

TEST_CASE("multilevel entries factor as Kronecker products") {
  struct Pair {
    const char* a;
    const char* b;
  };
  for (const Pair p : {Pair{"twocos", "mode:1"}, Pair{"test1_f1", "test2_f2"}, Pair{"test2_f1", "const"}}) {
    const auto fa = std::make_shared<const Symbol>(make_symbol(p.a));
    const auto fb = std::make_shared<const Symbol>(make_symbol(p.b));
    const Symbol f = Symbol("sep", 2, [fa, fb](std::span<const double> t) { return (*fa)(t[0]) * (*fb)(t[1]); })
                         .with_separable({{1.0, fa, fb}});
    for (const auto& [n1, n2, g1, g2] : {std::array<std::int64_t, 4>{5, 4, 2, 3}, {6, 6, 1, 1}, {3, 7, 5, 2}}) {
      // Same sample count everywhere so both sides carry identical quadrature error.
      auto table = [](const Symbol& s, const Levels& n, const Levels& g) {
        const auto [lo, hi] = required_box(n, g);
        return fourier_coefficients(s, lo, hi, 1024);
      };
      const Levels n{n1, n2}, g{g1, g2};
      const GMatrix t = build_g_toeplitz(table(f, n, g), n, g);
      const Matrix ta = build_g_toeplitz(table(*fa, Levels{n1}, Levels{g1}), Levels{n1}, Levels{g1}).data;
      const Matrix tb = build_g_toeplitz(table(*fb, Levels{n2}, Levels{g2}), Levels{n2}, Levels{g2}).data;
      CHECK((t.data - kron(ta, tb)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("binary and CSV export") {
  const GMatrix t = build_g_toeplitz(make_symbol("test4_f1"), Levels{3, 2}, Levels{2, 1});
  std::stringstream ss;
  write_binary(t, ss);
  const std::string bytes = ss.str();
  CHECK(bytes.size() == 32 + 36 * 16);
  CHECK(bytes.substr(0, 4) == "GTPZ");
  CHECK(static_cast<unsigned char>(bytes[4]) == 2);
  // Row-major payload: the second value is entry (0, 1).
  double re = 0.0;
  std::memcpy(&re, bytes.data() + 48, 8);
  CHECK(re == t.data(0, 1).real());
  const GMatrix back = read_binary(ss);
  CHECK(back.n == t.n);
  CHECK(back.g == t.g);
  CHECK(back.data == t.data);

  std::stringstream bad("XXXX");
  CHECK_THROWS_AS(read_binary(bad), IoError);

  std::ostringstream csv;
  write_csv(build("mode:1", 4, 2), csv);
  CHECK(csv.str().substr(0, csv.str().find('\n')) == "0+0i,0+0i,0+0i,0+0i");
  std::ostringstream big;
  CHECK_THROWS_AS(write_csv(build("const", 65, 1), big), UsageError);
}
