#include "doctest.h"

#include "gtz/spectra.hpp"
#include "oracle.hpp"

#include <algorithm>
#include <random>
#include <sstream>

using namespace gtz;

namespace {

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> d;
  Matrix m(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) m(r, c) = cplx(d(rng), d(rng));
  return m;
}

std::vector<cplx> sorted(std::vector<cplx> v) {
  std::sort(v.begin(), v.end(), [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); });
  return v;
}

} // namespace

TEST_CASE("eigenvalue examples") {
  const auto id = eigenvalues(Matrix::Identity(3, 3));
  REQUIRE(id.eigenvalues.size() == 3);
  for (const cplx& z : id.eigenvalues) CHECK(z == cplx(1.0));

  std::mt19937_64 rng(7);
  for (Eigen::Index n : {1, 5, 40, 400}) {
    Matrix m = random_matrix(rng, n).triangularView<Eigen::StrictlyLower>();
    const auto r = eigenvalues(m);
    for (const cplx& z : r.eigenvalues) CHECK(z == cplx(0.0));
  }

  Matrix companion(2, 2);
  companion << 3.0, -2.0, 1.0, 0.0;
  const auto c = sorted(eigenvalues(companion).eigenvalues);
  CHECK(std::abs(c[0] - cplx(1.0)) < 1e-14);
  CHECK(std::abs(c[1] - cplx(2.0)) < 1e-14);

  CHECK(eigenvalues(Matrix(0, 0)).eigenvalues.empty());
}

TEST_CASE("eigenvalue errors") {
  Matrix m = Matrix::Identity(3, 3);
  m(1, 2) = cplx(std::numeric_limits<double>::quiet_NaN(), 0.0);
  CHECK_THROWS_AS(eigenvalues(m), NumericError);
  CHECK_THROWS_AS(singular_values(m), NumericError);
  CHECK_THROWS_AS(eigenvalues(Matrix(2, 3)), UsageError);
}

TEST_CASE("backward error and trace consistency") {
  std::mt19937_64 rng(11);
  for (Eigen::Index n : {3, 17, 64, 200}) {
    const Matrix m = random_matrix(rng, n);
    const auto r = eigenvalues(m);
    REQUIRE(r.info.backward_error.has_value());
    CHECK(*r.info.backward_error <= 1e-10);
    CHECK(r.eigenvalues.size() == static_cast<std::size_t>(n));
    cplx sum = 0.0;
    for (const cplx& z : r.eigenvalues) sum += z;
    const auto sv = singular_values(m);
    const double trace_norm = schatten_norm(sv, 1.0);
    CHECK(std::abs(sum - m.trace()) <= 1e-8 * (1.0 + trace_norm));
    CHECK(std::abs(m.trace()) <= trace_norm + 1e-8);
    double abs_sum = 0.0;
    for (const cplx& z : r.eigenvalues) abs_sum += std::abs(z);
    CHECK(abs_sum <= trace_norm + 1e-6 * n);
  }
  EigenOptions never;
  never.schur_vectors = EigenOptions::Vectors::never;
  CHECK_FALSE(eigenvalues(random_matrix(rng, 10), never).info.backward_error.has_value());
}

TEST_CASE("eigenvalues agree with a high-precision characteristic polynomial") {
  std::mt19937_64 rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix m = random_matrix(rng, 12);
    std::vector<std::vector<cplx>> rows(12, std::vector<cplx>(12));
    for (int i = 0; i < 12; ++i)
      for (int j = 0; j < 12; ++j) rows[i][j] = m(i, j);
    worst = std::max(worst, oracle::bottleneck(eigenvalues(m).eigenvalues, oracle::eigenvalues(rows)));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("singular value examples") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = cplx(0.0, -4.0);
  const auto sv = singular_values(d);
  CHECK(std::abs(sv[0] - 4.0) < 1e-14);
  CHECK(std::abs(sv[1] - 3.0) < 1e-14);
  for (double v : singular_values(Matrix::Zero(4, 4))) CHECK(v == 0.0);

  std::mt19937_64 rng(3);
  const auto r = singular_values(random_matrix(rng, 30));
  CHECK(std::is_sorted(r.rbegin(), r.rend()));
}

TEST_CASE("Schatten norms and rank") {
  const Matrix i4 = Matrix::Identity(4, 4);
  CHECK(std::abs(schatten_norm(i4, 1.0) - 4.0) < 1e-14);
  CHECK(std::abs(schatten_norm(i4, kInfinity) - 1.0) < 1e-14);
  CHECK(std::abs(schatten_norm(i4, 2.0) - 2.0) < 1e-14);
  CHECK_THROWS_AS(schatten_norm(i4, 0.5), UsageError);

  CHECK(numerical_rank(Matrix::Zero(5, 5), 1e-10) == 0);
  CHECK(numerical_rank(Matrix::Identity(5, 5), 1e-10) == 5);
  std::mt19937_64 rng(5);
  const Matrix u = random_matrix(rng, 6).col(0).normalized();
  const Matrix v = random_matrix(rng, 6).col(1).normalized();
  CHECK(numerical_rank(Matrix(u * v.adjoint()), 1e-10) == 1);
}

TEST_CASE("Holder inequality for the trace norm") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = random_matrix(rng, 50), b = random_matrix(rng, 50);
    CHECK(schatten_norm(Matrix(a * b), 1.0) <= schatten_norm(a, 1.0) * schatten_norm(b, kInfinity) + 1e-6);
  }
}

TEST_CASE("spectrum CSV") {
  std::ostringstream os;
  write_spectrum_csv({cplx(1.0, -2.0)}, os);
  CHECK(os.str() == "index,re,im,abs\n0,1,-2,2.2360679774997898\n");
}
