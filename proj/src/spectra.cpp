#include "gtz/spectra.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <ostream>
#include <sstream>

extern "C" {
void zgebal_(const char* job, const int* n, gtz::cplx* a, const int* lda, int* ilo, int* ihi, double* scale,
             int* info, std::size_t job_len);
void zgehrd_(const int* n, const int* ilo, const int* ihi, gtz::cplx* a, const int* lda, gtz::cplx* tau,
             gtz::cplx* work, const int* lwork, int* info);
void zunghr_(const int* n, const int* ilo, const int* ihi, gtz::cplx* a, const int* lda, const gtz::cplx* tau,
             gtz::cplx* work, const int* lwork, int* info);
void zhseqr_(const char* job, const char* compz, const int* n, const int* ilo, const int* ihi, gtz::cplx* h,
             const int* ldh, gtz::cplx* w, gtz::cplx* z, const int* ldz, gtz::cplx* work, const int* lwork,
             int* info, std::size_t job_len, std::size_t compz_len);
}

namespace gtz {

namespace {

void require_finite(const Matrix& m) {
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (!std::isfinite(m(r, c).real()) || !std::isfinite(m(r, c).imag())) {
        std::ostringstream os;
        os << "non-finite matrix entry at (" << r << ", " << c << ")";
        throw NumericError(os.str());
      }
}

int checked_int(Eigen::Index n) {
  if (n > 46340) throw UsageError("matrix order too large for the dense eigensolver");
  return static_cast<int>(n);
}

int query_lwork(const cplx& w) { return std::max(1, static_cast<int>(w.real())); }

} // namespace

SpectrumResult eigenvalues(const Matrix& m, const EigenOptions& opts) {
  if (m.rows() != m.cols()) throw UsageError("eigenvalues need a square matrix");
  require_finite(m);
  SpectrumResult out;
  const int n = checked_int(m.rows());
  if (n == 0) return out;
  const bool vectors = opts.schur_vectors == EigenOptions::Vectors::always ||
                       (opts.schur_vectors == EigenOptions::Vectors::automatic && n <= 512);

  Matrix a = m;
  int ilo = 1, ihi = n, info = 0;
  std::vector<double> scale(static_cast<std::size_t>(n));
  zgebal_("B", &n, a.data(), &n, &ilo, &ihi, scale.data(), &info, 1);
  if (info != 0) throw SolverError("balancing failed (info " + std::to_string(info) + ")");
  out.info.ilo = ilo;
  out.info.ihi = ihi;

  Matrix balanced;
  if (vectors) balanced = a;

  std::vector<cplx> tau(static_cast<std::size_t>(std::max(1, n - 1)));
  cplx wq;
  int lwork = -1;
  zgehrd_(&n, &ilo, &ihi, a.data(), &n, tau.data(), &wq, &lwork, &info);
  lwork = query_lwork(wq);
  std::vector<cplx> work(static_cast<std::size_t>(lwork));
  zgehrd_(&n, &ilo, &ihi, a.data(), &n, tau.data(), work.data(), &lwork, &info);
  if (info != 0) throw SolverError("Hessenberg reduction failed (info " + std::to_string(info) + ")");

  Matrix z;
  if (vectors) {
    z = a;
    lwork = -1;
    zunghr_(&n, &ilo, &ihi, z.data(), &n, tau.data(), &wq, &lwork, &info);
    lwork = query_lwork(wq);
    work.assign(static_cast<std::size_t>(lwork), cplx{});
    zunghr_(&n, &ilo, &ihi, z.data(), &n, tau.data(), work.data(), &lwork, &info);
    if (info != 0) throw SolverError("forming the Hessenberg basis failed (info " + std::to_string(info) + ")");
  }
  for (int c = 0; c < n; ++c)
    for (int r = c + 2; r < n; ++r) a(r, c) = 0.0;

  out.eigenvalues.assign(static_cast<std::size_t>(n), cplx{});
  const char job = vectors ? 'S' : 'E';
  const char compz = vectors ? 'V' : 'N';
  cplx zdummy;
  cplx* zp = vectors ? z.data() : &zdummy;
  const int ldz = vectors ? n : 1;
  lwork = -1;
  zhseqr_(&job, &compz, &n, &ilo, &ihi, a.data(), &n, out.eigenvalues.data(), zp, &ldz, &wq, &lwork, &info, 1, 1);
  lwork = std::max(query_lwork(wq), n);
  work.assign(static_cast<std::size_t>(lwork), cplx{});
  zhseqr_(&job, &compz, &n, &ilo, &ihi, a.data(), &n, out.eigenvalues.data(), zp, &ldz, work.data(), &lwork, &info,
          1, 1);
  if (info > 0) {
    std::ostringstream os;
    os << "QR iteration did not converge: eigenvalues " << ilo << ".." << info
       << " undeflated, " << info + 1 << ".." << ihi << " converged (balanced block " << ilo << ".." << ihi << ")";
    throw SolverError(os.str());
  }
  if (info < 0) throw SolverError("invalid argument " + std::to_string(-info) + " to the QR driver");

  if (vectors) {
    const Matrix t = a.triangularView<Eigen::Upper>();
    const double denom = balanced.norm();
    const double resid = (balanced * z - z * t).norm();
    out.info.backward_error = denom > 0 ? resid / denom : resid;
  }
  return out;
}

SpectrumResult eigenvalues(const GMatrix& m, const EigenOptions& opts) { return eigenvalues(m.data, opts); }

std::vector<double> singular_values(const Matrix& m) {
  require_finite(m);
  if (m.size() == 0) return {};
  Eigen::BDCSVD<Matrix> svd(m);
  const auto& s = svd.singularValues();
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

std::vector<double> singular_values(const GMatrix& m) { return singular_values(m.data); }

double schatten_norm(const std::vector<double>& sigma, double p) {
  if (!(p >= 1.0)) throw UsageError("Schatten p-norm needs p >= 1");
  if (sigma.empty()) return 0.0;
  if (std::isinf(p)) return *std::max_element(sigma.begin(), sigma.end());
  if (p == 1.0) {
    double s = 0.0;
    for (double v : sigma) s += v;
    return s;
  }
  const double top = *std::max_element(sigma.begin(), sigma.end());
  if (top == 0.0) return 0.0;
  double s = 0.0;
  for (double v : sigma) s += std::pow(v / top, p);
  return top * std::pow(s, 1.0 / p);
}

double schatten_norm(const Matrix& m, double p) {
  if (!(p >= 1.0)) throw UsageError("Schatten p-norm needs p >= 1");
  return schatten_norm(singular_values(m), p);
}

std::int64_t numerical_rank(const std::vector<double>& sigma, double tol) {
  if (!(tol >= 0.0)) throw UsageError("rank tolerance must be nonnegative");
  if (sigma.empty()) return 0;
  const double top = *std::max_element(sigma.begin(), sigma.end());
  if (top == 0.0) return 0;
  return std::count_if(sigma.begin(), sigma.end(), [&](double v) { return v > tol * top; });
}

std::int64_t numerical_rank(const Matrix& m, double tol) { return numerical_rank(singular_values(m), tol); }

void write_spectrum_csv(const std::vector<cplx>& eig, std::ostream& os) {
  os << "index,re,im,abs\n";
  os.precision(17);
  for (std::size_t i = 0; i < eig.size(); ++i)
    os << i << ',' << eig[i].real() << ',' << eig[i].imag() << ',' << std::abs(eig[i]) << '\n';
}

} // namespace gtz
