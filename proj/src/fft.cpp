#include "fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace gtz::detail {

namespace {

// FFTW planning is not thread-safe; execution of a private plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct Plan {
  fftw_plan p = nullptr;
  ~Plan() {
    if (p) {
      std::lock_guard lock(planner_mutex());
      fftw_destroy_plan(p);
    }
  }
};

} // namespace

std::vector<cplx> dft(std::vector<cplx> x) {
  if (x.empty()) return x;
  std::vector<cplx> out(x.size());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.p = fftw_plan_dft_1d(static_cast<int>(x.size()), reinterpret_cast<fftw_complex*>(x.data()),
                              reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan.p) throw NumericError("FFTW failed to create a 1-D plan");
  fftw_execute(plan.p);
  return out;
}

std::vector<cplx> dft2(std::vector<cplx> x, std::size_t m1, std::size_t m2) {
  if (x.size() != m1 * m2) throw UsageError("dft2: size mismatch");
  std::vector<cplx> out(x.size());
  Plan plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.p = fftw_plan_dft_2d(static_cast<int>(m1), static_cast<int>(m2),
                              reinterpret_cast<fftw_complex*>(x.data()),
                              reinterpret_cast<fftw_complex*>(out.data()), FFTW_FORWARD, FFTW_ESTIMATE);
  }
  if (!plan.p) throw NumericError("FFTW failed to create a 2-D plan");
  fftw_execute(plan.p);
  return out;
}

} // namespace gtz::detail
