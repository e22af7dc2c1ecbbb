#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nonparax::detail {
namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  // Guarded cache; fftw plan creation is not thread safe, execution is.
  static std::map<std::pair<int, int>, fftw_plan>& cache =
      *new std::map<std::pair<int, int>, fftw_plan>();
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  std::vector<Complex> scratch(n);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  // In-place plan with FFTW_UNALIGNED so it may later run on any buffer of
  // the same size via fftw_execute_dft.
  fftw_plan plan = fftw_plan_dft_1d(n, buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plan) throw std::runtime_error("fftw plan creation failed");
  cache.emplace(std::pair<int, int>{n, sign}, plan);
  return plan;
}

}  // namespace

void dft(std::vector<Complex>& values, int sign) {
  if (values.empty()) return;
  fftw_plan plan = plan_for(static_cast<int>(values.size()),
                            sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* buf = reinterpret_cast<fftw_complex*>(values.data());
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace nonparax::detail
