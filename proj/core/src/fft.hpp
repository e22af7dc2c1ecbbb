#pragma once

#include <vector>

#include "nonparax/model.hpp"

namespace nonparax::detail {

// In-place unnormalized DFT, sign = -1 forward (e^{-2 pi i jm/n} weights),
// sign = +1 backward. Plans are cached per (n, sign) behind a mutex; execution
// itself is thread safe. FFTW_ESTIMATE keeps planning deterministic.
void dft(std::vector<Complex>& values, int sign);

}  // namespace nonparax::detail
