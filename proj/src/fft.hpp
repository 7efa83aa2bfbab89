#pragma once

#include "gtz/core.hpp"

#include <vector>

namespace gtz::detail {

// Forward DFT X[k] = sum_j x[j] exp(-2 pi i j k / M), unnormalized.
std::vector<cplx> dft(std::vector<cplx> x);

// Row-major 2-D forward DFT of an m1 x m2 array.
std::vector<cplx> dft2(std::vector<cplx> x, std::size_t m1, std::size_t m2);

} // namespace gtz::detail
