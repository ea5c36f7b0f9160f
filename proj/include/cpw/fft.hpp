#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace cpw {

using cvec = std::vector<std::complex<double>>;

/// In-place unnormalised DFT over a row-major grid of the given shape.
/// sign = -1 computes sum x_j e^{-2 pi i jk/n}, sign = +1 the conjugate kernel.
/// Plans use FFTW_ESTIMATE so results do not depend on timing.
void fft_inplace(cvec& data, const std::vector<int>& shape, int sign);

/// Multiplies entry (i_1, .., i_r) by (-1)^(i_1 + .. + i_r). For even n this
/// moves the zero frequency of a centred grid (index n/2) to index 0 and back.
void checkerboard(cvec& data, const std::vector<int>& shape);

}  // namespace cpw
