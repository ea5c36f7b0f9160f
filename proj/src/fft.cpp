#include "cpw/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>

namespace cpw {

namespace {
// FFTW planning is not thread-safe.
std::mutex plan_mutex;
}  // namespace

void fft_inplace(cvec& data, const std::vector<int>& shape, int sign) {
  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);
  if (total != data.size()) throw std::invalid_argument("fft shape does not match data size");
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(plan_mutex);
    plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), ptr, ptr,
                         sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  std::lock_guard<std::mutex> lock(plan_mutex);
  fftw_destroy_plan(plan);
}

void checkerboard(cvec& data, const std::vector<int>& shape) {
  const std::size_t r = shape.size();
  std::vector<int> idx(r, 0);
  for (std::size_t flat = 0; flat < data.size(); ++flat) {
    int parity = 0;
    for (int v : idx) parity += v;
    if (parity & 1) data[flat] = -data[flat];
    for (std::size_t a = r; a-- > 0;) {
      if (++idx[a] < shape[a]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace cpw
