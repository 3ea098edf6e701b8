#include "fracspec/fft.hpp"

#include <fftw3.h>

#include <cstdint>
#include <mutex>
#include <unordered_map>

namespace fracspec {

namespace {

std::mutex plan_mutex;

fftw_plan plan_for(std::size_t n, int sign) {
  static std::unordered_map<std::uint64_t, fftw_plan> cache;
  const std::uint64_t key =
      (static_cast<std::uint64_t>(n) << 1) | (sign == FFTW_FORWARD ? 0u : 1u);
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  // FFTW_UNALIGNED keeps the plan valid for any caller-provided buffer.
  fftw_complex* scratch = fftw_alloc_complex(n);
  fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), scratch, scratch, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(scratch);
  cache.emplace(key, p);
  return p;
}

void execute(std::span<std::complex<double>> data, int sign) {
  if (data.empty()) return;
  fftw_plan p = plan_for(data.size(), sign);
  auto* raw = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, raw, raw);
}

}  // namespace

void fft_forward(std::span<std::complex<double>> data) {
  execute(data, FFTW_FORWARD);
}

void fft_backward(std::span<std::complex<double>> data) {
  execute(data, FFTW_BACKWARD);
}

}  // namespace fracspec
