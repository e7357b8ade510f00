#include "fft.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <new>

namespace soliton::detail {

namespace {
// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftBuffer::FftBuffer(std::size_t n) : n_(n) {
  buf_ = fftw_alloc_complex(n);
  if (buf_ == nullptr) throw std::bad_alloc();
  std::lock_guard lock(planner_mutex());
  const int len = static_cast<int>(n);
  fwd_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft_1d(len, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
}

FftBuffer::~FftBuffer() {
  std::lock_guard lock(planner_mutex());
  if (fwd_ != nullptr) fftw_destroy_plan(fwd_);
  if (bwd_ != nullptr) fftw_destroy_plan(bwd_);
  fftw_free(buf_);
}

void FftBuffer::forward() { fftw_execute(fwd_); }
void FftBuffer::backward() { fftw_execute(bwd_); }

FftBuffer& thread_buffer(std::size_t n) {
  thread_local std::map<std::size_t, std::unique_ptr<FftBuffer>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftBuffer>(n);
  return *slot;
}

}  // namespace soliton::detail
