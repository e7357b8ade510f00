#pragma once

// Thin RAII layer over FFTW: one cached in-place plan pair per (thread, size).

#include <fftw3.h>

#include <complex>
#include <cstddef>
#include <span>

namespace soliton::detail {

class FftBuffer {
 public:
  explicit FftBuffer(std::size_t n);
  ~FftBuffer();
  FftBuffer(const FftBuffer&) = delete;
  FftBuffer& operator=(const FftBuffer&) = delete;

  [[nodiscard]] std::size_t size() const { return n_; }
  [[nodiscard]] std::span<std::complex<double>> data() { return {ptr(), n_}; }

  /// Unnormalized forward transform X_m = sum_n x_n e^{-2 pi j m n / N}.
  void forward();
  /// Unnormalized backward transform (forward then backward scales by N).
  void backward();

 private:
  std::complex<double>* ptr() { return reinterpret_cast<std::complex<double>*>(buf_); }

  std::size_t n_;
  fftw_complex* buf_ = nullptr;
  fftw_plan fwd_ = nullptr;
  fftw_plan bwd_ = nullptr;
};

/// Per-thread buffer of the requested size, reused between calls.
FftBuffer& thread_buffer(std::size_t n);

}  // namespace soliton::detail
