#include "rogonlab/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <stdexcept>
#include <utility>

#include "rogonlab/errors.hpp"

namespace rogonlab {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::span<Complex> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
  if (n == 0) throw InvalidParameter("FFT length must be positive");
  std::lock_guard lock(planner_mutex());
  auto* scratch = fftw_alloc_complex(n);
  if (scratch == nullptr) throw std::bad_alloc();
  const int len = static_cast<int>(n);
  // ESTIMATE keeps plans independent of timing, so results are reproducible.
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_1d(len, scratch, scratch, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(len, scratch, scratch, FFTW_BACKWARD, flags);
  fftw_free(scratch);
  if (forward_ == nullptr || backward_ == nullptr) {
    release();
    throw std::runtime_error("FFTW failed to create a plan");
  }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      forward_(std::exchange(other.forward_, nullptr)),
      backward_(std::exchange(other.backward_, nullptr)) {}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    forward_ = std::exchange(other.forward_, nullptr);
    backward_ = std::exchange(other.backward_, nullptr);
  }
  return *this;
}

void FftPlan::release() noexcept {
  if (forward_ == nullptr && backward_ == nullptr) return;
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  forward_ = backward_ = nullptr;
}

void FftPlan::forward(std::span<Complex> data) const {
  if (data.size() != n_) throw InvalidParameter("FFT buffer length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(forward_), as_fftw(data), as_fftw(data));
}

void FftPlan::inverse(std::span<Complex> data) const {
  if (data.size() != n_) throw InvalidParameter("FFT buffer length mismatch");
  fftw_execute_dft(static_cast<fftw_plan>(backward_), as_fftw(data), as_fftw(data));
  const double scale = 1.0 / static_cast<double>(n_);
  for (Complex& v : data) v *= scale;
}

}  // namespace rogonlab
