#pragma once

#include <cstddef>
#include <span>

#include "rogonlab/types.hpp"

namespace rogonlab {

/// In-place 1-D complex transform pair of fixed length.
///
/// forward() computes X_j = sum_n x_n exp(-2 pi i j n / N) without scaling;
/// inverse() includes the 1/N factor, so inverse(forward(x)) == x up to
/// roundoff. Spectral index j is stored at position j for j < N/2 and at
/// j + N for negative j. Plans are created once and may be executed
/// concurrently on distinct buffers.
class FftPlan {
 public:
  explicit FftPlan(std::size_t n);
  ~FftPlan();

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<Complex> data) const;
  void inverse(std::span<Complex> data) const;

 private:
  void release() noexcept;

  std::size_t n_ = 0;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

}  // namespace rogonlab
