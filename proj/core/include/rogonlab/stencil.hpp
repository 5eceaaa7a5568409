#pragma once

#include <span>

namespace rogonlab {

/// Central finite-difference weights on the offsets -m..m (m = order / 2)
/// for first and second derivatives at unit spacing.
struct CentralStencil {
  int order = 0;
  std::span<const double> first;
  std::span<const double> second;

  int half_width() const noexcept { return order / 2; }
};

/// Supported orders are 2, 4, 6 and 8; anything else throws InvalidParameter.
CentralStencil central_stencil(int order);

bool is_supported_fd_order(int order) noexcept;

}  // namespace rogonlab
