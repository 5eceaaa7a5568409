#include "rogonlab/stencil.hpp"

#include <array>
#include <string>

#include "rogonlab/errors.hpp"

namespace rogonlab {

namespace {

constexpr std::array<double, 3> kFirst2 = {-1.0 / 2.0, 0.0, 1.0 / 2.0};
constexpr std::array<double, 5> kFirst4 = {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0};
constexpr std::array<double, 7> kFirst6 = {-1.0 / 60.0, 3.0 / 20.0, -3.0 / 4.0, 0.0,
                                           3.0 / 4.0,   -3.0 / 20.0, 1.0 / 60.0};
constexpr std::array<double, 9> kFirst8 = {1.0 / 280.0, -4.0 / 105.0, 1.0 / 5.0,
                                           -4.0 / 5.0,  0.0,          4.0 / 5.0,
                                           -1.0 / 5.0,  4.0 / 105.0,  -1.0 / 280.0};

constexpr std::array<double, 3> kSecond2 = {1.0, -2.0, 1.0};
constexpr std::array<double, 5> kSecond4 = {-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0,
                                            -1.0 / 12.0};
constexpr std::array<double, 7> kSecond6 = {1.0 / 90.0,  -3.0 / 20.0, 3.0 / 2.0, -49.0 / 18.0,
                                            3.0 / 2.0,   -3.0 / 20.0, 1.0 / 90.0};
constexpr std::array<double, 9> kSecond8 = {-1.0 / 560.0, 8.0 / 315.0, -1.0 / 5.0,
                                            8.0 / 5.0,    -205.0 / 72.0, 8.0 / 5.0,
                                            -1.0 / 5.0,   8.0 / 315.0, -1.0 / 560.0};

}  // namespace

bool is_supported_fd_order(int order) noexcept {
  return order == 2 || order == 4 || order == 6 || order == 8;
}

CentralStencil central_stencil(int order) {
  switch (order) {
    case 2: return {2, kFirst2, kSecond2};
    case 4: return {4, kFirst4, kSecond4};
    case 6: return {6, kFirst6, kSecond6};
    case 8: return {8, kFirst8, kSecond8};
    default:
      throw InvalidParameter("finite-difference order must be 2, 4, 6 or 8, got " +
                             std::to_string(order));
  }
}

}  // namespace rogonlab
