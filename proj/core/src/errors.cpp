#include "rogonlab/errors.hpp"

#include <sstream>

namespace rogonlab {

namespace {

std::string carrier_message(double k, double L, double nearest_k) {
  std::ostringstream msg;
  msg.precision(10);
  msg << "carrier wavenumber k = " << k << " is not periodic on L = " << L
      << " (need k L in 2 pi Z); nearest admissible k = " << nearest_k;
  return msg.str();
}

std::string abort_message(std::size_t step, double t) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "non-finite field value after step " << step << " at t = " << t;
  return msg.str();
}

}  // namespace

NonPeriodicCarrier::NonPeriodicCarrier(double k, double L, double nearest_k)
    : InvalidParameter(carrier_message(k, L, nearest_k)), k_(k), nearest_k_(nearest_k) {}

NumericalAbort::NumericalAbort(std::size_t step, double t)
    : std::runtime_error(abort_message(step, t)), step_(step), t_(t) {}

}  // namespace rogonlab
