#pragma once

#include <complex>

namespace rogonlab {

using Complex = std::complex<double>;

/// Five-parameter family shared by both rogon orders.
///
/// alpha: scaling (> 0). beta: constant market potential, equal to the
/// interest rate (> 0). a, b: amplitude weights of the volatility and
/// option-pricing components (not both zero). k: gauge, i.e. the carrier
/// wavenumber in S; the rogon peak travels along S = k t.
struct RogonParams {
  double alpha = 1.0;
  double beta = 1.0;
  double a = 1.0;
  double b = 1.0;
  double k = 0.0;

  /// Throws InvalidParameter when an invariant is violated.
  void validate() const;
};

/// A point in the (stock price, time) plane.
struct PointST {
  double S = 0.0;
  double t = 0.0;
};

/// Values of the volatility field sigma and option-pricing field psi at a point.
struct FieldPair {
  Complex sigma;
  Complex psi;
};

enum class RogonOrder { One = 1, Two = 2 };

/// Returns RogonOrder for 1 or 2; throws InvalidParameter otherwise.
RogonOrder order_from_int(int order);

}  // namespace rogonlab
