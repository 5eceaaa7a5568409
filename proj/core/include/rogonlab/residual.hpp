#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "rogonlab/rogon.hpp"
#include "rogonlab/types.hpp"

namespace rogonlab {

/// A candidate solution of the coupled system, evaluated pointwise.
using FieldFn = std::function<FieldPair(const RogonParams&, PointST)>;

/// Below this step the stencils are dominated by cancellation.
inline constexpr double kMinResidualStep = 1e-4;

/// Residuals of
///   i sigma_t + sigma_SS / 2 + beta (|sigma|^2 + |psi|^2) sigma
///   i psi_t   + psi_SS / 2   + beta (|sigma|^2 + |psi|^2) psi
/// at one point.
struct ResidualSample {
  PointST point;
  Complex r_sigma;
  Complex r_psi;
  double field_scale = 0.0;       // max combined modulus over the stencil points
  bool roundoff_warning = false;  // h below kMinResidualStep

  double magnitude() const;
};

/// Derivatives are central differences of the requested order on `field`
/// itself; the nonlinear term uses the exact value at x.
ResidualSample residual_at(const FieldFn& field, const RogonParams& p, PointST x, double h,
                           int fd_order);

struct ResidualReport {
  Range S_range;
  Range t_range;
  std::size_t ns = 0;
  std::size_t nt = 0;
  int fd_order = 0;
  double h = 0.0;
  double max_abs_r_sigma = 0.0;
  double max_abs_r_psi = 0.0;
  PointST worst_point;  // location of the largest combined residual
  bool roundoff_warning = false;

  std::size_t points() const noexcept { return ns * nt; }
  double max_abs() const noexcept;
};

/// Maximum residuals over an ns x nt uniform sample of the region (ns, nt >= 2).
ResidualReport residual_scan(const FieldFn& field, const RogonParams& p, Range S_range,
                             Range t_range, std::size_t ns, std::size_t nt, double h,
                             int fd_order);

struct ConvergenceStudy {
  int fd_order = 0;
  std::vector<double> h;
  std::vector<double> residual;        // combined magnitude at each h
  std::vector<double> roundoff_floor;  // estimated cancellation error at each h
  std::vector<bool> roundoff;          // residual at or below the floor
  double slope = 0.0;                  // least-squares d log r / d log h, NaN if undefined
  bool exact = false;                  // every residual is within roundoff of zero
};

/// Measures the observed order of the residual as h shrinks. Entries flagged as
/// roundoff-dominated are excluded from the slope fit.
ConvergenceStudy convergence_study(const FieldFn& field, const RogonParams& p, PointST x,
                                   int fd_order, std::span<const double> h_list);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const double> x, std::span<const double> y);

/// Closed-form field of the given order, as a FieldFn.
FieldFn rogon_field(RogonOrder order);

/// Rational factor times background with the carrier stripped. Not a solution;
/// used as a negative control.
FieldFn carrierless_field(RogonOrder order);

/// The plane-wave background A exp(i[kS + (alpha^2 - k^2) t / 2]).
FieldFn background_field();

}  // namespace rogonlab
