#pragma once

#include <cstddef>
#include <vector>

#include "rogonlab/types.hpp"

namespace rogonlab {

/// Background amplitudes of the two components. Their squares sum to
/// alpha^2 / (2 beta), the combined far-field intensity.
struct BackgroundAmplitudes {
  double sigma = 0.0;
  double psi = 0.0;
};

BackgroundAmplitudes background_amplitudes(const RogonParams& p);

/// Plane-wave carrier exp(i[kS + (alpha^2 - k^2) t / 2]).
Complex carrier_phase(const RogonParams& p, PointST x);

/// 1 - 4(1 + i alpha^2 t) / (1 + 2 alpha^2 (S-kt)^2 + alpha^4 t^2)
Complex rogon1_factor(const RogonParams& p, PointST x);

// Second-order polynomials. All three depend on (S, t) only through
// alpha^2 (S-kt)^2 and alpha^4 t^2.
double poly_P2(const RogonParams& p, PointST x);
double poly_Q2(const RogonParams& p, PointST x);
double poly_H2(const RogonParams& p, PointST x);

/// 1 + (P2 - i alpha^2 t Q2 / 2) / H2. Throws SingularityError if H2 <= 0.
Complex rogon2_factor(const RogonParams& p, PointST x);

/// Rational factor of the requested order.
Complex rogon_factor(const RogonParams& p, RogonOrder order, PointST x);

FieldPair eval_rogon1(const RogonParams& p, PointST x);
FieldPair eval_rogon2(const RogonParams& p, PointST x);
FieldPair eval_rogon(const RogonParams& p, RogonOrder order, PointST x);

/// Closed-form samples on a uniform (S, t) grid.
///
/// Storage is row-major with t as the slow index: entry (it, iS) lives at
/// it * S.size() + iS. A single-point axis uses the lower bound.
struct FieldGrid {
  std::vector<double> S;
  std::vector<double> t;
  std::vector<FieldPair> fields;
  std::vector<double> intensity_sigma;
  std::vector<double> intensity_psi;

  std::size_t ns() const noexcept { return S.size(); }
  std::size_t nt() const noexcept { return t.size(); }
  std::size_t index(std::size_t it, std::size_t is) const noexcept { return it * S.size() + is; }
};

struct Range {
  double min = 0.0;
  double max = 0.0;
};

/// `n` evenly spaced samples from r.min to r.max inclusive.
std::vector<double> linspace(Range r, std::size_t n);

FieldGrid eval_grid(const RogonParams& p, RogonOrder order, Range S_range, Range t_range,
                    std::size_t ns, std::size_t nt);

struct PeakInfo {
  PointST location;
  double amplitude_ratio = 0.0;  // |factor| at the peak over the background
};

/// The peak sits at S - kt = 0, t = 0 for both orders.
PeakInfo peak_info(const RogonParams& p, RogonOrder order);

}  // namespace rogonlab
