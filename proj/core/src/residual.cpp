#include "rogonlab/residual.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rogonlab/errors.hpp"
#include "rogonlab/parallel.hpp"
#include "rogonlab/stencil.hpp"

namespace rogonlab {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Safety multiple on the cancellation bound eps * |u| * sum|w| / h^n.
constexpr double kRoundoffSafety = 8.0;

double weight_sum(std::span<const double> w) {
  return std::accumulate(w.begin(), w.end(), 0.0,
                         [](double acc, double v) { return acc + std::abs(v); });
}

double roundoff_floor(const CentralStencil& st, double scale, double h) {
  return kRoundoffSafety * kEps * scale *
         (weight_sum(st.first) / h + 0.5 * weight_sum(st.second) / (h * h));
}

double combined(const FieldPair& f) { return std::hypot(std::abs(f.sigma), std::abs(f.psi)); }

}  // namespace

double ResidualSample::magnitude() const { return std::hypot(std::abs(r_sigma), std::abs(r_psi)); }

double ResidualReport::max_abs() const noexcept { return std::max(max_abs_r_sigma, max_abs_r_psi); }

ResidualSample residual_at(const FieldFn& field, const RogonParams& p, PointST x, double h,
                           int fd_order) {
  if (!(h > 0.0) || !std::isfinite(h)) throw InvalidParameter("residual step h must be > 0");
  const CentralStencil st = central_stencil(fd_order);
  const int m = st.half_width();

  const FieldPair center = field(p, x);
  double scale = combined(center);

  FieldPair dt{}, dss{};
  for (int j = -m; j <= m; ++j) {
    const double w1 = st.first[static_cast<std::size_t>(j + m)];
    const double w2 = st.second[static_cast<std::size_t>(j + m)];
    if (j == 0) {
      dss.sigma += w2 * center.sigma;
      dss.psi += w2 * center.psi;
      continue;
    }
    const FieldPair ft = field(p, {x.S, x.t + j * h});
    const FieldPair fs = field(p, {x.S + j * h, x.t});
    scale = std::max({scale, combined(ft), combined(fs)});
    dt.sigma += w1 * ft.sigma;
    dt.psi += w1 * ft.psi;
    dss.sigma += w2 * fs.sigma;
    dss.psi += w2 * fs.psi;
  }
  const double inv_h = 1.0 / h;
  const double inv_h2 = inv_h * inv_h;
  const Complex i(0.0, 1.0);
  const double potential = p.beta * (std::norm(center.sigma) + std::norm(center.psi));

  ResidualSample r;
  r.point = x;
  r.r_sigma = i * dt.sigma * inv_h + 0.5 * dss.sigma * inv_h2 + potential * center.sigma;
  r.r_psi = i * dt.psi * inv_h + 0.5 * dss.psi * inv_h2 + potential * center.psi;
  r.field_scale = scale;
  r.roundoff_warning = h < kMinResidualStep;
  return r;
}

ResidualReport residual_scan(const FieldFn& field, const RogonParams& p, Range S_range,
                             Range t_range, std::size_t ns, std::size_t nt, double h,
                             int fd_order) {
  if (ns < 2 || nt < 2) throw InvalidParameter("residual scan needs at least 2 samples per axis");
  if (!std::isfinite(S_range.min) || !std::isfinite(S_range.max) || !std::isfinite(t_range.min) ||
      !std::isfinite(t_range.max)) {
    throw InvalidParameter("residual scan region must be finite");
  }
  central_stencil(fd_order);

  const std::vector<double> S = linspace(S_range, ns);
  const std::vector<double> t = linspace(t_range, nt);
  std::vector<ResidualSample> samples(ns * nt);
  parallel_for(samples.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      samples[i] = residual_at(field, p, {S[i % ns], t[i / ns]}, h, fd_order);
    }
  });

  ResidualReport rep;
  rep.S_range = S_range;
  rep.t_range = t_range;
  rep.ns = ns;
  rep.nt = nt;
  rep.fd_order = fd_order;
  rep.h = h;
  rep.roundoff_warning = h < kMinResidualStep;
  double worst = -1.0;
  for (const ResidualSample& s : samples) {
    rep.max_abs_r_sigma = std::max(rep.max_abs_r_sigma, std::abs(s.r_sigma));
    rep.max_abs_r_psi = std::max(rep.max_abs_r_psi, std::abs(s.r_psi));
    if (const double mag = s.magnitude(); mag > worst) {
      worst = mag;
      rep.worst_point = s.point;
    }
  }
  return rep;
}

double loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return (n * sxy - sx * sy) / denom;
}

ConvergenceStudy convergence_study(const FieldFn& field, const RogonParams& p, PointST x,
                                   int fd_order, std::span<const double> h_list) {
  if (h_list.size() < 4) throw InvalidParameter("convergence study needs at least 4 step sizes");
  for (std::size_t i = 1; i < h_list.size(); ++i) {
    if (!(h_list[i] < h_list[i - 1])) {
      throw InvalidParameter("convergence study step sizes must be strictly decreasing");
    }
  }
  const CentralStencil st = central_stencil(fd_order);

  ConvergenceStudy out;
  out.fd_order = fd_order;
  std::vector<double> fit_h, fit_r;
  for (double h : h_list) {
    const ResidualSample s = residual_at(field, p, x, h, fd_order);
    const double r = s.magnitude();
    const double floor = roundoff_floor(st, s.field_scale, h);
    const bool flagged = r <= floor;
    out.h.push_back(h);
    out.residual.push_back(r);
    out.roundoff_floor.push_back(floor);
    out.roundoff.push_back(flagged);
    if (!flagged) {
      fit_h.push_back(h);
      fit_r.push_back(r);
    }
  }
  out.exact = fit_h.empty();
  out.slope = loglog_slope(fit_h, fit_r);
  return out;
}

FieldFn rogon_field(RogonOrder order) {
  return [order](const RogonParams& p, PointST x) { return eval_rogon(p, order, x); };
}

FieldFn carrierless_field(RogonOrder order) {
  return [order](const RogonParams& p, PointST x) {
    const BackgroundAmplitudes amp = background_amplitudes(p);
    const Complex f = rogon_factor(p, order, x);
    return FieldPair{amp.sigma * f, amp.psi * f};
  };
}

FieldFn background_field() {
  return [](const RogonParams& p, PointST x) {
    const BackgroundAmplitudes amp = background_amplitudes(p);
    const Complex c = carrier_phase(p, x);
    return FieldPair{amp.sigma * c, amp.psi * c};
  };
}

}  // namespace rogonlab
