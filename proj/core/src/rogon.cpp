#include "rogonlab/rogon.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "rogonlab/errors.hpp"
#include "rogonlab/parallel.hpp"

namespace rogonlab {

namespace {

// Guards eval_grid against sizes that cannot be allocated sensibly.
constexpr std::size_t kMaxGridPoints = std::size_t{1} << 28;

struct Comoving {
  double x2;  // alpha^2 (S - kt)^2
  double t2;  // alpha^4 t^2
};

Comoving comoving(const RogonParams& p, PointST x) {
  const double xi = x.S - p.k * x.t;
  const double a2 = p.alpha * p.alpha;
  return {a2 * xi * xi, a2 * a2 * x.t * x.t};
}

double p2(Comoving c) {
  const double x = c.x2, t = c.t2;
  return x * (-0.5 * x - 1.5 * t - 1.5) + (t * (-0.625 * t - 2.25) + 0.375);
}

double q2(Comoving c) {
  const double x = c.x2, t = c.t2;
  return x * (x + t - 3.0) + (t * (0.25 * t + 0.5) - 3.75);
}

double h2(Comoving c) {
  const double x = c.x2, t = c.t2;
  const double c2 = t / 8.0 + 1.0 / 8.0;
  const double c1 = t * (t / 16.0 - 3.0 / 8.0) + 9.0 / 16.0;
  const double c0 = t * (t * (t / 96.0 + 9.0 / 32.0) + 33.0 / 32.0) + 3.0 / 32.0;
  return x * (x * (x / 12.0 + c2) + c1) + c0;
}

// Shared scale alpha / sqrt(2 beta (a^2 + b^2)); both components are this
// times their weight, so a * psi and b * sigma round identically.
double amplitude_scale(const RogonParams& p) {
  return p.alpha / std::sqrt(2.0 * p.beta * (p.a * p.a + p.b * p.b));
}

FieldPair assemble(const RogonParams& p, Complex factor, PointST x) {
  const Complex w = amplitude_scale(p) * (factor * carrier_phase(p, x));
  return {p.a * w, p.b * w};
}

}  // namespace

void RogonParams::validate() const {
  auto fail = [](const std::string& what) { throw InvalidParameter(what); };
  if (!std::isfinite(alpha) || !std::isfinite(beta) || !std::isfinite(a) || !std::isfinite(b) ||
      !std::isfinite(k)) {
    fail("rogon parameters must be finite");
  }
  if (!(alpha > 0.0)) fail("alpha must be > 0");
  if (!(beta > 0.0)) fail("beta must be > 0");
  if (a == 0.0 && b == 0.0) fail("a and b must not both be zero");
}

RogonOrder order_from_int(int order) {
  if (order == 1) return RogonOrder::One;
  if (order == 2) return RogonOrder::Two;
  throw InvalidParameter("rogon order must be 1 or 2, got " + std::to_string(order));
}

BackgroundAmplitudes background_amplitudes(const RogonParams& p) {
  p.validate();
  const double s = amplitude_scale(p);
  return {p.a * s, p.b * s};
}

Complex carrier_phase(const RogonParams& p, PointST x) {
  p.validate();
  const double theta = p.k * x.S + 0.5 * (p.alpha * p.alpha - p.k * p.k) * x.t;
  return std::polar(1.0, theta);
}

Complex rogon1_factor(const RogonParams& p, PointST x) {
  p.validate();
  const Comoving c = comoving(p, x);
  const double denom = 1.0 + 2.0 * c.x2 + c.t2;
  const Complex num(4.0, 4.0 * p.alpha * p.alpha * x.t);
  return 1.0 - num / denom;
}

double poly_P2(const RogonParams& p, PointST x) {
  p.validate();
  return p2(comoving(p, x));
}

double poly_Q2(const RogonParams& p, PointST x) {
  p.validate();
  return q2(comoving(p, x));
}

double poly_H2(const RogonParams& p, PointST x) {
  p.validate();
  return h2(comoving(p, x));
}

Complex rogon2_factor(const RogonParams& p, PointST x) {
  p.validate();
  const Comoving c = comoving(p, x);
  const double h = h2(c);
  if (!(h > 0.0)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "two-rogon denominator H2 = " << h << " is not positive at S = " << x.S
        << ", t = " << x.t << " (alpha = " << p.alpha << ", k = " << p.k << ")";
    throw SingularityError(msg.str());
  }
  const Complex num(p2(c), -0.5 * p.alpha * p.alpha * x.t * q2(c));
  return 1.0 + num / h;
}

Complex rogon_factor(const RogonParams& p, RogonOrder order, PointST x) {
  return order == RogonOrder::One ? rogon1_factor(p, x) : rogon2_factor(p, x);
}

FieldPair eval_rogon1(const RogonParams& p, PointST x) {
  return assemble(p, rogon1_factor(p, x), x);
}

FieldPair eval_rogon2(const RogonParams& p, PointST x) {
  return assemble(p, rogon2_factor(p, x), x);
}

FieldPair eval_rogon(const RogonParams& p, RogonOrder order, PointST x) {
  return order == RogonOrder::One ? eval_rogon1(p, x) : eval_rogon2(p, x);
}

std::vector<double> linspace(Range r, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = r.min;
    return out;
  }
  const double span = r.max - r.min;
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = r.min + span * (static_cast<double>(i) / static_cast<double>(n - 1));
  }
  if (n > 1) out[n - 1] = r.max;
  return out;
}

FieldGrid eval_grid(const RogonParams& p, RogonOrder order, Range S_range, Range t_range,
                    std::size_t ns, std::size_t nt) {
  p.validate();
  if (ns == 0 || nt == 0) throw InvalidParameter("grid point counts must be >= 1");
  if (!std::isfinite(S_range.min) || !std::isfinite(S_range.max) || !std::isfinite(t_range.min) ||
      !std::isfinite(t_range.max)) {
    throw InvalidParameter("grid ranges must be finite");
  }
  if (ns > kMaxGridPoints / nt) {
    throw InvalidParameter("grid of " + std::to_string(ns) + " x " + std::to_string(nt) +
                           " points exceeds the supported size");
  }

  FieldGrid g;
  g.S = linspace(S_range, ns);
  g.t = linspace(t_range, nt);
  const std::size_t total = ns * nt;
  g.fields.resize(total);
  g.intensity_sigma.resize(total);
  g.intensity_psi.resize(total);

  parallel_for(total, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const PointST x{g.S[i % ns], g.t[i / ns]};
      const FieldPair f = eval_rogon(p, order, x);
      g.fields[i] = f;
      g.intensity_sigma[i] = std::norm(f.sigma);
      g.intensity_psi[i] = std::norm(f.psi);
    }
  });
  return g;
}

PeakInfo peak_info(const RogonParams& p, RogonOrder order) {
  p.validate();
  return {PointST{0.0, 0.0}, order == RogonOrder::One ? 3.0 : 5.0};
}

}  // namespace rogonlab
