#include "rogonlab/solver.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "rogonlab/errors.hpp"
#include "rogonlab/rogon.hpp"

namespace rogonlab {

namespace {

constexpr double kMaxDt = 0.1;
constexpr double kMaxSteps = 1e8;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

long long spectral_index(std::size_t j, std::size_t n) {
  const auto jj = static_cast<long long>(j);
  return j < n / 2 ? jj : jj - static_cast<long long>(n);
}

// Neumaier compensated summation, so conserved-quantity checks resolve ulp-level drift.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    comp_ += std::abs(sum_) >= std::abs(v) ? (sum_ - t) + v : (v - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

bool finite(std::span<const Complex> u) {
  for (const Complex& v : u) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

}  // namespace

Grid make_grid(double L, std::size_t N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw InvalidParameter("domain length L must be > 0");
  if (N < 16 || !is_power_of_two(N)) {
    throw InvalidParameter("grid size N must be a power of two >= 16, got " + std::to_string(N));
  }
  Grid g;
  g.L = L;
  g.N = N;
  g.dS = L / static_cast<double>(N);
  g.S.resize(N);
  g.kappa.resize(N);
  const double k0 = 2.0 * std::numbers::pi / L;
  for (std::size_t j = 0; j < N; ++j) {
    g.S[j] = -0.5 * L + static_cast<double>(j) * g.dS;
    g.kappa[j] = k0 * static_cast<double>(spectral_index(j, N));
  }
  return g;
}

void SolverConfig::validate() const {
  if (!(dt > 0.0) || dt > kMaxDt) throw InvalidParameter("dt must lie in (0, 0.1]");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw InvalidParameter("beta must be > 0");
  if (record_every < 1) throw InvalidParameter("record_every must be >= 1");
}

bool is_admissible_k(double k, double L) {
  const double m = k * L / (2.0 * std::numbers::pi);
  return std::abs(m - std::round(m)) <= 1e-9 * std::max(1.0, std::abs(m));
}

double nearest_admissible_k(double k, double L) {
  return 2.0 * std::numbers::pi * std::round(k * L / (2.0 * std::numbers::pi)) / L;
}

RogonParams admissible_params(RogonParams p, double L, CarrierPolicy policy) {
  if (is_admissible_k(p.k, L)) return p;
  const double nearest = nearest_admissible_k(p.k, L);
  if (policy == CarrierPolicy::Reject) throw NonPeriodicCarrier(p.k, L, nearest);
  p.k = nearest;
  return p;
}

SimState init_from_analytic(const RogonParams& p, RogonOrder order, const Grid& g, double t0) {
  p.validate();
  if (!is_admissible_k(p.k, g.L)) throw NonPeriodicCarrier(p.k, g.L, nearest_admissible_k(p.k, g.L));
  SimState s;
  s.t = t0;
  s.sigma.resize(g.N);
  s.psi.resize(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    const FieldPair f = eval_rogon(p, order, {g.S[j], t0});
    s.sigma[j] = f.sigma;
    s.psi[j] = f.psi;
  }
  return s;
}

SplitStepSolver::SplitStepSolver(Grid grid, SolverConfig cfg)
    : grid_(std::move(grid)), cfg_(cfg), fft_(grid_.N) {
  cfg_.validate();
  if (grid_.kappa.size() != grid_.N) throw InvalidParameter("grid is not initialised");
  mask_.assign(grid_.N, 1.0);
  if (cfg_.dealias) {
    const auto n = static_cast<long long>(grid_.N);
    for (std::size_t j = 0; j < grid_.N; ++j) {
      if (3 * std::llabs(spectral_index(j, grid_.N)) > n) mask_[j] = 0.0;
    }
  }
  half_multiplier_ = half_step_multiplier(cfg_.dt);
}

std::vector<Complex> SplitStepSolver::half_step_multiplier(double dt) const {
  std::vector<Complex> m(grid_.N);
  for (std::size_t j = 0; j < grid_.N; ++j) {
    const double kap = grid_.kappa[j];
    m[j] = mask_[j] * std::polar(1.0, -0.25 * kap * kap * dt);
  }
  return m;
}

void SplitStepSolver::linear_half(std::span<Complex> u, std::span<const Complex> multiplier) {
  fft_.forward(u);
  for (std::size_t j = 0; j < u.size(); ++j) u[j] *= multiplier[j];
  fft_.inverse(u);
}

void SplitStepSolver::check_state(const SimState& state) const {
  if (state.sigma.size() != grid_.N || state.psi.size() != grid_.N) {
    throw InvalidParameter("state length does not match grid size " + std::to_string(grid_.N));
  }
}

void SplitStepSolver::step(SimState& state) { step(state, cfg_.dt); }

void SplitStepSolver::step(SimState& state, double dt) {
  check_state(state);
  const std::vector<Complex> other =
      dt == cfg_.dt ? std::vector<Complex>{} : half_step_multiplier(dt);
  const std::span<const Complex> mult = dt == cfg_.dt ? half_multiplier_ : other;

  linear_half(state.sigma, mult);
  linear_half(state.psi, mult);
  for (std::size_t j = 0; j < grid_.N; ++j) {
    const double intensity = std::norm(state.sigma[j]) + std::norm(state.psi[j]);
    const Complex rot = std::polar(1.0, cfg_.beta * intensity * dt);
    state.sigma[j] *= rot;
    state.psi[j] *= rot;
  }
  linear_half(state.sigma, mult);
  linear_half(state.psi, mult);

  state.t += dt;
  ++state.step;
  if (!finite(state.sigma) || !finite(state.psi)) throw NumericalAbort(state.step, state.t);
}

EvolveResult SplitStepSolver::evolve(SimState state, double t_end, const Observer& observer) {
  check_state(state);
  if (!std::isfinite(t_end) || t_end < state.t) {
    throw InvalidParameter("t_end must be finite and not earlier than the current time");
  }
  const double t0 = state.t;
  const double ratio = (t_end - t0) / cfg_.dt;
  if (ratio > kMaxSteps) throw InvalidParameter("evolution would exceed 1e8 steps");
  const auto n_steps = static_cast<std::size_t>(std::ceil(ratio - 1e-9));

  EvolveResult out;
  auto record = [&](const SimState& s) {
    out.records.push_back({s.t, s.step, conserved(s)});
    if (observer) observer(s);
  };

  record(state);
  for (std::size_t i = 1; i <= n_steps; ++i) {
    const bool last = i == n_steps;
    const double t_before = t0 + static_cast<double>(i - 1) * cfg_.dt;
    const double dt = last ? t_end - t_before : cfg_.dt;
    step(state, dt);
    state.t = last ? t_end : t0 + static_cast<double>(i) * cfg_.dt;
    if (last || i % cfg_.record_every == 0) record(state);
  }
  out.state = std::move(state);
  return out;
}

std::vector<Complex> SplitStepSolver::derivative(std::span<const Complex> u) const {
  std::vector<Complex> d(u.begin(), u.end());
  fft_.forward(d);
  const Complex i(0.0, 1.0);
  for (std::size_t j = 0; j < d.size(); ++j) d[j] *= i * grid_.kappa[j];
  d[grid_.N / 2] = 0.0;
  fft_.inverse(d);
  return d;
}

ConservedReport SplitStepSolver::conserved(const SimState& state) const {
  check_state(state);
  const std::vector<Complex> ds = derivative(state.sigma);
  const std::vector<Complex> dp = derivative(state.psi);
  CompensatedSum n_sigma, n_psi, momentum, kinetic, potential;
  for (std::size_t j = 0; j < grid_.N; ++j) {
    const double is = std::norm(state.sigma[j]);
    const double ip = std::norm(state.psi[j]);
    n_sigma.add(is);
    n_psi.add(ip);
    momentum.add((std::conj(state.sigma[j]) * ds[j] + std::conj(state.psi[j]) * dp[j]).imag());
    kinetic.add(0.5 * (std::norm(ds[j]) + std::norm(dp[j])));
    potential.add(0.5 * cfg_.beta * (is + ip) * (is + ip));
  }
  ConservedReport r;
  r.N_sigma = n_sigma.value() * grid_.dS;
  r.N_psi = n_psi.value() * grid_.dS;
  r.momentum = momentum.value() * grid_.dS;
  r.hamiltonian = (kinetic.value() - potential.value()) * grid_.dS;
  return r;
}

void step(SimState& state, const Grid& g, const SolverConfig& cfg) {
  SplitStepSolver(g, cfg).step(state);
}

EvolveResult evolve(SimState state, const Grid& g, const SolverConfig& cfg, double t_end,
                    const Observer& observer) {
  return SplitStepSolver(g, cfg).evolve(std::move(state), t_end, observer);
}

ConservedReport conserved_quantities(const SimState& state, const Grid& g,
                                     const SolverConfig& cfg) {
  return SplitStepSolver(g, cfg).conserved(state);
}

AnalyticError compare_to_analytic(const SimState& state, const RogonParams& p, RogonOrder order,
                                  const Grid& g) {
  p.validate();
  if (state.sigma.size() != g.N || state.psi.size() != g.N) {
    throw InvalidParameter("state length does not match grid size");
  }
  const BackgroundAmplitudes amp = background_amplitudes(p);
  const double background = std::hypot(amp.sigma, amp.psi);
  double err2 = 0.0, ref2 = 0.0, linf = 0.0;
  for (std::size_t j = 0; j < g.N; ++j) {
    const FieldPair exact = eval_rogon(p, order, {g.S[j], state.t});
    const double e = std::norm(state.sigma[j] - exact.sigma) + std::norm(state.psi[j] - exact.psi);
    err2 += e;
    ref2 += std::norm(exact.sigma) + std::norm(exact.psi);
    linf = std::max(linf, std::sqrt(e));
  }
  return {std::sqrt(err2 / ref2), linf / background};
}

}  // namespace rogonlab
