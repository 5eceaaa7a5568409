#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "rogonlab/fft.hpp"
#include "rogonlab/types.hpp"

namespace rogonlab {

/// Periodic grid on [-L/2, L/2). `kappa` holds the angular wavenumbers
/// 2 pi j / L, j in {-N/2, ..., N/2 - 1}, in FFT storage order (kappa[0] = 0,
/// negative modes in the upper half).
struct Grid {
  double L = 0.0;
  std::size_t N = 0;
  double dS = 0.0;
  std::vector<double> S;
  std::vector<double> kappa;
};

/// N must be a power of two >= 16 and L > 0.
Grid make_grid(double L, std::size_t N);

struct SimState {
  double t = 0.0;
  std::size_t step = 0;  // steps taken since initialisation
  std::vector<Complex> sigma;
  std::vector<Complex> psi;
};

enum class SplittingScheme { Strang };

struct SolverConfig {
  double dt = 1e-3;
  double beta = 1.0;
  SplittingScheme scheme = SplittingScheme::Strang;
  std::size_t record_every = 1;
  bool dealias = false;  // zero |j| > N/3 in every linear substep

  void validate() const;
};

struct ConservedReport {
  double N_sigma = 0.0;
  double N_psi = 0.0;
  double momentum = 0.0;
  double hamiltonian = 0.0;
};

struct AnalyticError {
  double l2_rel = 0.0;    // ||numeric - exact||_2 / ||exact||_2 over both fields
  double linf_rel = 0.0;  // max pointwise combined error / combined background amplitude
};

// Carrier periodicity: exp(ikS) is periodic on length L iff k L is in 2 pi Z.
bool is_admissible_k(double k, double L);
double nearest_admissible_k(double k, double L);

enum class CarrierPolicy { Reject, Snap };

/// Returns p unchanged when its k is admissible on L; otherwise snaps k
/// (CarrierPolicy::Snap) or throws NonPeriodicCarrier.
RogonParams admissible_params(RogonParams p, double L, CarrierPolicy policy);

/// Samples the closed-form rogon on the grid at time t0. Rejects a carrier
/// that is not periodic on the grid.
SimState init_from_analytic(const RogonParams& p, RogonOrder order, const Grid& g, double t0);

/// Called with the state at recorded steps.
using Observer = std::function<void(const SimState&)>;

struct Record {
  double t = 0.0;
  std::size_t step = 0;
  ConservedReport conserved;
};

struct EvolveResult {
  SimState state;
  std::vector<Record> records;
};

/// Strang split-step integrator for
///   i u_t = -u_SS / 2 - beta (|sigma|^2 + |psi|^2) u,   u in {sigma, psi}.
/// Linear half steps are exact spectral phase rotations; the nonlinear step is
/// the exact pointwise rotation u -> u exp(i beta I dt), which leaves I fixed.
class SplitStepSolver {
 public:
  SplitStepSolver(Grid grid, SolverConfig cfg);

  const Grid& grid() const noexcept { return grid_; }
  const SolverConfig& config() const noexcept { return cfg_; }

  /// One step of the configured dt.
  void step(SimState& state);

  /// One step of arbitrary signed size; a negative dt runs the flow backwards.
  void step(SimState& state, double dt);

  /// Steps to t_end, shortening the final step to land on it exactly. The
  /// initial state, every record_every-th step, and the final state are
  /// recorded and passed to `observer`.
  EvolveResult evolve(SimState state, double t_end, const Observer& observer = {});

  ConservedReport conserved(const SimState& state) const;

  /// Spectral derivative d/dS; the Nyquist mode is dropped.
  std::vector<Complex> derivative(std::span<const Complex> u) const;

 private:
  void linear_half(std::span<Complex> u, std::span<const Complex> multiplier);
  std::vector<Complex> half_step_multiplier(double dt) const;
  void check_state(const SimState& state) const;

  Grid grid_;
  SolverConfig cfg_;
  FftPlan fft_;
  std::vector<Complex> half_multiplier_;  // for cfg_.dt
  std::vector<double> mask_;
};

void step(SimState& state, const Grid& g, const SolverConfig& cfg);
EvolveResult evolve(SimState state, const Grid& g, const SolverConfig& cfg, double t_end,
                    const Observer& observer = {});
ConservedReport conserved_quantities(const SimState& state, const Grid& g, const SolverConfig& cfg);
AnalyticError compare_to_analytic(const SimState& state, const RogonParams& p, RogonOrder order,
                                  const Grid& g);

}  // namespace rogonlab
