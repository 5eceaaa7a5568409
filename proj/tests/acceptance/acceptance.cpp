// Acceptance suite. Prints one PASS/FAIL line per criterion and exits non-zero
// if any criterion fails.

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rogonlab/cli.hpp"
#include "rogonlab/rogon.hpp"
#include "rogonlab/residual.hpp"
#include "rogonlab/solver.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using namespace rogonlab;
using rogonlab::testing::Csv;
using rogonlab::testing::read_csv;
using rogonlab::testing::read_file;
using rogonlab::testing::TempDir;
using rogonlab::testing::ulp;

namespace {

const RogonParams kFig1{1.5, 1.0, 2.0, 5.0, 0.0};
const RogonParams kFig2{1.5, 1.0, 2.0, 5.0, 0.5};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " FAILED[" << what << "]";
    }
  }
};

double rel(double x, double y) { return std::abs(x - y) / std::abs(y); }

double rel_diff(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

void exact_constants(Outcome& o) {
  for (const RogonParams& p : {kFig1, kFig2, RogonParams{0.3, 2.0, 1.0, -1.0, 1.7}}) {
    o.require(poly_P2(p, {0.0, 0.0}) == 3.0 / 8.0, "P2(0,0)");
    o.require(poly_Q2(p, {0.0, 0.0}) == -15.0 / 4.0, "Q2(0,0)");
    o.require(poly_H2(p, {0.0, 0.0}) == 3.0 / 32.0, "H2(0,0)");
  }
  o.detail << "P2=" << poly_P2(kFig1, {0, 0}) << " Q2=" << poly_Q2(kFig1, {0, 0})
           << " H2=" << poly_H2(kFig1, {0, 0});
}

void peak_ratios(Outcome& o) {
  const BackgroundAmplitudes A = background_amplitudes(kFig1);
  const FieldPair f1 = eval_rogon1(kFig1, {0.0, 0.0});
  const FieldPair f2 = eval_rogon2(kFig1, {0.0, 0.0});
  const double r1 = std::abs(f1.sigma) / A.sigma, r2 = std::abs(f2.sigma) / A.sigma;
  const double r1p = std::abs(f1.psi) / A.psi, r2p = std::abs(f2.psi) / A.psi;
  o.require(rel(r1, 3.0) < 1e-15 && rel(r1p, 3.0) < 1e-15, "one-rogon amplitude 3x");
  o.require(rel(r2, 5.0) < 1e-15 && rel(r2p, 5.0) < 1e-15, "two-rogon amplitude 5x");
  o.require(rogon1_factor(kFig1, {0, 0}) == Complex(-3.0, 0.0), "one-rogon factor -3");
  o.require(rogon2_factor(kFig1, {0, 0}) == Complex(5.0, 0.0), "two-rogon factor 5");
  const double I = std::norm(f1.sigma);
  o.require(rel(I, 81.0 / 58.0) <= 1e-12, "I_sigma(0,0) = 81/58");
  o.detail << "ratios " << r1 << ", " << r2 << "; I_sigma(0,0)=" << I << " rel.err "
           << rel(I, 81.0 / 58.0);
}

void residual_verification(Outcome& o) {
  const Range S{-5.0, 5.0}, t{-3.0, 3.0};
  double worst1 = 0.0, worst2 = 0.0;
  for (const RogonParams& p : {kFig1, kFig2}) {
    const ResidualReport r1 = residual_scan(rogon_field(RogonOrder::One), p, S, t, 101, 61, 5e-3, 8);
    const ResidualReport r2 = residual_scan(rogon_field(RogonOrder::Two), p, S, t, 101, 61, 5e-3, 8);
    worst1 = std::max(worst1, r1.max_abs());
    worst2 = std::max(worst2, r2.max_abs());
  }
  o.require(worst1 <= 1e-6, "order 1 residual <= 1e-6");
  o.require(worst2 <= 1e-5, "order 2 residual <= 1e-5");

  const std::array<double, 4> h = {0.08, 0.04, 0.02, 0.01};
  double worst_slope_error = 0.0;
  for (RogonOrder order : {RogonOrder::One, RogonOrder::Two}) {
    for (int fd : {2, 4, 6, 8}) {
      const ConvergenceStudy cs = convergence_study(rogon_field(order), kFig1, {0.5, 0.3}, fd, h);
      const double err = std::isnan(cs.slope) ? INFINITY : std::abs(cs.slope - fd);
      worst_slope_error = std::max(worst_slope_error, err);
    }
  }
  o.require(worst_slope_error <= 0.5, "slope within 0.5 of fd order");

  double control = INFINITY;
  for (RogonOrder order : {RogonOrder::One, RogonOrder::Two}) {
    control = std::min(control, residual_scan(carrierless_field(order), kFig1, S, t, 101, 61, 5e-3, 8).max_abs());
  }
  o.require(control > 0.1 && control < 100.0, "negative control O(1)");
  o.detail << "max residual order1=" << worst1 << " order2=" << worst2
           << "; worst |slope - fd_order|=" << worst_slope_error << "; carrierless=" << control;
}

RogonParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> alpha(0.2, 3.0), beta(0.1, 4.0), w(-5.0, 5.0), k(-2.0, 2.0);
  return {alpha(rng), beta(rng), w(rng), w(rng), k(rng)};
}

void structural_invariants(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-10, 10);
  int ulps_violations = 0, parity_violations = 0, comoving_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const RogonParams p = random_params(rng);
    RogonParams p0 = p;
    p0.k = 0.0;
    const double S = u(rng), t = u(rng);
    for (RogonOrder order : {RogonOrder::One, RogonOrder::Two}) {
      const FieldPair f = eval_rogon(p, order, {S, t});
      const Complex lhs = p.a * f.psi, rhs = p.b * f.sigma;
      if (std::abs(lhs - rhs) > 4 * ulp(std::max(std::abs(lhs), std::abs(rhs)))) ++ulps_violations;

      const double m0 = std::abs(eval_rogon(p0, order, {S, t}).sigma);
      if (rel_diff(std::abs(eval_rogon(p0, order, {-S, t}).sigma), m0) >= 1e-14 ||
          rel_diff(std::abs(eval_rogon(p0, order, {S, -t}).sigma), m0) >= 1e-14) {
        ++parity_violations;
      }

      const FieldPair rest = eval_rogon(p0, order, {S - p.k * t, t});
      if (rel_diff(std::abs(f.sigma), std::abs(rest.sigma)) >= 1e-14 ||
          rel_diff(std::abs(f.psi), std::abs(rest.psi)) >= 1e-14) {
        ++comoving_violations;
      }
    }
  }
  o.require(ulps_violations == 0, "a psi = b sigma within 4 ulps");
  o.require(parity_violations == 0, "parity");
  o.require(comoving_violations == 0, "comoving frame");

  const double background = kFig1.alpha * kFig1.alpha / (2 * kFig1.beta);
  double far = 0.0;
  for (RogonOrder order : {RogonOrder::One, RogonOrder::Two}) {
    for (double S : {-1e3, 1e3}) {
      const FieldPair f = eval_rogon(kFig1, order, {S, 0.0});
      far = std::max(far, std::abs(std::norm(f.sigma) + std::norm(f.psi) - background));
    }
  }
  o.require(far < 1e-5, "far-field intensity");

  // 100 alphas in (0, 5] x 100 x 100 comoving points in [-50, 50]^2.
  double min_h = INFINITY;
  const std::vector<double> xs = linspace({-50.0, 50.0}, 100);
  for (int ia = 1; ia <= 100; ++ia) {
    const RogonParams p{0.05 * ia, 1.0, 1.0, 1.0, 0.0};
    for (double x : xs) {
      for (double t : xs) min_h = std::min(min_h, poly_H2(p, {x, t}));
    }
  }
  o.require(min_h > 0.0, "H2 > 0");
  o.detail << "proportionality/parity/comoving violations " << ulps_violations << "/" << parity_violations
           << "/" << comoving_violations << " of 1e4 points; far-field deviation " << far
           << "; min H2 over 1e6 points " << min_h;
}

struct SolverRun {
  double l2 = 0.0;
  double drift_sigma = 0.0;
  double drift_psi = 0.0;
  double drift_h = 0.0;
  double seconds = 0.0;
};

SolverRun run_solver(double dt) {
  const RogonParams p{1.0, 1.0, 1.0, 1.0, 0.0};
  const Grid g = make_grid(100.0, 2048);
  SolverConfig cfg;
  cfg.dt = dt;
  cfg.beta = p.beta;
  cfg.record_every = 50;
  const auto start = std::chrono::steady_clock::now();
  SplitStepSolver solver(g, cfg);
  const EvolveResult result = solver.evolve(init_from_analytic(p, RogonOrder::One, g, -5.0), 5.0);
  SolverRun run;
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  run.l2 = compare_to_analytic(result.state, p, RogonOrder::One, g).l2_rel;
  const ConservedReport& c0 = result.records.front().conserved;
  for (const Record& r : result.records) {
    run.drift_sigma = std::max(run.drift_sigma, std::abs(r.conserved.N_sigma - c0.N_sigma) / c0.N_sigma);
    run.drift_psi = std::max(run.drift_psi, std::abs(r.conserved.N_psi - c0.N_psi) / c0.N_psi);
    run.drift_h = std::max(run.drift_h, std::abs(r.conserved.hamiltonian - c0.hamiltonian) / std::abs(c0.hamiltonian));
  }
  return run;
}

void solver_round_trip(Outcome& o) {
  const SolverRun coarse = run_solver(1e-3);
  const SolverRun fine = run_solver(5e-4);
  const double ratio = coarse.drift_h / fine.drift_h;
  o.require(coarse.l2 <= 1e-2, "l2 error <= 1e-2");
  o.require(coarse.drift_sigma < 1e-9 && coarse.drift_psi < 1e-9, "norm drift < 1e-9");
  o.require(ratio >= 3.0 && ratio <= 5.0, "Hamiltonian drift ratio in [3, 5]");
  o.require(coarse.seconds <= 120.0, "runtime");
  o.detail << "l2=" << coarse.l2 << " norm drift " << coarse.drift_sigma << "/" << coarse.drift_psi
           << " H drift " << coarse.drift_h << " vs " << fine.drift_h << " ratio " << ratio << " runtime "
           << coarse.seconds << "s";
}

void scalar_reduction(Outcome& o) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> alpha(0.2, 3.0), beta(0.1, 4.0), a(0.1, 5.0), k(-2.0, 2.0),
      u(-10.0, 10.0);
  double worst_formula = 0.0, worst_residual = 0.0;
  bool psi_zero = true, origin_ok = true, amplitude_ok = true;
  for (int i = 0; i < 1000; ++i) {
    const RogonParams p{alpha(rng), beta(rng), a(rng), 0.0, k(rng)};
    const double A = background_amplitudes(p).sigma;
    const double A_ref = p.alpha * p.a / std::sqrt(2 * p.beta * p.a * p.a);
    if (std::abs(A - A_ref) > 4 * ulp(A_ref)) amplitude_ok = false;
    if (rogon1_factor(p, {p.k * 0.0, 0.0}) != Complex(-3.0, 0.0)) origin_ok = false;

    // Textbook scalar Peregrine form for i u_t + u_SS / 2 + beta |u|^2 u = 0
    // written with q = beta A^2 and no reference to alpha.
    const double q = p.beta * A * A;
    const double S = u(rng), t = u(rng), xi = S - p.k * t;
    const Complex peregrine = A * (1.0 - 4.0 * Complex(1.0, 2.0 * q * t) / (1.0 + 4.0 * q * xi * xi + 4.0 * q * q * t * t)) *
                              std::exp(Complex(0.0, p.k * S + (2.0 * q - p.k * p.k) * t / 2.0));
    const FieldPair f = eval_rogon1(p, {S, t});
    if (f.psi != Complex(0.0, 0.0)) psi_zero = false;
    worst_formula = std::max(worst_formula, std::abs(f.sigma - peregrine) / A);
    if (i < 100) {
      worst_residual = std::max(worst_residual,
                                residual_at(rogon_field(RogonOrder::One), p, {S, t}, 5e-3, 8).magnitude());
    }
  }
  o.require(amplitude_ok, "A_sigma = alpha a / sqrt(2 beta a^2)");
  o.require(origin_ok, "factor -3 at the origin");
  o.require(psi_zero, "psi identically zero");
  o.require(worst_formula < 1e-13, "matches scalar Peregrine");
  o.require(worst_residual < 1e-6, "scalar NLS residual");
  o.detail << "max |sigma - scalar Peregrine|/A = " << worst_formula << "; scalar NLS residual "
           << worst_residual;
}

struct FigureSpec {
  std::string name;
  int ratio;
  double k;
  std::set<double> times;
};

void figure_reproduction(Outcome& o) {
  TempDir dir("acceptance_figures");
  std::ostringstream out, err;
  const int code = cli::run({"figures", "--out-dir", dir.path().string()}, out, err);
  o.require(code == 0, "figures exit code");
  if (code != 0) {
    o.detail << err.str();
    return;
  }
  const std::vector<FigureSpec> specs = {{"fig1", 3, 0.0, {0.0, 0.4, 1.0}},
                                         {"fig2", 3, 0.5, {0.0, 0.4, 1.0}},
                                         {"fig3", 5, 0.0, {0.0, 0.4, 1.2}},
                                         {"fig4", 5, 0.5, {0.0, 0.8, 1.5}}};
  double worst_intensity = 0.0, worst_location = 0.0, worst_asymmetry = 0.0;
  for (const FigureSpec& spec : specs) {
    const fs::path d = dir.path() / spec.name;
    const nlohmann::json m = nlohmann::json::parse(read_file(d / "manifest.json"));
    const auto& rp = m["parameters"]["rogon"];
    o.require(rp["alpha"] == 1.5 && rp["beta"] == 1.0 && rp["a"] == 2.0 && rp["b"] == 5.0 && rp["k"] == spec.k,
              spec.name + " figure parameters");
    const RogonParams p{1.5, 1.0, 2.0, 5.0, spec.k};
    const BackgroundAmplitudes A = background_amplitudes(p);

    std::set<double> times;
    for (const auto& entry : fs::directory_iterator(d)) {
      const std::string file = entry.path().filename().string();
      if (file.rfind("slice_t", 0) != 0) continue;
      const Csv csv = read_csv(entry.path());
      const double t = csv.rows.front()[1];
      times.insert(t);
      const double dS = csv.rows[1][0] - csv.rows[0][0];

      std::size_t best = 0;
      for (std::size_t i = 1; i < csv.rows.size(); ++i) {
        if (csv.rows[i][6] > csv.rows[best][6]) best = i;
      }
      const double centre = spec.k * t;
      if (spec.ratio == 3 || t == 0.0) {
        // Single crest, on the comoving line.
        worst_location = std::max(worst_location, std::abs(csv.rows[best][0] - centre) / dS);
      } else {
        // Split crests placed symmetrically about the comoving line, which may
        // fall midway between grid points.
        const auto twice = static_cast<std::ptrdiff_t>(std::lround(2 * (centre - csv.rows[0][0]) / dS));
        const auto n = static_cast<std::ptrdiff_t>(csv.rows.size());
        double asym = 0.0;
        for (std::ptrdiff_t i = std::max<std::ptrdiff_t>(0, twice - n + 1); i < n && twice - i >= 0; ++i) {
          asym = std::max(asym, std::abs(csv.rows[i][6] - csv.rows[twice - i][6]) / (A.sigma * A.sigma));
        }
        worst_asymmetry = std::max(worst_asymmetry, asym);
      }
      if (t == 0.0) {
        const double ratio2 = spec.ratio * spec.ratio;
        worst_intensity = std::max({worst_intensity, rel(csv.rows[best][6] / (A.sigma * A.sigma), ratio2),
                                    rel(csv.rows[best][7] / (A.psi * A.psi), ratio2)});
      }
    }
    o.require(times == spec.times, spec.name + " slice times");

    const Csv surface = read_csv(d / "surface.csv");
    std::size_t best = 0;
    for (std::size_t i = 1; i < surface.rows.size(); ++i) {
      if (surface.rows[i][6] > surface.rows[best][6]) best = i;
    }
    const double dS = surface.rows[1][0] - surface.rows[0][0];
    worst_location =
        std::max(worst_location, std::abs(surface.rows[best][0] - spec.k * surface.rows[best][1]) / dS);
  }
  o.require(worst_location <= 0.5, "peaks on S = kt");
  o.require(worst_asymmetry < 1e-12, "two-rogon slices symmetric about S = kt");
  o.require(worst_intensity < 1e-12, "peak intensities 9x / 25x");
  o.detail << "4 datasets; worst peak offset from S=kt " << worst_location
           << " grid steps; two-rogon slice asymmetry " << worst_asymmetry << "; worst peak intensity ratio error " << worst_intensity;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
      {"AC1 exact constants", exact_constants},
      {"AC2 peak ratios", peak_ratios},
      {"AC3 residual verification", residual_verification},
      {"AC4 structural invariants", structural_invariants},
      {"AC5 solver round trip", solver_round_trip},
      {"AC6 scalar reduction", scalar_reduction},
      {"AC7 figure reproduction", figure_reproduction},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << name << ": " << o.detail.str() << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
