#include "rogonlab/cli.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rogonlab/errors.hpp"
#include "rogonlab/output.hpp"
#include "rogonlab/residual.hpp"
#include "rogonlab/rogon.hpp"
#include "rogonlab/solver.hpp"
#include "rogonlab/version.hpp"

namespace rogonlab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Context {
  std::vector<std::string> argv;
  std::ostream& out;
  std::ostream& err;
};

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

struct ModelFlags {
  int order = 1;
  RogonParams params;
};

void add_model_flags(CLI::App* cmd, ModelFlags& f) {
  cmd->add_option("--order", f.order, "Rogon order")->check(CLI::IsMember({1, 2}))->capture_default_str();
  cmd->add_option("--alpha", f.params.alpha, "Scaling alpha > 0")->required();
  cmd->add_option("--beta", f.params.beta, "Market potential beta > 0")->required();
  cmd->add_option("--a", f.params.a, "Amplitude weight of sigma")->required();
  cmd->add_option("--b", f.params.b, "Amplitude weight of psi")->required();
  cmd->add_option("--k", f.params.k, "Gauge / carrier wavenumber")->capture_default_str();
}

struct Window {
  double s_min = -4.0, s_max = 4.0;
  double t_min = -2.0, t_max = 2.0;
  std::size_t ns = 401, nt = 201;
};

void add_window_flags(CLI::App* cmd, Window& w, bool with_t) {
  cmd->add_option("--s-min", w.s_min)->capture_default_str();
  cmd->add_option("--s-max", w.s_max)->capture_default_str();
  cmd->add_option("--ns", w.ns, "Samples in S")->capture_default_str();
  if (with_t) {
    cmd->add_option("--t-min", w.t_min)->capture_default_str();
    cmd->add_option("--t-max", w.t_max)->capture_default_str();
    cmd->add_option("--nt", w.nt, "Samples in t")->capture_default_str();
  }
}

json window_json(const Window& w) {
  return {{"s_min", w.s_min}, {"s_max", w.s_max}, {"t_min", w.t_min},
          {"t_max", w.t_max}, {"ns", w.ns},       {"nt", w.nt}};
}

fs::path with_suffix(const std::string& prefix, std::string_view suffix) {
  return fs::path(prefix + std::string(suffix));
}

std::string time_tag(double t) { return "_t" + io::format_double(t); }

// ---------------------------------------------------------------- eval

struct EvalOptions {
  ModelFlags model;
  Window window;
  std::string out = "rogon";
};

int cmd_eval(const EvalOptions& o, const Context& ctx) {
  Stopwatch clock;
  const RogonOrder order = order_from_int(o.model.order);
  o.model.params.validate();
  const Window& w = o.window;
  const FieldGrid grid =
      eval_grid(o.model.params, order, {w.s_min, w.s_max}, {w.t_min, w.t_max}, w.ns, w.nt);

  const fs::path csv = with_suffix(o.out, ".csv");
  io::write_file(csv, io::field_csv(grid));

  io::Manifest m("eval", ctx.argv);
  m.parameters() = {{"order", o.model.order},
                    {"rogon", io::to_json(o.model.params)},
                    {"window", window_json(w)}};
  m.add_output(csv);
  m.set_duration(clock.seconds());
  m.write(with_suffix(o.out, ".json"));
  ctx.out << "wrote " << csv.string() << " (" << grid.fields.size() << " rows)\n";
  return kSuccess;
}

// ---------------------------------------------------------------- slices

struct SliceOptions {
  ModelFlags model;
  Window window;
  std::vector<double> times;
  bool snap_k = false;
  double L = 100.0;
  std::string out = "slices";
};

RogonParams maybe_snap(const RogonParams& p, bool snap, double L, const Context& ctx) {
  if (!snap) return p;
  const RogonParams q = admissible_params(p, L, CarrierPolicy::Snap);
  if (q.k != p.k) {
    ctx.out << "k snapped from " << io::format_double(p.k) << " to " << io::format_double(q.k)
            << " (L = " << io::format_double(L) << ")\n";
  }
  return q;
}

int cmd_slices(const SliceOptions& o, const Context& ctx) {
  Stopwatch clock;
  const RogonOrder order = order_from_int(o.model.order);
  const RogonParams p = maybe_snap(o.model.params, o.snap_k, o.L, ctx);
  p.validate();

  io::Manifest m("slices", ctx.argv);
  std::vector<io::SliceSpec> specs;
  for (double t : o.times) {
    const FieldGrid g = eval_grid(p, order, {o.window.s_min, o.window.s_max}, {t, t}, o.window.ns, 1);
    const fs::path csv = with_suffix(o.out, time_tag(t) + ".csv");
    io::write_file(csv, io::field_csv(g));
    m.add_output(csv);
    specs.push_back({csv.filename().string(), t});
  }
  const fs::path script = with_suffix(o.out, "_plot.py");
  io::write_file(script, io::plot_script("intensity slices", "", specs));
  m.add_output(script);

  json window = window_json(o.window);
  window.erase("t_min");
  window.erase("t_max");
  window.erase("nt");
  m.parameters() = {{"order", o.model.order},
                    {"rogon", io::to_json(p)},
                    {"requested_k", o.model.params.k},
                    {"times", o.times},
                    {"window", window}};
  m.set_duration(clock.seconds());
  m.write(with_suffix(o.out, ".json"));
  ctx.out << "wrote " << specs.size() << " slice files and " << script.string() << "\n";
  return kSuccess;
}

// ---------------------------------------------------------------- residual

struct ResidualOptions {
  ModelFlags model;
  Window window{-5.0, 5.0, -3.0, 3.0, 101, 61};
  int fd_order = 8;
  double h = 5e-3;
  double tol = 1e-5;
  bool study = false;
  std::string field = "exact";
  std::string out = "residual";
};

// Step sizes and probe point for the --study table.
constexpr std::array<double, 4> kStudySteps = {0.08, 0.04, 0.02, 0.01};
constexpr PointST kStudyPoint{0.5, 0.3};

FieldFn select_field(const std::string& name, RogonOrder order) {
  if (name == "corrupted") return carrierless_field(order);
  if (name == "background") return background_field();
  return rogon_field(order);
}

json slope_json(double slope) {
  return std::isfinite(slope) ? json(slope) : json(nullptr);
}

int cmd_residual(const ResidualOptions& o, const Context& ctx) {
  Stopwatch clock;
  const RogonOrder order = order_from_int(o.model.order);
  o.model.params.validate();
  if (!(o.tol >= 0.0)) throw InvalidParameter("--tol must be >= 0");
  const FieldFn field = select_field(o.field, order);
  const Window& w = o.window;

  if (o.h < kMinResidualStep) {
    ctx.err << "warning: --h " << io::format_double(o.h)
            << " is below 1e-4; finite differences are roundoff dominated\n";
  }
  const ResidualReport rep = residual_scan(field, o.model.params, {w.s_min, w.s_max},
                                           {w.t_min, w.t_max}, w.ns, w.nt, o.h, o.fd_order);
  const bool passed = rep.max_abs() < o.tol;

  json report = {{"S_range", {rep.S_range.min, rep.S_range.max}},
                 {"t_range", {rep.t_range.min, rep.t_range.max}},
                 {"ns", rep.ns},
                 {"nt", rep.nt},
                 {"points", rep.points()},
                 {"fd_order", rep.fd_order},
                 {"h", rep.h},
                 {"max_abs_r_sigma", rep.max_abs_r_sigma},
                 {"max_abs_r_psi", rep.max_abs_r_psi},
                 {"worst_point", {rep.worst_point.S, rep.worst_point.t}},
                 {"roundoff_warning", rep.roundoff_warning},
                 {"tol", o.tol},
                 {"passed", passed}};

  ctx.out << std::setprecision(6) << "max |r_sigma| = " << rep.max_abs_r_sigma
          << "  max |r_psi| = " << rep.max_abs_r_psi << "  over " << rep.points()
          << " points (fd order " << rep.fd_order << ", h = " << rep.h << ")\n";

  if (o.study) {
    const ConvergenceStudy cs =
        convergence_study(field, o.model.params, kStudyPoint, o.fd_order, kStudySteps);
    ctx.out << "convergence at S = " << kStudyPoint.S << ", t = " << kStudyPoint.t << "\n"
            << std::setw(12) << "h" << std::setw(16) << "|r|" << std::setw(16) << "floor"
            << "  roundoff\n";
    json rows = json::array();
    for (std::size_t i = 0; i < cs.h.size(); ++i) {
      ctx.out << std::setw(12) << cs.h[i] << std::setw(16) << cs.residual[i] << std::setw(16)
              << cs.roundoff_floor[i] << "  " << (cs.roundoff[i] ? "yes" : "no") << "\n";
      rows.push_back({{"h", cs.h[i]},
                      {"residual", cs.residual[i]},
                      {"roundoff_floor", cs.roundoff_floor[i]},
                      {"roundoff", static_cast<bool>(cs.roundoff[i])}});
    }
    if (cs.exact) {
      ctx.out << "residual within roundoff at every h (exact)\n";
    } else {
      ctx.out << "observed order " << cs.slope << " (expected " << cs.fd_order << ")\n";
    }
    report["study"] = {{"point", {kStudyPoint.S, kStudyPoint.t}},
                       {"rows", rows},
                       {"slope", slope_json(cs.slope)},
                       {"exact", cs.exact}};
  }

  io::Manifest m("residual", ctx.argv);
  m.parameters() = {{"order", o.model.order},
                    {"rogon", io::to_json(o.model.params)},
                    {"field", o.field},
                    {"window", window_json(w)},
                    {"fd_order", o.fd_order},
                    {"h", o.h},
                    {"tol", o.tol}};
  m.set("report", report);
  const fs::path path = with_suffix(o.out, ".json");
  m.add_output(path);
  m.set_duration(clock.seconds());
  m.write(path);

  if (!passed) {
    ctx.err << "residual " << rep.max_abs() << " is not below --tol " << o.tol << "\n";
    return kVerificationFailed;
  }
  return kSuccess;
}

// ---------------------------------------------------------------- simulate

struct SimulateOptions {
  ModelFlags model;
  double L = 100.0;
  std::size_t N = 2048;
  double dt = 1e-3;
  double t0 = -5.0;
  double t_end = 5.0;
  bool snap_k = false;
  bool dealias = false;
  std::size_t snapshot_every = 0;
  std::size_t record_every = 10;
  std::string out = "simulate";
};

int cmd_simulate(const SimulateOptions& o, const Context& ctx) {
  Stopwatch clock;
  const RogonOrder order = order_from_int(o.model.order);
  o.model.params.validate();
  if (o.record_every < 1) throw InvalidParameter("--record-every must be >= 1");
  const RogonParams p = admissible_params(o.model.params, o.L,
                                          o.snap_k ? CarrierPolicy::Snap : CarrierPolicy::Reject);
  if (p.k != o.model.params.k) {
    ctx.out << "k snapped from " << io::format_double(o.model.params.k) << " to "
            << io::format_double(p.k) << " (L = " << io::format_double(o.L) << ")\n";
  }
  if (!(o.t_end >= o.t0)) throw InvalidParameter("--t-end must not precede --t0");

  const Grid grid = make_grid(o.L, o.N);
  SolverConfig cfg;
  cfg.dt = o.dt;
  cfg.beta = p.beta;
  cfg.dealias = o.dealias;
  cfg.record_every = std::gcd(o.record_every, o.snapshot_every);
  SplitStepSolver solver(grid, cfg);

  io::Manifest m("simulate", ctx.argv);
  std::vector<double> l2;
  auto observer = [&](const SimState& s) {
    l2.push_back(compare_to_analytic(s, p, order, grid).l2_rel);
    if (o.snapshot_every > 0 && s.step % o.snapshot_every == 0) {
      const fs::path snap = with_suffix(o.out, "_snapshot_" + std::to_string(s.step) + ".csv");
      io::write_file(snap, io::state_csv(s, grid));
      m.add_output(snap);
    }
  };
  const EvolveResult res =
      solver.evolve(init_from_analytic(p, order, grid, o.t0), o.t_end, observer);

  std::string series(io::kSeriesCsvHeader);
  series += '\n';
  const ConservedReport& c0 = res.records.front().conserved;
  double drift_sigma = 0.0, drift_psi = 0.0, drift_h = 0.0;
  for (std::size_t i = 0; i < res.records.size(); ++i) {
    const Record& r = res.records[i];
    const ConservedReport& c = r.conserved;
    if (c0.N_sigma > 0) drift_sigma = std::max(drift_sigma, std::abs(c.N_sigma - c0.N_sigma) / c0.N_sigma);
    if (c0.N_psi > 0) drift_psi = std::max(drift_psi, std::abs(c.N_psi - c0.N_psi) / c0.N_psi);
    if (c0.hamiltonian != 0) {
      drift_h = std::max(drift_h, std::abs(c.hamiltonian - c0.hamiltonian) / std::abs(c0.hamiltonian));
    }
    const bool last = i + 1 == res.records.size();
    if (!last && r.step % o.record_every != 0) continue;
    for (double v : {r.t, c.N_sigma, c.N_psi, c.momentum, c.hamiltonian, l2[i]}) {
      series += io::format_double(v);
      series += ',';
    }
    series.back() = '\n';
  }
  const fs::path series_path = with_suffix(o.out, "_series.csv");
  io::write_file(series_path, series);
  m.add_output(series_path);

  const double final_l2 = l2.back();
  ctx.out << std::setprecision(6) << "steps " << res.state.step << ", t = " << res.state.t
          << ", l2_rel_vs_analytic = " << final_l2 << ", max N_sigma drift = " << drift_sigma
          << ", max N_psi drift = " << drift_psi << ", max H drift = " << drift_h << "\n";

  m.parameters() = {{"order", o.model.order},
                    {"rogon", io::to_json(p)},
                    {"requested_k", o.model.params.k},
                    {"L", o.L},
                    {"N", o.N},
                    {"dt", o.dt},
                    {"t0", o.t0},
                    {"t_end", o.t_end},
                    {"scheme", "strang"},
                    {"dealias", o.dealias},
                    {"record_every", o.record_every},
                    {"snapshot_every", o.snapshot_every}};
  m.set("summary", {{"steps", res.state.step},
                    {"final_l2_rel_vs_analytic", final_l2},
                    {"max_rel_drift_N_sigma", drift_sigma},
                    {"max_rel_drift_N_psi", drift_psi},
                    {"max_rel_drift_hamiltonian", drift_h}});
  m.set_duration(clock.seconds());
  m.write(with_suffix(o.out, ".json"));
  return kSuccess;
}

// ---------------------------------------------------------------- figures

struct FigureOptions {
  Window window;
  std::string out_dir = "figures";
};

struct FigureSpec {
  const char* name;
  RogonOrder order;
  double k;
  std::array<double, 3> times;
};

// Parameters shared by all four figures.
constexpr RogonParams kFigureParams{1.5, 1.0, 2.0, 5.0, 0.0};

constexpr std::array<FigureSpec, 4> kFigures = {{
    {"fig1", RogonOrder::One, 0.0, {0.0, 0.4, 1.0}},
    {"fig2", RogonOrder::One, 0.5, {0.0, 0.4, 1.0}},
    {"fig3", RogonOrder::Two, 0.0, {0.0, 0.4, 1.2}},
    {"fig4", RogonOrder::Two, 0.5, {0.0, 0.8, 1.5}},
}};

int cmd_figures(const FigureOptions& o, const Context& ctx) {
  const Window& w = o.window;
  for (const FigureSpec& f : kFigures) {
    Stopwatch clock;
    RogonParams p = kFigureParams;
    p.k = f.k;
    const fs::path dir = fs::path(o.out_dir) / f.name;
    io::Manifest m("figures", ctx.argv);

    const FieldGrid surface = eval_grid(p, f.order, {w.s_min, w.s_max}, {w.t_min, w.t_max}, w.ns, w.nt);
    io::write_file(dir / "surface.csv", io::field_csv(surface));
    m.add_output(dir / "surface.csv");

    std::vector<io::SliceSpec> specs;
    for (double t : f.times) {
      const std::string name = "slice" + time_tag(t) + ".csv";
      const FieldGrid g = eval_grid(p, f.order, {w.s_min, w.s_max}, {t, t}, w.ns, 1);
      io::write_file(dir / name, io::field_csv(g));
      m.add_output(dir / name);
      specs.push_back({name, t});
    }
    const std::string title = std::string(f.name) + " (order " +
                              std::to_string(static_cast<int>(f.order)) + ", k = " +
                              io::format_double(f.k) + ")";
    io::write_file(dir / "plot.py", io::plot_script(title, "surface.csv", specs));
    m.add_output(dir / "plot.py");

    m.parameters() = {{"figure", f.name},
                      {"order", static_cast<int>(f.order)},
                      {"rogon", io::to_json(p)},
                      {"slice_times", f.times},
                      {"window", window_json(w)}};
    m.set_duration(clock.seconds());
    m.write(dir / "manifest.json");
    ctx.out << "wrote " << dir.string() << "\n";
  }
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"rogonlab: coupled volatility / option-pricing rogue waves", "rogonlab"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Evaluate a closed-form rogon on an (S, t) grid");
  eval->set_help_flag("--help", "Print this help message and exit");
  add_model_flags(eval, eval_opts.model);
  add_window_flags(eval, eval_opts.window, true);
  eval->add_option("--out", eval_opts.out, "Output prefix")->capture_default_str();

  SliceOptions slice_opts;
  auto* slices = app.add_subcommand("slices", "Intensity versus S at fixed times");
  slices->set_help_flag("--help", "Print this help message and exit");
  add_model_flags(slices, slice_opts.model);
  add_window_flags(slices, slice_opts.window, false);
  slices->add_option("--times", slice_opts.times, "Comma-separated times")
      ->required()
      ->delimiter(',');
  slices->add_flag("--snap-k", slice_opts.snap_k, "Snap k to 2 pi m / L");
  slices->add_option("--L", slice_opts.L, "Period used by --snap-k")->capture_default_str();
  slices->add_option("--out", slice_opts.out, "Output prefix")->capture_default_str();

  ResidualOptions res_opts;
  auto* residual = app.add_subcommand("residual", "Finite-difference PDE residual of a rogon");
  residual->set_help_flag("--help", "Print this help message and exit");
  add_model_flags(residual, res_opts.model);
  add_window_flags(residual, res_opts.window, true);
  residual->add_option("--fd-order", res_opts.fd_order)
      ->check(CLI::IsMember({2, 4, 6, 8}))
      ->capture_default_str();
  residual->add_option("--h", res_opts.h, "Finite-difference step")->capture_default_str();
  residual->add_option("--tol", res_opts.tol, "Pass threshold on the max residual")
      ->capture_default_str();
  residual->add_flag("--study", res_opts.study, "Print a convergence table");
  residual->add_option("--field", res_opts.field, "Field under test")
      ->check(CLI::IsMember({"exact", "corrupted", "background"}))
      ->capture_default_str();
  residual->add_option("--out", res_opts.out, "Output prefix")->capture_default_str();

  SimulateOptions sim_opts;
  auto* simulate = app.add_subcommand("simulate", "Split-step evolution from rogon initial data");
  simulate->set_help_flag("--help", "Print this help message and exit");
  add_model_flags(simulate, sim_opts.model);
  simulate->add_option("--L", sim_opts.L, "Domain length")->capture_default_str();
  simulate->add_option("--N", sim_opts.N, "Grid points (power of two)")->capture_default_str();
  simulate->add_option("--dt", sim_opts.dt, "Time step")->capture_default_str();
  simulate->add_option("--t0", sim_opts.t0, "Start time")->capture_default_str();
  simulate->add_option("--t-end", sim_opts.t_end, "End time")->capture_default_str();
  simulate->add_flag("--snap-k", sim_opts.snap_k, "Snap k to the nearest periodic carrier");
  simulate->add_flag("--dealias", sim_opts.dealias, "Apply the 2/3 rule in linear substeps");
  simulate->add_option("--snapshot-every", sim_opts.snapshot_every, "Field snapshot cadence (0 = off)")
      ->capture_default_str();
  simulate->add_option("--record-every", sim_opts.record_every, "Series cadence in steps")
      ->capture_default_str();
  simulate->add_option("--out", sim_opts.out, "Output prefix")->capture_default_str();

  FigureOptions fig_opts;
  auto* figures = app.add_subcommand("figures", "Emit the datasets of all four figures");
  figures->set_help_flag("--help", "Print this help message and exit");
  add_window_flags(figures, fig_opts.window, true);
  figures->add_option("--out-dir", fig_opts.out_dir, "Output directory")->capture_default_str();

  std::vector<std::string> argv_copy;
  argv_copy.reserve(args.size() + 1);
  argv_copy.push_back("rogonlab");
  argv_copy.insert(argv_copy.end(), args.begin(), args.end());
  std::vector<const char*> cargv;
  for (const auto& a : argv_copy) cargv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  const Context ctx{args, out, err};
  try {
    if (eval->parsed()) return cmd_eval(eval_opts, ctx);
    if (slices->parsed()) return cmd_slices(slice_opts, ctx);
    if (residual->parsed()) return cmd_residual(res_opts, ctx);
    if (simulate->parsed()) return cmd_simulate(sim_opts, ctx);
    if (figures->parsed()) return cmd_figures(fig_opts, ctx);
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidParameter;
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kNumericalAbort;
  } catch (const SingularityError& e) {
    err << "numerical abort: " << e.what() << "\n";
    return kNumericalAbort;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoError;
  }
  return kUsage;
}

}  // namespace rogonlab::cli
