// arsr: adaptive-rate sparse reconstruction CLI.
//
// Subcommands:
//   bounds       print measurement bounds for given quality parameters
//   reconstruct  run background subtraction on a PGM directory
//   simulate     run the synthetic end-to-end sequence
//   phase        Monte Carlo recovery rates for one parameter cell
//
// Flags can also come from a key=value config file via --config; command-line
// flags take precedence over the file, which takes precedence over defaults.

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>

#include "arsr/bounds.hpp"
#include "arsr/phase.hpp"
#include "arsr/pipeline.hpp"

namespace {

void add_run_flags(CLI::App* cmd, arsr::pipeline::RunConfig& rc) {
  cmd->add_option("--delta", rc.delta, "oversampling factor delta_k");
  cmd->add_option("--alpha", rc.alpha, "filter weight in [0,1]");
  cmd->add_option("--s1", rc.s1, "sparsity estimate for frame 1 (0 = derive)");
  cmd->add_option("--s2", rc.s2, "sparsity estimate for frame 2 (0 = derive)");
  cmd->add_option("--gamma", rc.gamma, "motion block size");
  cmd->add_option("--rho", rc.search_range, "motion search range in pixels");
  cmd->add_option("--amplify", rc.amplification, "side-information amplification");
  cmd->add_flag("--noisy", rc.noisy, "bounded-noise acquisition");
  cmd->add_option("--sigma", rc.sigma, "noise norm bound sigma_k");
  cmd->add_option("--tau", rc.tau, "noisy-bound parameter in (0,1)");
  cmd->add_option("--seed", rc.seed, "base seed");
  cmd->add_option("--m-floor", rc.m_floor, "minimum measurement count");
  cmd->add_flag("--median-prefilter", rc.median_prefilter, "3x3 median prefilter");
  cmd->add_option("--output", rc.output_dir, "output directory");
  cmd->add_flag("--emit-frames", rc.emit_frames, "write reconstructed/foreground PGMs");
}

int run_bounds(long n, long s, long xi, long hbar, bool noisy, double tau) {
  arsr::bounds::QualityParams q;
  q.s = s;
  q.xi = xi;
  q.hbar = hbar;
  arsr::bounds::BoundResult l1l1 = arsr::bounds::l1l1_bound(n, q);
  if (noisy) l1l1 = arsr::bounds::noisy_scale(l1l1, tau);
  const arsr::bounds::BoundResult cs = arsr::bounds::cs_bound(n, s);
  std::printf("l1l1 bound:          m = %ld  (raw %.4f)\n", l1l1.m_required, l1l1.raw_bound);
  std::printf("basis pursuit bound: m = %ld  (raw %.4f)\n", cs.m_required, cs.raw_bound);
  return 0;
}

void print_summary(const arsr::pipeline::BgsubResult& res) {
  double total_m = 0.0;
  long worst_k = 0;
  double worst = 0.0;
  for (const auto& fm : res.metrics) {
    total_m += static_cast<double>(fm.m_k);
    if (fm.rec_err > worst) {
      worst = fm.rec_err;
      worst_k = fm.k;
    }
  }
  std::printf("frames: %zu  mean m_k: %.1f  worst rec_err: %.3g (frame %ld)\n",
              res.metrics.size(), total_m / static_cast<double>(res.metrics.size()), worst,
              worst_k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adaptive-rate sparse signal reconstruction"};
  app.require_subcommand(1);

  // bounds
  long bn = 1000, bs = 50, bxi = 0, bhbar = 0;
  bool bnoisy = false;
  double btau = 0.1;
  CLI::App* cmd_bounds = app.add_subcommand("bounds", "print measurement bounds");
  cmd_bounds->set_config("--config", "", "key=value config file");
  cmd_bounds->add_option("--n", bn, "signal length")->required();
  cmd_bounds->add_option("--s", bs, "sparsity")->required();
  cmd_bounds->add_option("--xi", bxi, "xi quality parameter");
  cmd_bounds->add_option("--hbar", bhbar, "hbar quality parameter");
  cmd_bounds->add_flag("--noisy", bnoisy, "apply the noisy-case scaling");
  cmd_bounds->add_option("--tau", btau, "noisy-bound parameter");

  // reconstruct
  arsr::pipeline::RunConfig rec_cfg;
  rec_cfg.output_dir = "out";
  rec_cfg.emit_frames = true;
  CLI::App* cmd_rec = app.add_subcommand("reconstruct", "background subtraction on a PGM dir");
  cmd_rec->set_config("--config", "", "key=value config file");
  cmd_rec->add_option("--input", rec_cfg.input_dir, "directory with background.pgm + frames")
      ->required();
  cmd_rec->add_option("--background", rec_cfg.background_path,
                      "background image (default <input>/background.pgm)");
  add_run_flags(cmd_rec, rec_cfg);

  // simulate
  arsr::pipeline::RunConfig sim_cfg;
  sim_cfg.use_synthetic = true;
  sim_cfg.output_dir = "out";
  CLI::App* cmd_sim = app.add_subcommand("simulate", "synthetic end-to-end run");
  cmd_sim->set_config("--config", "", "key=value config file");
  cmd_sim->add_option("--frames", sim_cfg.synthetic.frames, "number of frames");
  cmd_sim->add_option("--rows", sim_cfg.synthetic.rows, "frame height");
  cmd_sim->add_option("--cols", sim_cfg.synthetic.cols, "frame width");
  cmd_sim->add_option("--object", sim_cfg.synthetic.object_size, "moving-square side");
  cmd_sim->add_option("--vy", sim_cfg.synthetic.velocity_y, "vertical velocity px/frame");
  cmd_sim->add_option("--vx", sim_cfg.synthetic.velocity_x, "horizontal velocity px/frame");
  add_run_flags(cmd_sim, sim_cfg);

  // phase
  arsr::phase::PhaseCell cell{500, 25, 3, 0, 1.0};
  long trials = 50;
  std::uint64_t pseed = 0;
  std::string solver_name = "l1l1";
  CLI::App* cmd_phase = app.add_subcommand("phase", "Monte Carlo recovery rate for one cell");
  cmd_phase->set_config("--config", "", "key=value config file");
  cmd_phase->add_option("--n", cell.n, "signal length");
  cmd_phase->add_option("--s", cell.s, "sparsity");
  cmd_phase->add_option("--hbar", cell.hbar, "hbar");
  cmd_phase->add_option("--xi", cell.xi, "xi (>= 0)");
  cmd_phase->add_option("--mult", cell.m_multiplier, "multiplier on the bound");
  cmd_phase->add_option("--trials", trials, "number of trials");
  cmd_phase->add_option("--seed", pseed, "base seed");
  cmd_phase->add_option("--solver", solver_name, "bp or l1l1")
      ->check(CLI::IsMember({"bp", "l1l1"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_bounds->parsed()) return run_bounds(bn, bs, bxi, bhbar, bnoisy, btau);
    if (cmd_rec->parsed()) {
      print_summary(arsr::pipeline::run_bgsub(rec_cfg));
      return 0;
    }
    if (cmd_sim->parsed()) {
      print_summary(arsr::pipeline::run_bgsub(sim_cfg));
      return 0;
    }
    if (cmd_phase->parsed()) {
      const auto which = (solver_name == "bp") ? arsr::phase::WhichSolver::BasisPursuit
                                               : arsr::phase::WhichSolver::L1L1;
      const auto res = arsr::phase::phase_run(cell, which, trials, pseed);
      std::printf("n=%ld s=%ld hbar=%ld xi=%ld m=%ld trials=%ld success_rate=%.3f\n",
                  res.cell.n, res.cell.s, res.cell.hbar, res.cell.xi, res.m, res.trials,
                  res.success_rate);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
