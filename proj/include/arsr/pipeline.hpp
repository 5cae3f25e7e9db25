#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arsr/csv.hpp"
#include "arsr/frame.hpp"
#include "arsr/online.hpp"
#include "arsr/pgm.hpp"
#include "arsr/synthetic.hpp"

namespace arsr::pipeline {

struct RunConfig {
  // input: a PGM directory, or the synthetic generator when use_synthetic
  std::string input_dir;
  std::string background_path;  // defaults to <input_dir>/background.pgm
  bool use_synthetic = false;
  SyntheticSpec synthetic;

  double alpha = 0.5;
  double delta = 0.1;
  long s1 = 0;  // 0 = derive from the first frame
  long s2 = 0;
  bool noisy = false;
  double tau = 0.1;
  double sigma = 2.0;
  std::uint64_t seed = 0;
  long m_floor = 10;
  double zero_tol = 1e-4;

  long gamma = 8;        // motion block size
  long search_range = 6;
  double amplification = 0.3;
  bool median_prefilter = false;

  std::string output_dir;  // empty = write nothing
  bool emit_frames = false;
  double binarize_tol = 0.05;

  solver::SolveSettings solve;
};

struct BgsubResult {
  std::vector<FrameMetrics> metrics;
  std::vector<motion::Frame> reconstructed;      // z_hat[k] = x_hat[k] + b
  std::vector<motion::Frame> foreground_masks;   // |x_hat| > binarize_tol, fg dark
  std::vector<motion::Frame> estimated;          // e[k] (empty slots for k < 2)
  online::OnlineState state;
};

// The full background-subtraction system: acquisition by background-
// subtracted Gaussian measurements, side information by motion-compensated
// extrapolation of the two previous reconstructions, and the adaptive-rate
// online loop in between. Oracle columns in the metrics come from the input
// frames only and are never fed back.
BgsubResult run_bgsub(const RunConfig& config);

}  // namespace arsr::pipeline
