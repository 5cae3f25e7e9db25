#pragma once

#include <functional>
#include <vector>

#include "arsr/bounds.hpp"
#include "arsr/sensing.hpp"
#include "arsr/solver.hpp"
#include "arsr/types.hpp"

namespace arsr::online {

struct OnlineConfig {
  long n = 0;
  double alpha = 0.5;                       // filter weight, in [0,1]
  std::vector<double> delta_schedule{0.1};  // delta_k for k >= 3; last value repeats
  long s_hat_1 = 1;
  long s_hat_2 = 1;
  bool noisy = false;
  double tau = 0.1;                         // noisy mode, in (0,1)
  std::vector<double> sigma_schedule{2.0};  // sigma_k; last value repeats
  std::uint64_t base_seed = 0;
  long m_floor = 10;
  double zero_tol = 1e-4;  // quality-parameter classification on [0,1] signals
  solver::SolveSettings solve;

  double delta(long k) const;  // k >= 3
  double sigma(long k) const;  // k >= 1

  void validate() const;
};

struct StepRecord {
  long k = 0;
  long m_k = 0;
  double phi_k = 0.0;  // NaN for k < 3
  double m_hat = 0.0;  // NaN for k = 1
  long s_hat = 0;      // input estimate for k <= 2, recomputed sparsity after
  long xi_hat = 0;
  long hbar_hat = 0;
  bool degenerate_bound = false;
  bool solver_converged = true;
  long solver_iterations = 0;
  double objective = 0.0;
  // oracle diagnostics, filled by harnesses that know the true signal; never
  // read by the algorithm itself
  double oracle_bound_l1l1 = 0.0;  // NaN when unavailable
  double oracle_bound_cs = 0.0;    // NaN when unavailable
};

struct OnlineState {
  long k = 0;        // completed time instants
  double phi = 0.0;  // phi_{k+1}, valid once k >= 2
  std::vector<SignalVector> reconstructions;  // x_hat[1..k]
  std::vector<SignalVector> side_infos;       // w[2..k] (slot 0 unused, slot 1 empty)
  std::vector<StepRecord> records;

  const SignalVector& x_hat(long k_idx) const { return reconstructions.at(k_idx - 1); }
};

// Acquisition callback: given the time index and the fresh operator, returns
// the measurements of x[k] (for video this is the background-subtracted
// record of Eq-10 shape, possibly with bounded noise).
using AcquireFn = std::function<sensing::MeasurementRecord(long k, const sensing::SensingOperator&)>;

// Side-information callback: w[k] = f_k({x_hat[i]}).
using PredictFn = std::function<SignalVector(long k, const std::vector<SignalVector>& x_hats)>;

// Part I, time instant q in {1,2}: basis pursuit at the initial-sparsity
// bound. After q = 2, computes the quality of w[2] against x_hat[2] and
// seeds phi_3.
void init_step(long q, const AcquireFn& acquire, const PredictFn& predict,
               const OnlineConfig& config, OnlineState& state);

// Part II, one time instant k = state.k + 1 (k >= 3).
void online_step(const PredictFn& predict, const AcquireFn& acquire,
                 const OnlineConfig& config, OnlineState& state);

// Runs Part I then K-2 online steps against a synthetic source of true
// signals; measurement acquisition (and bounded noise in noisy mode) is
// wired internally, and per-step oracle diagnostics are filled in.
using SignalSource = std::function<SignalVector(long k)>;
OnlineState run_sequence(const SignalSource& source, const PredictFn& predict,
                         const OnlineConfig& config, long K);

}  // namespace arsr::online
