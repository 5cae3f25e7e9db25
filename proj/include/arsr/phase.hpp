#pragma once

#include <cstdint>
#include <vector>

#include "arsr/solver.hpp"
#include "arsr/types.hpp"

namespace arsr::phase {

enum class WhichSolver { BasisPursuit, L1L1 };

struct PhaseCell {
  long n = 0;
  long s = 0;
  long hbar = 0;
  long xi = 0;
  double m_multiplier = 1.0;  // m = ceil(multiplier * bound)
};

struct PhaseResult {
  PhaseCell cell;
  long m = 0;
  long trials = 0;
  long successes = 0;
  double success_rate = 0.0;
};

// Builds (x*, w) with exactly the requested quality parameters: hbar support
// entries get side information a step short of the signal (sign-mismatched),
// the remaining s - hbar get side information past it, and xi off-support
// entries of w are nonzero. Requires 0 <= hbar <= s, xi >= 0, s + xi < n.
void synthesize_pair(long n, long s, long xi, long hbar, std::uint64_t seed, SignalVector& x,
                     SignalVector& w);

// Monte Carlo recovery rate over seeded trials; success means relative l2
// error below 1e-5. Trials are independent and run in parallel.
PhaseResult phase_run(const PhaseCell& cell, WhichSolver which, long trials,
                      std::uint64_t seed, const solver::SolveSettings& settings = {});

std::vector<PhaseResult> phase_harness(const std::vector<PhaseCell>& cells, WhichSolver which,
                                       long trials, std::uint64_t seed,
                                       const solver::SolveSettings& settings = {});

}  // namespace arsr::phase
