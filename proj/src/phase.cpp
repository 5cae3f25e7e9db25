#include "arsr/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "arsr/bounds.hpp"
#include "arsr/kernels.hpp"
#include "arsr/sensing.hpp"

namespace arsr::phase {

void synthesize_pair(long n, long s, long xi, long hbar, std::uint64_t seed, SignalVector& x,
                     SignalVector& w) {
  if (s < 1 || s >= n) throw ParameterError("synthesize_pair: need 1 <= s < n");
  if (hbar < 0 || hbar > s) throw ParameterError("synthesize_pair: need 0 <= hbar <= s");
  if (xi < 0 || s + xi >= n)
    throw ParameterError("synthesize_pair: need 0 <= xi and s + xi < n");

  kernels::GaussianStream g(kernels::mix_seed(seed, 0x70616972ULL));
  std::vector<long> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0L);
  for (long i = n - 1; i > 0; --i) {
    const long j = static_cast<long>(g.bits() % static_cast<std::uint64_t>(i + 1));
    std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  }

  x = SignalVector::Zero(n);
  w = SignalVector::Zero(n);
  for (long i = 0; i < s; ++i) {
    const long idx = perm[static_cast<std::size_t>(i)];
    const double sign = (g.bits() & 1) ? 1.0 : -1.0;
    const double mag = 0.5 + g.uniform();
    const double step = 0.25 + 0.5 * g.uniform();
    x[idx] = sign * mag;
    // first hbar entries: w falls short of x (bad); the rest overshoot (good)
    w[idx] = (i < hbar) ? x[idx] - sign * step : x[idx] + sign * step;
  }
  for (long i = 0; i < xi; ++i) {
    const long idx = perm[static_cast<std::size_t>(s + i)];
    const double sign = (g.bits() & 1) ? 1.0 : -1.0;
    w[idx] = sign * (0.5 + g.uniform());
  }
}

PhaseResult phase_run(const PhaseCell& cell, WhichSolver which, long trials,
                      std::uint64_t seed, const solver::SolveSettings& settings) {
  if (trials < 1) throw ParameterError("phase_run: trials must be >= 1");
  bounds::BoundResult b;
  if (which == WhichSolver::BasisPursuit) {
    b = bounds::cs_bound(cell.n, cell.s);
  } else {
    bounds::QualityParams q;
    q.s = cell.s;
    q.xi = cell.xi;
    q.hbar = cell.hbar;
    b = bounds::l1l1_bound(cell.n, q);
  }
  const long m = std::min(
      cell.n, std::max(1L, static_cast<long>(std::ceil(cell.m_multiplier * b.raw_bound))));

  std::vector<char> ok(static_cast<std::size_t>(trials), 0);
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < trials; ++t) {
    SignalVector x, w;
    synthesize_pair(cell.n, cell.s, cell.xi, cell.hbar, kernels::mix_seed(seed, 2 * t), x, w);
    const auto A =
        sensing::gaussian_operator(m, cell.n, kernels::mix_seed(seed, 2 * t + 1));
    const SignalVector y = A.apply(x);
    solver::SolveReport rep = (which == WhichSolver::BasisPursuit)
                                  ? solver::basis_pursuit(A, y, settings)
                                  : solver::l1l1_min(A, y, w, settings);
    const double rel = (rep.x_hat - x).norm() / x.norm();
    ok[static_cast<std::size_t>(t)] = rel < 1e-5;
  }

  PhaseResult out;
  out.cell = cell;
  out.m = m;
  out.trials = trials;
  out.successes = std::count(ok.begin(), ok.end(), char(1));
  out.success_rate = static_cast<double>(out.successes) / static_cast<double>(trials);
  return out;
}

std::vector<PhaseResult> phase_harness(const std::vector<PhaseCell>& cells, WhichSolver which,
                                       long trials, std::uint64_t seed,
                                       const solver::SolveSettings& settings) {
  std::vector<PhaseResult> out;
  out.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    out.push_back(phase_run(cells[i], which, trials, kernels::mix_seed(seed, i), settings));
  return out;
}

}  // namespace arsr::phase
