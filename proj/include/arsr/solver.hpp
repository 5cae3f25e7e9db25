#pragma once

#include "arsr/sensing.hpp"
#include "arsr/types.hpp"

namespace arsr::solver {

struct SolveSettings {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  long max_iters = 20000;
  double penalty = 1.0;          // ADMM rho, adapted by residual balancing
  double over_relaxation = 1.0;  // in [1, 2); >1 slows this problem family down
};

struct SolveReport {
  SignalVector x_hat;
  long iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  bool converged = false;
};

// Componentwise minimizer of |x| + |x - w_j| + (x - v_j)^2 / (2t).
SignalVector prox_l1l1(const SignalVector& v, const SignalVector& w, double t);

// min ||x||_1  s.t.  A x = y
SolveReport basis_pursuit(const sensing::SensingOperator& A, const SignalVector& y,
                          const SolveSettings& settings = {},
                          const SignalVector* warm_start = nullptr);

// min ||x||_1 + ||x - w||_1  s.t.  A x = y
SolveReport l1l1_min(const sensing::SensingOperator& A, const SignalVector& y,
                     const SignalVector& w, const SolveSettings& settings = {},
                     const SignalVector* warm_start = nullptr);

// min ||x||_1 + ||x - w||_1  s.t.  ||A x - y||_2 <= sigma_noise
SolveReport l1l1_min_noisy(const sensing::SensingOperator& A, const SignalVector& y,
                           const SignalVector& w, double sigma_noise,
                           const SolveSettings& settings = {},
                           const SignalVector* warm_start = nullptr);

// min ||x||_1  s.t.  ||A x - y||_2 <= sigma_noise
SolveReport basis_pursuit_noisy(const sensing::SensingOperator& A, const SignalVector& y,
                                double sigma_noise, const SolveSettings& settings = {},
                                const SignalVector* warm_start = nullptr);

}  // namespace arsr::solver
