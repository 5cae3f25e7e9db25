#pragma once

#include <utility>
#include <vector>

#include "arsr/errors.hpp"
#include "arsr/types.hpp"

namespace arsr::bounds {

enum class BoundKind { BasisPursuit, L1L1, L1L1Noisy, Laplacian };

// Side-information quality of w against a target signal x*:
//   s    = |{i : x_i != 0}|
//   xi   = |{i : w_i != 0, x_i = 0}| - |{i : w_i = x_i != 0}|
//   hbar = |{i : x_i > 0, x_i > w_i}  u  {i : x_i < 0, x_i < w_i}|
// All classifications use zero_tol: a value with |v| <= zero_tol counts as
// zero, and two nonzeros within zero_tol of each other count as equal. This
// keeps the counts stable against solver-precision noise in reconstructed
// signals.
struct QualityParams {
  long s = 0;
  long xi = 0;
  long hbar = 0;
  double zero_tol = 0.0;
};

struct BoundResult {
  double raw_bound = 0.0;  // right-hand side of the bound, before rounding
  long m_required = 0;     // min(n, max(m_floor, ceil(raw_bound)))
  BoundKind kind = BoundKind::L1L1;
  long n = 0;
  long m_floor = 1;
};

// Per-component Laplacian model of the prediction residual: sigma_j is the
// standard deviation sqrt(2)/lambda_j of component j.
struct LaplacianStats {
  Eigen::VectorXd sigma;                 // may be empty when built from set sizes
  std::vector<Index> support_sigma;      // Sigma = {j : sigma_j != 0}
  std::vector<Index> support_w;          // W = {j : w_j != 0}
  double mu = 0.0;
  double t = 2.0;                        // free parameter, > 1
};

QualityParams quality_params(const SignalVector& x_star, const SignalVector& w,
                             double zero_tol = 1e-6);

// m >= 2*hbar*ln(n/(s + xi/2)) + (7/5)(s + xi/2) + 1
BoundResult l1l1_bound(long n, const QualityParams& q, long m_floor = 1);

// m >= 2*s*ln(n/s) + (7/5)s + 1
BoundResult cs_bound(long n, long s, long m_floor = 1);

// Noisy-measurement variant: the bracketed term keeps its log and linear
// parts but the additive constant becomes 3/2, and the whole bracket is
// scaled by 1/(1-tau)^2.
BoundResult noisy_scale(const BoundResult& b, double tau);

// (1 - exp(-(m - sqrt(m))^2 / 2))^k: probability that a length-k sequence is
// reconstructed perfectly when every step uses at least m_lower measurements.
double success_probability(long m_lower, long k);

// Smallest oversampling delta_i for which (1+delta_i) * bound(prev) >=
// bound(cur); equals bound(cur)/bound(prev) - 1, evaluated here in its
// explicit quotient form so the two routes can be cross-checked.
double lemma1_min_delta(const QualityParams& q_prev, const QualityParams& q_cur, long n);

// (c1(n), c2(n)) such that lemma1_min_delta equals
// (hbar_cur - hbar_prev + c1) / (hbar_prev + c2).
std::pair<double, double> interpretation_constants(const QualityParams& q_prev,
                                                   const QualityParams& q_cur, long n);

// mu = (1/2) sum_{j in Sigma} [1 + exp(-sqrt(2)|w_j|/sigma_j)], with the
// support sets populated from w and sigma.
LaplacianStats laplacian_mu(const SignalVector& w, const Eigen::VectorXd& sigma,
                            double t = 2.0);

// m >= 2(mu+t)*ln(n/u) + (7/5)u + 1 with u = |Sigma| + |Sigma^c ∩ W|/2.
// Requires Sigma^c ∩ W^c nonempty.
BoundResult laplacian_bound(long n, const LaplacianStats& stats, long m_floor = 1);

// Probability lower bound attached to laplacian_bound:
// [1 - exp(-(m-sqrt(m))^2/2)] * [1 - exp(-2 mu^2/|Sigma|) - exp(-2(t-1)^2/|Sigma|)].
double laplacian_success_probability(const LaplacianStats& stats, long m);

struct CorollaryDelta {
  double exact = 0.0;   // quotient form analogous to lemma1_min_delta
  double approx = 0.0;  // 2*kappa - 1 with kappa = |Sigma_cur| / |Sigma_prev|
};

CorollaryDelta corollary_delta(const LaplacianStats& prev, const LaplacianStats& cur, long n);

}  // namespace arsr::bounds
