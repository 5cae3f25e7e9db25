#include "arsr/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace arsr::bounds {

namespace {

long clamp_measurements(double raw, long n, long m_floor) {
  const double c = std::ceil(raw);
  long m = (c >= static_cast<double>(n)) ? n : static_cast<long>(c);
  return std::min(n, std::max(m_floor, m));
}

double effective_sparsity(const QualityParams& q, long n, const char* who) {
  const double u = static_cast<double>(q.s) + static_cast<double>(q.xi) / 2.0;
  if (!(u > 0.0) || !(u < static_cast<double>(n)))
    throw DegenerateBoundError(std::string(who) + ": s + xi/2 outside (0, n)", u);
  return u;
}

double l1l1_raw(long n, double u, long hbar) {
  return 2.0 * static_cast<double>(hbar) * std::log(static_cast<double>(n) / u) +
         7.0 * u / 5.0 + 1.0;
}

// Set sizes for the Laplacian bound: |Sigma|, |Sigma^c ∩ W| and whether
// Sigma^c ∩ W^c is nonempty, all against ambient dimension n.
struct LaplacianSets {
  long size_sigma = 0;
  long w_outside_sigma = 0;
  bool complement_free = false;  // Sigma^c ∩ W^c != {}
};

LaplacianSets laplacian_sets(const LaplacianStats& stats, long n) {
  std::vector<char> in_sigma(static_cast<std::size_t>(n), 0);
  for (Index j : stats.support_sigma) {
    if (j < 0 || j >= n) throw ParameterError("laplacian stats: index out of range");
    in_sigma[static_cast<std::size_t>(j)] = 1;
  }
  LaplacianSets out;
  out.size_sigma = static_cast<long>(stats.support_sigma.size());
  long union_size = out.size_sigma;
  for (Index j : stats.support_w) {
    if (j < 0 || j >= n) throw ParameterError("laplacian stats: index out of range");
    if (!in_sigma[static_cast<std::size_t>(j)]) {
      ++out.w_outside_sigma;
      ++union_size;
    }
  }
  out.complement_free = union_size < n;
  return out;
}

double laplacian_u(const LaplacianSets& sets, long n, const char* who) {
  const double u = static_cast<double>(sets.size_sigma) +
                   static_cast<double>(sets.w_outside_sigma) / 2.0;
  if (!(u > 0.0) || !(u < static_cast<double>(n)))
    throw DegenerateBoundError(std::string(who) + ": |Sigma| + |Sigma^c ∩ W|/2 outside (0, n)",
                               u);
  return u;
}

}  // namespace

QualityParams quality_params(const SignalVector& x_star, const SignalVector& w,
                             double zero_tol) {
  if (x_star.size() != w.size())
    throw DimensionError("quality_params: x_star and w lengths differ");
  if (zero_tol < 0.0) throw ParameterError("quality_params: zero_tol must be >= 0");

  QualityParams q;
  q.zero_tol = zero_tol;
  const Index n = x_star.size();
  for (Index i = 0; i < n; ++i) {
    const double xv = (std::abs(x_star[i]) > zero_tol) ? x_star[i] : 0.0;
    const double wv = (std::abs(w[i]) > zero_tol) ? w[i] : 0.0;
    const bool x_zero = (xv == 0.0);
    const bool w_zero = (wv == 0.0);
    if (!x_zero) ++q.s;
    if (!w_zero && x_zero) ++q.xi;
    if (!x_zero && !w_zero && std::abs(wv - xv) <= zero_tol) {
      --q.xi;
      continue;  // equal entries cannot contribute to hbar
    }
    if (xv > 0.0 && xv > wv + zero_tol) ++q.hbar;
    if (xv < 0.0 && xv < wv - zero_tol) ++q.hbar;
  }
  return q;
}

BoundResult l1l1_bound(long n, const QualityParams& q, long m_floor) {
  if (n < 1) throw ParameterError("l1l1_bound: n must be positive");
  if (q.hbar < 0) throw ParameterError("l1l1_bound: hbar must be >= 0");
  const double u = effective_sparsity(q, n, "l1l1_bound");
  BoundResult b;
  b.raw_bound = l1l1_raw(n, u, q.hbar);
  b.kind = BoundKind::L1L1;
  b.n = n;
  b.m_floor = m_floor;
  b.m_required = clamp_measurements(b.raw_bound, n, m_floor);
  return b;
}

BoundResult cs_bound(long n, long s, long m_floor) {
  if (n < 1) throw ParameterError("cs_bound: n must be positive");
  if (s <= 0) throw DegenerateBoundError("cs_bound: s must be positive", static_cast<double>(s));
  if (s >= n) throw DegenerateBoundError("cs_bound: s must be < n", static_cast<double>(s));
  BoundResult b;
  b.raw_bound = l1l1_raw(n, static_cast<double>(s), s);
  b.kind = BoundKind::BasisPursuit;
  b.n = n;
  b.m_floor = m_floor;
  b.m_required = clamp_measurements(b.raw_bound, n, m_floor);
  return b;
}

BoundResult noisy_scale(const BoundResult& b, double tau) {
  if (b.kind != BoundKind::L1L1)
    throw ParameterError("noisy_scale: input bound must come from l1l1_bound");
  if (!(tau > 0.0) || !(tau < 1.0)) throw ParameterError("noisy_scale: tau must be in (0,1)");
  BoundResult out = b;
  // the bracketed constant becomes 3/2 instead of 1
  out.raw_bound = (b.raw_bound + 0.5) / ((1.0 - tau) * (1.0 - tau));
  out.kind = BoundKind::L1L1Noisy;
  out.m_required = clamp_measurements(out.raw_bound, b.n, b.m_floor);
  return out;
}

double success_probability(long m_lower, long k) {
  if (m_lower < 1) throw ParameterError("success_probability: m_lower must be >= 1");
  if (k < 1) throw ParameterError("success_probability: k must be >= 1");
  const double m = static_cast<double>(m_lower);
  const double d = m - std::sqrt(m);
  const double p = 1.0 - std::exp(-0.5 * d * d);
  return std::pow(p, static_cast<double>(k));
}

double lemma1_min_delta(const QualityParams& q_prev, const QualityParams& q_cur, long n) {
  const double up = effective_sparsity(q_prev, n, "lemma1_min_delta(prev)");
  const double uc = effective_sparsity(q_cur, n, "lemma1_min_delta(cur)");
  const double nd = static_cast<double>(n);
  const double hp = static_cast<double>(q_prev.hbar);
  const double hc = static_cast<double>(q_cur.hbar);
  const double num = 2.0 * (hc * std::log(nd / uc) - hp * std::log(nd / up)) +
                     7.0 * (uc - up) / 5.0;
  const double den = 2.0 * hp * std::log(nd / up) + 7.0 * up / 5.0 + 1.0;
  return num / den;
}

std::pair<double, double> interpretation_constants(const QualityParams& q_prev,
                                                   const QualityParams& q_cur, long n) {
  const double up = effective_sparsity(q_prev, n, "interpretation_constants(prev)");
  const double uc = effective_sparsity(q_cur, n, "interpretation_constants(cur)");
  if (n < 2) throw ParameterError("interpretation_constants: n must be >= 2");
  const double hp = static_cast<double>(q_prev.hbar);
  const double hc = static_cast<double>(q_cur.hbar);
  const double two_log_n = 2.0 * std::log(static_cast<double>(n));
  const double c1 =
      (2.0 * hp * std::log(up) - 2.0 * hc * std::log(uc) + 7.0 * (uc - up) / 5.0) / two_log_n;
  const double c2 = (7.0 * up / 5.0 + 1.0 - 2.0 * hp * std::log(up)) / two_log_n;
  return {c1, c2};
}

LaplacianStats laplacian_mu(const SignalVector& w, const Eigen::VectorXd& sigma, double t) {
  if (w.size() != sigma.size()) throw DimensionError("laplacian_mu: w and sigma lengths differ");
  if (!(t > 1.0)) throw ParameterError("laplacian_mu: t must be > 1");
  LaplacianStats st;
  st.sigma = sigma;
  st.t = t;
  const Index n = w.size();
  double mu = 0.0;
  for (Index j = 0; j < n; ++j) {
    if (sigma[j] < 0.0) throw ParameterError("laplacian_mu: sigma must be >= 0");
    if (w[j] != 0.0) st.support_w.push_back(j);
    if (sigma[j] > 0.0) {
      st.support_sigma.push_back(j);
      mu += 0.5 * (1.0 + std::exp(-std::sqrt(2.0) * std::abs(w[j]) / sigma[j]));
    }
  }
  st.mu = mu;
  return st;
}

BoundResult laplacian_bound(long n, const LaplacianStats& stats, long m_floor) {
  if (n < 1) throw ParameterError("laplacian_bound: n must be positive");
  if (!(stats.t > 1.0)) throw ParameterError("laplacian_bound: t must be > 1");
  const LaplacianSets sets = laplacian_sets(stats, n);
  if (!sets.complement_free)
    throw AssumptionError("laplacian_bound: Sigma^c ∩ W^c is empty");
  const double u = laplacian_u(sets, n, "laplacian_bound");
  BoundResult b;
  b.raw_bound = 2.0 * (stats.mu + stats.t) * std::log(static_cast<double>(n) / u) +
                7.0 * u / 5.0 + 1.0;
  b.kind = BoundKind::Laplacian;
  b.n = n;
  b.m_floor = m_floor;
  b.m_required = clamp_measurements(b.raw_bound, n, m_floor);
  return b;
}

double laplacian_success_probability(const LaplacianStats& stats, long m) {
  const double size_sigma = static_cast<double>(stats.support_sigma.size());
  if (size_sigma < 1.0)
    throw ParameterError("laplacian_success_probability: Sigma must be nonempty");
  if (m < 1) throw ParameterError("laplacian_success_probability: m must be >= 1");
  const double md = static_cast<double>(m);
  const double d = md - std::sqrt(md);
  const double first = 1.0 - std::exp(-0.5 * d * d);
  const double second = 1.0 - std::exp(-2.0 * stats.mu * stats.mu / size_sigma) -
                        std::exp(-2.0 * (stats.t - 1.0) * (stats.t - 1.0) / size_sigma);
  return first * second;
}

CorollaryDelta corollary_delta(const LaplacianStats& prev, const LaplacianStats& cur, long n) {
  const LaplacianSets sp = laplacian_sets(prev, n);
  const LaplacianSets sc = laplacian_sets(cur, n);
  const double up = laplacian_u(sp, n, "corollary_delta(prev)");
  const double uc = laplacian_u(sc, n, "corollary_delta(cur)");
  if (sp.size_sigma == 0) throw ParameterError("corollary_delta: previous Sigma empty");
  const double nd = static_cast<double>(n);
  const double ap = prev.mu + prev.t;
  const double ac = cur.mu + cur.t;
  CorollaryDelta out;
  out.exact = (2.0 * (ac * std::log(nd / uc) - ap * std::log(nd / up)) +
               7.0 * (uc - up) / 5.0) /
              (2.0 * ap * std::log(nd / up) + 7.0 * up / 5.0 + 1.0);
  const double kappa =
      static_cast<double>(sc.size_sigma) / static_cast<double>(sp.size_sigma);
  out.approx = 2.0 * kappa - 1.0;
  return out;
}

}  // namespace arsr::bounds
