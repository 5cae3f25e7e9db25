#include "arsr/online.hpp"

#include <cmath>
#include <limits>

#include "arsr/kernels.hpp"

namespace arsr::online {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double schedule_at(const std::vector<double>& sched, std::size_t idx) {
  if (sched.empty()) throw ParameterError("online: empty schedule");
  return idx < sched.size() ? sched[idx] : sched.back();
}

long clamp_m(double raw, long m_floor, long n) {
  const double c = std::ceil(raw);
  long m = (c >= static_cast<double>(n)) ? n : static_cast<long>(c);
  return std::min(n, std::max(m_floor, m));
}

// Steps 6/14: the l1-l1 bound at the estimated quality parameters, scaled
// per the noisy-case rule when applicable. Degenerate parameter sets fall
// back to m_floor and are flagged; the loop continues.
double estimate_m_hat(const OnlineConfig& config, const bounds::QualityParams& q,
                      bool* degenerate) {
  *degenerate = false;
  try {
    bounds::BoundResult b = bounds::l1l1_bound(config.n, q, config.m_floor);
    if (config.noisy) b = bounds::noisy_scale(b, config.tau);
    return b.raw_bound;
  } catch (const DegenerateBoundError&) {
    *degenerate = true;
    return static_cast<double>(config.m_floor);
  }
}

solver::SolveReport solve_init(const OnlineConfig& config, const sensing::SensingOperator& A,
                               const SignalVector& y, long k) {
  if (config.noisy)
    return solver::basis_pursuit_noisy(A, y, config.sigma(k), config.solve);
  return solver::basis_pursuit(A, y, config.solve);
}

solver::SolveReport solve_online(const OnlineConfig& config, const sensing::SensingOperator& A,
                                 const SignalVector& y, const SignalVector& w, long k) {
  if (config.noisy)
    return solver::l1l1_min_noisy(A, y, w, config.sigma(k), config.solve, &w);
  return solver::l1l1_min(A, y, w, config.solve, &w);
}

}  // namespace

double OnlineConfig::delta(long k) const {
  return schedule_at(delta_schedule, static_cast<std::size_t>(k - 3));
}

double OnlineConfig::sigma(long k) const {
  return schedule_at(sigma_schedule, static_cast<std::size_t>(k - 1));
}

void OnlineConfig::validate() const {
  if (n < 1) throw ParameterError("online: n must be positive");
  if (alpha < 0.0 || alpha > 1.0) throw ParameterError("online: alpha must be in [0,1]");
  if (s_hat_1 < 1 || s_hat_2 < 1)
    throw ParameterError("online: sparsity estimates must be >= 1");
  if (m_floor < 1) throw ParameterError("online: m_floor must be >= 1");
  if (noisy && (tau <= 0.0 || tau >= 1.0))
    throw ParameterError("online: tau must be in (0,1)");
  if (delta_schedule.empty()) throw ParameterError("online: delta schedule empty");
  for (double d : delta_schedule)
    if (d < 0.0) throw ParameterError("online: delta must be >= 0");
  // surface degenerate initial bounds now rather than mid-run
  bounds::cs_bound(n, s_hat_1, m_floor);
  bounds::cs_bound(n, s_hat_2, m_floor);
}

void init_step(long q, const AcquireFn& acquire, const PredictFn& predict,
               const OnlineConfig& config, OnlineState& state) {
  if (q != 1 && q != 2) throw ParameterError("init_step: q must be 1 or 2");
  if (state.k != q - 1) throw ParameterError("init_step: called out of order");

  const long s_hat_q = (q == 1) ? config.s_hat_1 : config.s_hat_2;
  const bounds::BoundResult b = bounds::cs_bound(config.n, s_hat_q, config.m_floor);
  const long m_q = b.m_required;

  const auto A = sensing::gaussian_operator(m_q, config.n,
                                            config.base_seed + static_cast<std::uint64_t>(q));
  const sensing::MeasurementRecord rec = acquire(q, A);
  const solver::SolveReport rep = solve_init(config, A, rec.y, q);

  StepRecord sr;
  sr.k = q;
  sr.m_k = m_q;
  sr.phi_k = kNaN;
  sr.m_hat = kNaN;
  sr.s_hat = s_hat_q;
  sr.solver_converged = rep.converged;
  sr.solver_iterations = rep.iterations;
  sr.objective = rep.objective;
  sr.oracle_bound_l1l1 = kNaN;
  sr.oracle_bound_cs = kNaN;

  state.reconstructions.push_back(rep.x_hat);
  state.side_infos.emplace_back();  // no side information at init acquisitions
  state.k = q;

  if (q == 2) {
    // w[2] = f_2(x_hat[1]); its quality against x_hat[2] seeds the estimator
    SignalVector w2 = predict(2, state.reconstructions);
    if (w2.size() != config.n) throw DimensionError("init_step: predictor output length");
    bounds::QualityParams qp =
        bounds::quality_params(state.x_hat(2), w2, config.zero_tol);
    sr.xi_hat = qp.xi;
    sr.hbar_hat = qp.hbar;
    // step 6 uses the input sparsity estimate, not the recomputed one
    bounds::QualityParams q_used = qp;
    q_used.s = config.s_hat_2;
    sr.m_hat = estimate_m_hat(config, q_used, &sr.degenerate_bound);
    state.phi = sr.m_hat;  // phi_3, no filtering in Part I
    state.side_infos.back() = std::move(w2);
  }
  state.records.push_back(std::move(sr));
}

void online_step(const PredictFn& predict, const AcquireFn& acquire,
                 const OnlineConfig& config, OnlineState& state) {
  if (state.k < 2) throw ParameterError("online_step: initialization incomplete");
  const long k = state.k + 1;

  StepRecord sr;
  sr.k = k;
  sr.phi_k = state.phi;
  sr.m_k = clamp_m((1.0 + config.delta(k)) * state.phi, config.m_floor, config.n);

  const auto A = sensing::gaussian_operator(sr.m_k, config.n,
                                            config.base_seed + static_cast<std::uint64_t>(k));
  const sensing::MeasurementRecord rec = acquire(k, A);
  SignalVector w = predict(k, state.reconstructions);
  if (w.size() != config.n) throw DimensionError("online_step: predictor output length");

  const solver::SolveReport rep = solve_online(config, A, rec.y, w, k);
  sr.solver_converged = rep.converged;
  sr.solver_iterations = rep.iterations;
  sr.objective = rep.objective;

  const bounds::QualityParams qp = bounds::quality_params(rep.x_hat, w, config.zero_tol);
  sr.s_hat = qp.s;
  sr.xi_hat = qp.xi;
  sr.hbar_hat = qp.hbar;
  sr.m_hat = estimate_m_hat(config, qp, &sr.degenerate_bound);

  state.phi = (1.0 - config.alpha) * state.phi + config.alpha * sr.m_hat;
  state.reconstructions.push_back(rep.x_hat);
  state.side_infos.push_back(std::move(w));
  state.k = k;
  sr.oracle_bound_l1l1 = kNaN;
  sr.oracle_bound_cs = kNaN;
  state.records.push_back(std::move(sr));
}

OnlineState run_sequence(const SignalSource& source, const PredictFn& predict,
                         const OnlineConfig& config, long K) {
  if (K < 3) throw ParameterError("run_sequence: K must be >= 3");
  config.validate();

  AcquireFn acquire = [&](long k, const sensing::SensingOperator& A) {
    sensing::MeasurementRecord rec = sensing::measure(A, source(k), k);
    if (config.noisy) {
      const double sig = config.sigma(k);
      const std::uint64_t noise_seed =
          kernels::mix_seed(config.base_seed ^ 0x6e6f697365ULL, static_cast<std::uint64_t>(k));
      rec = sensing::add_bounded_noise(rec, sig * sig / static_cast<double>(A.m), sig,
                                       noise_seed);
    }
    return rec;
  };

  OnlineState state;
  init_step(1, acquire, predict, config, state);
  init_step(2, acquire, predict, config, state);
  for (long k = 3; k <= K; ++k) online_step(predict, acquire, config, state);

  // oracle diagnostics from the true signals; computed after the fact and
  // never fed back
  for (auto& sr : state.records) {
    const SignalVector x_true = source(sr.k);
    const bounds::QualityParams q_true =
        bounds::quality_params(x_true, x_true, config.zero_tol);  // s only
    try {
      sr.oracle_bound_cs = bounds::cs_bound(config.n, q_true.s, config.m_floor).raw_bound;
    } catch (const DegenerateBoundError&) {
      sr.oracle_bound_cs = kNaN;
    }
    if (sr.k >= 2 && state.side_infos[static_cast<std::size_t>(sr.k - 1)].size() > 0) {
      try {
        bounds::QualityParams qo = bounds::quality_params(
            x_true, state.side_infos[static_cast<std::size_t>(sr.k - 1)], config.zero_tol);
        bounds::BoundResult b = bounds::l1l1_bound(config.n, qo, config.m_floor);
        if (config.noisy) b = bounds::noisy_scale(b, config.tau);
        sr.oracle_bound_l1l1 = b.raw_bound;
      } catch (const DegenerateBoundError&) {
        sr.oracle_bound_l1l1 = kNaN;
      }
    }
  }
  return state;
}

}  // namespace arsr::online
