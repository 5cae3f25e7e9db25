#include "arsr/sensing.hpp"

#include <cmath>

#include "arsr/kernels.hpp"

namespace arsr::sensing {

SignalVector SensingOperator::apply(const SignalVector& x) const {
  if (x.size() != n) throw DimensionError("SensingOperator::apply: x has wrong length");
  SignalVector y(m);
  kernels::matvec(entries.data(), static_cast<std::size_t>(m), static_cast<std::size_t>(n),
                  x.data(), y.data());
  return y;
}

SignalVector SensingOperator::apply_transpose(const SignalVector& v) const {
  if (v.size() != m)
    throw DimensionError("SensingOperator::apply_transpose: v has wrong length");
  SignalVector x(n);
  kernels::matvec_t(entries.data(), static_cast<std::size_t>(m), static_cast<std::size_t>(n),
                    v.data(), x.data());
  return x;
}

SensingOperator gaussian_operator(long m, long n, std::uint64_t seed) {
  if (m < 1 || n < 1) throw ParameterError("gaussian_operator: m and n must be positive");
  if (m > n) throw ParameterError("gaussian_operator: m must not exceed n");
  SensingOperator A;
  A.m = m;
  A.n = n;
  A.seed = seed;
  A.variance = 1.0 / static_cast<double>(m);
  A.entries.resize(m, n);
  kernels::fill_gaussian_rows(A.entries.data(), static_cast<std::size_t>(m),
                              static_cast<std::size_t>(n), seed, std::sqrt(A.variance));
  return A;
}

MeasurementRecord measure(const SensingOperator& A, const SignalVector& x, long frame_index) {
  MeasurementRecord rec;
  rec.y = A.apply(x);
  rec.frame_index = frame_index;
  rec.m_used = A.m;
  return rec;
}

MeasurementRecord bg_subtracted_measurements(const SensingOperator& A, const SignalVector& z,
                                             const SignalVector& b, long frame_index) {
  if (z.size() != A.n || b.size() != A.n)
    throw DimensionError("bg_subtracted_measurements: z or b has wrong length");
  const SignalVector u = A.apply(z);
  const SignalVector ub = A.apply(b);
  MeasurementRecord rec;
  rec.y = u - ub;
  rec.frame_index = frame_index;
  rec.m_used = A.m;
  return rec;
}

MeasurementRecord add_bounded_noise(const MeasurementRecord& rec, double variance,
                                    double sigma_cap, std::uint64_t seed) {
  if (variance < 0.0) throw ParameterError("add_bounded_noise: variance must be >= 0");
  if (sigma_cap < 0.0) throw ParameterError("add_bounded_noise: sigma_cap must be >= 0");
  MeasurementRecord out = rec;
  if (variance == 0.0) {
    out.noise_norm = 0.0;
    return out;
  }
  const Index m = rec.y.size();
  SignalVector eta(m);
  kernels::GaussianStream g(kernels::mix_seed(seed, 0x6e6f697365ULL));
  const double stddev = std::sqrt(variance);
  for (Index i = 0; i < m; ++i) eta[i] = stddev * g.next();
  const double norm = eta.norm();
  if (norm > sigma_cap) eta *= (norm > 0.0 ? sigma_cap / norm : 0.0);
  out.y = rec.y + eta;
  out.noise_norm = eta.norm();
  return out;
}

}  // namespace arsr::sensing
