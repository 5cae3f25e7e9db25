#pragma once

#include <cstdint>

#include "arsr/errors.hpp"
#include "arsr/types.hpp"

namespace arsr::sensing {

// m x n measurement matrix with i.i.d. N(0, 1/m) entries, reproducible from
// its seed. Immutable after creation; products go through the kernels layer.
struct SensingOperator {
  long m = 0;
  long n = 0;
  RowMatrix entries;
  std::uint64_t seed = 0;
  double variance = 0.0;  // 1/m

  SignalVector apply(const SignalVector& x) const;            // A x
  SignalVector apply_transpose(const SignalVector& v) const;  // A^T v
};

SensingOperator gaussian_operator(long m, long n, std::uint64_t seed);

struct MeasurementRecord {
  SignalVector y;
  long frame_index = -1;
  long m_used = 0;
  double noise_norm = 0.0;
};

// y = A x
MeasurementRecord measure(const SensingOperator& A, const SignalVector& x,
                          long frame_index = -1);

// y = A z - A b, computed as two separate products the way the two
// acquisitions u[k] and u^b[k] are taken physically.
MeasurementRecord bg_subtracted_measurements(const SensingOperator& A, const SignalVector& z,
                                             const SignalVector& b, long frame_index = -1);

// Adds i.i.d. N(0, variance) noise; if its l2 norm exceeds sigma_cap the
// noise vector is rescaled to norm sigma_cap before being applied.
MeasurementRecord add_bounded_noise(const MeasurementRecord& rec, double variance,
                                    double sigma_cap, std::uint64_t seed);

}  // namespace arsr::sensing
