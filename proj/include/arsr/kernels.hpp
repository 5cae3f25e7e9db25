#pragma once

#include <cstddef>
#include <cstdint>

// Dense inner-loop kernels, each in a serial reference version and an
// OpenMP version. The OpenMP versions are written so that every output
// element is accumulated in the same order as in the serial code, so the
// two variants (and any thread count) produce bit-identical results.
// tests/kernels_test.cpp asserts this; benchmarks/bench_kernels.cpp
// compares their throughput.

namespace arsr::kernels {

// y = A x with A row-major m x n.
void matvec_serial(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
void matvec_omp(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
void matvec(const double* A, std::size_t m, std::size_t n, const double* x, double* y);

// y = A^T x with A row-major m x n (y has length n). Accumulation runs over
// rows in ascending order for every output component in both variants.
void matvec_t_serial(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
void matvec_t_omp(const double* A, std::size_t m, std::size_t n, const double* x, double* y);
void matvec_t(const double* A, std::size_t m, std::size_t n, const double* x, double* y);

// G = A A^T, G row-major m x m symmetric.
void gram_aat_serial(const double* A, std::size_t m, std::size_t n, double* G);
void gram_aat_omp(const double* A, std::size_t m, std::size_t n, double* G);
void gram_aat(const double* A, std::size_t m, std::size_t n, double* G);

// Fill a row-major m x n matrix with i.i.d. N(0, stddev^2) entries. Row r is
// drawn from its own stream seeded by mix_seed(seed, r), which makes the
// result independent of the parallel schedule.
void fill_gaussian_rows_serial(double* A, std::size_t m, std::size_t n, std::uint64_t seed,
                               double stddev);
void fill_gaussian_rows_omp(double* A, std::size_t m, std::size_t n, std::uint64_t seed,
                            double stddev);
void fill_gaussian_rows(double* A, std::size_t m, std::size_t n, std::uint64_t seed,
                        double stddev);

// out_i = soft-threshold(v_i, t): prox of t*|x|.
void soft_threshold_serial(const double* v, std::size_t n, double t, double* out);
void soft_threshold_omp(const double* v, std::size_t n, double t, double* out);
void soft_threshold(const double* v, std::size_t n, double t, double* out);

// out_i = argmin_x |x| + |x - w_i| + (x - v_i)^2 / (2t), componentwise.
void prox_l1l1_serial(const double* v, const double* w, std::size_t n, double t, double* out);
void prox_l1l1_omp(const double* v, const double* w, std::size_t n, double t, double* out);
void prox_l1l1(const double* v, const double* w, std::size_t n, double t, double* out);

double prox_l1l1_scalar(double v, double w, double t);

// Deterministic seed derivation for independent streams.
std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Gaussian stream: xoshiro256++ + polar Box-Muller. One instance per row /
// per logical stream; never shared across threads.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed);
  std::uint64_t bits();
  double uniform();  // in (0,1)
  double next();     // N(0,1)

 private:
  std::uint64_t s_[4];
  bool has_spare_ = false;
  double spare_ = 0.0;
};

int max_threads();

}  // namespace arsr::kernels
