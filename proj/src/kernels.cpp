#include "arsr/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace arsr::kernels {

namespace {
constexpr std::size_t kColChunk = 512;  // j-tile for the transpose product
}

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// ---------------------------------------------------------------------------
// seeding / random streams
// ---------------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL));
}

GaussianStream::GaussianStream(std::uint64_t seed) {
  std::uint64_t x = seed;
  for (auto& w : s_) {
    x = splitmix64(x);
    w = x;
  }
}

static inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

std::uint64_t GaussianStream::bits() {
  // xoshiro256++
  const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double GaussianStream::uniform() {
  return (static_cast<double>(bits() >> 11) + 0.5) * 0x1.0p-53;
}

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

// ---------------------------------------------------------------------------
// y = A x
// ---------------------------------------------------------------------------

static inline double dot_row(const double* row, const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
  return acc;
}

void matvec_serial(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  for (std::size_t i = 0; i < m; ++i) y[i] = dot_row(A + i * n, x, n);
}

void matvec_omp(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) y[i] = dot_row(A + i * n, x, n);
}

void matvec(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  if (max_threads() > 1 && m >= 64)
    matvec_omp(A, m, n, x, y);
  else
    matvec_serial(A, m, n, x, y);
}

// ---------------------------------------------------------------------------
// y = A^T x
// ---------------------------------------------------------------------------

static inline void accumulate_cols(const double* A, std::size_t m, std::size_t n,
                                   const double* x, double* y, std::size_t j0, std::size_t j1) {
  for (std::size_t j = j0; j < j1; ++j) y[j] = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double xi = x[i];
    const double* row = A + i * n;
    for (std::size_t j = j0; j < j1; ++j) y[j] += xi * row[j];
  }
}

void matvec_t_serial(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  for (std::size_t j0 = 0; j0 < n; j0 += kColChunk)
    accumulate_cols(A, m, n, x, y, j0, std::min(n, j0 + kColChunk));
}

void matvec_t_omp(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  const std::size_t chunks = (n + kColChunk - 1) / kColChunk;
#pragma omp parallel for schedule(static)
  for (std::size_t c = 0; c < chunks; ++c) {
    const std::size_t j0 = c * kColChunk;
    accumulate_cols(A, m, n, x, y, j0, std::min(n, j0 + kColChunk));
  }
}

void matvec_t(const double* A, std::size_t m, std::size_t n, const double* x, double* y) {
  if (max_threads() > 1 && n >= 2 * kColChunk)
    matvec_t_omp(A, m, n, x, y);
  else
    matvec_t_serial(A, m, n, x, y);
}

// ---------------------------------------------------------------------------
// G = A A^T
// ---------------------------------------------------------------------------

static inline void gram_row(const double* A, std::size_t /*m*/, std::size_t n, double* G,
                            std::size_t ldg, std::size_t i) {
  const double* ri = A + i * n;
  for (std::size_t k = 0; k <= i; ++k) {
    const double v = dot_row(ri, A + k * n, n);
    G[i * ldg + k] = v;
    G[k * ldg + i] = v;
  }
}

void gram_aat_serial(const double* A, std::size_t m, std::size_t n, double* G) {
  for (std::size_t i = 0; i < m; ++i) gram_row(A, m, n, G, m, i);
}

void gram_aat_omp(const double* A, std::size_t m, std::size_t n, double* G) {
#pragma omp parallel for schedule(dynamic, 8)
  for (std::size_t i = 0; i < m; ++i) gram_row(A, m, n, G, m, i);
}

void gram_aat(const double* A, std::size_t m, std::size_t n, double* G) {
  if (max_threads() > 1 && m >= 32)
    gram_aat_omp(A, m, n, G);
  else
    gram_aat_serial(A, m, n, G);
}

// ---------------------------------------------------------------------------
// Gaussian fill
// ---------------------------------------------------------------------------

static inline void fill_row(double* row, std::size_t n, std::uint64_t row_seed, double stddev) {
  GaussianStream g(row_seed);
  for (std::size_t j = 0; j < n; ++j) row[j] = stddev * g.next();
}

void fill_gaussian_rows_serial(double* A, std::size_t m, std::size_t n, std::uint64_t seed,
                               double stddev) {
  for (std::size_t i = 0; i < m; ++i) fill_row(A + i * n, n, mix_seed(seed, i), stddev);
}

void fill_gaussian_rows_omp(double* A, std::size_t m, std::size_t n, std::uint64_t seed,
                            double stddev) {
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < m; ++i) fill_row(A + i * n, n, mix_seed(seed, i), stddev);
}

void fill_gaussian_rows(double* A, std::size_t m, std::size_t n, std::uint64_t seed,
                        double stddev) {
  if (max_threads() > 1 && m >= 64)
    fill_gaussian_rows_omp(A, m, n, seed, stddev);
  else
    fill_gaussian_rows_serial(A, m, n, seed, stddev);
}

// ---------------------------------------------------------------------------
// pointwise proximal maps
// ---------------------------------------------------------------------------

static inline double soft(double v, double t) {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

void soft_threshold_serial(const double* v, std::size_t n, double t, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = soft(v[j], t);
}

void soft_threshold_omp(const double* v, std::size_t n, double t, double* out) {
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) out[j] = soft(v[j], t);
}

void soft_threshold(const double* v, std::size_t n, double t, double* out) {
  if (max_threads() > 1 && n >= 4096)
    soft_threshold_omp(v, n, t, out);
  else
    soft_threshold_serial(v, n, t, out);
}

double prox_l1l1_scalar(double v, double w, double t) {
  // For w >= 0 the objective |x| + |x - w| has slope -2 on x < 0, 0 on
  // (0, w), +2 on x > w; the quadratic term pulls v onto the nearest flat
  // or kink. Mirror for w < 0.
  if (w < 0.0) return -prox_l1l1_scalar(-v, -w, t);
  const double t2 = 2.0 * t;
  if (v < -t2) return v + t2;
  if (v <= 0.0) return 0.0;
  if (v < w) return v;
  if (v <= w + t2) return w;
  return v - t2;
}

void prox_l1l1_serial(const double* v, const double* w, std::size_t n, double t, double* out) {
  for (std::size_t j = 0; j < n; ++j) out[j] = prox_l1l1_scalar(v[j], w[j], t);
}

void prox_l1l1_omp(const double* v, const double* w, std::size_t n, double t, double* out) {
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) out[j] = prox_l1l1_scalar(v[j], w[j], t);
}

void prox_l1l1(const double* v, const double* w, std::size_t n, double t, double* out) {
  if (max_threads() > 1 && n >= 4096)
    prox_l1l1_omp(v, w, n, t, out);
  else
    prox_l1l1_serial(v, w, n, t, out);
}

}  // namespace arsr::kernels
