// Compares the serial reference kernels against their OpenMP versions:
// equality first (bitwise), then throughput. Sizes mirror a typical frame
// solve (n = 128*128, m around the measurement bounds).

#include <chrono>
#include <cstdio>
#include <cstring>
#include <vector>

#include "arsr/kernels.hpp"

namespace k = arsr::kernels;

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double time_ms(F&& fn, int reps) {
  fn();  // warm-up
  const auto t0 = clock_type::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

bool same(const std::vector<double>& a, const std::vector<double>& b) {
  return std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

int main() {
  const std::size_t m = 1024, n = 16384;
  const int reps = 20;
  std::printf("threads: %d, matrix %zu x %zu\n\n", k::max_threads(), m, n);
  std::printf("%-18s %12s %12s %8s %8s\n", "kernel", "serial(ms)", "omp(ms)", "speedup",
              "equal");

  std::vector<double> A(m * n), x(n), xm(m);
  k::fill_gaussian_rows_serial(A.data(), m, n, 42, 1.0);
  k::fill_gaussian_rows_serial(x.data(), 1, n, 43, 1.0);
  k::fill_gaussian_rows_serial(xm.data(), 1, m, 44, 1.0);

  {
    std::vector<double> y1(m), y2(m);
    const double ts = time_ms([&] { k::matvec_serial(A.data(), m, n, x.data(), y1.data()); }, reps);
    const double tp = time_ms([&] { k::matvec_omp(A.data(), m, n, x.data(), y2.data()); }, reps);
    std::printf("%-18s %12.3f %12.3f %7.2fx %8s\n", "matvec", ts, tp, ts / tp,
                same(y1, y2) ? "yes" : "NO");
  }
  {
    std::vector<double> y1(n), y2(n);
    const double ts =
        time_ms([&] { k::matvec_t_serial(A.data(), m, n, xm.data(), y1.data()); }, reps);
    const double tp = time_ms([&] { k::matvec_t_omp(A.data(), m, n, xm.data(), y2.data()); }, reps);
    std::printf("%-18s %12.3f %12.3f %7.2fx %8s\n", "matvec_t", ts, tp, ts / tp,
                same(y1, y2) ? "yes" : "NO");
  }
  {
    const std::size_t mg = 256;
    std::vector<double> G1(mg * mg), G2(mg * mg);
    const double ts = time_ms([&] { k::gram_aat_serial(A.data(), mg, n, G1.data()); }, 3);
    const double tp = time_ms([&] { k::gram_aat_omp(A.data(), mg, n, G2.data()); }, 3);
    std::printf("%-18s %12.3f %12.3f %7.2fx %8s\n", "gram_aat(256)", ts, tp, ts / tp,
                same(G1, G2) ? "yes" : "NO");
  }
  {
    std::vector<double> B1(m * n), B2(m * n);
    const double ts =
        time_ms([&] { k::fill_gaussian_rows_serial(B1.data(), m, n, 7, 0.5); }, 3);
    const double tp = time_ms([&] { k::fill_gaussian_rows_omp(B2.data(), m, n, 7, 0.5); }, 3);
    std::printf("%-18s %12.3f %12.3f %7.2fx %8s\n", "fill_gaussian", ts, tp, ts / tp,
                same(B1, B2) ? "yes" : "NO");
  }
  {
    std::vector<double> w(n), o1(n), o2(n);
    k::fill_gaussian_rows_serial(w.data(), 1, n, 45, 1.0);
    const double ts =
        time_ms([&] { k::prox_l1l1_serial(x.data(), w.data(), n, 0.3, o1.data()); }, 200);
    const double tp =
        time_ms([&] { k::prox_l1l1_omp(x.data(), w.data(), n, 0.3, o2.data()); }, 200);
    std::printf("%-18s %12.3f %12.3f %7.2fx %8s\n", "prox_l1l1", ts, tp, ts / tp,
                same(o1, o2) ? "yes" : "NO");
  }
  return 0;
}
