#pragma once

#include <limits>
#include <string>
#include <vector>

namespace arsr::pipeline {

// Marks a counter cell with no value at that frame (e.g. xi before k=2).
inline constexpr long kNoCount = std::numeric_limits<long>::min();

// One CSV row per frame. NaN doubles, negative s_hat and kNoCount counters
// serialize as empty cells: those quantities are undefined at that frame.
struct FrameMetrics {
  long k = 0;
  long m_k = 0;
  double phi_k = 0.0;
  double bound_l1l1_oracle = 0.0;
  double bound_cs_oracle = 0.0;
  double est_err = 0.0;
  double rec_err = 0.0;
  long s_hat = -1;
  long xi_hat = kNoCount;
  long hbar_hat = kNoCount;
  std::string flags;
};

extern const char* const kCsvHeader;

void write_csv(const std::vector<FrameMetrics>& metrics, const std::string& path);
std::vector<FrameMetrics> read_csv(const std::string& path);

}  // namespace arsr::pipeline
