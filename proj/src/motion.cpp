#include "arsr/motion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace arsr::motion {

namespace {

constexpr double kTap[6] = {1.0 / 32.0, -5.0 / 32.0, 20.0 / 32.0,
                            20.0 / 32.0, -5.0 / 32.0, 1.0 / 32.0};

inline long clamp_idx(long i, long n) { return std::min(std::max(i, 0L), n - 1); }

Frame replicate_pad(const Frame& f, long block) {
  const long rows = f.rows(), cols = f.cols();
  const long pr = (rows % block == 0) ? rows : (rows / block + 1) * block;
  const long pc = (cols % block == 0) ? cols : (cols / block + 1) * block;
  if (pr == rows && pc == cols) return f;
  Frame out(pr, pc);
  for (long c = 0; c < pc; ++c)
    for (long r = 0; r < pr; ++r)
      out.at(r, c) = f.at(std::min(r, rows - 1), std::min(c, cols - 1));
  return out;
}

// Nearest-integer pixel from a half-pel displacement, ties toward zero.
inline long halfpel_to_pixel(int h) {
  const long a = std::abs(static_cast<long>(h));
  const long p = (a % 2 == 0) ? a / 2 : (a - 1) / 2;
  return (h < 0) ? -p : p;
}

double block_sad(const Frame& cur, const Frame& up_prev, long r0, long c0, long block, int dy,
                 int dx) {
  double sad = 0.0;
  for (long j = 0; j < block; ++j) {
    const long uc = 2 * (c0 + j) - dx;
    for (long i = 0; i < block; ++i) {
      const long ur = 2 * (r0 + i) - dy;
      sad += std::abs(cur.at(r0 + i, c0 + j) - up_prev.at(ur, uc));
    }
  }
  return sad;
}

}  // namespace

Frame half_pel_upsample(const Frame& f, bool clamp_output) {
  const long rows = f.rows(), cols = f.cols();
  if (rows < 1 || cols < 1) throw ParameterError("half_pel_upsample: empty frame");

  // horizontal pass: rows x 2*cols, odd columns are half-pels
  Eigen::MatrixXd h(rows, 2 * cols);
  for (long c = 0; c < cols; ++c)
    for (long r = 0; r < rows; ++r) {
      h(r, 2 * c) = f.at(r, c);
      double acc = 0.0;
      for (int t = 0; t < 6; ++t) acc += kTap[t] * f.at(r, clamp_idx(c - 2 + t, cols));
      h(r, 2 * c + 1) = acc;
    }

  // vertical pass on the horizontal result (diagonals filter the half-pels)
  Frame out(2 * rows, 2 * cols);
  for (long c = 0; c < 2 * cols; ++c)
    for (long r = 0; r < rows; ++r) {
      out.at(2 * r, c) = h(r, c);
      double acc = 0.0;
      for (int t = 0; t < 6; ++t) acc += kTap[t] * h(clamp_idx(r - 2 + t, rows), c);
      out.at(2 * r + 1, c) = acc;
    }

  if (clamp_output)
    out.pixels = out.pixels.cwiseMax(0.0).cwiseMin(1.0);
  return out;
}

MotionField block_match(const Frame& prev, const Frame& cur, long block_size,
                        long search_range) {
  if (prev.rows() != cur.rows() || prev.cols() != cur.cols())
    throw DimensionError("block_match: frame dims differ");
  if (block_size < 1) throw ParameterError("block_match: block_size must be >= 1");
  if (search_range < 0) throw ParameterError("block_match: search_range must be >= 0");

  const Frame p = replicate_pad(prev, block_size);
  const Frame c = replicate_pad(cur, block_size);
  const Frame up = half_pel_upsample(p);
  const long rows = p.rows(), cols = p.cols();

  MotionField field;
  field.block_size = block_size;
  field.grid_rows = rows / block_size;
  field.grid_cols = cols / block_size;
  field.vectors.assign(static_cast<std::size_t>(field.blocks()), {0, 0});
  field.costs.assign(static_cast<std::size_t>(field.blocks()), 0.0);

  const int lim = static_cast<int>(2 * search_range);

#pragma omp parallel for schedule(dynamic, 4)
  for (long g = 0; g < field.blocks(); ++g) {
    const long br = g / field.grid_cols;
    const long bc = g % field.grid_cols;
    const long r0 = br * block_size;
    const long c0 = bc * block_size;
    // keep every sampled half-pel coordinate inside the upsampled frame:
    // 0 <= 2*(r0+i) - dy <= 2*rows - 1 for i in [0, block)
    const int dy_lo =
        static_cast<int>(std::max<long>(-lim, 2 * (r0 + block_size - 1) - 2 * rows + 1));
    const int dy_hi = static_cast<int>(std::min<long>(lim, 2 * r0));
    const int dx_lo =
        static_cast<int>(std::max<long>(-lim, 2 * (c0 + block_size - 1) - 2 * cols + 1));
    const int dx_hi = static_cast<int>(std::min<long>(lim, 2 * c0));

    double best_sad = std::numeric_limits<double>::infinity();
    int best_l1 = 0;
    std::array<int, 2> best{0, 0};
    for (int dy = dy_lo; dy <= dy_hi; ++dy)
      for (int dx = dx_lo; dx <= dx_hi; ++dx) {
        const double sad = block_sad(c, up, r0, c0, block_size, dy, dx);
        const int l1 = std::abs(dy) + std::abs(dx);
        if (sad < best_sad || (sad == best_sad && l1 < best_l1)) {
          best_sad = sad;
          best_l1 = l1;
          best = {dy, dx};
        }
      }
    field.vectors[static_cast<std::size_t>(g)] = best;
    field.costs[static_cast<std::size_t>(g)] = best_sad;
  }
  return field;
}

MotionField smooth_field(const MotionField& field) {
  MotionField out = field;
  for (long br = 0; br < field.grid_rows; ++br)
    for (long bc = 0; bc < field.grid_cols; ++bc) {
      const std::size_t center = static_cast<std::size_t>(br * field.grid_cols + bc);
      // gather the 3x3 neighborhood
      std::vector<std::size_t> hood;
      hood.reserve(9);
      for (long dr = -1; dr <= 1; ++dr)
        for (long dc = -1; dc <= 1; ++dc) {
          const long nr = br + dr, nc = bc + dc;
          if (nr < 0 || nr >= field.grid_rows || nc < 0 || nc >= field.grid_cols) continue;
          hood.push_back(static_cast<std::size_t>(nr * field.grid_cols + nc));
        }
      auto score = [&](const std::array<int, 2>& v) {
        double s = 0.0;
        for (std::size_t j : hood) {
          const double weight = 1.0 / (1.0 + field.costs[j]);
          s += weight * (std::abs(v[0] - field.vectors[j][0]) +
                         std::abs(v[1] - field.vectors[j][1]));
        }
        return s;
      };
      std::array<int, 2> best = field.vectors[center];
      double best_score = score(best);
      for (std::size_t j : hood) {
        if (j == center) continue;
        const double s = score(field.vectors[j]);
        if (s < best_score) {
          best_score = s;
          best = field.vectors[j];
        }
      }
      out.vectors[center] = best;
    }
  return out;
}

Frame extrapolate(const Frame& z_km2, const Frame& z_km1, long block_size, long search_range,
                  ExtrapolateStats* stats) {
  if (z_km2.rows() != z_km1.rows() || z_km2.cols() != z_km1.cols())
    throw DimensionError("extrapolate: frame dims differ");
  const MotionField field = smooth_field(block_match(z_km2, z_km1, block_size, search_range));

  const Frame z1 = replicate_pad(z_km1, block_size);
  const long rows = z1.rows(), cols = z1.cols();
  Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::MatrixXi counts = Eigen::MatrixXi::Zero(rows, cols);

  for (long g = 0; g < field.blocks(); ++g) {
    const long r0 = (g / field.grid_cols) * block_size;
    const long c0 = (g % field.grid_cols) * block_size;
    const auto& v = field.vectors[static_cast<std::size_t>(g)];
    const long vr = halfpel_to_pixel(v[0]);
    const long vc = halfpel_to_pixel(v[1]);
    for (long j = 0; j < block_size; ++j) {
      const long tc = c0 + vc + j;
      if (tc < 0 || tc >= cols) continue;
      for (long i = 0; i < block_size; ++i) {
        const long tr = r0 + vr + i;
        if (tr < 0 || tr >= rows) continue;
        sums(tr, tc) += z1.at(r0 + i, c0 + j);
        counts(tr, tc) += 1;
      }
    }
  }

  Frame e(rows, cols);
  long painted = 0, uncovered = 0;
  // raster scan: covered pixels averaged, holes filled from already-final
  // up/left/up-left values plus the co-located z_km1 pixel
  for (long r = 0; r < rows; ++r)
    for (long c = 0; c < cols; ++c) {
      if (counts(r, c) > 0) {
        e.at(r, c) = sums(r, c) / counts(r, c);
        ++painted;
      } else {
        double acc = z1.at(r, c);
        int refs = 1;
        if (r > 0) {
          acc += e.at(r - 1, c);
          ++refs;
        }
        if (c > 0) {
          acc += e.at(r, c - 1);
          ++refs;
        }
        if (r > 0 && c > 0) {
          acc += e.at(r - 1, c - 1);
          ++refs;
        }
        e.at(r, c) = acc / refs;
        ++uncovered;
      }
    }

  if (stats) {
    stats->painted = painted;
    stats->uncovered = uncovered;
  }
  if (rows != z_km1.rows() || cols != z_km1.cols()) {
    Frame cropped(z_km1.rows(), z_km1.cols());
    cropped.pixels = e.pixels.topLeftCorner(z_km1.rows(), z_km1.cols());
    return cropped;
  }
  return e;
}

SignalVector side_info(const Frame& e, const Frame& b, double amplification) {
  if (e.rows() != b.rows() || e.cols() != b.cols())
    throw DimensionError("side_info: frame dims differ");
  if (amplification < 0.0) throw ParameterError("side_info: amplification must be >= 0");
  Frame diff(e.rows(), e.cols());
  diff.pixels = e.pixels - b.pixels;
  return (1.0 + amplification) * vectorize(diff);
}

Frame median_filter_3x3(const Frame& f) {
  const long rows = f.rows(), cols = f.cols();
  Frame out(rows, cols);
  double window[9];
  for (long c = 0; c < cols; ++c)
    for (long r = 0; r < rows; ++r) {
      int k = 0;
      for (long dc = -1; dc <= 1; ++dc)
        for (long dr = -1; dr <= 1; ++dr)
          window[k++] = f.at(clamp_idx(r + dr, rows), clamp_idx(c + dc, cols));
      std::nth_element(window, window + 4, window + 9);
      out.at(r, c) = window[4];
    }
  return out;
}

}  // namespace arsr::motion
