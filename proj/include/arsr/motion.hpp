#pragma once

#include <array>
#include <vector>

#include "arsr/frame.hpp"

namespace arsr::motion {

// Per-block displacements in half-pel units, over a block grid that covers
// the (padded) frame exactly. vectors[g] = (dy, dx) says the block now at
// grid slot g moved by (dy/2, dx/2) pixels since the previous frame.
struct MotionField {
  long block_size = 0;
  long grid_rows = 0;
  long grid_cols = 0;
  std::vector<std::array<int, 2>> vectors;  // row-major grid, half-pel units
  std::vector<double> costs;                // SAD at the chosen vector

  long blocks() const { return grid_rows * grid_cols; }
};

// 2x upsampling with the H.264/AVC 6-tap kernel (1,-5,20,20,-5,1)/32:
// integer samples are copied through, horizontal half-pels filtered from
// integer columns, diagonal half-pels by filtering the horizontal half-pels
// vertically. Borders replicate. Output values are clamped to [0,1] unless
// clamp_output is false (raw mode for filter-response inspection).
Frame half_pel_upsample(const Frame& f, bool clamp_output = true);

// Forward block matching cur -> prev at half-pel accuracy with SAD metric.
// Ties prefer the smallest |dy|+|dx|, then the earliest candidate in
// row-major scan order. Frames whose dims are not multiples of block_size
// are replicate-padded.
MotionField block_match(const Frame& prev, const Frame& cur, long block_size,
                        long search_range);

// Weighted vector-median filter over the 3x3 block neighborhood with weights
// 1/(1+SAD). Output vectors always come from the input field; ties keep the
// center vector.
MotionField smooth_field(const MotionField& field);

struct ExtrapolateStats {
  long painted = 0;    // pixels hit by at least one predictor
  long uncovered = 0;  // pixels filled by the neighbor rule
};

// Motion-compensated extrapolation: matches z_km2 -> z_km1, smooths the
// field, projects it one step forward, paints z_km1's blocks at their
// projected positions (overlaps averaged), and fills uncovered pixels from
// the up/left/up-left neighbors already set plus the co-located z_km1 pixel.
Frame extrapolate(const Frame& z_km2, const Frame& z_km1, long block_size, long search_range,
                  ExtrapolateStats* stats = nullptr);

// w = (1 + amplification) * vec(e - b)
SignalVector side_info(const Frame& e, const Frame& b, double amplification = 0.3);

// 3x3 median, replicated borders; optional preprocessing for camera noise.
Frame median_filter_3x3(const Frame& f);

}  // namespace arsr::motion
