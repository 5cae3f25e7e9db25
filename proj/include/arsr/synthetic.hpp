#pragma once

#include <cstdint>
#include <vector>

#include "arsr/frame.hpp"

namespace arsr::pipeline {

// Deterministic desk-scale stand-in for the real surveillance sequences: a
// static textured background and a bright square translating with
// wrap-around, so the foreground sparsity stays constant while its support
// moves arbitrarily far over time.
struct SyntheticSpec {
  long rows = 64;
  long cols = 64;
  long frames = 60;
  long object_size = 8;
  long velocity_y = 1;  // pixels per frame
  long velocity_x = 0;
  std::uint64_t texture_seed = 7;
  double object_intensity = 0.9;
};

struct SyntheticSequence {
  motion::Frame background;
  std::vector<motion::Frame> frames;          // z[k], k = 1..frames
  std::vector<SignalVector> foregrounds;      // ground truth x[k] = z[k] - b
};

SyntheticSequence generate_synthetic(const SyntheticSpec& spec);

}  // namespace arsr::pipeline
