#include "arsr/synthetic.hpp"

#include "arsr/kernels.hpp"

namespace arsr::pipeline {

SyntheticSequence generate_synthetic(const SyntheticSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1 || spec.frames < 1)
    throw ParameterError("generate_synthetic: dims and frame count must be positive");
  if (spec.object_size < 1 || spec.object_size > spec.rows || spec.object_size > spec.cols)
    throw ParameterError("generate_synthetic: object does not fit in the frame");

  SyntheticSequence seq;
  seq.background = motion::Frame(spec.rows, spec.cols);
  kernels::GaussianStream g(kernels::mix_seed(spec.texture_seed, 0x7465787475726531ULL));
  for (long c = 0; c < spec.cols; ++c)
    for (long r = 0; r < spec.rows; ++r)
      seq.background.at(r, c) = 0.1 + 0.6 * g.uniform();

  seq.frames.reserve(static_cast<std::size_t>(spec.frames));
  seq.foregrounds.reserve(static_cast<std::size_t>(spec.frames));
  for (long k = 1; k <= spec.frames; ++k) {
    motion::Frame z = seq.background;
    const long r0 = ((k - 1) * spec.velocity_y) % spec.rows;
    const long c0 = ((k - 1) * spec.velocity_x) % spec.cols;
    for (long j = 0; j < spec.object_size; ++j) {
      const long c = (((c0 + j) % spec.cols) + spec.cols) % spec.cols;
      for (long i = 0; i < spec.object_size; ++i) {
        const long r = (((r0 + i) % spec.rows) + spec.rows) % spec.rows;
        z.at(r, c) = spec.object_intensity;
      }
    }
    seq.foregrounds.push_back(motion::vectorize(z) - motion::vectorize(seq.background));
    seq.frames.push_back(std::move(z));
  }
  return seq;
}

}  // namespace arsr::pipeline
