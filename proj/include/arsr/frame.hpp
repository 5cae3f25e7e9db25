#pragma once

#include "arsr/errors.hpp"
#include "arsr/types.hpp"

namespace arsr::motion {

// Grayscale image with intensities in [0,1]. Pixels are stored column-major
// (Eigen default), so vectorize() is exactly the column-major flattening used
// for the measurement model.
struct Frame {
  Eigen::MatrixXd pixels;  // rows x cols

  Frame() = default;
  Frame(long rows, long cols) : pixels(Eigen::MatrixXd::Zero(rows, cols)) {}
  explicit Frame(Eigen::MatrixXd p) : pixels(std::move(p)) {}

  long rows() const { return pixels.rows(); }
  long cols() const { return pixels.cols(); }
  double& at(long r, long c) { return pixels(r, c); }
  double at(long r, long c) const { return pixels(r, c); }
};

inline SignalVector vectorize(const Frame& f) {
  return Eigen::Map<const SignalVector>(f.pixels.data(), f.pixels.size());
}

inline Frame devectorize(const SignalVector& v, long rows, long cols) {
  if (v.size() != rows * cols) throw DimensionError("devectorize: size mismatch");
  Frame f;
  f.pixels = Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
  return f;
}

}  // namespace arsr::motion
