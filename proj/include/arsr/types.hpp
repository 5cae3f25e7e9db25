#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace arsr {

using SignalVector = Eigen::VectorXd;
using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Index = Eigen::Index;

}  // namespace arsr
