#pragma once

#include <complex>

#include <Eigen/Core>

namespace hgflow {

using cplx = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

}  // namespace hgflow
