#include "hgflow/special.hpp"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "hgflow/error.hpp"

namespace hgflow {

namespace {

constexpr double kLanczosG = 7.0;
constexpr double kLanczosCoeffs[] = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

}  // namespace

cplx log_gamma(cplx z) {
  constexpr double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // reflection
    return std::log(pi / std::sin(pi * z)) - log_gamma(1.0 - z);
  }
  z -= 1.0;
  cplx sum = kLanczosCoeffs[0];
  for (int k = 1; k < 9; ++k) sum += kLanczosCoeffs[k] / (z + static_cast<double>(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(sum);
}

cplx log_beta(cplx a, cplx b) { return log_gamma(a) + log_gamma(b) - log_gamma(a + b); }

GaussRule gauss_jacobi01(int n, double a, double b) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "Gauss-Jacobi rule needs n >= 1");
  if (!(a > -1.0 && b > -1.0))
    throw Error(ErrorKind::DomainError, "Gauss-Jacobi exponents must exceed -1");

  // Jacobi matrix on [-1,1] for (1-t)^pa (1+t)^pb, with z = (1+t)/2.
  const double pa = b;
  const double pb = a;
  const double ab = pa + pb;
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  diag(0) = (pb - pa) / (ab + 2.0);
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    diag(k) = (pb * pb - pa * pa) / (s * (s + 2.0));
  }
  for (int k = 1; k < n; ++k) {
    const double s = 2.0 * k + ab;
    double v;
    if (k == 1) {
      v = 4.0 * (1.0 + pa) * (1.0 + pb) / (s * s * (s + 1.0));
    } else {
      v = 4.0 * k * (k + pa) * (k + pb) * (k + ab) / (s * s * (s + 1.0) * (s - 1.0));
    }
    off(k - 1) = std::sqrt(v);
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorKind::DomainError, "Gauss-Jacobi eigenproblem failed");

  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    rule.nodes[k] = 0.5 * (1.0 + solver.eigenvalues()(k));
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[k] = v0 * v0;
    total += rule.weights[k];
  }
  for (double& w : rule.weights) w /= total;
  return rule;
}

}  // namespace hgflow
