#pragma once

#include <vector>

#include "hgflow/types.hpp"

namespace hgflow {

// log Gamma(z) on the principal branch (Lanczos, g = 7).
cplx log_gamma(cplx z);

// log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a + b).
cplx log_beta(cplx a, cplx b);

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;  // normalized to sum 1
};

// n-point Gauss-Jacobi rule on [0,1] for the weight z^a (1-z)^b, a, b > -1,
// built with Golub-Welsch. Weights are divided by B(a+1, b+1).
GaussRule gauss_jacobi01(int n, double a, double b);

}  // namespace hgflow
