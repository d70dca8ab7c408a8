#pragma once

#include <span>
#include <vector>

#include "hgflow/hamiltonian.hpp"
#include "hgflow/params.hpp"
#include "hgflow/pfaffian.hpp"

namespace hgflow {

/// Particular solution of H_{L,N} on the reducible hyperplane
/// kappa_0 = sum theta_i: q = 0 and p_n^(i) = -theta_i y_n^(i) / y_0 for a
/// solution y of the Pfaffian system with
/// alpha_n = e_n - e_0, beta_n = -theta_n, gamma_n = e_n - e_0 - kappa_n.
struct HGSolutionState {
  SystemParams sp;
  HGParams hp;
  std::vector<cplx> x;
  SolutionVector y;
  PhasePoint pt;
};

// Uses the holomorphic solution (series truncated at degree M) at x.
HGSolutionState build_hg_solution(const SystemParams& sp, std::span<const cplx> x, int M);

// Uses a caller-supplied Pfaffian solution vector y at x, e.g. one obtained
// by continuation from an arbitrary initial vector.
HGSolutionState build_hg_solution(const SystemParams& sp, std::span<const cplx> x, const SolutionVector& y);

struct HamiltonianResidual {
  double q_residual;  // max_{j,n,i} |dq/dx_j - dH_j/dp|
  double p_residual;  // max_{j,n,i} |dp/dx_j + dH_j/dq|

  bool passes(double tol) const { return q_residual <= tol && p_residual <= tol; }
};

// Left-hand sides from the Pfaffian system (quotient rule on -theta y/y_0),
// right-hand sides from canonical_vector_field.
HamiltonianResidual hamiltonian_residual(const HGSolutionState& state);

}  // namespace hgflow
