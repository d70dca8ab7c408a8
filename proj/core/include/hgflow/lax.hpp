#pragma once

#include <span>
#include <vector>

#include "hgflow/hamiltonian.hpp"
#include "hgflow/params.hpp"
#include "hgflow/pfaffian.hpp"
#include "hgflow/types.hpp"

namespace hgflow {

/// L x L Fuchsian system dPhi/dz = sum_{k=0}^{N+1} A_k/(z - u_k) Phi with
/// u_0 = 1, u_1..u_N free, u_{N+1} = 0 and a further pole at infinity.
struct FuchsianData {
  int L;
  int N;
  std::vector<cplx> poles;       // u_0..u_{N+1}
  std::vector<CMatrix> residues;  // A_0..A_{N+1}

  // A_inf = -sum_k A_k
  CMatrix residue_infinity() const;
  // A(z) = sum_k A_k/(z - u_k)
  CMatrix A(cplx z) const;
};

/// Accessory parameters b_n^(i), c_n^(i) (rows i = 0..N, columns n = 0..L-1)
/// together with the moving poles u_1..u_N.
struct BCVariables {
  CMatrix b;
  CMatrix c;
  std::vector<cplx> u;
};

// Trace relations: max over i of |sum_n b_n^(i) c_n^(i) + theta_i| and over n
// of |sum_i b_n^(i) c_n^(i) + kappa_n|.
double trace_identity_residual(const BCVariables& bc, const SystemParams& sp);

// A_i = b^(i) c^(i) (outer product) and A_{N+1} upper triangular with diagonal
// e_n and entries w_{m,n} = -sum_i b_m^(i) c_n^(i). ConstraintViolation when
// c_0^(i) != 1 or the trace relations fail by more than 1e-10.
FuchsianData build_A_from_bc(const BCVariables& bc, const SystemParams& sp);

// Largest mismatch between the eigenvalues of each residue and the exponents
// (-theta_i, 0, ..., 0), (e_0, ..., e_{L-1}), (kappa_n - e_n).
double riemann_scheme_residual(const FuchsianData& fd, const SystemParams& sp);

// c_n^(i) = q_n^(i) c_n^(0), b_n^(i) = -p_n^(i)/c_n^(0), index-0 entries from
// the auxiliary block, u_i = 1/x_i. gauge holds c_1^(0)..c_{L-1}^(0).
BCVariables qp_to_bc(const PhasePoint& pt, const SystemParams& sp, std::span<const cplx> gauge,
                     std::span<const cplx> x);

// Inverse of qp_to_bc: returns (x, q, p).
std::pair<std::vector<cplx>, PhasePoint> bc_to_qp(const BCVariables& bc, const SystemParams& sp);

// B_i = A_i/(u_i - z) - (1/u_i) [diag(-theta_i/L) + strictly_lower(A_i)], i = 1..N.
CMatrix build_B(int i, const FuchsianData& fd, const SystemParams& sp, cplx z);

/// Reduced coordinates on the subvariety q = 0 available when
/// kappa_0 = sum_{i>=1} theta_i: f and b_n^(i) (n = 1..L-1, i = 1..N).
struct ReducedState {
  std::vector<cplx> u;  // u_1..u_N
  cplx f;
  CMatrix b;            // (L-1) x N, b(n-1, i-1) = b_n^(i)
};

struct ReducedDerivatives {
  std::vector<cplx> df;     // df/du_i, entry i-1
  std::vector<CMatrix> db;  // db/du_i, entry i-1, same layout as ReducedState::b
};

// Residues of the reduced Fuchsian system; ConstraintViolation unless
// kappa_0 = sum theta_i.
FuchsianData build_reduced(const ReducedState& rs, const SystemParams& sp);

// B_i = theta_i/(L u_i) diag(1-L, 1, ..., 1) + z/(u_i (u_i - z)) A_i.
CMatrix build_reduced_B(int i, const ReducedState& rs, const SystemParams& sp, cplx z);

// The linear system for (f, b) solved for the u-derivatives.
ReducedDerivatives reduced_rhs(const ReducedState& rs, const SystemParams& sp);

struct PfaffianPoint {
  std::vector<cplx> x;
  SolutionVector y;
};

// x_i = 1/u_i, y_0 = f / prod u_j^theta_j, y_n^(i) = b_n^(i)/(theta_i prod u_j^theta_j)
// with principal branches. ZeroTheta when some theta_i vanishes.
PfaffianPoint reduced_to_pfaffian(const ReducedState& rs, const SystemParams& sp);

// Inverse map.
ReducedState pfaffian_to_reduced(std::span<const cplx> x, const SolutionVector& y, const SystemParams& sp);

// dy/dx_i obtained by pushing reduced_rhs through reduced_to_pfaffian.
std::vector<SolutionVector> reduced_pfaffian_derivative(const ReducedState& rs, const SystemParams& sp);

// dA/du_i - dB_i/dz + [A, B_i] for the reduced system, with the u-derivatives
// of (f, b) supplied by the caller.
CMatrix zero_curvature_matrix(int i, const ReducedState& rs, const ReducedDerivatives& d,
                              const SystemParams& sp, cplx z);

// Max-norm of zero_curvature_matrix with derivatives from reduced_rhs.
double zero_curvature_residual(int i, const ReducedState& rs, const SystemParams& sp, cplx z);

}  // namespace hgflow
