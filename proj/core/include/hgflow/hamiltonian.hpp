#pragma once

#include <span>
#include <vector>

#include "hgflow/params.hpp"
#include "hgflow/types.hpp"

namespace hgflow {

/// Canonical variables q_n^(i), p_n^(i), n = 1..L-1, i = 1..N.
/// Flat storage puts (n, i) at (i-1)(L-1) + (n-1), the same order as the
/// y_n^(i) block of a SolutionVector.
class PhasePoint {
 public:
  PhasePoint(int L, int N);
  PhasePoint(int L, int N, CVector q, CVector p);

  int L() const noexcept { return L_; }
  int N() const noexcept { return N_; }
  int dim() const noexcept { return N_ * (L_ - 1); }
  int slot(int n, int i) const { return (i - 1) * (L_ - 1) + (n - 1); }

  cplx& q(int n, int i) { return q_(slot(n, i)); }
  cplx q(int n, int i) const { return q_(slot(n, i)); }
  cplx& p(int n, int i) { return p_(slot(n, i)); }
  cplx p(int n, int i) const { return p_(slot(n, i)); }

  const CVector& qs() const noexcept { return q_; }
  const CVector& ps() const noexcept { return p_; }
  CVector& qs() noexcept { return q_; }
  CVector& ps() noexcept { return p_; }

 private:
  int L_;
  int N_;
  CVector q_;
  CVector p_;
};

/// Derived index-0 momenta; x_0 = q_n^(0) = q_0^(i) = 1 are implicit.
struct AuxiliaryBlock {
  std::vector<cplx> p0row;  // p_n^(0) = kappa_n - sum_i q_n^(i) p_n^(i), n = 1..L-1 (entry n-1)
  std::vector<cplx> p0col;  // p_0^(i) = theta_i - sum_n q_n^(i) p_n^(i), i = 1..N (entry i-1)
  cplx p00;                 // p_0^(0) = kappa_0 - sum_i p_0^(i)
};

AuxiliaryBlock auxiliary(const PhasePoint& pt, const SystemParams& sp);

// Clearance from {x_i = 0, 1, x_j} for Hamiltonian evaluation.
inline constexpr double kHamiltonianLocusTol = 1e-8;

// H_i (i = 1..N) at x.
cplx hamiltonian_value(int i, std::span<const cplx> x, const PhasePoint& pt, const SystemParams& sp);

/// dq/dx_j = dH_j/dp and dp/dx_j = -dH_j/dq for j = 1..N, flat order of
/// PhasePoint.
struct VectorField {
  std::vector<CVector> dq;
  std::vector<CVector> dp;
};

VectorField canonical_vector_field(std::span<const cplx> x, const PhasePoint& pt, const SystemParams& sp);

// Integrates the canonical equations along the straight segment
// x_start -> x_end with the adaptive Dormand-Prince pair.
PhasePoint flow(std::span<const cplx> x_start, std::span<const cplx> x_end, const PhasePoint& pt,
                const SystemParams& sp, double tol, double clearance = 1e-6);

}  // namespace hgflow
