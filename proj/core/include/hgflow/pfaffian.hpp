#pragma once

#include <span>
#include <vector>

#include "hgflow/ode.hpp"
#include "hgflow/params.hpp"
#include "hgflow/series.hpp"
#include "hgflow/types.hpp"

namespace hgflow {

/// The vector (y_0, y_1^(1), ..., y_{L-1}^(1), y_1^(2), ..., y_{L-1}^(N)) of
/// length N(L-1)+1.
class SolutionVector {
 public:
  SolutionVector(int L, int N);
  SolutionVector(int L, int N, CVector data);

  int L() const noexcept { return L_; }
  int N() const noexcept { return N_; }
  static int rank(int L, int N) { return N * (L - 1) + 1; }

  // Flat position of y_n^(i), n = 1..L-1, i = 1..N.
  int slot(int n, int i) const { return 1 + (i - 1) * (L_ - 1) + (n - 1); }

  cplx& y0() { return data_(0); }
  cplx y0() const { return data_(0); }
  cplx& y(int n, int i) { return data_(slot(n, i)); }
  cplx y(int n, int i) const { return data_(slot(n, i)); }

  const CVector& vec() const noexcept { return data_; }
  CVector& vec() noexcept { return data_; }

 private:
  int L_;
  int N_;
  CVector data_;
};

/// Constant residue matrices of
///   dy = { sum_i (E_i dlog x_i + F_i dlog(x_i - 1)) + sum_{i<j} G_ij dlog(x_i - x_j) } y.
class PfaffianConnection {
 public:
  explicit PfaffianConnection(HGParams hp);

  const HGParams& params() const noexcept { return hp_; }
  int L() const noexcept { return hp_.L(); }
  int N() const noexcept { return hp_.N(); }
  int rank() const noexcept { return SolutionVector::rank(hp_.L(), hp_.N()); }

  const CMatrix& E(int i) const { return E_.at(i - 1); }
  const CMatrix& F(int i) const { return F_.at(i - 1); }
  // Stored for i < j only; G(j, i) returns the same matrix.
  const CMatrix& G(int i, int j) const;

  // a_n = alpha_n - gamma_n, b_{i,n} = sum_{j != i} beta_j - gamma_n
  cplx a(int n) const { return hp_.alpha(n) - hp_.gamma(n); }
  cplx b(int i, int n) const;

 private:
  HGParams hp_;
  std::vector<CMatrix> E_;
  std::vector<CMatrix> F_;
  std::vector<CMatrix> G_;
};

PfaffianConnection build_connection(const HGParams& hp);

// Clearance below which omega_at and scalar_derivative raise SingularPoint.
inline constexpr double kLocusTol = 1e-10;

// Smallest distance from x to {x_i = 0} U {x_i = 1} U {x_i = x_j}.
double locus_distance(std::span<const cplx> x);

// Omega_i(x) = E_i/x_i + F_i/(x_i - 1) + sum_{j != i} G_{ij}/(x_i - x_j), i = 1..N.
std::vector<CMatrix> omega_at(const PfaffianConnection& pc, std::span<const cplx> x);

// dy/dx_i from the three scalar equation families, i = 1..N.
std::vector<SolutionVector> scalar_derivative(const HGParams& hp, std::span<const cplx> x,
                                              const SolutionVector& y);

struct IntegrabilityResidual {
  double max_abs;     // max_{i<j} ||d_i Omega_j - d_j Omega_i + Omega_j Omega_i - Omega_i Omega_j||_inf
  double max_scaled;  // same, divided by ||Omega_i|| ||Omega_j||
};

IntegrabilityResidual integrability_residual(const PfaffianConnection& pc, std::span<const cplx> x);

// Holomorphic solution at 0 normalized by y_0 = F_{L,N}:
//   y_n^(i) = alpha_1...alpha_{n-1}(gamma_n - alpha_n)/(gamma_1...gamma_n)
//             * F(alpha_1+1, ..., alpha_{n-1}+1, beta_i+1, gamma_1+1, ..., gamma_n+1).
// Entry k of the result is the series of flat component k.
std::vector<TruncatedSeries> holomorphic_solution(const HGParams& hp, int M);

SolutionVector evaluate_solution(const std::vector<TruncatedSeries>& sol, int L,
                                 std::span<const cplx> x);

// Term-by-term x_i-derivative of the holomorphic series, evaluated at x.
SolutionVector differentiate_solution(const std::vector<TruncatedSeries>& sol, int L, int i,
                                      std::span<const cplx> x);

struct PathSpec {
  std::vector<std::vector<cplx>> waypoints;
  double clearance = 1e-6;
};

// Minimum over the segment a -> b of the distance to the singular locus,
// computed in closed form for each hyperplane.
double segment_locus_distance(std::span<const cplx> a, std::span<const cplx> b);

// Throws PathTooClose when a segment comes within path.clearance of the locus.
void validate_path(const PathSpec& path, int N);

// Observer receives (s, x(s), y(s)) after each accepted step; s runs from 0
// at the first waypoint and increases by one per segment.
using PathObserver = std::function<void(double, std::span<const cplx>, const SolutionVector&)>;

SolutionVector continue_solution(const PfaffianConnection& pc, const PathSpec& path,
                                 const SolutionVector& y0, double tol,
                                 const PathObserver& observer = {});

}  // namespace hgflow
