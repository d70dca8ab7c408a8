#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hgflow/types.hpp"

namespace hgflow {

// Tolerance used for the linear constraints and for resonance detection.
inline constexpr double kConstraintTol = 1e-12;

// Distance from z to the nearest integer.
double distance_to_integer(cplx z);

// True when z lies within tol of {0, -1, -2, ...}.
bool is_nonpositive_integer(cplx z, double tol = kConstraintTol);

// Integer shifts applied to (alpha, beta, gamma); zero-filled when empty.
struct ShiftSpec {
  std::vector<int> alpha;
  std::vector<int> beta;
  std::vector<int> gamma;
};

/// Parameters (alpha, beta, gamma) of F_{L,N}.
///
/// Mathematical indices are 1-based in accessors: alpha(n), gamma(n) for
/// n = 1..L-1 and beta(i) for i = 1..N. Construction fails with
/// ErrorKind::ResonantGamma when some gamma_n is a nonpositive integer.
class HGParams {
 public:
  HGParams(int L, int N, std::vector<cplx> alpha, std::vector<cplx> beta,
           std::vector<cplx> gamma);

  int L() const noexcept { return L_; }
  int N() const noexcept { return N_; }

  cplx alpha(int n) const { return alpha_.at(n - 1); }
  cplx beta(int i) const { return beta_.at(i - 1); }
  cplx gamma(int n) const { return gamma_.at(n - 1); }

  std::span<const cplx> alphas() const noexcept { return alpha_; }
  std::span<const cplx> betas() const noexcept { return beta_; }
  std::span<const cplx> gammas() const noexcept { return gamma_; }

  // Copy with integer shifts applied; throws ResonantGamma if the shifted
  // gammas are resonant.
  HGParams shifted(const ShiftSpec& shift) const;

 private:
  int L_;
  int N_;
  std::vector<cplx> alpha_;
  std::vector<cplx> beta_;
  std::vector<cplx> gamma_;
};

/// Constants (e, kappa, theta) of the Hamiltonian system H_{L,N}.
///
/// e(n), kappa(n) for n = 0..L-1 and theta(i) for i = 0..N. Both linear
/// constraints are checked at construction to kConstraintTol; violations
/// raise ConstraintViolation rather than being projected away.
class SystemParams {
 public:
  // theta may hold N+1 entries (theta_0..theta_N) or N entries
  // (theta_1..theta_N), in which case theta_0 follows from Fuchs' relation.
  SystemParams(int L, int N, std::vector<cplx> e, std::vector<cplx> kappa,
               std::vector<cplx> theta);

  int L() const noexcept { return L_; }
  int N() const noexcept { return N_; }

  cplx e(int n) const { return e_.at(n); }
  cplx kappa(int n) const { return kappa_.at(n); }
  cplx theta(int i) const { return theta_.at(i); }

  std::span<const cplx> es() const noexcept { return e_; }
  std::span<const cplx> kappas() const noexcept { return kappa_; }
  std::span<const cplx> thetas() const noexcept { return theta_; }

 private:
  int L_;
  int N_;
  std::vector<cplx> e_;
  std::vector<cplx> kappa_;
  std::vector<cplx> theta_;
};

// alpha_n = e_n - e_0, beta_i = -theta_i, gamma_n = e_n - e_0 - kappa_n.
HGParams map_system_to_hg(const SystemParams& sp);

struct Reducibility {
  bool reducible;
  cplx residual;  // kappa_0 - sum_{i>=1} theta_i
};

Reducibility check_reducibility(const SystemParams& sp);

// Deterministic pseudo-random admissible constants. Every difference
// e_m - e_n, every implied gamma_n and every theta_i (i >= 1) stays at least
// kGenericMargin away from the integers.
inline constexpr double kGenericMargin = 0.05;

SystemParams random_params(std::uint64_t seed, int L, int N, bool reducible);

}  // namespace hgflow
