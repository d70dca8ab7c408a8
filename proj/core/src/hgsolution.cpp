#include "hgflow/hgsolution.hpp"

#include <cmath>

#include "hgflow/error.hpp"

namespace hgflow {

namespace {

constexpr double kTinyY0 = 1e-300;

}  // namespace

HGSolutionState build_hg_solution(const SystemParams& sp, std::span<const cplx> x, int M) {
  if (!check_reducibility(sp).reducible)
    throw Error(ErrorKind::NotReducible, "needs kappa_0 = theta_1 + ... + theta_N");
  const HGParams hp = map_system_to_hg(sp);
  const auto series = holomorphic_solution(hp, M);
  return build_hg_solution(sp, x, evaluate_solution(series, sp.L(), x));
}

HGSolutionState build_hg_solution(const SystemParams& sp, std::span<const cplx> x, const SolutionVector& y) {
  if (!check_reducibility(sp).reducible)
    throw Error(ErrorKind::NotReducible, "needs kappa_0 = theta_1 + ... + theta_N");
  const int L = sp.L();
  const int N = sp.N();
  if (static_cast<int>(x.size()) != N || y.L() != L || y.N() != N)
    throw Error(ErrorKind::InvalidArgument, "shape mismatch");
  if (std::abs(y.y0()) < kTinyY0) throw Error(ErrorKind::ZeroDenominator, "y_0 vanishes");

  PhasePoint pt(L, N);
  for (int i = 1; i <= N; ++i)
    for (int n = 1; n < L; ++n) pt.p(n, i) = -sp.theta(i) * y.y(n, i) / y.y0();
  return {sp, map_system_to_hg(sp), {x.begin(), x.end()}, y, std::move(pt)};
}

HamiltonianResidual hamiltonian_residual(const HGSolutionState& state) {
  const int L = state.sp.L();
  const int N = state.sp.N();
  const auto dy = scalar_derivative(state.hp, state.x, state.y);
  const auto field = canonical_vector_field(state.x, state.pt, state.sp);
  const cplx y0 = state.y.y0();

  HamiltonianResidual r{0.0, 0.0};
  for (int j = 1; j <= N; ++j) {
    const SolutionVector& d = dy[j - 1];
    for (int i = 1; i <= N; ++i) {
      for (int n = 1; n < L; ++n) {
        const int k = state.pt.slot(n, i);
        // q is identically zero along the solution
        r.q_residual = std::max(r.q_residual, std::abs(field.dq[j - 1](k)));
        const cplx dp = -state.sp.theta(i) * (d.y(n, i) * y0 - state.y.y(n, i) * d.y0()) / (y0 * y0);
        r.p_residual = std::max(r.p_residual, std::abs(dp - field.dp[j - 1](k)));
      }
    }
  }
  return r;
}

}  // namespace hgflow
