#include "hgflow/hamiltonian.hpp"

#include "hgflow/dual.hpp"
#include "hgflow/error.hpp"
#include "hgflow/ode.hpp"
#include "hgflow/pfaffian.hpp"

namespace hgflow {

namespace {

// q_n^(j), p_n^(j) for j = 0..N and n = 0..L-1 with the index-0 entries
// filled in from the auxiliary substitutions.
template <class T>
struct Extended {
  int L;
  int N;
  std::vector<T> q;
  std::vector<T> p;

  T& Q(int j, int n) { return q[j * L + n]; }
  T& P(int j, int n) { return p[j * L + n]; }
};

template <class T>
Extended<T> extend(int L, int N, std::span<const T> q, std::span<const T> p, const SystemParams& sp) {
  Extended<T> ext{L, N, std::vector<T>((N + 1) * L, T(0.0)), std::vector<T>((N + 1) * L, T(0.0))};
  for (int n = 0; n < L; ++n) ext.Q(0, n) = T(1.0);
  for (int j = 1; j <= N; ++j) {
    ext.Q(j, 0) = T(1.0);
    for (int n = 1; n < L; ++n) {
      const std::size_t k = static_cast<std::size_t>((j - 1) * (L - 1) + (n - 1));
      ext.Q(j, n) = q[k];
      ext.P(j, n) = p[k];
    }
  }
  for (int n = 1; n < L; ++n) {
    T s = T(sp.kappa(n));
    for (int j = 1; j <= N; ++j) s -= ext.Q(j, n) * ext.P(j, n);
    ext.P(0, n) = s;
  }
  T col_sum = T(0.0);
  for (int j = 1; j <= N; ++j) {
    T s = T(sp.theta(j));
    for (int n = 1; n < L; ++n) s -= ext.Q(j, n) * ext.P(j, n);
    ext.P(j, 0) = s;
    col_sum += s;
  }
  ext.P(0, 0) = T(sp.kappa(0)) - col_sum;
  return ext;
}

// x_i H_i as displayed, with x_0 = 1 in the third sum.
template <class T>
T x_times_hamiltonian(int i, std::span<const cplx> x, Extended<T>& ext, const SystemParams& sp) {
  const int L = ext.L;
  const int N = ext.N;
  T s = T(0.0);
  for (int n = 0; n < L; ++n) s += T(sp.e(n)) * ext.Q(i, n) * ext.P(i, n);
  for (int j = 0; j <= N; ++j) {
    for (int n = 1; n < L; ++n) {
      T left = T(0.0);
      for (int m = 0; m < n; ++m) left += ext.Q(i, m) * ext.P(j, m);
      s += left * ext.Q(j, n) * ext.P(i, n);
    }
  }
  const cplx xi = x[i - 1];
  for (int j = 0; j <= N; ++j) {
    if (j == i) continue;
    const cplx xj = j == 0 ? cplx(1.0) : x[j - 1];
    T left = T(0.0);
    T right = T(0.0);
    for (int m = 0; m < L; ++m) left += ext.Q(i, m) * ext.P(j, m);
    for (int n = 0; n < L; ++n) right += ext.Q(j, n) * ext.P(i, n);
    s += T(xj / (xi - xj)) * left * right;
  }
  return s;
}

void check_point(std::span<const cplx> x, int N) {
  if (static_cast<int>(x.size()) != N) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  if (locus_distance(x) < kHamiltonianLocusTol)
    throw Error(ErrorKind::SingularPoint, "point on {x_i = 0, 1, x_j}");
}

void check_shape(const PhasePoint& pt, const SystemParams& sp) {
  if (pt.L() != sp.L() || pt.N() != sp.N()) throw Error(ErrorKind::InvalidArgument, "phase point shape mismatch");
}

}  // namespace

PhasePoint::PhasePoint(int L, int N)
    : L_(L), N_(N), q_(CVector::Zero(N * (L - 1))), p_(CVector::Zero(N * (L - 1))) {}

PhasePoint::PhasePoint(int L, int N, CVector q, CVector p)
    : L_(L), N_(N), q_(std::move(q)), p_(std::move(p)) {
  if (q_.size() != dim() || p_.size() != dim())
    throw Error(ErrorKind::InvalidArgument, "phase point arrays must have N(L-1) entries");
}

AuxiliaryBlock auxiliary(const PhasePoint& pt, const SystemParams& sp) {
  check_shape(pt, sp);
  const int L = sp.L();
  const int N = sp.N();
  AuxiliaryBlock aux{std::vector<cplx>(L - 1), std::vector<cplx>(N), {}};
  for (int n = 1; n < L; ++n) {
    cplx s = sp.kappa(n);
    for (int i = 1; i <= N; ++i) s -= pt.q(n, i) * pt.p(n, i);
    aux.p0row[n - 1] = s;
  }
  cplx col_sum{};
  for (int i = 1; i <= N; ++i) {
    cplx s = sp.theta(i);
    for (int n = 1; n < L; ++n) s -= pt.q(n, i) * pt.p(n, i);
    aux.p0col[i - 1] = s;
    col_sum += s;
  }
  aux.p00 = sp.kappa(0) - col_sum;
  return aux;
}

cplx hamiltonian_value(int i, std::span<const cplx> x, const PhasePoint& pt, const SystemParams& sp) {
  check_shape(pt, sp);
  if (i < 1 || i > sp.N()) throw Error(ErrorKind::InvalidArgument, "Hamiltonian index out of range");
  check_point(x, sp.N());
  std::span<const cplx> q(pt.qs().data(), pt.dim());
  std::span<const cplx> p(pt.ps().data(), pt.dim());
  auto ext = extend<cplx>(sp.L(), sp.N(), q, p, sp);
  return x_times_hamiltonian(i, x, ext, sp) / x[i - 1];
}

VectorField canonical_vector_field(std::span<const cplx> x, const PhasePoint& pt, const SystemParams& sp) {
  check_shape(pt, sp);
  const int N = sp.N();
  check_point(x, N);
  const int K = pt.dim();
  VectorField field{std::vector<CVector>(N, CVector::Zero(K)), std::vector<CVector>(N, CVector::Zero(K))};

  std::vector<Dual> q(K), p(K);
  for (int k = 0; k < K; ++k) {
    q[k] = Dual(pt.qs()(k));
    p[k] = Dual(pt.ps()(k));
  }
  // One tangent sweep per canonical variable; each sweep yields the partial
  // of every H_j at once.
  for (int v = 0; v < 2 * K; ++v) {
    const bool is_q = v < K;
    const int k = is_q ? v : v - K;
    (is_q ? q : p)[k].d = 1.0;
    auto ext = extend<Dual>(sp.L(), N, q, p, sp);
    for (int j = 1; j <= N; ++j) {
      const cplx dH = x_times_hamiltonian(j, x, ext, sp).d / x[j - 1];
      if (is_q) field.dp[j - 1](k) = -dH;
      else field.dq[j - 1](k) = dH;
    }
    (is_q ? q : p)[k].d = 0.0;
  }
  return field;
}

PhasePoint flow(std::span<const cplx> x_start, std::span<const cplx> x_end, const PhasePoint& pt,
                const SystemParams& sp, double tol, double clearance) {
  check_shape(pt, sp);
  const int N = sp.N();
  if (static_cast<int>(x_start.size()) != N || static_cast<int>(x_end.size()) != N)
    throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (segment_locus_distance(x_start, x_end) < clearance)
    throw Error(ErrorKind::PathTooClose, "segment too close to the singular locus");

  const int K = pt.dim();
  CVector state(2 * K);
  state << pt.qs(), pt.ps();
  std::vector<cplx> dx(N), xs(N);
  bool moves = false;
  for (int i = 0; i < N; ++i) {
    dx[i] = x_end[i] - x_start[i];
    moves = moves || dx[i] != cplx{};
  }
  if (!moves) return pt;

  auto rhs = [&](double s, const CVector& y) -> CVector {
    for (int i = 0; i < N; ++i) xs[i] = x_start[i] + s * dx[i];
    const PhasePoint cur(sp.L(), N, y.head(K), y.tail(K));
    const auto field = canonical_vector_field(xs, cur, sp);
    CVector out = CVector::Zero(2 * K);
    for (int j = 0; j < N; ++j) {
      out.head(K) += dx[j] * field.dq[j];
      out.tail(K) += dx[j] * field.dp[j];
    }
    return out;
  };
  OdeOptions opt;
  opt.tol = tol;
  state = integrate_dopri(rhs, std::move(state), 0.0, 1.0, opt);
  return PhasePoint(sp.L(), N, state.head(K), state.tail(K));
}

}  // namespace hgflow
