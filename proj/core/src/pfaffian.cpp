#include "hgflow/pfaffian.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "hgflow/error.hpp"

namespace hgflow {

namespace {

void check_point(std::span<const cplx> x, int N) {
  if (static_cast<int>(x.size()) != N) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  if (locus_distance(x) < kLocusTol) throw Error(ErrorKind::SingularPoint, "point on the singular locus");
}

double inf_norm(const CMatrix& m) { return m.cwiseAbs().rowwise().sum().maxCoeff(); }

// min_{t in [0,1]} |l0 + t (l1 - l0)|
double segment_min_abs(cplx l0, cplx l1) {
  const cplx d = l1 - l0;
  const double dd = std::norm(d);
  if (dd == 0.0) return std::abs(l0);
  const double t = std::clamp(-(std::conj(d) * l0).real() / dd, 0.0, 1.0);
  return std::abs(l0 + t * d);
}

}  // namespace

SolutionVector::SolutionVector(int L, int N) : L_(L), N_(N), data_(CVector::Zero(rank(L, N))) {}

SolutionVector::SolutionVector(int L, int N, CVector data) : L_(L), N_(N), data_(std::move(data)) {
  if (data_.size() != rank(L, N))
    throw Error(ErrorKind::InvalidArgument, "solution vector must have length N(L-1)+1");
}

PfaffianConnection::PfaffianConnection(HGParams hp) : hp_(std::move(hp)) {
  const int L = hp_.L();
  const int N = hp_.N();
  const int R = rank();
  const SolutionVector shape(L, N);
  auto slot = [&](int n, int i) { return shape.slot(n, i); };

  for (int i = 1; i <= N; ++i) {
    CMatrix E = CMatrix::Zero(R, R);
    CMatrix F = CMatrix::Zero(R, R);
    F(0, 0) = -hp_.beta(i);
    for (int n = 1; n < L; ++n) {
      const int r = slot(n, i);
      E(r, 0) = -a(n);
      for (int m = 1; m < n; ++m) E(r, slot(m, i)) = a(n);
      E(r, r) = b(i, n);
      for (int j = 1; j <= N; ++j)
        if (j != i) E(r, slot(n, j)) = -hp_.beta(j);

      F(0, r) = hp_.beta(i);
      F(r, 0) = a(n);
      for (int m = 1; m < L; ++m) F(r, slot(m, i)) = -a(n);
    }
    E_.push_back(std::move(E));
    F_.push_back(std::move(F));
  }
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      CMatrix G = CMatrix::Zero(R, R);
      for (int n = 1; n < L; ++n) {
        G(slot(n, i), slot(n, i)) = -hp_.beta(j);
        G(slot(n, i), slot(n, j)) = hp_.beta(j);
        G(slot(n, j), slot(n, i)) = hp_.beta(i);
        G(slot(n, j), slot(n, j)) = -hp_.beta(i);
      }
      G_.push_back(std::move(G));
    }
  }
}

const CMatrix& PfaffianConnection::G(int i, int j) const {
  if (i == j || i < 1 || j < 1 || i > N() || j > N())
    throw Error(ErrorKind::InvalidArgument, "G_ij needs distinct indices in 1..N");
  if (i > j) std::swap(i, j);
  // pairs (1,2),...,(1,N),(2,3),... in order
  const int before = (i - 1) * N() - (i - 1) * i / 2;
  return G_.at(before + (j - i - 1));
}

cplx PfaffianConnection::b(int i, int n) const {
  cplx s = -hp_.gamma(n);
  for (int j = 1; j <= N(); ++j)
    if (j != i) s += hp_.beta(j);
  return s;
}

PfaffianConnection build_connection(const HGParams& hp) { return PfaffianConnection(hp); }

double locus_distance(std::span<const cplx> x) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    d = std::min({d, std::abs(x[i]), std::abs(x[i] - 1.0)});
    for (std::size_t j = i + 1; j < x.size(); ++j)
      d = std::min(d, std::abs(x[i] - x[j]) / std::numbers::sqrt2);
  }
  return d;
}

std::vector<CMatrix> omega_at(const PfaffianConnection& pc, std::span<const cplx> x) {
  const int N = pc.N();
  check_point(x, N);
  std::vector<CMatrix> out;
  out.reserve(N);
  for (int i = 1; i <= N; ++i) {
    const cplx xi = x[i - 1];
    CMatrix O = pc.E(i) / xi + pc.F(i) / (xi - 1.0);
    for (int j = 1; j <= N; ++j)
      if (j != i) O += pc.G(i, j) / (xi - x[j - 1]);
    out.push_back(std::move(O));
  }
  return out;
}

std::vector<SolutionVector> scalar_derivative(const HGParams& hp, std::span<const cplx> x,
                                              const SolutionVector& y) {
  const int L = hp.L();
  const int N = hp.N();
  check_point(x, N);
  if (y.L() != L || y.N() != N) throw Error(ErrorKind::InvalidArgument, "solution vector shape mismatch");

  std::vector<SolutionVector> out;
  out.reserve(N);
  for (int i = 1; i <= N; ++i) {
    const cplx xi = x[i - 1];
    const cplx bi = hp.beta(i);
    SolutionVector d(L, N);
    cplx block_sum{};
    for (int m = 1; m < L; ++m) block_sum += y.y(m, i);
    const cplx common = -y.y0() + block_sum;

    d.y0() = bi * common / (xi - 1.0);
    for (int j = 1; j <= N; ++j) {
      if (j == i) continue;
      for (int n = 1; n < L; ++n) d.y(n, j) = bi * (y.y(n, i) - y.y(n, j)) / (xi - x[j - 1]);
    }
    for (int n = 1; n < L; ++n) {
      const cplx ga = hp.gamma(n) - hp.alpha(n);
      cplx upper{};
      for (int m = n + 1; m < L; ++m) upper += y.y(m, i);
      cplx rhs = -hp.alpha(n) * y.y(n, i) + ga * upper + ga / (xi - 1.0) * common;
      for (int j = 1; j <= N; ++j) {
        if (j == i) continue;
        rhs += hp.beta(j) * x[j - 1] / (xi - x[j - 1]) * (y.y(n, j) - y.y(n, i));
      }
      d.y(n, i) = rhs / xi;
    }
    out.push_back(std::move(d));
  }
  return out;
}

IntegrabilityResidual integrability_residual(const PfaffianConnection& pc, std::span<const cplx> x) {
  const int N = pc.N();
  const auto omega = omega_at(pc, x);
  IntegrabilityResidual res{0.0, 0.0};
  for (int i = 1; i <= N; ++i) {
    for (int j = i + 1; j <= N; ++j) {
      const cplx dx = x[i - 1] - x[j - 1];
      // Only the G_ij pole couples x_i and x_j:
      //   d/dx_i [G/(x_j - x_i)] = G/(x_j - x_i)^2,  d/dx_j [G/(x_i - x_j)] = G/(x_i - x_j)^2.
      const CMatrix& G = pc.G(i, j);
      const CMatrix di_omega_j = G / (dx * dx);
      const CMatrix dj_omega_i = G / (dx * dx);
      const CMatrix& Oi = omega[i - 1];
      const CMatrix& Oj = omega[j - 1];
      const CMatrix curvature = di_omega_j - dj_omega_i + Oj * Oi - Oi * Oj;
      const double r = inf_norm(curvature);
      const double scale = inf_norm(Oi) * inf_norm(Oj);
      res.max_abs = std::max(res.max_abs, r);
      if (scale > 0.0) res.max_scaled = std::max(res.max_scaled, r / scale);
    }
  }
  return res;
}

std::vector<TruncatedSeries> holomorphic_solution(const HGParams& hp, int M) {
  const int L = hp.L();
  const int N = hp.N();
  std::vector<TruncatedSeries> out;
  out.reserve(SolutionVector::rank(L, N));
  out.push_back(series_coefficients(hp, M));
  for (int i = 1; i <= N; ++i) {
    for (int n = 1; n < L; ++n) {
      cplx factor = hp.gamma(n) - hp.alpha(n);
      ShiftSpec shift{std::vector<int>(L - 1, 0), std::vector<int>(N, 0), std::vector<int>(L - 1, 0)};
      for (int k = 1; k < n; ++k) {
        factor *= hp.alpha(k);
        shift.alpha[k - 1] = 1;
      }
      for (int k = 1; k <= n; ++k) {
        factor /= hp.gamma(k);
        shift.gamma[k - 1] = 1;
      }
      shift.beta[i - 1] = 1;
      out.push_back(series_coefficients(hp.shifted(shift), M) * factor);
    }
  }
  return out;
}

SolutionVector evaluate_solution(const std::vector<TruncatedSeries>& sol, int L, std::span<const cplx> x) {
  if (sol.empty()) throw Error(ErrorKind::InvalidArgument, "empty solution");
  const int N = sol.front().vars();
  SolutionVector y(L, N);
  if (static_cast<int>(sol.size()) != y.vec().size())
    throw Error(ErrorKind::InvalidArgument, "solution length must be N(L-1)+1");
  for (std::size_t k = 0; k < sol.size(); ++k) y.vec()(k) = eval_series(sol[k], x).value;
  return y;
}

SolutionVector differentiate_solution(const std::vector<TruncatedSeries>& sol, int L, int i,
                                      std::span<const cplx> x) {
  std::vector<TruncatedSeries> d;
  d.reserve(sol.size());
  for (const auto& s : sol) d.push_back(apply_partial(s, i));
  return evaluate_solution(d, L, x);
}

double segment_locus_distance(std::span<const cplx> a, std::span<const cplx> b) {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::min({d, segment_min_abs(a[i], b[i]), segment_min_abs(a[i] - 1.0, b[i] - 1.0)});
    for (std::size_t j = i + 1; j < a.size(); ++j)
      d = std::min(d, segment_min_abs(a[i] - a[j], b[i] - b[j]) / std::numbers::sqrt2);
  }
  return d;
}

void validate_path(const PathSpec& path, int N) {
  if (path.waypoints.empty()) throw Error(ErrorKind::InvalidArgument, "path needs at least one waypoint");
  if (!(path.clearance > 0.0)) throw Error(ErrorKind::InvalidArgument, "path clearance must be positive");
  for (const auto& w : path.waypoints)
    if (static_cast<int>(w.size()) != N) throw Error(ErrorKind::InvalidArgument, "waypoint dimension mismatch");
  if (path.waypoints.size() == 1 && locus_distance(path.waypoints.front()) < path.clearance)
    throw Error(ErrorKind::PathTooClose, "waypoint too close to the singular locus");
  for (std::size_t s = 0; s + 1 < path.waypoints.size(); ++s) {
    if (segment_locus_distance(path.waypoints[s], path.waypoints[s + 1]) < path.clearance)
      throw Error(ErrorKind::PathTooClose, "segment " + std::to_string(s) + " too close to the singular locus");
  }
}

SolutionVector continue_solution(const PfaffianConnection& pc, const PathSpec& path,
                                 const SolutionVector& y0, double tol, const PathObserver& observer) {
  const int L = pc.L();
  const int N = pc.N();
  if (!(tol > 0.0)) throw Error(ErrorKind::InvalidArgument, "tolerance must be positive");
  if (y0.L() != L || y0.N() != N) throw Error(ErrorKind::InvalidArgument, "solution vector shape mismatch");
  validate_path(path, N);

  CVector y = y0.vec();
  std::vector<cplx> xs(N);
  OdeOptions opt;
  opt.tol = tol;
  for (std::size_t seg = 0; seg + 1 < path.waypoints.size(); ++seg) {
    const auto& a = path.waypoints[seg];
    const auto& b = path.waypoints[seg + 1];
    std::vector<cplx> dx(N);
    bool moves = false;
    for (int i = 0; i < N; ++i) {
      dx[i] = b[i] - a[i];
      moves = moves || dx[i] != cplx{};
    }
    if (!moves) continue;
    auto point = [&](double s) {
      for (int i = 0; i < N; ++i) xs[i] = a[i] + s * dx[i];
    };
    auto rhs = [&](double s, const CVector& v) -> CVector {
      point(s);
      const auto omega = omega_at(pc, xs);
      CVector out = CVector::Zero(v.size());
      for (int i = 0; i < N; ++i) out += dx[i] * (omega[i] * v);
      return out;
    };
    OdeObserver obs;
    if (observer) {
      obs = [&](double s, const CVector& v) {
        point(s);
        observer(static_cast<double>(seg) + s, xs, SolutionVector(L, N, v));
      };
    }
    y = integrate_dopri(rhs, std::move(y), 0.0, 1.0, opt, obs);
  }
  return SolutionVector(L, N, std::move(y));
}

}  // namespace hgflow
