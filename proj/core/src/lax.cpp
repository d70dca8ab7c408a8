#include "hgflow/lax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "hgflow/error.hpp"

namespace hgflow {

namespace {

constexpr double kBcTol = 1e-10;
constexpr double kPoleTol = 1e-12;

std::vector<cplx> all_poles(std::span<const cplx> u) {
  std::vector<cplx> poles;
  poles.reserve(u.size() + 2);
  poles.push_back(1.0);
  poles.insert(poles.end(), u.begin(), u.end());
  poles.push_back(0.0);
  return poles;
}

void check_z(std::span<const cplx> poles, cplx z) {
  for (const cplx& u : poles)
    if (std::abs(z - u) < kPoleTol * std::max(1.0, std::abs(u)))
      throw Error(ErrorKind::PoleHit, "spectral parameter on a pole");
}

// Smallest max-deviation over matchings of two spectra of equal length.
double spectrum_mismatch(std::vector<cplx> got, const std::vector<cplx>& want) {
  const std::size_t n = got.size();
  if (n <= 7) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
      double worst = 0.0;
      for (std::size_t k = 0; k < n; ++k) worst = std::max(worst, std::abs(got[perm[k]] - want[k]));
      best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
  }
  double worst = 0.0;
  for (const cplx& w : want) {
    auto it = std::min_element(got.begin(), got.end(),
                               [&](cplx a, cplx b) { return std::abs(a - w) < std::abs(b - w); });
    worst = std::max(worst, std::abs(*it - w));
    got.erase(it);
  }
  return worst;
}

std::vector<cplx> eigenvalues(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void require_reducible(const SystemParams& sp) {
  if (!check_reducibility(sp).reducible)
    throw Error(ErrorKind::ConstraintViolation, "reduced system needs kappa_0 = sum theta_i");
}

void check_reduced_shape(const ReducedState& rs, const SystemParams& sp) {
  if (static_cast<int>(rs.u.size()) != sp.N() || rs.b.rows() != sp.L() - 1 || rs.b.cols() != sp.N())
    throw Error(ErrorKind::InvalidArgument, "reduced state shape mismatch");
}

cplx branch_factor(std::span<const cplx> u, const SystemParams& sp) {
  cplx log_p{};
  for (int j = 1; j <= sp.N(); ++j) log_p += sp.theta(j) * std::log(u[j - 1]);
  return std::exp(log_p);
}

}  // namespace

CMatrix FuchsianData::residue_infinity() const {
  CMatrix s = CMatrix::Zero(L, L);
  for (const auto& a : residues) s -= a;
  return s;
}

CMatrix FuchsianData::A(cplx z) const {
  check_z(poles, z);
  CMatrix s = CMatrix::Zero(L, L);
  for (std::size_t k = 0; k < residues.size(); ++k) s += residues[k] / (z - poles[k]);
  return s;
}

double trace_identity_residual(const BCVariables& bc, const SystemParams& sp) {
  const int L = sp.L();
  const int N = sp.N();
  double r = 0.0;
  for (int i = 0; i <= N; ++i) {
    cplx s{};
    for (int n = 0; n < L; ++n) s += bc.b(i, n) * bc.c(i, n);
    r = std::max(r, std::abs(s + sp.theta(i)));
  }
  for (int n = 0; n < L; ++n) {
    cplx s{};
    for (int i = 0; i <= N; ++i) s += bc.b(i, n) * bc.c(i, n);
    r = std::max(r, std::abs(s + sp.kappa(n)));
  }
  return r;
}

FuchsianData build_A_from_bc(const BCVariables& bc, const SystemParams& sp) {
  const int L = sp.L();
  const int N = sp.N();
  if (bc.b.rows() != N + 1 || bc.b.cols() != L || bc.c.rows() != N + 1 || bc.c.cols() != L ||
      static_cast<int>(bc.u.size()) != N)
    throw Error(ErrorKind::InvalidArgument, "b, c must be (N+1) x L and u must have N entries");
  for (int i = 0; i <= N; ++i)
    if (std::abs(bc.c(i, 0) - 1.0) > kBcTol) throw Error(ErrorKind::ConstraintViolation, "c_0^(i) must be 1");
  if (trace_identity_residual(bc, sp) > kBcTol)
    throw Error(ErrorKind::ConstraintViolation, "trace relations violated");

  FuchsianData fd{L, N, all_poles(bc.u), {}};
  for (int i = 0; i <= N; ++i) fd.residues.push_back(bc.b.row(i).transpose() * bc.c.row(i));
  CMatrix top = CMatrix::Zero(L, L);
  for (int m = 0; m < L; ++m) {
    top(m, m) = sp.e(m);
    for (int n = m + 1; n < L; ++n) {
      cplx w{};
      for (int i = 0; i <= N; ++i) w -= bc.b(i, m) * bc.c(i, n);
      top(m, n) = w;
    }
  }
  fd.residues.push_back(std::move(top));
  return fd;
}

double riemann_scheme_residual(const FuchsianData& fd, const SystemParams& sp) {
  const int L = fd.L;
  double r = 0.0;
  for (int i = 0; i <= fd.N; ++i) {
    std::vector<cplx> want(L, 0.0);
    want[0] = -sp.theta(i);
    r = std::max(r, spectrum_mismatch(eigenvalues(fd.residues[i]), want));
  }
  std::vector<cplx> e(sp.es().begin(), sp.es().end());
  r = std::max(r, spectrum_mismatch(eigenvalues(fd.residues[fd.N + 1]), e));
  std::vector<cplx> inf(L);
  for (int n = 0; n < L; ++n) inf[n] = sp.kappa(n) - sp.e(n);
  r = std::max(r, spectrum_mismatch(eigenvalues(fd.residue_infinity()), inf));
  return r;
}

BCVariables qp_to_bc(const PhasePoint& pt, const SystemParams& sp, std::span<const cplx> gauge,
                     std::span<const cplx> x) {
  const int L = sp.L();
  const int N = sp.N();
  if (static_cast<int>(gauge.size()) != L - 1 || static_cast<int>(x.size()) != N)
    throw Error(ErrorKind::InvalidArgument, "gauge needs L-1 entries and x needs N");
  for (const cplx& g : gauge)
    if (g == cplx{}) throw Error(ErrorKind::ZeroGauge, "gauge entries c_n^(0) must be nonzero");
  for (const cplx& xi : x)
    if (xi == cplx{}) throw Error(ErrorKind::SingularPoint, "x_i = 0 has no pole u_i");
  const AuxiliaryBlock aux = auxiliary(pt, sp);

  BCVariables bc{CMatrix::Zero(N + 1, L), CMatrix::Zero(N + 1, L), std::vector<cplx>(N)};
  bc.c(0, 0) = 1.0;
  bc.b(0, 0) = -aux.p00;
  for (int n = 1; n < L; ++n) {
    bc.c(0, n) = gauge[n - 1];
    bc.b(0, n) = -aux.p0row[n - 1] / gauge[n - 1];
  }
  for (int i = 1; i <= N; ++i) {
    bc.c(i, 0) = 1.0;
    bc.b(i, 0) = -aux.p0col[i - 1];
    for (int n = 1; n < L; ++n) {
      bc.c(i, n) = pt.q(n, i) * gauge[n - 1];
      bc.b(i, n) = -pt.p(n, i) / gauge[n - 1];
    }
    bc.u[i - 1] = 1.0 / x[i - 1];
  }
  return bc;
}

std::pair<std::vector<cplx>, PhasePoint> bc_to_qp(const BCVariables& bc, const SystemParams& sp) {
  const int L = sp.L();
  const int N = sp.N();
  std::vector<cplx> x(N);
  PhasePoint pt(L, N);
  for (int n = 1; n < L; ++n)
    if (bc.c(0, n) == cplx{}) throw Error(ErrorKind::ZeroGauge, "gauge entries c_n^(0) must be nonzero");
  for (int i = 1; i <= N; ++i) {
    x[i - 1] = 1.0 / bc.u[i - 1];
    for (int n = 1; n < L; ++n) {
      pt.q(n, i) = bc.c(i, n) / bc.c(0, n);
      pt.p(n, i) = -bc.b(i, n) * bc.c(0, n);
    }
  }
  return {std::move(x), std::move(pt)};
}

CMatrix build_B(int i, const FuchsianData& fd, const SystemParams& sp, cplx z) {
  if (i < 1 || i > fd.N) throw Error(ErrorKind::InvalidArgument, "B_i needs i in 1..N");
  const cplx ui = fd.poles[i];
  if (std::abs(z - ui) < kPoleTol * std::max(1.0, std::abs(ui))) throw Error(ErrorKind::PoleHit, "z = u_i");
  const CMatrix& Ai = fd.residues[i];
  CMatrix second = Ai.triangularView<Eigen::StrictlyLower>();
  second.diagonal().setConstant(-sp.theta(i) / static_cast<double>(fd.L));
  return Ai / (ui - z) - second / ui;
}

FuchsianData build_reduced(const ReducedState& rs, const SystemParams& sp) {
  require_reducible(sp);
  check_reduced_shape(rs, sp);
  const int L = sp.L();
  const int N = sp.N();
  FuchsianData fd{L, N, all_poles(rs.u), {}};

  CMatrix A0 = CMatrix::Zero(L, L);
  for (int n = 1; n < L; ++n) {
    A0(n, 0) = -sp.kappa(n) * rs.f;
    for (int m = 1; m < L; ++m) A0(n, m) = -sp.kappa(n);
  }
  fd.residues.push_back(std::move(A0));
  for (int i = 1; i <= N; ++i) {
    CMatrix Ai = CMatrix::Zero(L, L);
    Ai(0, 0) = -sp.theta(i);
    for (int n = 1; n < L; ++n) Ai(n, 0) = rs.b(n - 1, i - 1);
    fd.residues.push_back(std::move(Ai));
  }
  CMatrix top = CMatrix::Zero(L, L);
  for (int n = 0; n < L; ++n) {
    top(n, n) = sp.e(n);
    if (n == 0) continue;
    for (int m = n + 1; m < L; ++m) top(n, m) = sp.kappa(n);
  }
  fd.residues.push_back(std::move(top));
  return fd;
}

CMatrix build_reduced_B(int i, const ReducedState& rs, const SystemParams& sp, cplx z) {
  require_reducible(sp);
  check_reduced_shape(rs, sp);
  const int L = sp.L();
  if (i < 1 || i > sp.N()) throw Error(ErrorKind::InvalidArgument, "B_i needs i in 1..N");
  const cplx ui = rs.u[i - 1];
  if (std::abs(z - ui) < kPoleTol * std::max(1.0, std::abs(ui))) throw Error(ErrorKind::PoleHit, "z = u_i");
  CMatrix B = CMatrix::Zero(L, L);
  const cplx diag = sp.theta(i) / (static_cast<double>(L) * ui);
  B(0, 0) = diag * static_cast<double>(1 - L);
  for (int n = 1; n < L; ++n) B(n, n) = diag;
  const cplx w = z / (ui * (ui - z));
  B(0, 0) += w * -sp.theta(i);
  for (int n = 1; n < L; ++n) B(n, 0) += w * rs.b(n - 1, i - 1);
  return B;
}

ReducedDerivatives reduced_rhs(const ReducedState& rs, const SystemParams& sp) {
  check_reduced_shape(rs, sp);
  const int L = sp.L();
  const int N = sp.N();
  std::vector<cplx> x(N);
  for (int i = 0; i < N; ++i) {
    if (rs.u[i] == cplx{}) throw Error(ErrorKind::SingularPoint, "u_i = 0");
    x[i] = 1.0 / rs.u[i];
  }
  if (locus_distance(x) < kLocusTol) throw Error(ErrorKind::SingularPoint, "u_i must be distinct and != 0, 1");

  auto b = [&](int n, int i) { return rs.b(n - 1, i - 1); };
  ReducedDerivatives d{std::vector<cplx>(N), std::vector<CMatrix>(N, CMatrix::Zero(L - 1, N))};
  for (int i = 1; i <= N; ++i) {
    const cplx ui = rs.u[i - 1];
    const cplx th = sp.theta(i);
    cplx bsum{};
    for (int m = 1; m < L; ++m) bsum += b(m, i);
    d.df[i - 1] = (-ui * th * rs.f + bsum) / (ui * (1.0 - ui));

    CMatrix& db = d.db[i - 1];
    for (int j = 1; j <= N; ++j) {
      if (j == i) continue;
      const cplx uj = rs.u[j - 1];
      for (int n = 1; n < L; ++n)
        db(n - 1, j - 1) = (th * b(n, j) - (uj / ui) * sp.theta(j) * b(n, i)) / (ui - uj);
    }
    for (int n = 1; n < L; ++n) {
      cplx upper{};
      for (int m = n + 1; m < L; ++m) upper += b(m, i);
      cplx v = ((sp.e(n) - sp.e(0) + th) * b(n, i) + sp.kappa(n) * upper) / ui +
               sp.kappa(n) / (ui - 1.0) * (th * rs.f - bsum);
      for (int j = 1; j <= N; ++j) {
        if (j == i) continue;
        v -= (th * b(n, j) - sp.theta(j) * b(n, i)) / (ui - rs.u[j - 1]);
      }
      db(n - 1, i - 1) = v;
    }
  }
  return d;
}

PfaffianPoint reduced_to_pfaffian(const ReducedState& rs, const SystemParams& sp) {
  check_reduced_shape(rs, sp);
  const int L = sp.L();
  const int N = sp.N();
  for (int i = 1; i <= N; ++i)
    if (std::abs(sp.theta(i)) < 1e-14) throw Error(ErrorKind::ZeroTheta, "theta_i = 0");
  const cplx P = branch_factor(rs.u, sp);
  PfaffianPoint out{std::vector<cplx>(N), SolutionVector(L, N)};
  for (int i = 1; i <= N; ++i) out.x[i - 1] = 1.0 / rs.u[i - 1];
  out.y.y0() = rs.f / P;
  for (int i = 1; i <= N; ++i)
    for (int n = 1; n < L; ++n) out.y.y(n, i) = rs.b(n - 1, i - 1) / (sp.theta(i) * P);
  return out;
}

ReducedState pfaffian_to_reduced(std::span<const cplx> x, const SolutionVector& y, const SystemParams& sp) {
  const int L = sp.L();
  const int N = sp.N();
  if (static_cast<int>(x.size()) != N || y.L() != L || y.N() != N)
    throw Error(ErrorKind::InvalidArgument, "shape mismatch");
  ReducedState rs{std::vector<cplx>(N), {}, CMatrix::Zero(L - 1, N)};
  for (int i = 0; i < N; ++i) {
    if (x[i] == cplx{}) throw Error(ErrorKind::SingularPoint, "x_i = 0");
    rs.u[i] = 1.0 / x[i];
  }
  const cplx P = branch_factor(rs.u, sp);
  rs.f = y.y0() * P;
  for (int i = 1; i <= N; ++i)
    for (int n = 1; n < L; ++n) rs.b(n - 1, i - 1) = sp.theta(i) * P * y.y(n, i);
  return rs;
}

std::vector<SolutionVector> reduced_pfaffian_derivative(const ReducedState& rs, const SystemParams& sp) {
  const int L = sp.L();
  const int N = sp.N();
  const PfaffianPoint pp = reduced_to_pfaffian(rs, sp);
  const ReducedDerivatives d = reduced_rhs(rs, sp);
  const cplx P = branch_factor(rs.u, sp);
  std::vector<SolutionVector> out;
  for (int i = 1; i <= N; ++i) {
    const cplx ui = rs.u[i - 1];
    const cplx dlogP = sp.theta(i) / ui;
    // d/dx_i = -u_i^2 d/du_i
    const cplx chain = -ui * ui;
    SolutionVector dy(L, N);
    dy.y0() = chain * (d.df[i - 1] / P - pp.y.y0() * dlogP);
    for (int j = 1; j <= N; ++j)
      for (int n = 1; n < L; ++n)
        dy.y(n, j) = chain * (d.db[i - 1](n - 1, j - 1) / (sp.theta(j) * P) - pp.y.y(n, j) * dlogP);
    out.push_back(std::move(dy));
  }
  return out;
}

CMatrix zero_curvature_matrix(int i, const ReducedState& rs, const ReducedDerivatives& d,
                              const SystemParams& sp, cplx z) {
  const int L = sp.L();
  const int N = sp.N();
  const FuchsianData fd = build_reduced(rs, sp);
  check_z(fd.poles, z);
  const CMatrix A = fd.A(z);
  const CMatrix B = build_reduced_B(i, rs, sp, z);
  const cplx ui = rs.u[i - 1];

  // explicit pole motion of A_i/(z - u_i)
  CMatrix dA = fd.residues[i] / ((z - ui) * (z - ui));
  // entry motion: A_0 carries f, A_k carries b^(k)
  for (int n = 1; n < L; ++n) dA(n, 0) += -sp.kappa(n) * d.df[i - 1] / (z - 1.0);
  for (int k = 1; k <= N; ++k)
    for (int n = 1; n < L; ++n) dA(n, 0) += d.db[i - 1](n - 1, k - 1) / (z - rs.u[k - 1]);

  const CMatrix dBdz = fd.residues[i] / ((ui - z) * (ui - z));
  return dA - dBdz + A * B - B * A;
}

double zero_curvature_residual(int i, const ReducedState& rs, const SystemParams& sp, cplx z) {
  if (i < 1 || i > sp.N()) throw Error(ErrorKind::InvalidArgument, "i must be in 1..N");
  return zero_curvature_matrix(i, rs, reduced_rhs(rs, sp), sp, z).cwiseAbs().maxCoeff();
}

}  // namespace hgflow
