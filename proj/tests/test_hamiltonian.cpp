#include <doctest.h>

#include <array>
#include <random>

#include <hgflow/error.hpp>
#include <hgflow/hamiltonian.hpp>
#include <hgflow/pfaffian.hpp>

#include "support.hpp"

using hgflow::cplx;
using hgflow::CVector;
using hgflow::PhasePoint;

namespace {

PhasePoint random_phase(std::mt19937_64& rng, int L, int N, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  PhasePoint pt(L, N);
  for (int k = 0; k < pt.dim(); ++k) {
    pt.qs()(k) = {u(rng), u(rng)};
    pt.ps()(k) = {u(rng), u(rng)};
  }
  return pt;
}

// The displayed triple sum with every index-0 quantity filled in by hand.
cplx brute_force_xH(int i, const std::vector<cplx>& x, const PhasePoint& pt, const hgflow::SystemParams& sp) {
  const int L = sp.L(), N = sp.N();
  std::vector<std::vector<cplx>> Q(N + 1, std::vector<cplx>(L)), P(N + 1, std::vector<cplx>(L));
  for (int n = 0; n < L; ++n) Q[0][n] = 1.0;
  for (int j = 1; j <= N; ++j) {
    Q[j][0] = 1.0;
    for (int n = 1; n < L; ++n) {
      Q[j][n] = pt.q(n, j);
      P[j][n] = pt.p(n, j);
    }
  }
  for (int j = 1; j <= N; ++j) {
    P[j][0] = sp.theta(j);
    for (int n = 1; n < L; ++n) P[j][0] -= Q[j][n] * P[j][n];
  }
  for (int n = 1; n < L; ++n) {
    P[0][n] = sp.kappa(n);
    for (int j = 1; j <= N; ++j) P[0][n] -= Q[j][n] * P[j][n];
  }
  P[0][0] = sp.kappa(0);
  for (int j = 1; j <= N; ++j) P[0][0] -= P[j][0];

  std::vector<cplx> X(N + 1);
  X[0] = 1.0;
  for (int j = 1; j <= N; ++j) X[j] = x[j - 1];

  cplx s = 0.0;
  for (int n = 0; n < L; ++n) s += sp.e(n) * Q[i][n] * P[i][n];
  for (int j = 0; j <= N; ++j)
    for (int m = 0; m < L; ++m)
      for (int n = m + 1; n < L; ++n) s += Q[i][m] * P[j][m] * Q[j][n] * P[i][n];
  for (int j = 0; j <= N; ++j) {
    if (j == i) continue;
    for (int m = 0; m < L; ++m)
      for (int n = 0; n < L; ++n) s += X[j] / (X[i] - X[j]) * Q[i][m] * P[j][m] * Q[j][n] * P[i][n];
  }
  return s;
}

std::vector<cplx> generic_x(std::mt19937_64& rng, int N) {
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  for (;;) {
    std::vector<cplx> x(N);
    for (auto& v : x) v = {u(rng), u(rng)};
    if (hgflow::locus_distance(x) > 0.1) return x;
  }
}

}  // namespace

TEST_CASE("auxiliary block") {
  const auto sp = hgflow::random_params(3, 3, 2, false);
  const auto aux0 = hgflow::auxiliary(PhasePoint(3, 2), sp);
  for (int n = 1; n < 3; ++n) CHECK(aux0.p0row[n - 1] == sp.kappa(n));
  for (int i = 1; i <= 2; ++i) CHECK(aux0.p0col[i - 1] == sp.theta(i));

  hgflow::SystemParams small(2, 1, {0.0, 0.5}, {-1.0, 5.0}, {1.0, 3.0});
  PhasePoint pt(2, 1);
  pt.q(1, 1) = 1.0;
  pt.p(1, 1) = 2.0;
  const auto aux = hgflow::auxiliary(pt, small);
  CHECK(aux.p0row[0] == cplx(3.0));
  CHECK(aux.p0col[0] == cplx(1.0));

  std::mt19937_64 rng(8);
  const auto r = random_phase(rng, 3, 2);
  const auto a = hgflow::auxiliary(r, sp);
  for (int n = 2; n >= 1; --n) {
    cplx s = sp.kappa(n);
    for (int i = 2; i >= 1; --i) s -= r.p(n, i) * r.q(n, i);
    CHECK(std::abs(a.p0row[n - 1] - s) < 1e-14);
  }
}

TEST_CASE("Hamiltonian against brute-force expansion") {
  std::mt19937_64 rng(9);
  for (auto [L, N] : {std::pair{2, 1}, {3, 2}, {4, 2}, {2, 3}}) {
    const auto sp = hgflow::random_params(L * 7 + N, L, N, false);
    for (int trial = 0; trial < 5; ++trial) {
      const auto x = generic_x(rng, N);
      const auto pt = trial == 0 ? PhasePoint(L, N) : random_phase(rng, L, N);
      for (int i = 1; i <= N; ++i) {
        const cplx expect = brute_force_xH(i, x, pt, sp) / x[i - 1];
        CHECK(testing::rel_err(hgflow::hamiltonian_value(i, x, pt, sp), expect) < 1e-13);
      }
    }
  }
}

TEST_CASE("vanishing constants") {
  hgflow::SystemParams sp(3, 2, {0.2, 0.3, 0.5}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0});
  const std::vector<cplx> x{cplx(0.3, 0.2), cplx(-0.5, 0.1)};
  for (int i = 1; i <= 2; ++i) CHECK(hgflow::hamiltonian_value(i, x, PhasePoint(3, 2), sp) == cplx(0.0));
  const auto f = hgflow::canonical_vector_field(x, PhasePoint(3, 2), sp);
  for (int j = 0; j < 2; ++j) {
    CHECK(f.dq[j].norm() == 0.0);
    CHECK(f.dp[j].norm() == 0.0);
  }
}

TEST_CASE("singular points") {
  const auto sp = hgflow::random_params(1, 2, 2, false);
  for (const auto& x : {std::vector<cplx>{0.0, 0.5}, std::vector<cplx>{1.0, 0.5}, std::vector<cplx>{0.5, 0.5}}) {
    try {
      hgflow::hamiltonian_value(1, x, PhasePoint(2, 2), sp);
      FAIL("expected SingularPoint");
    } catch (const hgflow::Error& e) {
      CHECK(e.kind() == hgflow::ErrorKind::SingularPoint);
    }
  }
}

TEST_CASE("forward-mode gradients against finite differences") {
  std::mt19937_64 rng(10);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int L = 2 + trial % 2;
    const int N = 1 + (trial / 2) % 2;
    const auto sp = hgflow::random_params(200 + trial, L, N, false);
    const auto x = generic_x(rng, N);
    const auto pt = random_phase(rng, L, N);
    const auto field = hgflow::canonical_vector_field(x, pt, sp);
    const double h = 1e-6;
    for (int j = 1; j <= N; ++j) {
      for (int k = 0; k < pt.dim(); ++k) {
        for (int which = 0; which < 2; ++which) {
          PhasePoint plus = pt, minus = pt;
          (which == 0 ? plus.qs() : plus.ps())(k) += h;
          (which == 0 ? minus.qs() : minus.ps())(k) -= h;
          const cplx fd = (hgflow::hamiltonian_value(j, x, plus, sp) - hgflow::hamiltonian_value(j, x, minus, sp)) / (2 * h);
          const cplx ad = which == 0 ? -field.dp[j - 1](k) : field.dq[j - 1](k);
          const double scale = std::max(1.0, std::abs(ad));
          worst = std::max(worst, std::abs(fd - ad) / scale);
        }
      }
    }
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("polynomial of degree four in (q, p)") {
  // Tensor Lagrange interpolation on 5 nodes per variable reproduces x_i H_i
  // exactly when it has degree at most 4 in each variable.
  const auto sp = hgflow::random_params(11, 3, 1, false);
  const std::vector<cplx> x{cplx(0.4, 0.3)};
  const std::vector<double> nodes{-1.0, -0.5, 0.0, 0.5, 1.0};
  auto xH = [&](const std::array<cplx, 4>& v) {
    PhasePoint pt(3, 1);
    pt.q(1, 1) = v[0];
    pt.q(2, 1) = v[1];
    pt.p(1, 1) = v[2];
    pt.p(2, 1) = v[3];
    return hgflow::hamiltonian_value(1, x, pt, sp) * x[0];
  };
  auto lagrange = [&](int k, cplx t) {
    cplx r = 1.0;
    for (int m = 0; m < 5; ++m)
      if (m != k) r *= (t - nodes[m]) / (nodes[k] - nodes[m]);
    return r;
  };
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-1.3, 1.3);
  for (int trial = 0; trial < 4; ++trial) {
    std::array<cplx, 4> target;
    for (auto& t : target) t = {u(rng), u(rng)};
    cplx interp = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = 0; b < 5; ++b)
        for (int c = 0; c < 5; ++c)
          for (int d = 0; d < 5; ++d)
            interp += xH({nodes[a], nodes[b], nodes[c], nodes[d]}) * lagrange(a, target[0]) * lagrange(b, target[1]) *
                      lagrange(c, target[2]) * lagrange(d, target[3]);
    CHECK(testing::rel_err(interp, xH(target)) < 1e-10);
  }
}

TEST_CASE("flow") {
  const auto sp = hgflow::random_params(13, 3, 2, false);
  std::mt19937_64 rng(14);
  const auto pt = random_phase(rng, 3, 2, 0.3);
  const std::vector<cplx> a{cplx(0.3, 0.1), cplx(0.6, -0.2)};
  const std::vector<cplx> b{cplx(0.4, 0.25), cplx(0.75, -0.1)};

  SUBCASE("zero length") {
    const auto same = hgflow::flow(a, a, pt, sp, 1e-11);
    CHECK(same.qs() == pt.qs());
    CHECK(same.ps() == pt.ps());
  }
  SUBCASE("staircase order independence") {
    const std::vector<cplx> c1{b[0], a[1]};
    const std::vector<cplx> c2{a[0], b[1]};
    const auto r1 = hgflow::flow(c1, b, hgflow::flow(a, c1, pt, sp, 1e-12), sp, 1e-12);
    const auto r2 = hgflow::flow(c2, b, hgflow::flow(a, c2, pt, sp, 1e-12), sp, 1e-12);
    const auto r3 = hgflow::flow(a, b, pt, sp, 1e-12);
    CHECK((r1.qs() - r2.qs()).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((r1.ps() - r2.ps()).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((r1.ps() - r3.ps()).cwiseAbs().maxCoeff() <= 1e-7);
    // the end point actually moved
    CHECK((r1.ps() - pt.ps()).norm() > 1e-3);
  }
  SUBCASE("round trip") {
    const auto there = hgflow::flow(a, b, pt, sp, 1e-12);
    const auto back = hgflow::flow(b, a, there, sp, 1e-12);
    CHECK((back.qs() - pt.qs()).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK((back.ps() - pt.ps()).cwiseAbs().maxCoeff() <= 1e-7);
  }
  SUBCASE("segment through the locus") {
    const std::vector<cplx> c{cplx(0.3, 0.1), cplx(0.3, 0.1)};
    CHECK_THROWS_AS(hgflow::flow(a, c, pt, sp, 1e-10), hgflow::Error);
  }
}
