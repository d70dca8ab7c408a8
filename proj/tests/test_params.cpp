#include <doctest.h>

#include <hgflow/error.hpp>
#include <hgflow/params.hpp>

using hgflow::cplx;
using hgflow::ErrorKind;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const hgflow::Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::InvalidArgument;
}

}  // namespace

TEST_CASE("minimal substitution L=2 N=1") {
  const cplx th1(0.3, 0.1);
  const cplx k1(0.2, -0.05);
  const cplx th0(0.4, 0.0);
  const cplx k0 = th0 + th1 - k1;
  hgflow::SystemParams sp(2, 1, {0.0, 0.5}, {k0, k1}, {th0, th1});
  const auto hp = hgflow::map_system_to_hg(sp);
  CHECK(hp.alpha(1) == cplx(0.5));
  CHECK(hp.beta(1) == -th1);
  CHECK(hp.gamma(1) == 0.5 - k1);
}

TEST_CASE("gamma_n = 0 is resonant") {
  // e_1 = e_0 and kappa_1 = 0
  hgflow::SystemParams sp(3, 1, {0.25, 0.25, 0.5}, {0.3, 0.0, 0.2}, {0.1, 0.4});
  CHECK(kind_of([&] { hgflow::map_system_to_hg(sp); }) == ErrorKind::ResonantGamma);
  CHECK(kind_of([] { hgflow::HGParams(2, 1, {0.5}, {0.5}, {-2.0}); }) == ErrorKind::ResonantGamma);
  CHECK(kind_of([] { hgflow::HGParams(2, 1, {0.5}, {0.5}, {cplx(-1.0 + 1e-13, 0.0)}); }) ==
        ErrorKind::ResonantGamma);
  CHECK_NOTHROW(hgflow::HGParams(2, 1, {0.5}, {0.5}, {-1.5}));
}

TEST_CASE("round trip of the parameter dictionary") {
  const auto sp = hgflow::random_params(42, 4, 3, false);
  const auto hp = hgflow::map_system_to_hg(sp);
  for (int n = 1; n < 4; ++n) {
    CHECK(hp.alpha(n) == sp.e(n) - sp.e(0));
    CHECK(hp.gamma(n) == sp.e(n) - sp.e(0) - sp.kappa(n));
    CHECK(std::abs(hp.alpha(n) - hp.gamma(n) - sp.kappa(n)) <= 1e-15);
  }
  for (int i = 1; i <= 3; ++i) CHECK(-hp.beta(i) == sp.theta(i));
}

TEST_CASE("constraint validation") {
  CHECK(kind_of([] { hgflow::SystemParams(2, 1, {0.0, 0.6}, {0.1, 0.2}, {0.1, 0.2}); }) ==
        ErrorKind::ConstraintViolation);
  CHECK(kind_of([] { hgflow::SystemParams(2, 1, {0.0, 0.5}, {0.1, 0.2}, {0.1, 0.3}); }) ==
        ErrorKind::ConstraintViolation);
  CHECK(kind_of([] { hgflow::SystemParams(2, 1, {0.0, 0.5}, {0.1}, {0.1, 0.3}); }) ==
        ErrorKind::InvalidArgument);
  CHECK(kind_of([] { hgflow::HGParams(1, 1, {}, {0.5}, {}); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("theta_0 from Fuchs' relation") {
  hgflow::SystemParams sp(2, 2, {0.1, 0.4}, {0.7, cplx(0.2, 0.1)}, {0.3, 0.25});
  CHECK(std::abs(sp.theta(0) - (cplx(0.9, 0.1) - 0.55)) < 1e-15);
  CHECK(sp.thetas().size() == 3);
}

TEST_CASE("reducibility") {
  hgflow::SystemParams red(2, 2, {0.125, 0.375}, {0.75, 0.25}, {0.25, 0.25, 0.5});
  auto r = hgflow::check_reducibility(red);
  CHECK(r.reducible);
  CHECK(std::abs(r.residual) == 0.0);

  hgflow::SystemParams off(2, 2, {0.125, 0.375}, {1.75, 0.25}, {1.25, 0.25, 0.5});
  r = hgflow::check_reducibility(off);
  CHECK_FALSE(r.reducible);
  CHECK(std::abs(r.residual - 1.0) < 1e-15);

  // projection of a random point onto kappa_0 = sum theta_i
  const auto sp = hgflow::random_params(5, 3, 2, false);
  std::vector<cplx> kappa(sp.kappas().begin(), sp.kappas().end());
  std::vector<cplx> theta(sp.thetas().begin(), sp.thetas().end());
  kappa[0] = theta[1] + theta[2];
  theta[0] = kappa[0] + kappa[1] + kappa[2] - theta[1] - theta[2];
  hgflow::SystemParams proj(3, 2, {sp.es().begin(), sp.es().end()}, kappa, theta);
  CHECK(hgflow::check_reducibility(proj).reducible);
}

TEST_CASE("random_params postconditions") {
  const auto a = hgflow::random_params(1, 2, 1, true);
  const auto b = hgflow::random_params(1, 2, 1, true);
  CHECK(hgflow::check_reducibility(a).reducible);
  for (int n = 0; n < 2; ++n) {
    CHECK(a.e(n) == b.e(n));
    CHECK(a.kappa(n) == b.kappa(n));
  }
  for (int i = 0; i <= 1; ++i) CHECK(a.theta(i) == b.theta(i));

  CHECK_NOTHROW(hgflow::map_system_to_hg(hgflow::random_params(2, 3, 2, false)));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int L = 2 + static_cast<int>(seed % 3);
    const int N = 1 + static_cast<int>(seed % 3);
    const auto sp = hgflow::random_params(seed, L, N, seed % 2 == 0);
    const auto hp = hgflow::map_system_to_hg(sp);
    for (int m = 0; m < L; ++m)
      for (int n = m + 1; n < L; ++n) CHECK(hgflow::distance_to_integer(sp.e(n) - sp.e(m)) >= 0.05);
    for (int n = 1; n < L; ++n) CHECK(hgflow::distance_to_integer(hp.gamma(n)) >= 0.05);
  }
}
