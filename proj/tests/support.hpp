#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <hgflow/params.hpp>
#include <hgflow/types.hpp>

namespace testing {

using hgflow::cplx;

// Generic complex HGParams drawn independently of random_params.
inline hgflow::HGParams random_hg(std::uint64_t seed, int L, int N) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-0.9, 0.9);
  std::uniform_real_distribution<double> im(-0.3, 0.3);
  auto draw = [&] { return cplx(re(rng), im(rng)); };
  for (;;) {
    std::vector<cplx> a(L - 1), b(N), g(L - 1);
    for (auto& v : a) v = draw();
    for (auto& v : b) v = draw();
    for (auto& v : g) v = draw() + 0.5;
    bool ok = true;
    for (const auto& v : g) ok = ok && hgflow::distance_to_integer(v) > 0.05;
    for (const auto& v : a) ok = ok && hgflow::distance_to_integer(v) > 0.05;
    for (const auto& v : b) ok = ok && hgflow::distance_to_integer(v) > 0.05;
    if (ok) return hgflow::HGParams(L, N, a, b, g);
  }
}

// Real parameters with gamma_k > alpha_k > 0, the integral regime.
inline hgflow::HGParams random_admissible(std::uint64_t seed, int L, int N) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<cplx> a(L - 1), b(N), g(L - 1);
  for (int k = 0; k < L - 1; ++k) {
    a[k] = 0.6 + 1.2 * u(rng);
    g[k] = a[k] + 0.6 + 1.2 * u(rng);
  }
  for (auto& v : b) v = -1.0 + 2.0 * u(rng);
  return hgflow::HGParams(L, N, a, b, g);
}

// Straight product of Pochhammer symbols, no recurrence.
inline cplx poch(cplx a, int n) {
  cplx r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
  return r;
}

inline cplx direct_coefficient(const hgflow::HGParams& hp, const std::vector<int>& m) {
  int total = 0;
  for (int v : m) total += v;
  cplx c = 1.0;
  for (int k = 1; k < hp.L(); ++k) c *= poch(hp.alpha(k), total) / poch(hp.gamma(k), total);
  for (int i = 1; i <= hp.N(); ++i) c *= poch(hp.beta(i), m[i - 1]) / std::tgamma(m[i - 1] + 1.0);
  return c;
}

inline double rel_err(cplx a, cplx b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace testing
