#include "hgflow/params.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "hgflow/error.hpp"

namespace hgflow {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ResonantGamma: return "ResonantGamma";
    case ErrorKind::ConstraintViolation: return "ConstraintViolation";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::PathTooClose: return "PathTooClose";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::NotReducible: return "NotReducible";
    case ErrorKind::ZeroDenominator: return "ZeroDenominator";
    case ErrorKind::ZeroGauge: return "ZeroGauge";
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::ZeroTheta: return "ZeroTheta";
    case ErrorKind::ResonantShift: return "ResonantShift";
    case ErrorKind::VanishingDenominator: return "VanishingDenominator";
  }
  return "Unknown";
}

double distance_to_integer(cplx z) {
  return std::abs(z - std::round(z.real()));
}

bool is_nonpositive_integer(cplx z, double tol) {
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z - r) <= tol;
}

namespace {

void require(bool ok, ErrorKind kind, const std::string& msg) {
  if (!ok) throw Error(kind, msg);
}

cplx sum(std::span<const cplx> v) { return std::accumulate(v.begin(), v.end(), cplx{}); }

std::vector<cplx> apply_shift(std::span<const cplx> v, const std::vector<int>& s) {
  std::vector<cplx> out(v.begin(), v.end());
  if (s.empty()) return out;
  require(s.size() == out.size(), ErrorKind::InvalidArgument, "shift length mismatch");
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += static_cast<double>(s[k]);
  return out;
}

}  // namespace

HGParams::HGParams(int L, int N, std::vector<cplx> alpha, std::vector<cplx> beta,
                   std::vector<cplx> gamma)
    : L_(L), N_(N), alpha_(std::move(alpha)), beta_(std::move(beta)), gamma_(std::move(gamma)) {
  require(L_ >= 2, ErrorKind::InvalidArgument, "L must be >= 2");
  require(N_ >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  require(alpha_.size() == static_cast<std::size_t>(L_ - 1), ErrorKind::InvalidArgument,
          "alpha must have L-1 entries");
  require(gamma_.size() == static_cast<std::size_t>(L_ - 1), ErrorKind::InvalidArgument,
          "gamma must have L-1 entries");
  require(beta_.size() == static_cast<std::size_t>(N_), ErrorKind::InvalidArgument,
          "beta must have N entries");
  for (int n = 1; n < L_; ++n) {
    require(!is_nonpositive_integer(gamma_[n - 1]), ErrorKind::ResonantGamma,
            "gamma_" + std::to_string(n) + " is a nonpositive integer");
  }
}

HGParams HGParams::shifted(const ShiftSpec& shift) const {
  return HGParams(L_, N_, apply_shift(alpha_, shift.alpha), apply_shift(beta_, shift.beta),
                  apply_shift(gamma_, shift.gamma));
}

SystemParams::SystemParams(int L, int N, std::vector<cplx> e, std::vector<cplx> kappa,
                           std::vector<cplx> theta)
    : L_(L), N_(N), e_(std::move(e)), kappa_(std::move(kappa)), theta_(std::move(theta)) {
  require(L_ >= 2, ErrorKind::InvalidArgument, "L must be >= 2");
  require(N_ >= 1, ErrorKind::InvalidArgument, "N must be >= 1");
  require(e_.size() == static_cast<std::size_t>(L_), ErrorKind::InvalidArgument,
          "e must have L entries");
  require(kappa_.size() == static_cast<std::size_t>(L_), ErrorKind::InvalidArgument,
          "kappa must have L entries");
  if (theta_.size() == static_cast<std::size_t>(N_)) {
    theta_.insert(theta_.begin(), sum(kappa_) - sum(theta_));
  }
  require(theta_.size() == static_cast<std::size_t>(N_ + 1), ErrorKind::InvalidArgument,
          "theta must have N or N+1 entries");

  const cplx e_sum = sum(e_) - 0.5 * (L_ - 1);
  require(std::abs(e_sum) <= kConstraintTol, ErrorKind::ConstraintViolation,
          "sum of e_n must equal (L-1)/2");
  const cplx fuchs = sum(kappa_) - sum(theta_);
  require(std::abs(fuchs) <= kConstraintTol, ErrorKind::ConstraintViolation,
          "Fuchs relation sum kappa_n = sum theta_i violated");
}

HGParams map_system_to_hg(const SystemParams& sp) {
  const int L = sp.L();
  const int N = sp.N();
  std::vector<cplx> alpha(L - 1), beta(N), gamma(L - 1);
  for (int n = 1; n < L; ++n) {
    alpha[n - 1] = sp.e(n) - sp.e(0);
    gamma[n - 1] = sp.e(n) - sp.e(0) - sp.kappa(n);
  }
  for (int i = 1; i <= N; ++i) beta[i - 1] = -sp.theta(i);
  return HGParams(L, N, std::move(alpha), std::move(beta), std::move(gamma));
}

Reducibility check_reducibility(const SystemParams& sp) {
  cplx r = sp.kappa(0);
  for (int i = 1; i <= sp.N(); ++i) r -= sp.theta(i);
  return {std::abs(r) <= kConstraintTol, r};
}

SystemParams random_params(std::uint64_t seed, int L, int N, bool reducible) {
  require(L >= 2 && N >= 1, ErrorKind::InvalidArgument, "need L >= 2 and N >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(-1.0, 1.0);
  std::uniform_real_distribution<double> im(-0.25, 0.25);
  auto draw = [&] { return cplx(re(rng), im(rng)); };

  for (;;) {
    std::vector<cplx> e(L), kappa(L), theta(N + 1);
    cplx tail{};
    for (int n = 1; n < L; ++n) {
      e[n] = draw();
      tail += e[n];
    }
    e[0] = 0.5 * (L - 1) - tail;
    cplx theta_tail{};
    for (int i = 1; i <= N; ++i) {
      theta[i] = draw();
      theta_tail += theta[i];
    }
    for (int n = 1; n < L; ++n) kappa[n] = draw();
    kappa[0] = reducible ? theta_tail : draw();
    theta[0] = sum(kappa) - theta_tail;

    bool generic = true;
    for (int m = 0; m < L && generic; ++m)
      for (int n = m + 1; n < L && generic; ++n)
        generic = distance_to_integer(e[n] - e[m]) >= kGenericMargin;
    for (int n = 1; n < L && generic; ++n)
      generic = distance_to_integer(e[n] - e[0] - kappa[n]) >= kGenericMargin;
    for (int i = 1; i <= N && generic; ++i)
      generic = distance_to_integer(theta[i]) >= kGenericMargin;
    if (generic) return SystemParams(L, N, std::move(e), std::move(kappa), std::move(theta));
  }
}

}  // namespace hgflow
