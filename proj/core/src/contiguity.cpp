#include "hgflow/contiguity.hpp"

#include <cmath>
#include <string>

#include "hgflow/error.hpp"

namespace hgflow {

namespace {

constexpr double kVanishTol = 1e-10;

void require_nonzero(cplx v, const char* what) {
  if (std::abs(v) <= kVanishTol) throw Error(ErrorKind::VanishingDenominator, std::string(what) + " vanishes");
}

HGParams shift_params(const HGParams& hp, const ShiftSpec& s) {
  try {
    return hp.shifted(s);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ResonantGamma) throw Error(ErrorKind::ResonantShift, e.what());
    throw;
  }
}

ShiftSpec zero_shift(const HGParams& hp) {
  return {std::vector<int>(hp.L() - 1, 0), std::vector<int>(hp.N(), 0), std::vector<int>(hp.L() - 1, 0)};
}

// prefactor * sum(terms), each term already a series in x.
struct OperatorImage {
  cplx prefactor = 1.0;
  std::vector<TruncatedSeries> terms;
};

ContiguityResult compare(const TruncatedSeries& lhs, const OperatorImage& rhs, int degree) {
  ContiguityResult r{0, 0, 0, degree, 0.0, 0.0};
  const auto& lay = lhs.layout();
  for (std::size_t k = 0; k < lay.shell_begin(degree + 1); ++k) {
    const auto m = lay.index(k);
    cplx sum{};
    double mag = 0.0;
    for (const auto& t : rhs.terms) {
      const cplx c = t.coeff(m);
      sum += c;
      mag += std::abs(c);
    }
    const cplx value = rhs.prefactor * sum;
    const double diff = std::abs(lhs[k] - value);
    const double scale = std::max(std::abs(lhs[k]), std::abs(rhs.prefactor) * mag);
    r.max_abs = std::max(r.max_abs, diff);
    if (scale > 0.0) r.max_rel = std::max(r.max_rel, diff / scale);
  }
  return r;
}

}  // namespace

std::vector<cplx> elementary_symmetric(std::span<const cplx> values) {
  std::vector<cplx> e(values.size() + 1, cplx{});
  e[0] = 1.0;
  for (std::size_t k = 0; k < values.size(); ++k)
    for (std::size_t j = k + 1; j >= 1; --j) e[j] += values[k] * e[j - 1];
  return e;
}

SymmetricData symmetric_data(const HGParams& hp, int n) {
  if (n < 1 || n >= hp.L()) throw Error(ErrorKind::InvalidArgument, "n must be in 1..L-1");
  std::vector<cplx> a, b;
  cplx beta_sum{};
  for (const cplx& v : hp.betas()) beta_sum += v;
  for (int k = 1; k < hp.L(); ++k) {
    a.push_back(hp.alpha(k) - hp.gamma(n));
    b.push_back(hp.gamma(k) - hp.alpha(n));
  }
  a.push_back(beta_sum - hp.gamma(n));
  b.push_back(1.0 - hp.alpha(n));
  return {elementary_symmetric(a), elementary_symmetric(b)};
}

bool isomorphism_criterion(const HGParams& hp, int n) {
  const SymmetricData sd = symmetric_data(hp, n);
  return std::abs(hp.gamma(n)) > kVanishTol && std::abs(sd.eps.back()) > kVanishTol;
}

ContiguityResult check_contiguity(int relation, const HGParams& hp, int slot, int M, int slot2) {
  const int L = hp.L();
  const int N = hp.N();
  const bool by_n = relation == 1 || relation == 3 || relation == 4 || relation == 5;
  const int upper = by_n ? L - 1 : N;
  if (relation < 1 || relation > 7) throw Error(ErrorKind::InvalidArgument, "relation must be 1..7");
  if (slot < 1 || slot > upper) throw Error(ErrorKind::InvalidArgument, "parameter slot out of range");
  if (relation == 6 && (slot2 < 1 || slot2 > N || slot2 == slot))
    throw Error(ErrorKind::InvalidArgument, "relation 6 needs a second, distinct beta index");

  const int order = (relation == 3 || relation == 4) ? L - 1 : 1;
  const int degree = M - order;
  if (degree < 0) throw Error(ErrorKind::InvalidArgument, "truncation degree too small for this relation");

  const TruncatedSeries F = series_coefficients(hp, M);
  ShiftSpec shift = zero_shift(hp);
  OperatorImage rhs;

  switch (relation) {
    case 1: {
      const cplx a = hp.alpha(slot);
      require_nonzero(a, "alpha_n");
      shift.alpha[slot - 1] = 1;
      rhs.prefactor = 1.0 / a;
      rhs.terms.push_back(apply_theta_shift(F, a));
      break;
    }
    case 2: {
      const cplx b = hp.beta(slot);
      require_nonzero(b, "beta_i");
      shift.beta[slot - 1] = 1;
      rhs.prefactor = 1.0 / b;
      rhs.terms.push_back(apply_euler(F, slot));
      rhs.terms.push_back(F * b);
      break;
    }
    case 3: {
      const SymmetricData sd = symmetric_data(hp, slot);
      require_nonzero(sd.eps.back(), "eps_L");
      shift.gamma[slot - 1] = 1;
      rhs.prefactor = hp.gamma(slot) / sd.eps.back();
      TruncatedSeries prod = F;
      for (int k = 1; k < L; ++k)
        if (k != slot) prod = apply_theta_shift(prod, hp.gamma(k) - 1.0);
      for (int i = 1; i <= N; ++i) rhs.terms.push_back(apply_partial(prod, i));
      for (int j = 0; j < L; ++j) {
        TruncatedSeries t = F;
        for (int p = 0; p < L - 1 - j; ++p) t = apply_theta_shift(t, hp.gamma(slot));
        rhs.terms.push_back(t * -sd.eps[j]);
      }
      break;
    }
    case 4: {
      const cplx a = hp.alpha(slot);
      require_nonzero(a - 1.0, "alpha_n - 1");
      const SymmetricData sd = symmetric_data(hp, slot);
      require_nonzero(sd.eps_prime.back(), "eps'_L");
      shift.alpha[slot - 1] = -1;
      rhs.prefactor = (a - 1.0) / sd.eps_prime.back();
      TruncatedSeries prod = F;
      for (int k = 1; k < L; ++k)
        if (k != slot) prod = apply_theta_shift(prod, hp.alpha(k));
      for (int i = 1; i <= N; ++i)
        rhs.terms.push_back(multiply_by_x(apply_euler(prod, i) + prod * hp.beta(i), i));
      for (int j = 0; j < L; ++j) {
        TruncatedSeries t = F;
        for (int p = 0; p < L - 1 - j; ++p) t = apply_theta_shift(t, a - 1.0);
        rhs.terms.push_back(t * -sd.eps_prime[j]);
      }
      break;
    }
    case 5: {
      const cplx g = hp.gamma(slot);
      require_nonzero(g - 1.0, "gamma_n - 1");
      shift.gamma[slot - 1] = -1;
      rhs.prefactor = 1.0 / (g - 1.0);
      rhs.terms.push_back(apply_theta_shift(F, g - 1.0));
      break;
    }
    case 6: {
      const cplx b = hp.beta(slot);
      require_nonzero(b, "beta_i");
      shift.beta[slot - 1] = 1;
      shift.beta[slot2 - 1] = -1;
      rhs.prefactor = 1.0 / b;
      const TruncatedSeries d = apply_partial(F, slot);
      rhs.terms.push_back(multiply_by_x(d, slot));
      rhs.terms.push_back(multiply_by_x(d, slot2) * -1.0);
      rhs.terms.push_back(F * b);
      break;
    }
    case 7: {
      cplx pref = 1.0;
      for (int k = 1; k < L; ++k) {
        pref *= hp.gamma(k) / hp.alpha(k);
        require_nonzero(hp.alpha(k), "alpha_k");
        shift.alpha[k - 1] = 1;
        shift.gamma[k - 1] = 1;
      }
      require_nonzero(hp.beta(slot), "beta_i");
      pref /= hp.beta(slot);
      shift.beta[slot - 1] = 1;
      rhs.prefactor = pref;
      rhs.terms.push_back(apply_partial(F, slot));
      break;
    }
  }

  const TruncatedSeries lhs = series_coefficients(shift_params(hp, shift), M);
  ContiguityResult r = compare(lhs, rhs, degree);
  r.relation = relation;
  r.slot = slot;
  r.slot2 = relation == 6 ? slot2 : 0;
  return r;
}

std::vector<ContiguityResult> check_all_contiguity(const HGParams& hp, int M) {
  std::vector<ContiguityResult> out;
  for (int rel = 1; rel <= 7; ++rel) {
    const bool by_n = rel == 1 || rel == 3 || rel == 4 || rel == 5;
    const int upper = by_n ? hp.L() - 1 : hp.N();
    for (int s = 1; s <= upper; ++s) {
      if (rel == 6) {
        for (int t = 1; t <= hp.N(); ++t)
          if (t != s) out.push_back(check_contiguity(rel, hp, s, M, t));
      } else {
        out.push_back(check_contiguity(rel, hp, s, M));
      }
    }
  }
  return out;
}

}  // namespace hgflow
