#include "hgflow/series.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <utility>

#include "hgflow/error.hpp"
#include "hgflow/special.hpp"

namespace hgflow {

namespace {

// C(n, k) for the small arguments used by the layout.
std::size_t binom(int n, int k) {
  if (k < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  std::size_t r = 1;
  for (int j = 1; j <= k; ++j) r = r * static_cast<std::size_t>(n - k + j) / static_cast<std::size_t>(j);
  return r;
}

void enumerate_shell(int N, int d, int pos, std::vector<int>& cur, std::vector<int>& out) {
  if (pos == N - 1) {
    cur[pos] = d;
    out.insert(out.end(), cur.begin(), cur.end());
    return;
  }
  for (int t = d; t >= 0; --t) {
    cur[pos] = t;
    enumerate_shell(N, d - t, pos + 1, cur, out);
  }
}

void check_var(const TruncatedSeries& ts, int i) {
  if (i < 1 || i > ts.vars()) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
}

}  // namespace

std::shared_ptr<const MultiIndexLayout> MultiIndexLayout::get(int N, int M) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MultiIndexLayout>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{N, M}];
  if (!slot) slot = std::make_shared<const MultiIndexLayout>(N, M);
  return slot;
}

MultiIndexLayout::MultiIndexLayout(int N, int M) : N_(N), M_(M) {
  if (N < 1) throw Error(ErrorKind::InvalidArgument, "series needs N >= 1");
  if (M < 0) throw Error(ErrorKind::InvalidArgument, "series degree must be >= 0");
  offsets_.resize(M + 2);
  offsets_[0] = 0;
  std::vector<int> cur(N);
  for (int d = 0; d <= M; ++d) {
    enumerate_shell(N, d, 0, cur, flat_);
    offsets_[d + 1] = flat_.size() / static_cast<std::size_t>(N);
    degree_of_.resize(offsets_[d + 1], d);
  }
}

std::size_t MultiIndexLayout::rank(std::span<const int> m) const {
  int d = 0;
  for (int v : m) d += v;
  std::size_t r = offsets_.at(d);
  int rem = d;
  for (int j = 0; j + 1 < N_; ++j) {
    // indices with a larger entry at position j come first
    const int k = N_ - 1 - j;
    if (rem - m[j] >= 1) r += binom(rem - m[j] - 1 + k, k);
    rem -= m[j];
  }
  return r;
}

TruncatedSeries::TruncatedSeries(int N, int M)
    : layout_(MultiIndexLayout::get(N, M)), coeffs_(layout_->size()) {}

cplx TruncatedSeries::coeff(std::span<const int> m) const {
  int d = 0;
  for (int v : m) {
    if (v < 0) return {};
    d += v;
  }
  if (d > degree()) return {};
  return coeffs_[layout_->rank(m)];
}

cplx& TruncatedSeries::at(std::span<const int> m) { return coeffs_.at(layout_->rank(m)); }

TruncatedSeries TruncatedSeries::truncated(int M2) const {
  TruncatedSeries out(vars(), M2);
  // shells coincide up to M2 since ordering is shell-major
  for (std::size_t k = 0; k < out.size() && k < size(); ++k) out.coeffs_[k] = coeffs_[k];
  return out;
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& other) {
  if (layout_ != other.layout_) throw Error(ErrorKind::InvalidArgument, "series shape mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& other) {
  if (layout_ != other.layout_) throw Error(ErrorKind::InvalidArgument, "series shape mismatch");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= other.coeffs_[k];
  return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.vars() != b.vars()) throw Error(ErrorKind::InvalidArgument, "series shape mismatch");
  const int M = std::min(a.degree(), b.degree());
  const int N = a.vars();
  TruncatedSeries out(N, M);
  const auto& lay = out.layout();
  std::vector<int> m(N);
  for (std::size_t ka = 0; ka < lay.size(); ++ka) {
    if (a[ka] == cplx{}) continue;
    const auto ma = a.layout().index(ka);
    const int da = a.layout().total_degree(ka);
    for (std::size_t kb = 0; kb < b.layout().shell_begin(M - da + 1); ++kb) {
      const auto mb = b.layout().index(kb);
      for (int v = 0; v < N; ++v) m[v] = ma[v] + mb[v];
      out[lay.rank(m)] += a[ka] * b[kb];
    }
  }
  return out;
}

cplx pochhammer(cplx a, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "pochhammer needs n >= 0");
  cplx r = 1.0;
  for (int k = 0; k < n; ++k) r *= a + static_cast<double>(k);
  return r;
}

TruncatedSeries series_coefficients(const HGParams& hp, int M) {
  const int N = hp.N();
  TruncatedSeries ts(N, M);
  const auto& lay = ts.layout();
  ts[0] = 1.0;
  std::vector<int> prev(N);
  for (std::size_t k = 1; k < lay.size(); ++k) {
    const auto m = lay.index(k);
    const int d = lay.total_degree(k);
    int i = 0;
    while (m[i] == 0) ++i;
    prev.assign(m.begin(), m.end());
    --prev[i];
    // |prev| = d - 1
    cplx ratio = (hp.beta(i + 1) + static_cast<double>(prev[i])) / static_cast<double>(m[i]);
    for (int n = 1; n < hp.L(); ++n)
      ratio *= (hp.alpha(n) + static_cast<double>(d - 1)) / (hp.gamma(n) + static_cast<double>(d - 1));
    ts[k] = ts[lay.rank(prev)] * ratio;
  }
  return ts;
}

SeriesValue eval_series(const TruncatedSeries& ts, std::span<const cplx> x) {
  const int N = ts.vars();
  const int M = ts.degree();
  if (static_cast<int>(x.size()) != N) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  std::vector<cplx> powers(static_cast<std::size_t>(N) * (M + 1));
  double r = 0.0;
  for (int v = 0; v < N; ++v) {
    r = std::max(r, std::abs(x[v]));
    powers[v * (M + 1)] = 1.0;
    for (int p = 1; p <= M; ++p) powers[v * (M + 1) + p] = powers[v * (M + 1) + p - 1] * x[v];
  }
  const auto& lay = ts.layout();
  std::vector<cplx> shells(M + 1);
  for (int d = 0; d <= M; ++d) {
    cplx s{};
    for (std::size_t k = lay.shell_begin(d); k < lay.shell_begin(d + 1); ++k) {
      cplx mono = ts[k];
      const auto m = lay.index(k);
      for (int v = 0; v < N; ++v) mono *= powers[v * (M + 1) + m[v]];
      s += mono;
    }
    shells[d] = s;
  }
  // shells summed from the highest degree down
  cplx value{};
  for (int d = M; d >= 0; --d) value += shells[d];
  const double tail = r < 1.0 ? std::abs(shells[M]) * r / (1.0 - r)
                              : std::numeric_limits<double>::infinity();
  return {value, tail};
}

TruncatedSeries apply_euler(const TruncatedSeries& ts, int i) {
  check_var(ts, i);
  TruncatedSeries out = ts;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] *= static_cast<double>(ts.layout().index(k)[i - 1]);
  return out;
}

TruncatedSeries apply_theta_sum(const TruncatedSeries& ts) { return apply_theta_shift(ts, 0.0); }

TruncatedSeries apply_theta_shift(const TruncatedSeries& ts, cplx a) {
  TruncatedSeries out = ts;
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] *= a + static_cast<double>(ts.layout().total_degree(k));
  return out;
}

TruncatedSeries apply_partial(const TruncatedSeries& ts, int i) {
  check_var(ts, i);
  const int N = ts.vars();
  TruncatedSeries out(N, std::max(ts.degree() - 1, 0));
  if (ts.degree() == 0) return out;
  std::vector<int> up(N);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto m = out.layout().index(k);
    up.assign(m.begin(), m.end());
    ++up[i - 1];
    out[k] = static_cast<double>(up[i - 1]) * ts.coeff(up);
  }
  return out;
}

TruncatedSeries multiply_by_x(const TruncatedSeries& ts, int i) {
  check_var(ts, i);
  const int N = ts.vars();
  TruncatedSeries out(N, ts.degree());
  std::vector<int> down(N);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto m = out.layout().index(k);
    if (m[i - 1] == 0) continue;
    down.assign(m.begin(), m.end());
    --down[i - 1];
    out[k] = ts.coeff(down);
  }
  return out;
}

PdeResidual hg_pde_residual(const HGParams& hp, int M, int i) {
  if (i < 1 || i > hp.N()) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  const TruncatedSeries F = series_coefficients(hp, M);

  TruncatedSeries t1 = F;
  for (int k = 1; k < hp.L(); ++k) t1 = apply_theta_shift(t1, hp.alpha(k));
  t1 = apply_euler(t1, i) + t1 * hp.beta(i);
  t1 = multiply_by_x(t1, i);

  TruncatedSeries t2 = F;
  for (int k = 1; k < hp.L(); ++k) t2 = apply_theta_shift(t2, hp.gamma(k) - 1.0);
  t2 = apply_euler(t2, i);

  PdeResidual out{t1 - t2, 0.0, 0.0};
  const auto& lay = F.layout();
  const std::size_t end = M >= 1 ? lay.shell_begin(M) : 0;
  for (std::size_t k = 0; k < end; ++k) {
    const double r = std::abs(out.residual[k]);
    const double scale = std::abs(t1[k]) + std::abs(t2[k]);
    out.max_abs = std::max(out.max_abs, r);
    if (scale > 0.0) out.max_scaled = std::max(out.max_scaled, r / scale);
    else if (r > 0.0) out.max_scaled = std::numeric_limits<double>::infinity();
  }
  return out;
}

cplx eval_integral(const HGParams& hp, std::span<const cplx> x, const QuadratureSpec& qs) {
  const int L = hp.L();
  const int N = hp.N();
  if (static_cast<int>(x.size()) != N) throw Error(ErrorKind::InvalidArgument, "point dimension mismatch");
  for (int n = 1; n < L; ++n) {
    if (!(hp.gamma(n).real() > hp.alpha(n).real() && hp.alpha(n).real() > 0.0))
      throw Error(ErrorKind::DomainError, "integral needs Re gamma_k > Re alpha_k > 0");
  }
  for (const cplx& xi : x)
    if (!(std::abs(xi) < 1.0)) throw Error(ErrorKind::DomainError, "integral needs |x_i| < 1");
  if (qs.nodes_per_axis < 1) throw Error(ErrorKind::InvalidArgument, "need at least one node");

  const int axes = L - 1;
  std::vector<GaussRule> rules;
  // B(Re a, Re b) / B(a, b) relates the real-exponent weight to the complex one.
  cplx log_prefactor{};
  std::vector<cplx> osc_a(axes), osc_b(axes);
  for (int k = 0; k < axes; ++k) {
    const cplx a = hp.alpha(k + 1);
    const cplx b = hp.gamma(k + 1) - hp.alpha(k + 1);
    rules.push_back(gauss_jacobi01(qs.nodes_per_axis, a.real() - 1.0, b.real() - 1.0));
    osc_a[k] = cplx(0.0, a.imag());
    osc_b[k] = cplx(0.0, b.imag());
    if (a.imag() != 0.0 || b.imag() != 0.0)
      log_prefactor += log_beta(a.real(), b.real()) - log_beta(a, b);
  }

  const int n = qs.nodes_per_axis;
  std::size_t total = 1;
  for (int k = 0; k < axes; ++k) total *= static_cast<std::size_t>(n);

  cplx acc{};
  std::vector<int> idx(axes, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    double w = 1.0;
    double prod = 1.0;
    cplx osc = 1.0;
    for (int k = 0; k < axes; ++k) {
      idx[k] = static_cast<int>(rest % n);
      rest /= n;
      const double z = rules[k].nodes[idx[k]];
      w *= rules[k].weights[idx[k]];
      prod *= z;
      if (osc_a[k] != cplx{}) osc *= std::exp(osc_a[k] * std::log(z));
      if (osc_b[k] != cplx{}) osc *= std::exp(osc_b[k] * std::log1p(-z));
    }
    cplx f = osc;
    for (int i = 0; i < N; ++i) f *= std::exp(-hp.betas()[i] * std::log(1.0 - x[i] * prod));
    acc += w * f;
  }
  return std::exp(log_prefactor) * acc;
}

}  // namespace hgflow
