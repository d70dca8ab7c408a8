#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "hgflow/params.hpp"
#include "hgflow/types.hpp"

namespace hgflow {

using MultiIndex = std::vector<int>;

// Dense enumeration of all multi-indices m in Z_{>=0}^N with |m| <= M,
// stored shell by shell (increasing |m|). Inside a shell the order is
// lexicographic with m_1 descending, then m_2 descending, and so on.
class MultiIndexLayout {
 public:
  // Shared, immutable layout for (N, M).
  static std::shared_ptr<const MultiIndexLayout> get(int N, int M);

  MultiIndexLayout(int N, int M);

  int vars() const noexcept { return N_; }
  int degree() const noexcept { return M_; }
  std::size_t size() const noexcept { return offsets_.back(); }

  // First flat position of shell d (d = 0..M+1; shell M+1 is the end).
  std::size_t shell_begin(int d) const { return offsets_.at(d); }

  std::span<const int> index(std::size_t k) const {
    return {flat_.data() + k * static_cast<std::size_t>(N_), static_cast<std::size_t>(N_)};
  }
  int total_degree(std::size_t k) const { return degree_of_.at(k); }

  // Flat position of m; m must satisfy |m| <= M.
  std::size_t rank(std::span<const int> m) const;

 private:
  int N_;
  int M_;
  std::vector<std::size_t> offsets_;
  std::vector<int> flat_;
  std::vector<int> degree_of_;
};

/// Truncated power series sum_{|m| <= M} c_m x^m in N variables.
///
/// Addition and scaling act coefficientwise; products and multiplication by
/// x_i drop every term of total degree above M.
class TruncatedSeries {
 public:
  TruncatedSeries(int N, int M);

  int vars() const noexcept { return layout_->vars(); }
  int degree() const noexcept { return layout_->degree(); }
  std::size_t size() const noexcept { return coeffs_.size(); }
  const MultiIndexLayout& layout() const noexcept { return *layout_; }

  cplx& operator[](std::size_t k) { return coeffs_[k]; }
  const cplx& operator[](std::size_t k) const { return coeffs_[k]; }

  // Coefficient of x^m; zero when |m| > M.
  cplx coeff(std::span<const int> m) const;
  cplx& at(std::span<const int> m);

  std::span<const cplx> coefficients() const noexcept { return coeffs_; }

  // Copy keeping only shells up to M2 <= M.
  TruncatedSeries truncated(int M2) const;

  TruncatedSeries& operator+=(const TruncatedSeries& other);
  TruncatedSeries& operator-=(const TruncatedSeries& other);
  TruncatedSeries& operator*=(cplx s);

  friend TruncatedSeries operator+(TruncatedSeries a, const TruncatedSeries& b) { return a += b; }
  friend TruncatedSeries operator-(TruncatedSeries a, const TruncatedSeries& b) { return a -= b; }
  friend TruncatedSeries operator*(TruncatedSeries a, cplx s) { return a *= s; }
  friend TruncatedSeries operator*(cplx s, TruncatedSeries a) { return a *= s; }
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

 private:
  std::shared_ptr<const MultiIndexLayout> layout_;
  std::vector<cplx> coeffs_;
};

// Rising factorial a(a+1)...(a+n-1); 1 for n = 0.
cplx pochhammer(cplx a, int n);

// Coefficients of F_{L,N}(alpha, beta, gamma; x) up to total degree M,
// generated by the ratio recurrence
//   c(m + e_i) = c(m) * prod_k (alpha_k + |m|)/(gamma_k + |m|) * (beta_i + m_i)/(m_i + 1).
TruncatedSeries series_coefficients(const HGParams& hp, int M);

struct SeriesValue {
  cplx value;
  // |degree-M shell| * r/(1-r) with r = max|x_i|; +inf when r >= 1.
  // Heuristic only.
  double tail_bound;
};

SeriesValue eval_series(const TruncatedSeries& ts, std::span<const cplx> x);

// Euler operator delta_i = x_i d/dx_i (i = 1..N).
TruncatedSeries apply_euler(const TruncatedSeries& ts, int i);
// D = sum_i delta_i.
TruncatedSeries apply_theta_sum(const TruncatedSeries& ts);
// (D + a) applied coefficientwise.
TruncatedSeries apply_theta_shift(const TruncatedSeries& ts, cplx a);
// d/dx_i; the result has degree M-1.
TruncatedSeries apply_partial(const TruncatedSeries& ts, int i);
// x_i * ts truncated at the same degree M.
TruncatedSeries multiply_by_x(const TruncatedSeries& ts, int i);

struct PdeResidual {
  TruncatedSeries residual;
  // max |r_m| over |m| <= M-1
  double max_abs;
  // max |r_m| / (|T1_m| + |T2_m|) over |m| <= M-1, where r = T1 - T2 are the
  // two operator terms
  double max_scaled;
};

// {x_i(beta_i + delta_i) prod_k(alpha_k + D) - delta_i prod_k(gamma_k - 1 + D)} F
// applied to series_coefficients(hp, M).
PdeResidual hg_pde_residual(const HGParams& hp, int M, int i);

struct QuadratureSpec {
  int nodes_per_axis = 48;
};

// F_{L,N} from the integral over [0,1]^{L-1} with Jacobi weights
// z^{alpha_k-1}(1-z)^{gamma_k-alpha_k-1}. Requires Re gamma_k > Re alpha_k > 0
// and |x_i| < 1 (DomainError otherwise). Imaginary parts of the exponents are
// folded into the integrand, which converges much more slowly than the real
// case.
cplx eval_integral(const HGParams& hp, std::span<const cplx> x, const QuadratureSpec& qs = {});

}  // namespace hgflow
