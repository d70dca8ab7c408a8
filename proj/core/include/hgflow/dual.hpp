#pragma once

#include "hgflow/types.hpp"

namespace hgflow {

// Forward-mode dual number over the complex field: value + eps * tangent.
// Holomorphic polynomials propagate the complex derivative exactly.
struct Dual {
  cplx v{};
  cplx d{};

  Dual() = default;
  Dual(cplx value) : v(value) {}  // NOLINT: implicit lift of constants
  Dual(double value) : v(value) {}  // NOLINT
  Dual(cplx value, cplx tangent) : v(value), d(tangent) {}

  Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
  Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
  Dual& operator*=(const Dual& o) {
    d = d * o.v + v * o.d;
    v *= o.v;
    return *this;
  }

  friend Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
  // Division by a constant only; the Hamiltonians never divide by unknowns.
  friend Dual operator/(const Dual& a, cplx c) { return {a.v / c, a.d / c}; }
};

inline cplx value_of(const cplx& z) { return z; }
inline cplx value_of(const Dual& z) { return z.v; }

}  // namespace hgflow
