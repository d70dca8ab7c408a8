#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "hgflow/error.hpp"
#include "hgflow/types.hpp"

namespace hgflow {

struct OdeOptions {
  double tol = 1e-10;        // local error bound per step (mixed abs/rel)
  double min_step = 1e-14;   // StepUnderflow below this
  long max_steps = 2'000'000;
};

struct OdeStats {
  long accepted = 0;
  long rejected = 0;
};

// Called after every accepted step with (s, y).
using OdeObserver = std::function<void(double, const CVector&)>;

// Integrates dy/ds = rhs(s, y) from s0 to s1 with the Dormand-Prince 5(4)
// embedded pair. The error of a step is max_k |err_k| / max(1, |y_k|).
template <class Rhs>
CVector integrate_dopri(Rhs&& rhs, CVector y, double s0, double s1, const OdeOptions& opt,
                        const OdeObserver& observer = {}, OdeStats* stats = nullptr) {
  // Butcher tableau
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  OdeStats local;
  if (s1 == s0) {
    if (stats) *stats = local;
    return y;
  }
  const double dir = s1 > s0 ? 1.0 : -1.0;
  const double span = std::abs(s1 - s0);
  double h = std::min(span, 1e-2 * span + 1e-3);
  double s = s0;
  CVector k1 = rhs(s, y);
  while (dir * (s1 - s) > 0.0) {
    if (local.accepted + local.rejected >= opt.max_steps)
      throw Error(ErrorKind::StepUnderflow, "step budget exhausted");
    if (h < opt.min_step * std::max(1.0, span))
      throw Error(ErrorKind::StepUnderflow, "step size below minimum");
    const double remaining = dir * (s1 - s);
    const bool last = h >= remaining;
    const double hs = last ? remaining : h;
    const double hd = dir * hs;

    const CVector k2 = rhs(s + c2 * hd, y + hd * (a21 * k1));
    const CVector k3 = rhs(s + c3 * hd, y + hd * (a31 * k1 + a32 * k2));
    const CVector k4 = rhs(s + c4 * hd, y + hd * (a41 * k1 + a42 * k2 + a43 * k3));
    const CVector k5 = rhs(s + c5 * hd, y + hd * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const CVector k6 =
        rhs(s + hd, y + hd * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const CVector y5 = y + hd * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const CVector k7 = rhs(s + hd, y5);
    const CVector err = hd * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double en = 0.0;
    for (Eigen::Index k = 0; k < y.size(); ++k)
      en = std::max(en, std::abs(err(k)) / std::max(1.0, std::abs(y5(k))));
    if (!std::isfinite(en)) {
      h = 0.25 * hs;
      ++local.rejected;
      continue;
    }
    const double factor =
        en == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(opt.tol / en, 0.2), 0.2, 5.0);
    if (en <= opt.tol) {
      s = last ? s1 : s + hd;
      y = y5;
      k1 = k7;  // first-same-as-last
      ++local.accepted;
      if (observer) observer(s, y);
      h = hs * factor;
    } else {
      ++local.rejected;
      h = hs * std::min(factor, 0.9);
    }
  }
  if (stats) *stats = local;
  return y;
}

}  // namespace hgflow
