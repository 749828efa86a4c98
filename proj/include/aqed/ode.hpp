#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "aqed/errors.hpp"

namespace aqed::ode {

struct Tolerances {
  double abs = 1e-12;
  double rel = 1e-10;
  double initial_step = 0;  // 0: pick from the first derivative
  long max_steps = 2'000'000;
};

struct Stats {
  long accepted = 0;
  long rejected = 0;
};

/// Dormand-Prince 5(4) with FSAL and the standard PI-free step controller.
/// `f(t, y)` returns dy/dt with the same shape as y. Integrates y from t0 to t1 in place.
template <typename Vector, typename Rhs>
Stats integrate_dopri5(Rhs&& f, Vector& y, double t0, double t1, const Tolerances& tol = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // 5th minus embedded 4th order weights.
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  Stats stats;
  if (t1 < t0) throw DomainError("integrate_dopri5: t1 < t0");
  if (t1 == t0) return stats;

  auto scaled_norm = [&](const Vector& err, const Vector& ya, const Vector& yb) {
    const auto scale = (tol.abs + tol.rel * ya.cwiseAbs().cwiseMax(yb.cwiseAbs()).array()).eval();
    return std::sqrt((err.cwiseAbs().array() / scale).square().mean());
  };

  Vector k1 = f(t0, y);
  double h = tol.initial_step;
  if (!(h > 0)) {
    const double d = k1.cwiseAbs().maxCoeff();
    h = d > 0 ? 0.01 * std::max(y.cwiseAbs().maxCoeff(), 1.0) / d : (t1 - t0);
    h = std::min(h, t1 - t0);
  }

  double t = t0;
  while (t < t1) {
    if (stats.accepted + stats.rejected >= tol.max_steps) {
      std::ostringstream os;
      os << "integrate_dopri5: step budget exhausted at t=" << t << " (h=" << h << ", accepted=" << stats.accepted
         << ", rejected=" << stats.rejected << ")";
      throw NumericError(os.str());
    }
    const bool last = t + h >= t1;
    if (last) h = t1 - t;

    const Vector k2 = f(t + c2 * h, (y + h * (a21 * k1)).eval());
    const Vector k3 = f(t + c3 * h, (y + h * (a31 * k1 + a32 * k2)).eval());
    const Vector k4 = f(t + c4 * h, (y + h * (a41 * k1 + a42 * k2 + a43 * k3)).eval());
    const Vector k5 = f(t + c5 * h, (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4)).eval());
    const Vector k6 = f(t + h, (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5)).eval());
    const Vector y_new = (y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6)).eval();
    const Vector k7 = f(t + h, y_new);
    const Vector err = (h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7)).eval();

    const double en = scaled_norm(err, y, y_new);
    if (!std::isfinite(en)) throw NumericError("integrate_dopri5: non-finite error estimate at t=" + std::to_string(t));
    if (en <= 1.0) {
      t = last ? t1 : t + h;
      y = y_new;
      k1 = k7;
      ++stats.accepted;
    } else {
      ++stats.rejected;
    }
    const double factor = en == 0 ? 5.0 : std::clamp(0.9 * std::pow(en, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw NumericError("integrate_dopri5: step size underflow at t=" + std::to_string(t));
  }
  return stats;
}

}  // namespace aqed::ode
