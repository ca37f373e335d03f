#pragma once

// Test-side numerical oracles. These deliberately avoid the closed-form
// expressions under test: voltages come from fixed-step RK4 traces and flip
// times from bisection on those traces.

#include <cmath>
#include <stdexcept>

#include "dramcell/stress.hpp"
#include "dramcell/types.hpp"

namespace oracle {

// RK4 endpoint of dV/dt = -V/(R_S C_S) - [adverse] A/C_S from V(0)=VDD,
// clamped at zero, taken in `steps` fixed steps.
inline double rk4_voltage(double t, const dramcell::CellParams& cell,
                          dramcell::PatternClass pattern,
                          const dramcell::DeviceConstants& dc,
                          std::size_t steps = 20000) {
  if (t == 0.0) return dc.vdd;
  const double inv_tau = 1.0 / (cell.r_s * cell.c_s);
  const double drain =
      dramcell::bitline_branch_enabled(pattern) ? cell.a / cell.c_s : 0.0;
  const auto f = [&](double v) { return -v * inv_tau - drain; };
  const double dt = t / static_cast<double>(steps);
  double v = dc.vdd;
  for (std::size_t i = 0; i < steps; ++i) {
    const double k1 = f(v);
    const double k2 = f(v + 0.5 * dt * k1);
    const double k3 = f(v + 0.5 * dt * k2);
    const double k4 = f(v + dt * k3);
    v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (v < 0.0) v = 0.0;
  }
  return v;
}

// First crossing of the noise-adjusted flip threshold, found by bisection on
// RK4 evaluations. Relative accuracy ~1e-9.
inline double bisect_flip_time(const dramcell::CellParams& cell,
                               dramcell::PatternClass pattern,
                               const dramcell::DeviceConstants& dc) {
  const double noise = dramcell::effective_noise(cell, pattern);
  const double v_eff = dc.v_flip - noise / dc.alpha;
  if (v_eff >= dc.vdd) return 0.0;
  const double tau = cell.r_s * cell.c_s;
  // Pure p-well decay bounds the crossing from above for both branches.
  double hi = tau * std::log(dc.vdd / v_eff) * (1.0 + 1e-9) + 1e-300;
  double lo = 0.0;
  if (rk4_voltage(hi, cell, pattern, dc) > v_eff)
    throw std::logic_error("oracle bracket failed");
  for (int i = 0; i < 60 && (hi - lo) > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (rk4_voltage(mid, cell, pattern, dc, 4000) <= v_eff)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
