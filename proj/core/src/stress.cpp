#include "dramcell/stress.hpp"

#include <algorithm>
#include <cmath>

#include "dramcell/profiles.hpp"

namespace dramcell {

namespace {

double effective_flip_threshold(const CellParams& cell, PatternClass pattern,
                                const DeviceConstants& dc) {
  return dc.v_flip - effective_noise(cell, pattern) / dc.alpha;
}

}  // namespace

std::optional<double> flip_time(const CellParams& cell, PatternClass pattern,
                                const DeviceConstants& dc) {
  validate(cell);
  const double v_eff = effective_flip_threshold(cell, pattern, dc);
  if (v_eff >= dc.vdd) return 0.0;  // degenerate threshold: immediate flip
  const double tau_s = cell.r_s * cell.c_s;
  if (!bitline_branch_enabled(pattern) || cell.a == 0.0)
    return tau_s * std::log(dc.vdd / v_eff);
  // Affine branch: V(t) = (VDD + A R_S) e^{-t/tau} - A R_S crosses v_eff at
  // t = tau * ln((VDD + A R_S)/(v_eff + A R_S)); always finite because the
  // asymptote -A R_S sits below any positive threshold.
  const double x = cell.a * cell.r_s;
  return tau_s * std::log1p((dc.vdd - v_eff) / (v_eff + x));
}

std::optional<std::uint64_t> find_flip_hc(const CellParams& cell,
                                          const StressSpec& stress,
                                          const DeviceConstants& dc) {
  if (!is_disturbance(stress.mechanism))
    throw InvalidParameter("find_flip_hc requires a disturbance mechanism");
  validate(stress);
  const double t = *flip_time(cell, stress.pattern, dc);
  const double hc_real = std::ceil(t * stress.f_rd_hz);
  if (hc_real > static_cast<double>(stress.hc_budget)) return std::nullopt;
  return static_cast<std::uint64_t>(hc_real);
}

bool simulate_disturbance(const CellParams& cell, const StressSpec& stress,
                          std::uint64_t hc, const DeviceConstants& dc) {
  const auto threshold = find_flip_hc(cell, stress, dc);
  return threshold && hc >= *threshold;
}

FlipObservation simulate_retention(const CellParams& cell,
                                   PatternClass neighbor_pattern,
                                   std::span<const double> schedule,
                                   const DeviceConstants& dc) {
  if (schedule.empty())
    throw InvalidParameter("retention schedule must be non-empty");
  double prev = 0.0;
  for (double t : schedule) {
    if (!(t > prev) || !std::isfinite(t))
      throw InvalidParameter("retention schedule must be strictly increasing and positive");
    prev = t;
  }
  FlipObservation obs;
  obs.mechanism = Mechanism::Retention;
  obs.pattern = neighbor_pattern;
  const double t_flip = *flip_time(cell, neighbor_pattern, dc);
  prev = 0.0;
  for (double t : schedule) {
    if (t_flip <= t) {
      obs.flipped = true;
      obs.bracket = std::make_pair(prev, t);
      return obs;
    }
    prev = t;
  }
  return obs;  // no flip within the schedule (censored)
}

std::vector<std::pair<double, double>> integrate_ode(
    const CellParams& cell, PatternClass pattern, double t_end, double dt,
    const DeviceConstants& dc) {
  validate(cell);
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw InvalidParameter("dt must be positive");
  if (t_end < 0.0 || !std::isfinite(t_end))
    throw InvalidParameter("t_end must be non-negative");
  const double steps_real = std::ceil(t_end / dt);
  if (steps_real > 1e8)
    throw InvalidParameter("integration refused: more than 1e8 steps");
  const auto steps = static_cast<std::size_t>(steps_real);

  const double inv_tau = 1.0 / (cell.r_s * cell.c_s);
  const double drain =
      bitline_branch_enabled(pattern) ? cell.a / cell.c_s : 0.0;
  const auto f = [&](double v) { return -v * inv_tau - drain; };

  std::vector<std::pair<double, double>> trace;
  trace.reserve(steps + 1);
  double v = dc.vdd;
  trace.emplace_back(0.0, v);
  for (std::size_t i = 1; i <= steps; ++i) {
    const double k1 = f(v);
    const double k2 = f(v + 0.5 * dt * k1);
    const double k3 = f(v + 0.5 * dt * k2);
    const double k4 = f(v + dt * k3);
    v += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (v < 0.0) v = 0.0;  // drain shuts off at the bitline level
    trace.emplace_back(static_cast<double>(i) * dt, v);
  }
  return trace;
}

std::vector<double> default_retention_schedule(double t0, double cap_s) {
  if (!(t0 > 0.0) || !(cap_s >= t0))
    throw InvalidParameter("schedule requires 0 < t0 <= cap");
  std::vector<double> schedule;
  for (double t = t0; t <= cap_s; t *= 2.0) schedule.push_back(t);
  if (schedule.empty() || schedule.back() < cap_s) schedule.push_back(cap_s);
  return schedule;
}

FlipMap simulate_array(const DeviceProfile& profile, std::size_t n,
                       const StressSpec& stress, std::uint64_t seed,
                       const DeviceConstants& dc) {
  SamplingOptions opts;
  opts.pattern = stress.pattern;
  return simulate_array(profile, n, stress, seed, dc, opts);
}

FlipMap simulate_array(const DeviceProfile& profile, std::size_t n,
                       const StressSpec& stress, std::uint64_t seed,
                       const DeviceConstants& dc, const SamplingOptions& opts) {
  validate(stress);
  if (profile.mechanism != stress.mechanism)
    throw InvalidParameter("profile/stress mechanism mismatch");
  const SampledPopulation pop = sample_population(profile, n, seed, dc, opts);

  FlipMap map;
  map.cols = n == 0 ? 0
                    : static_cast<std::size_t>(
                          std::ceil(std::sqrt(static_cast<double>(n))));
  map.rows = map.cols == 0 ? 0 : (n + map.cols - 1) / map.cols;
  map.observations.resize(n);
  const auto schedule =
      stress.mechanism == Mechanism::Retention
          ? default_retention_schedule(0.25, stress.time_budget_s)
          : std::vector<double>{};
  for (std::size_t i = 0; i < n; ++i) {
    const CellParams& cell = pop.cells[i];
    FlipObservation obs;
    if (stress.mechanism == Mechanism::Retention) {
      obs = simulate_retention(cell, stress.pattern, schedule, dc);
    } else {
      obs.mechanism = stress.mechanism;
      obs.pattern = stress.pattern;
      if (auto hc = find_flip_hc(cell, stress, dc)) {
        obs.flipped = true;
        obs.flip_hc = *hc;
      }
    }
    obs.cell_id = i;
    map.observations[i] = obs;
  }
  return map;
}

}  // namespace dramcell
