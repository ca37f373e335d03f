#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "dramcell/cell_model.hpp"
#include "dramcell/types.hpp"

namespace dramcell {

struct DeviceProfile;
struct SamplingOptions;

/// Outcome of one stress campaign on one cell. Disturbance campaigns record
/// the first flipping hammer count, retention campaigns the bracketing
/// read-back interval.
struct FlipObservation {
  std::uint64_t cell_id = 0;
  Mechanism mechanism = Mechanism::Retention;
  PatternClass pattern = PatternClass::AllOnes;
  bool flipped = false;
  std::optional<std::uint64_t> flip_hc;
  std::optional<std::pair<double, double>> bracket;  // (t_lo, t_hi]
};

/// Population-level result grid; observations are indexed by cell id so the
/// layout is independent of evaluation order.
struct FlipMap {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<FlipObservation> observations;
};

/// Earliest time the storage node crosses the (noise-adjusted) flip
/// threshold V_flip_eff = V_flip - N/alpha. Finite for every valid cell; a
/// degenerate threshold at or above VDD flips immediately (returns 0).
std::optional<double> flip_time(const CellParams& cell, PatternClass pattern,
                                const DeviceConstants& dc);

/// Smallest hammer count whose stress time reaches the flip: ceil(t_flip *
/// f_RD). Empty when the budget runs out first.
std::optional<std::uint64_t> find_flip_hc(const CellParams& cell,
                                          const StressSpec& stress,
                                          const DeviceConstants& dc);

/// Walks a strictly increasing retention schedule and reports the first
/// interval whose read-back shows the flip.
FlipObservation simulate_retention(const CellParams& cell,
                                   PatternClass neighbor_pattern,
                                   std::span<const double> schedule,
                                   const DeviceConstants& dc);

/// True iff `hc` activations at the stress rate flip the cell.
bool simulate_disturbance(const CellParams& cell, const StressSpec& stress,
                          std::uint64_t hc, const DeviceConstants& dc);

/// Fixed-step fourth-order integration of the discharge ODE
///   dV/dt = -V/(R_S C_S) - [adverse pattern] A/C_S,   V(0) = VDD,
/// state clamped at 0. This is the numerical oracle the closed forms are
/// checked against. Refuses runs beyond 1e8 steps.
std::vector<std::pair<double, double>> integrate_ode(
    const CellParams& cell, PatternClass pattern, double t_end, double dt,
    const DeviceConstants& dc);

/// Default retention read-back schedule: t0 * 2^i, capped at `cap_s` (the
/// cap itself becomes the final probe point).
std::vector<double> default_retention_schedule(double t0 = 0.25,
                                               double cap_s = 3600.0);

/// Samples `n` cells from a device profile and runs one stress campaign on
/// each. Identical (profile, n, stress, seed) produce identical maps.
FlipMap simulate_array(const DeviceProfile& profile, std::size_t n,
                       const StressSpec& stress, std::uint64_t seed,
                       const DeviceConstants& dc);

FlipMap simulate_array(const DeviceProfile& profile, std::size_t n,
                       const StressSpec& stress, std::uint64_t seed,
                       const DeviceConstants& dc, const SamplingOptions& opts);

}  // namespace dramcell
