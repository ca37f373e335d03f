#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dramcell/stress.hpp"
#include "dramcell/types.hpp"

namespace dramcell {

/// Pattern-conditioned leakage metrics for one cell. Conductances in
/// siemens, time constants in seconds. The analyzer treats the benign
/// pattern as bitline-free (G_111 = 1/R_S) and maps the adverse branch
/// through R_B = v_th/A.
struct CellScore {
  std::uint64_t cell_id = 0;
  double g_111 = 0.0;
  double g_010 = 0.0;
  double g_tot = 0.0;  // total with the bitline branch enabled (== g_010)
  double delta_g = 0.0;        // 1/R_B, the pattern lever
  double delta_g_rel = 0.0;    // R_S/R_B, the relative pattern gap
  double tau_111 = 0.0;
  double tau_010 = 0.0;
};

/// Selective-flip stress window between a 010-driven target and a
/// 111-protected bystander, with the gaps an attacker would maximize.
struct SelectiveWindow {
  double tau_lo = 0.0;     // target's 010 time constant
  double tau_hi = 0.0;     // bystander's 111 time constant
  double delta_tau = 0.0;  // tau_hi - tau_lo
  double delta_r = 0.0;    // R_S(bystander) - R_B(target, 010)
};

struct PopulationMedians {
  double g_111 = 0.0;
  double g_010 = 0.0;
  double delta_g = 0.0;
  double delta_g_rel = 0.0;
  double tau_111 = 0.0;
  double tau_010 = 0.0;
};

/// Confidentiality attack qualification over a population plus summary
/// metrics. `feasible` is false when some of the requested m_010 cells do
/// not flip within the stress budget; metrics then cover the achieved
/// subset.
struct AttackReport {
  std::vector<CellScore> scores;
  PopulationMedians medians;
  std::size_t inference_window_count = 0;
  std::size_t m_010 = 0;  // achieved selection size
  std::size_t m_111 = 0;
  std::uint64_t hc_budget = 0;
  double acc = 0.0;
  bool feasible = true;
  std::size_t m_010_requested = 0;
};

/// G_tot = 1/R_S + 1/R_B; the infinite sentinel contributes nothing.
double total_conductance(double r_s, double r_b);

/// Fills every CellScore field from a cell's parameters.
CellScore pattern_scores(const CellParams& cell, const DeviceConstants& dc,
                         std::uint64_t cell_id = 0);

std::vector<CellScore> score_population(std::span<const CellParams> cells,
                                        const DeviceConstants& dc);

PopulationMedians population_medians(std::span<const CellScore> scores);

/// Stress window for flipping `target` under 010 while `bystander` survives
/// under 111: (tau_target^010, tau_byst^111) when that interval is
/// non-empty.
std::optional<SelectiveWindow> selective_window(const CellParams& target,
                                                const CellParams& bystander,
                                                const DeviceConstants& dc);

/// Separable single-cell inference window (tau^010, tau^111); empty when the
/// bitline branch is absent (the two time constants coincide).
std::optional<std::pair<double, double>> inference_window(
    const CellParams& cell, const DeviceConstants& dc);

/// Expected pattern-inference accuracy at conductance threshold theta:
/// 0.5 * [p_010(theta) + (1 - p_111(theta))], where p_pat is the fraction of
/// cells with G_pat >= theta.
double inference_accuracy_theta(std::span<const CellScore> scores,
                                double theta);

/// Ids of the m most vulnerable cells by adverse-pattern conductance,
/// ties broken by ascending id.
std::vector<std::uint64_t> rank_vulnerable(std::span<const CellParams> cells,
                                           Mechanism mechanism, std::size_t m,
                                           const DeviceConstants& dc = {});

/// Budgeted pattern-inference attack: select the top m_010 cells by G_010,
/// set the hammer budget to the largest 010 flip count among them, count how
/// many also flip under 111 at that budget, and score
/// Acc = 1 - m_111 / (2 m_010).
AttackReport confidentiality_budget(std::span<const CellParams> cells,
                                    const StressSpec& stress,
                                    std::size_t m_010,
                                    const DeviceConstants& dc);

}  // namespace dramcell
