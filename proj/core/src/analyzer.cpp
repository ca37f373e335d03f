#include "dramcell/analyzer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dramcell/cell_model.hpp"

namespace dramcell {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

}  // namespace

double total_conductance(double r_s, double r_b) {
  if (!(r_s > 0.0)) throw InvalidParameter("r_s must be positive");
  return 1.0 / r_s + (std::isinf(r_b) ? 0.0 : 1.0 / r_b);
}

CellScore pattern_scores(const CellParams& cell, const DeviceConstants& dc,
                         std::uint64_t cell_id) {
  validate(cell);
  const double r_b = r_b_from_factor(cell.a, dc);
  CellScore s;
  s.cell_id = cell_id;
  s.g_111 = 1.0 / cell.r_s;
  s.delta_g = std::isinf(r_b) ? 0.0 : 1.0 / r_b;
  s.g_010 = total_conductance(cell.r_s, r_b);
  s.g_tot = s.g_010;
  s.delta_g_rel = std::isinf(r_b) ? 0.0 : cell.r_s / r_b;
  s.tau_111 = time_constant(cell, PatternClass::P111, dc);
  s.tau_010 = time_constant(cell, PatternClass::P010, dc);
  return s;
}

std::vector<CellScore> score_population(std::span<const CellParams> cells,
                                        const DeviceConstants& dc) {
  std::vector<CellScore> scores;
  scores.reserve(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    scores.push_back(pattern_scores(cells[i], dc, i));
  return scores;
}

PopulationMedians population_medians(std::span<const CellScore> scores) {
  PopulationMedians m;
  std::vector<double> buf(scores.size());
  const auto median_field = [&](auto proj) {
    std::transform(scores.begin(), scores.end(), buf.begin(), proj);
    return median_of(buf);
  };
  m.g_111 = median_field([](const CellScore& s) { return s.g_111; });
  m.g_010 = median_field([](const CellScore& s) { return s.g_010; });
  m.delta_g = median_field([](const CellScore& s) { return s.delta_g; });
  m.delta_g_rel =
      median_field([](const CellScore& s) { return s.delta_g_rel; });
  m.tau_111 = median_field([](const CellScore& s) { return s.tau_111; });
  m.tau_010 = median_field([](const CellScore& s) { return s.tau_010; });
  return m;
}

std::optional<SelectiveWindow> selective_window(const CellParams& target,
                                                const CellParams& bystander,
                                                const DeviceConstants& dc) {
  validate(bystander);
  const double tau_target = time_constant(target, PatternClass::P010, dc);
  const double tau_byst = bystander.c_s * bystander.r_s;  // R_B^111 open
  if (!(tau_target < tau_byst)) return std::nullopt;
  SelectiveWindow w;
  w.tau_lo = tau_target;
  w.tau_hi = tau_byst;
  w.delta_tau = tau_byst - tau_target;
  w.delta_r = bystander.r_s - r_b_from_factor(target.a, dc);
  return w;
}

std::optional<std::pair<double, double>> inference_window(
    const CellParams& cell, const DeviceConstants& dc) {
  if (cell.a == 0.0) return std::nullopt;
  const double lo = time_constant(cell, PatternClass::P010, dc);
  const double hi = time_constant(cell, PatternClass::P111, dc);
  if (!(lo < hi)) return std::nullopt;
  return std::make_pair(lo, hi);
}

double inference_accuracy_theta(std::span<const CellScore> scores,
                                double theta) {
  if (scores.empty()) throw InvalidParameter("population must be non-empty");
  std::size_t n010 = 0, n111 = 0;
  for (const auto& s : scores) {
    if (s.g_010 >= theta) ++n010;
    if (s.g_111 >= theta) ++n111;
  }
  const double n = static_cast<double>(scores.size());
  return 0.5 * (static_cast<double>(n010) / n +
                (1.0 - static_cast<double>(n111) / n));
}

std::vector<std::uint64_t> rank_vulnerable(std::span<const CellParams> cells,
                                           Mechanism /*mechanism*/,
                                           std::size_t m,
                                           const DeviceConstants& dc) {
  if (m > cells.size())
    throw InvalidParameter("selection size exceeds population");
  std::vector<std::uint64_t> ids(cells.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::vector<double> g(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
    g[i] = total_conductance(cells[i].r_s, r_b_from_factor(cells[i].a, dc));
  const auto cmp = [&](std::uint64_t lhs, std::uint64_t rhs) {
    if (g[lhs] != g[rhs]) return g[lhs] > g[rhs];
    return lhs < rhs;
  };
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(m),
                    ids.end(), cmp);
  ids.resize(m);
  return ids;
}

AttackReport confidentiality_budget(std::span<const CellParams> cells,
                                    const StressSpec& stress,
                                    std::size_t m_010,
                                    const DeviceConstants& dc) {
  if (!is_disturbance(stress.mechanism))
    throw InvalidParameter("confidentiality attack requires a disturbance mechanism");
  if (m_010 > cells.size())
    throw InvalidParameter("m_010 exceeds population size");

  AttackReport report;
  report.m_010_requested = m_010;
  report.scores = score_population(cells, dc);
  report.medians = population_medians(report.scores);
  for (const auto& cell : cells)
    if (inference_window(cell, dc)) ++report.inference_window_count;

  const auto selected = rank_vulnerable(cells, stress.mechanism, m_010, dc);

  StressSpec s010 = stress;
  s010.pattern = PatternClass::P010;
  StressSpec s111 = stress;
  s111.pattern = PatternClass::P111;

  // Budget: every selected cell must flip under 010. Cells beyond the stress
  // budget mark the run infeasible and drop out of the achieved subset.
  std::vector<std::uint64_t> achieved;
  achieved.reserve(selected.size());
  std::uint64_t hc_budget = 0;
  for (std::uint64_t id : selected) {
    if (const auto hc = find_flip_hc(cells[id], s010, dc)) {
      achieved.push_back(id);
      hc_budget = std::max(hc_budget, *hc);
    } else {
      report.feasible = false;
    }
  }
  report.m_010 = achieved.size();
  report.hc_budget = hc_budget;

  std::size_t m_111 = 0;
  for (std::uint64_t id : achieved) {
    const auto hc = find_flip_hc(cells[id], s111, dc);
    if (hc && *hc <= hc_budget) ++m_111;
  }
  report.m_111 = m_111;
  report.acc = report.m_010 == 0
                   ? 0.0
                   : 1.0 - 0.5 * static_cast<double>(m_111) /
                               static_cast<double>(report.m_010);
  return report;
}

}  // namespace dramcell
