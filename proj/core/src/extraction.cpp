#include "dramcell/extraction.hpp"

#include <algorithm>
#include <cmath>

namespace dramcell {

namespace {

constexpr std::uint64_t kNoFlip = std::numeric_limits<std::uint64_t>::max();

}  // namespace

SimDisturbanceProbe::SimDisturbanceProbe(std::vector<CellParams> cells,
                                         StressSpec stress, DeviceConstants dc)
    : cells_(std::move(cells)), stress_(stress), dc_(dc) {
  validate(stress_);
  if (!is_disturbance(stress_.mechanism))
    throw InvalidParameter("disturbance probe requires a disturbance mechanism");
}

std::size_t SimDisturbanceProbe::flips_at(PatternClass pattern,
                                          std::uint64_t hc) {
  auto& thresholds = pattern == PatternClass::P010 ? thresholds_010_
                                                   : thresholds_111_;
  if (thresholds.empty()) {
    thresholds.reserve(cells_.size());
    StressSpec s = stress_;
    s.pattern = pattern;
    for (const auto& cell : cells_) {
      const auto t = find_flip_hc(cell, s, dc_);
      thresholds.push_back(t ? *t : kNoFlip);
    }
  }
  std::size_t flips = 0;
  for (std::uint64_t t : thresholds)
    if (hc >= t) ++flips;
  return flips;
}

bool SimRetentionProbe::flipped_by(PatternClass neighbor_pattern, double t) {
  return *flip_time(cell_, neighbor_pattern, dc_) <= t;
}

std::size_t TraceDisturbanceProbe::flips_at(PatternClass pattern,
                                            std::uint64_t hc) {
  const auto& rec = pattern == PatternClass::P010 ? hc_010_ : hc_111_;
  return rec && hc >= *rec ? 1 : 0;
}

std::uint64_t hc_at_target_flips(DisturbanceProbe& probe, PatternClass pattern,
                                 const StressSpec& stress,
                                 std::size_t n_target, std::uint64_t hc_init) {
  if (n_target < 1) throw InvalidParameter("n_target must be >= 1");
  if (hc_init < 1) throw InvalidParameter("hc_init must be >= 1");
  if (n_target > probe.population())
    throw HcNotReached("target flip count exceeds probe population", 0, 0);
  const std::uint64_t budget = stress.hc_budget;
  if (hc_init > budget)
    throw HcNotReached("hc_init beyond stress budget", hc_init, 0);

  std::uint64_t hc = hc_init;
  std::size_t flips = probe.flips_at(pattern, hc);
  if (flips >= n_target) return hc;

  // Doubling phase, clamped at the budget.
  std::uint64_t lo = hc;  // known: flips(lo) < n_target
  while (flips < n_target) {
    if (hc >= budget)
      throw HcNotReached("flip target not reached within budget", hc, flips);
    lo = hc;
    hc = hc > budget / 2 ? budget : hc * 2;
    flips = probe.flips_at(pattern, hc);
  }

  // Bisect (lo, hc] to the smallest satisfying count.
  while (hc - lo > 1) {
    const std::uint64_t mid = lo + (hc - lo) / 2;
    if (probe.flips_at(pattern, mid) >= n_target)
      hc = mid;
    else
      lo = mid;
  }
  return hc;
}

ExtractionResult extract_rs_rb_disturbance(DisturbanceProbe& probe,
                                           const StressSpec& stress,
                                           std::size_t n_target,
                                           const DeviceConstants& dc,
                                           double c_s, std::uint64_t hc_init) {
  validate(dc);
  if (!(c_s > 0.0)) throw InvalidParameter("c_s must be positive");

  ExtractionResult res;
  res.hc_111 = hc_at_target_flips(probe, PatternClass::P111, stress, n_target,
                                  hc_init);
  res.hc_010 = hc_at_target_flips(probe, PatternClass::P010, stress, n_target,
                                  hc_init);
  res.t_111 = static_cast<double>(res.hc_111) / stress.f_rd_hz;
  res.t_010 = static_cast<double>(res.hc_010) / stress.f_rd_hz;
  res.quantization_rel_err =
      std::max(1.0 / static_cast<double>(res.hc_111),
               1.0 / static_cast<double>(res.hc_010));

  const double log_ratio = std::log(dc.vdd / dc.v_flip);
  res.r_s_est = res.t_111 / (c_s * log_ratio);

  // E = (VDD/V_flip)^(T010/T111); E - 1 and VDD - E*V_flip via expm1 keep
  // the small-A and large-A corners accurate.
  const double e_minus_1 = std::expm1(res.t_010 / res.t_111 * log_ratio);
  const double numer = (dc.vdd - dc.v_flip) - dc.v_flip * e_minus_1;
  if (numer <= 0.0 || res.t_010 >= res.t_111) {
    res.a_est = 0.0;
    res.r_b_est = std::numeric_limits<double>::infinity();
    return res;
  }
  res.a_est = numer / (e_minus_1 * res.r_s_est);
  res.r_b_est = dc.v_th / res.a_est;
  return res;
}

RetentionEstimate extract_rs_retention(RetentionProbe& probe,
                                       PatternClass neighbor_pattern,
                                       std::span<const double> schedule,
                                       const DeviceConstants& dc, double c_s,
                                       double refine_rel_width) {
  validate(dc);
  if (schedule.empty()) throw InvalidParameter("schedule must be non-empty");
  if (!(c_s > 0.0)) throw InvalidParameter("c_s must be positive");

  RetentionEstimate est;
  const double scale = 1.0 / (c_s * std::log(dc.vdd / dc.v_flip));

  double lo = 0.0, hi = 0.0;
  bool found = false;
  for (double t : schedule) {
    if (probe.flipped_by(neighbor_pattern, t)) {
      hi = t;
      found = true;
      break;
    }
    lo = t;
  }
  if (!found) {
    est.censored = true;
    est.t_lo = lo;
    est.t_hi = lo;
    est.r_s_est = lo * scale;  // lower bound at the censoring point
    return est;
  }

  if (refine_rel_width > 0.0) {
    while (hi - lo > refine_rel_width * hi) {
      const double mid = 0.5 * (lo + hi);
      if (probe.flipped_by(neighbor_pattern, mid))
        hi = mid;
      else
        lo = mid;
    }
  }
  est.t_lo = lo;
  est.t_hi = hi;
  est.r_s_est = hi * scale;
  return est;
}

}  // namespace dramcell
