#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

#include "dramcell/stress.hpp"
#include "dramcell/types.hpp"

namespace dramcell {

/// Raised when a probe cannot reach the target flip count within its
/// stress budget; carries the last hammer count tried.
class HcNotReached : public std::runtime_error {
 public:
  HcNotReached(std::string what, std::uint64_t last_hc, std::size_t flips)
      : std::runtime_error(std::move(what)), last_hc(last_hc), flips(flips) {}
  std::uint64_t last_hc;
  std::size_t flips;
};

/// Answers "how many victims have flipped after `hc` activations" for one
/// pattern. Backed either by the simulator or by a recorded trace.
class DisturbanceProbe {
 public:
  virtual ~DisturbanceProbe() = default;
  virtual std::size_t population() const = 0;
  virtual std::size_t flips_at(PatternClass pattern, std::uint64_t hc) = 0;
};

/// Answers "has the victim flipped after t seconds without refresh" under a
/// neighbor pattern.
class RetentionProbe {
 public:
  virtual ~RetentionProbe() = default;
  virtual bool flipped_by(PatternClass neighbor_pattern, double t) = 0;
};

/// Simulator-backed probes over a fixed set of cells.
class SimDisturbanceProbe final : public DisturbanceProbe {
 public:
  SimDisturbanceProbe(std::vector<CellParams> cells, StressSpec stress,
                      DeviceConstants dc);
  std::size_t population() const override { return cells_.size(); }
  std::size_t flips_at(PatternClass pattern, std::uint64_t hc) override;

 private:
  std::vector<CellParams> cells_;
  StressSpec stress_;
  DeviceConstants dc_;
  // first-flip hammer counts, resolved lazily per pattern
  std::vector<std::uint64_t> thresholds_111_, thresholds_010_;
};

class SimRetentionProbe final : public RetentionProbe {
 public:
  SimRetentionProbe(CellParams cell, DeviceConstants dc)
      : cell_(cell), dc_(dc) {}
  bool flipped_by(PatternClass neighbor_pattern, double t) override;

 private:
  CellParams cell_;
  DeviceConstants dc_;
};

/// Trace-backed probe for a single cell: flips exactly at the recorded
/// hammer counts. Cells whose trace shows no flip never satisfy a query.
class TraceDisturbanceProbe final : public DisturbanceProbe {
 public:
  TraceDisturbanceProbe(std::optional<std::uint64_t> hc_111,
                        std::optional<std::uint64_t> hc_010)
      : hc_111_(hc_111), hc_010_(hc_010) {}
  std::size_t population() const override { return 1; }
  std::size_t flips_at(PatternClass pattern, std::uint64_t hc) override;

 private:
  std::optional<std::uint64_t> hc_111_, hc_010_;
};

struct ExtractionResult {
  double r_s_est = 0.0;
  double r_b_est = 0.0;  // infinity when no bitline branch was detected
  double a_est = 0.0;
  double t_111 = 0.0;
  double t_010 = 0.0;
  std::uint64_t hc_111 = 0;
  std::uint64_t hc_010 = 0;
  double quantization_rel_err = 0.0;  // max(1/HC_111, 1/HC_010)
};

struct RetentionEstimate {
  double r_s_est = 0.0;  // lower bound when censored
  bool censored = false;
  double t_lo = 0.0;  // final bracket (t_lo, t_hi]
  double t_hi = 0.0;
};

/// Smallest hammer count reaching `n_target` flips: geometric doubling from
/// `hc_init`, then bisection down to unit resolution. Throws HcNotReached
/// when the stress budget is exhausted first.
std::uint64_t hc_at_target_flips(DisturbanceProbe& probe, PatternClass pattern,
                                 const StressSpec& stress,
                                 std::size_t n_target,
                                 std::uint64_t hc_init = 1);

/// Two-pattern read-disturbance extraction: probes HC_111 and HC_010, maps
/// them to stress times T = HC/f_RD, and inverts the discharge model:
///   R_S = T_111 / (C_S ln(VDD/V_flip))
///   E   = (VDD/V_flip)^(T_010/T_111)
///   A   = (1/R_S) (VDD - E V_flip)/(E - 1),   R_B = v_th/A.
/// T_010 >= T_111 degenerates to the no-bitline-branch result (A = 0).
ExtractionResult extract_rs_rb_disturbance(DisturbanceProbe& probe,
                                           const StressSpec& stress,
                                           std::size_t n_target,
                                           const DeviceConstants& dc,
                                           double c_s = kDefaultCs,
                                           std::uint64_t hc_init = 1);

/// Retention-profiling extraction of R_S (all-1 neighbors) or R_S(N)
/// (adverse neighbors): finds the flip bracket along the schedule,
/// optionally bisects it to `refine_rel_width`, and applies
///   R_S = t_flip_upper / (C_S ln(VDD/V_flip)).
/// Without a flip in the schedule the result is a censored lower bound.
RetentionEstimate extract_rs_retention(RetentionProbe& probe,
                                       PatternClass neighbor_pattern,
                                       std::span<const double> schedule,
                                       const DeviceConstants& dc,
                                       double c_s = kDefaultCs,
                                       double refine_rel_width = 1e-3);

}  // namespace dramcell
