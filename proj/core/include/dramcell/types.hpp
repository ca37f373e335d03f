#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace dramcell {

/// Thrown when an operation receives arguments outside its contract.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Mechanism { Retention, Rowhammer, Rowpress };

/// Aggressor-victim data patterns (disturbance) and neighbor patterns
/// (retention). P111/AllOnes leave the bitline branch open; P010/Checkerboard
/// enable it and carry the cell's sensing-noise value.
enum class PatternClass { P111, P010, AllOnes, Checkerboard };

enum class ReadOutcome { Correct, Flip, Uncertain };

constexpr bool bitline_branch_enabled(PatternClass p) {
  return p == PatternClass::P010 || p == PatternClass::Checkerboard;
}

constexpr bool is_disturbance(Mechanism m) { return m != Mechanism::Retention; }

const char* to_string(Mechanism m);
const char* to_string(PatternClass p);
const char* to_string(ReadOutcome r);
std::optional<Mechanism> mechanism_from_string(const std::string& s);
std::optional<PatternClass> pattern_from_string(const std::string& s);

/// Shared electrical environment of a device. Defaults are DDR4-plausible
/// magnitudes; only ratios matter for the attack metrics. All overridable.
struct DeviceConstants {
  double vdd = 1.2;         // supply / full storage level [V]
  double v_flip = 0.5;      // flip threshold used by the extraction math [V]
  double v_sa = 0.02;       // sense-amplifier decision margin [V]
  double alpha = 0.2;       // charge-sharing ratio C_S/(C_S+C_BL)
  double v_th = 0.02585;    // thermal voltage at 300 K [V]
  double v_t = 0.5;         // access-transistor threshold [V]
  double n_swing = 1.5;     // subthreshold swing coefficient
  double v_pp = 2.5;        // wordline boost level [V]
  double k_couple = 0.05;   // wordline coupling ratio C_C/(C_C+C_WL)
  double k_prefactor = 1e-6;  // lumped subthreshold prefactor [A]
};

/// Throws InvalidParameter unless all DeviceConstants invariants hold.
void validate(const DeviceConstants& dc);

/// One cell's physical identity. `a` is the pattern-010 subthreshold factor;
/// a == 0 encodes an open bitline branch (infinite R_B). `n_noise` is the
/// sensing-noise level under adverse neighbor data (<= 0); benign patterns
/// ignore it.
struct CellParams {
  double r_s = 0.0;      // p-well effective leakage resistance [ohm]
  double a = 0.0;        // subthreshold factor [A]
  double c_s = 25e-15;   // storage capacitance [F]
  double n_noise = 0.0;  // pattern-induced sensing noise [V]
};

void validate(const CellParams& cell);

/// Bitline-branch resistance encoded by the subthreshold factor, v_th / A.
/// a == 0 maps to the infinite-resistance sentinel.
inline double r_b_from_factor(double a, const DeviceConstants& dc) {
  return a > 0.0 ? dc.v_th / a : std::numeric_limits<double>::infinity();
}

inline double factor_from_r_b(double r_b, const DeviceConstants& dc) {
  return std::isinf(r_b) ? 0.0 : dc.v_th / r_b;
}

/// Sensing noise seen under a given pattern: adverse patterns expose the
/// cell's value, benign patterns null it.
inline double effective_noise(const CellParams& cell, PatternClass p) {
  return bitline_branch_enabled(p) ? cell.n_noise : 0.0;
}

// JEDEC DDR4 activation timings used to derive effective disturbance rates.
inline constexpr double kTRcd = 13.5e-9;
inline constexpr double kTRp = 13.5e-9;
inline constexpr double kTRas = 35e-9;
inline constexpr double kTAggOnDefault = 1000e-9;

inline constexpr double kDefaultCs = 25e-15;

inline constexpr std::uint64_t kDefaultHcBudgetRowhammer = 15'000'000;
inline constexpr std::uint64_t kDefaultHcBudgetRowpress = 1'500'000;
inline constexpr double kDefaultRetentionBudgetSeconds = 3600.0;

/// One activation cycle per hammer: act+precharge for Rowhammer, dwell +
/// precharge for Rowpress.
inline constexpr double rowhammer_rate_hz() { return 1.0 / (kTRas + kTRp); }
inline constexpr double rowpress_rate_hz(double t_aggon = kTAggOnDefault) {
  return 1.0 / (t_aggon + kTRp);
}

/// A stress campaign: mechanism, data pattern, effective disturbance rate,
/// dwell (Rowpress), and budget. `hc_budget` bounds disturbance campaigns,
/// `time_budget_s` bounds retention campaigns.
struct StressSpec {
  Mechanism mechanism = Mechanism::Rowhammer;
  PatternClass pattern = PatternClass::P010;
  double f_rd_hz = rowhammer_rate_hz();
  double t_aggon_s = 0.0;
  std::uint64_t hc_budget = kDefaultHcBudgetRowhammer;
  double time_budget_s = 0.0;

  static StressSpec rowhammer(PatternClass p = PatternClass::P010,
                              std::uint64_t budget = kDefaultHcBudgetRowhammer);
  static StressSpec rowpress(PatternClass p = PatternClass::P010,
                             std::uint64_t budget = kDefaultHcBudgetRowpress,
                             double t_aggon = kTAggOnDefault);
  static StressSpec retention(PatternClass p = PatternClass::AllOnes,
                              double budget_s = kDefaultRetentionBudgetSeconds);
};

void validate(const StressSpec& stress);

}  // namespace dramcell
