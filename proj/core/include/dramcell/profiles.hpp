#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dramcell/types.hpp"

namespace dramcell {

/// Measured resistance ranges for one DIMM under one mechanism, plus module
/// metadata. Retention rows carry the noise-pattern R_S(N) band instead of a
/// bitline band.
struct DeviceProfile {
  std::string dimm;  // D1..D7
  Mechanism mechanism = Mechanism::Retention;
  std::pair<double, double> r_s_range{0.0, 0.0};  // [ohm]
  std::optional<std::pair<double, double>> r_b_range;        // disturbance
  std::optional<std::pair<double, double>> r_s_noise_range;  // retention
  std::string vendor;
  std::string density;
  int speed_mt_s = 0;
  int year = 0;
};

/// The 7 DIMMs x 3 mechanisms of calibrated ranges.
const std::vector<DeviceProfile>& builtin_profiles();

std::optional<DeviceProfile> find_profile(const std::string& dimm,
                                          Mechanism mechanism);

enum class RangeDistribution { LogUniform, LogNormalClipped };

/// Knobs for synthesizing populations from a profile. `pattern` decides the
/// noise overlay: adverse retention patterns draw N from the configured
/// band, everything else plants N = 0. `rho` is an approximate rank
/// correlation between R_S and R_B (Gaussian copula); 0 keeps the draws
/// independent.
struct SamplingOptions {
  RangeDistribution distribution = RangeDistribution::LogUniform;
  double rho = 0.0;
  PatternClass pattern = PatternClass::AllOnes;
  double noise_lo_v = -0.02;
  double noise_hi_v = 0.0;
  double c_s = kDefaultCs;
};

struct SampledPopulation {
  std::string dimm;
  Mechanism mechanism = Mechanism::Retention;
  std::uint64_t seed = 0;
  std::vector<CellParams> cells;
};

/// Deterministic draw of `n` cells: log-uniform R_S (and R_B for disturbance
/// profiles, mapped to the subthreshold factor A = v_th/R_B). Identical
/// (profile, n, seed, options) reproduce identical populations.
SampledPopulation sample_population(const DeviceProfile& profile,
                                    std::size_t n, std::uint64_t seed,
                                    const DeviceConstants& dc,
                                    const SamplingOptions& opts = {});

}  // namespace dramcell
