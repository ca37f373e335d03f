#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dramcell/profiles.hpp"
#include "dramcell/types.hpp"

namespace dramcell::cli {

// exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInput = 3;
inline constexpr int kExitInfeasible = 4;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raw parsed config document: section -> key -> literal value. Strict INI
/// subset: [section] headers, key = value lines, # or ; comments.
using ConfigDoc = std::map<std::string, std::map<std::string, std::string>>;

ConfigDoc parse_config_text(const std::string& text);
ConfigDoc load_config_file(const std::filesystem::path& path);

/// Fully resolved run parameters (defaults + config file + flag overrides),
/// validated before any computation.
struct RunConfig {
  std::string command;
  std::string profile = "D1";
  Mechanism mechanism = Mechanism::Rowhammer;
  PatternClass pattern = PatternClass::P010;
  bool pattern_both = false;  // disturbance: emit 111 and 010 campaigns
  std::size_t n = 1000;
  std::uint64_t seed = 1;
  std::filesystem::path out = "out";

  // stress
  std::optional<std::uint64_t> hc_budget;  // default derived from mechanism
  double time_budget_s = kDefaultRetentionBudgetSeconds;
  double t_aggon_s = kTAggOnDefault;
  std::optional<double> f_rd_hz;  // default derived from mechanism

  // retention schedule
  double retention_t0_s = 0.25;
  double refine_rel_width = 1e-3;

  // extract
  std::string extract_source = "live";  // "live" or an observations CSV path
  std::size_t n_target = 1;
  std::uint64_t hc_init = 1;

  // analyze
  std::vector<std::string> analyze_profiles;    // default: {profile}
  std::vector<Mechanism> analyze_mechanisms;    // default: {mechanism}
  std::size_t m_010 = 5000;
  std::string analyze_source = "sample";  // "sample" or an extraction CSV

  // report
  std::string report_source;  // analyze output directory

  SamplingOptions sampling;
  DeviceConstants constants;

  std::optional<DeviceProfile> custom_profile;

  /// Stress spec for one mechanism/pattern under this config.
  StressSpec stress_for(Mechanism mech, PatternClass pat) const;
  DeviceProfile resolve_profile(const std::string& dimm, Mechanism mech) const;

  /// Flattened "section.key" -> value echo for the manifest.
  std::map<std::string, std::string> echo() const;
};

struct FlagOverrides {
  std::optional<std::string> profile;
  std::optional<std::string> mechanism;
  std::optional<std::string> pattern;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> n;
  std::optional<std::string> in;  // extract/analyze/report input
};

/// Builds and validates the final RunConfig. Throws ConfigError on unknown
/// sections/keys, malformed values, or inconsistent combinations.
RunConfig resolve_config(const std::string& command, const ConfigDoc& doc,
                         const FlagOverrides& flags);

}  // namespace dramcell::cli
