#pragma once

#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dramcell/stress.hpp"

namespace dramcell {

/// CSV schema violation; carries the 1-based line number and offending
/// column.
class ObservationParseError : public std::runtime_error {
 public:
  ObservationParseError(std::size_t line, std::string column,
                        const std::string& detail)
      : std::runtime_error("line " + std::to_string(line) + ", column '" +
                           column + "': " + detail),
        line(line),
        column(std::move(column)) {}
  std::size_t line;
  std::string column;
};

/// One CSV row: a flip observation plus the DIMM label it came from.
struct ObservationRecord {
  std::string dimm;
  FlipObservation obs;
};

inline constexpr const char* kObservationsHeader =
    "cell_id,dimm,mechanism,pattern,flip,hc_flip,t_lo_s,t_hi_s";

/// Serializes one record as a schema row (no trailing newline). Floats are
/// written with 17 significant digits so a save/load round-trip is lossless.
std::string format_observation(const ObservationRecord& rec);

void save_observations(const std::filesystem::path& path,
                       std::span<const ObservationRecord> records);

void save_observations(const std::filesystem::path& path,
                       std::span<const FlipObservation> observations,
                       const std::string& dimm);

std::vector<ObservationRecord> load_observations(
    const std::filesystem::path& path);

/// Parses the body of an observations CSV (header already verified).
std::vector<ObservationRecord> parse_observations(const std::string& content);

}  // namespace dramcell
