#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace dramcell::cli {

/// Collects files for one command and publishes them atomically: content is
/// staged under temporary names and renamed only once every write succeeded.
/// Unpublished staging files are removed on destruction, so a failing
/// command leaves no partial output behind.
class OutputDir {
 public:
  explicit OutputDir(std::filesystem::path dir);
  ~OutputDir();
  OutputDir(const OutputDir&) = delete;
  OutputDir& operator=(const OutputDir&) = delete;

  void write_text(const std::string& name, const std::string& content);
  void write_json(const std::string& name, const nlohmann::json& j);

  /// Renames every staged file into place.
  void commit();

  const std::vector<std::string>& names() const { return names_; }
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> names_;
  bool committed_ = false;
};

/// Shortest-round-trip-ish decimal form with 17 significant digits;
/// locale-independent.
std::string format_double17(double v);

/// Compact 6-digit form for human-facing tables (still deterministic).
std::string format_double6(double v);

}  // namespace dramcell::cli
