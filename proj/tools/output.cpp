#include "output.hpp"

#include <charconv>
#include <fstream>

namespace dramcell::cli {

namespace {

std::filesystem::path staging_name(const std::filesystem::path& dir,
                                   const std::string& name) {
  return dir / (name + ".tmp");
}

}  // namespace

OutputDir::OutputDir(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

OutputDir::~OutputDir() {
  if (committed_) return;
  for (const auto& name : names_) {
    std::error_code ec;
    std::filesystem::remove(staging_name(dir_, name), ec);
  }
}

void OutputDir::write_text(const std::string& name,
                           const std::string& content) {
  const auto path = staging_name(dir_, name);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
  names_.push_back(name);
}

void OutputDir::write_json(const std::string& name, const nlohmann::json& j) {
  write_text(name, j.dump(2) + "\n");
}

void OutputDir::commit() {
  for (const auto& name : names_)
    std::filesystem::rename(staging_name(dir_, name), dir_ / name);
  committed_ = true;
}

std::string format_double17(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string format_double6(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                 std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

}  // namespace dramcell::cli
