#include "dramcell/observations.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

namespace dramcell {

namespace {

std::string format_double(double v) {
  std::array<char, 64> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::size_t line, const char* column,
                    const std::string& field) {
  double v = 0.0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ObservationParseError(line, column, "not a number: '" + field + "'");
  return v;
}

std::uint64_t parse_u64(std::size_t line, const char* column,
                        const std::string& field) {
  std::uint64_t v = 0;
  const auto res =
      std::from_chars(field.data(), field.data() + field.size(), v);
  if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
    throw ObservationParseError(line, column,
                                "not an integer: '" + field + "'");
  return v;
}

std::vector<std::string> split_csv(const std::string& row) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : row) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

std::string format_observation(const ObservationRecord& rec) {
  const FlipObservation& o = rec.obs;
  std::string row = std::to_string(o.cell_id);
  row += ',';
  row += rec.dimm;
  row += ',';
  row += to_string(o.mechanism);
  row += ',';
  row += to_string(o.pattern);
  row += ',';
  row += o.flipped ? '1' : '0';
  row += ',';
  if (o.flip_hc) row += std::to_string(*o.flip_hc);
  row += ',';
  if (o.bracket) row += format_double(o.bracket->first);
  row += ',';
  if (o.bracket) row += format_double(o.bracket->second);
  return row;
}

void save_observations(const std::filesystem::path& path,
                       std::span<const ObservationRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  out << kObservationsHeader << '\n';
  for (const auto& rec : records) out << format_observation(rec) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void save_observations(const std::filesystem::path& path,
                       std::span<const FlipObservation> observations,
                       const std::string& dimm) {
  std::vector<ObservationRecord> records;
  records.reserve(observations.size());
  for (const auto& o : observations) records.push_back({dimm, o});
  save_observations(path, records);
}

std::vector<ObservationRecord> parse_observations(const std::string& content) {
  std::vector<ObservationRecord> records;
  std::istringstream in(content);
  std::string row;
  std::size_t line = 0;

  if (!std::getline(in, row))
    throw ObservationParseError(1, "header", "empty file");
  ++line;
  if (!row.empty() && row.back() == '\r') row.pop_back();
  if (row != kObservationsHeader)
    throw ObservationParseError(1, "header",
                                "expected '" + std::string(kObservationsHeader) + "'");

  while (std::getline(in, row)) {
    ++line;
    if (!row.empty() && row.back() == '\r') row.pop_back();
    if (row.empty()) continue;
    const auto fields = split_csv(row);
    if (fields.size() != 8)
      throw ObservationParseError(line, "row",
                                  "expected 8 columns, got " +
                                      std::to_string(fields.size()));
    ObservationRecord rec;
    rec.obs.cell_id = parse_u64(line, "cell_id", fields[0]);
    rec.dimm = fields[1];
    if (rec.dimm.empty())
      throw ObservationParseError(line, "dimm", "must be non-empty");
    const auto mech = mechanism_from_string(fields[2]);
    if (!mech)
      throw ObservationParseError(line, "mechanism",
                                  "unknown value '" + fields[2] + "'");
    rec.obs.mechanism = *mech;
    const auto pat = pattern_from_string(fields[3]);
    if (!pat)
      throw ObservationParseError(line, "pattern",
                                  "unknown value '" + fields[3] + "'");
    rec.obs.pattern = *pat;
    if (fields[4] != "0" && fields[4] != "1")
      throw ObservationParseError(line, "flip", "must be 0 or 1");
    rec.obs.flipped = fields[4] == "1";

    const bool has_hc = !fields[5].empty();
    const bool has_lo = !fields[6].empty();
    const bool has_hi = !fields[7].empty();
    if (has_lo != has_hi)
      throw ObservationParseError(line, "t_hi_s",
                                  "bracket requires both endpoints");
    if (has_hc) rec.obs.flip_hc = parse_u64(line, "hc_flip", fields[5]);
    if (has_lo) {
      const double lo = parse_double(line, "t_lo_s", fields[6]);
      const double hi = parse_double(line, "t_hi_s", fields[7]);
      if (!(lo < hi))
        throw ObservationParseError(line, "t_hi_s",
                                    "bracket must satisfy lo < hi");
      rec.obs.bracket = std::make_pair(lo, hi);
    }
    if (rec.obs.flipped && !has_hc && !has_lo)
      throw ObservationParseError(line, "flip",
                                  "flipped row needs hc_flip or a bracket");
    if (!rec.obs.flipped && (has_hc || has_lo))
      throw ObservationParseError(line, "flip",
                                  "unflipped row cannot carry flip data");
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<ObservationRecord> load_observations(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw std::runtime_error("cannot open for reading: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_observations(buf.str());
}

}  // namespace dramcell
