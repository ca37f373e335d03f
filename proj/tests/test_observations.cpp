#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "dramcell/observations.hpp"
#include "dramcell/rng.hpp"

using namespace dramcell;

namespace {

std::filesystem::path temp_file(const char* name) {
  return std::filesystem::temp_directory_path() / name;
}

std::vector<ObservationRecord> random_records(std::size_t n,
                                              std::uint64_t seed) {
  Rng rng(seed);
  std::vector<ObservationRecord> records;
  for (std::size_t i = 0; i < n; ++i) {
    ObservationRecord rec;
    rec.dimm = "D" + std::to_string(1 + i % 7);
    rec.obs.cell_id = i;
    const int kind = static_cast<int>(rng.uniform01() * 3.0);
    if (kind == 0) {
      rec.obs.mechanism = Mechanism::Retention;
      rec.obs.pattern = rng.uniform01() < 0.5 ? PatternClass::AllOnes
                                              : PatternClass::Checkerboard;
      if (rng.uniform01() < 0.8) {
        rec.obs.flipped = true;
        const double lo = rng.log_uniform(1e-3, 1e3);
        rec.obs.bracket = std::make_pair(lo, lo * (1.0 + rng.uniform01()) + 1e-9);
      }
    } else {
      rec.obs.mechanism = kind == 1 ? Mechanism::Rowhammer : Mechanism::Rowpress;
      rec.obs.pattern =
          rng.uniform01() < 0.5 ? PatternClass::P111 : PatternClass::P010;
      if (rng.uniform01() < 0.8) {
        rec.obs.flipped = true;
        rec.obs.flip_hc = static_cast<std::uint64_t>(rng.log_uniform(1, 2e7));
      }
    }
    records.push_back(rec);
  }
  return records;
}

bool equal(const ObservationRecord& a, const ObservationRecord& b) {
  return a.dimm == b.dimm && a.obs.cell_id == b.obs.cell_id &&
         a.obs.mechanism == b.obs.mechanism && a.obs.pattern == b.obs.pattern &&
         a.obs.flipped == b.obs.flipped && a.obs.flip_hc == b.obs.flip_hc &&
         a.obs.bracket == b.obs.bracket;
}

}  // namespace

TEST_CASE("observation CSV round-trip is lossless") {
  const auto path = temp_file("dramcell_obs_roundtrip.csv");
  const auto records = random_records(500, 71);
  save_observations(path, records);
  const auto loaded = load_observations(path);
  REQUIRE(loaded.size() == records.size());
  for (std::size_t i = 0; i < records.size(); ++i)
    CHECK(equal(records[i], loaded[i]));
  std::filesystem::remove(path);
}

TEST_CASE("empty file with header loads as an empty sequence") {
  const auto path = temp_file("dramcell_obs_empty.csv");
  {
    std::ofstream out(path);
    out << kObservationsHeader << "\n";
  }
  CHECK(load_observations(path).empty());
  std::filesystem::remove(path);
}

TEST_CASE("parse errors carry line numbers and column names") {
  CHECK_THROWS_WITH_AS(parse_observations(""), doctest::Contains("header"),
                       ObservationParseError);
  CHECK_THROWS_WITH_AS(parse_observations("bogus,header\n"),
                       doctest::Contains("header"), ObservationParseError);

  const std::string head = std::string(kObservationsHeader) + "\n";
  // missing column
  try {
    parse_observations(head + "0,D1,rowhammer,010,1,120\n");
    FAIL("expected ObservationParseError");
  } catch (const ObservationParseError& e) {
    CHECK(e.line == 2);
    CHECK(doctest::String(e.what()) == doctest::Contains("8 columns"));
  }
  // bad mechanism name
  try {
    parse_observations(head + "0,D1,hammering,010,1,120,,\n");
    FAIL("expected ObservationParseError");
  } catch (const ObservationParseError& e) {
    CHECK(e.column == "mechanism");
  }
  // bad number
  CHECK_THROWS_AS(parse_observations(head + "x,D1,rowhammer,010,1,120,,\n"),
                  ObservationParseError);
  // inconsistent flip payloads
  CHECK_THROWS_AS(parse_observations(head + "0,D1,rowhammer,010,1,,,\n"),
                  ObservationParseError);
  CHECK_THROWS_AS(parse_observations(head + "0,D1,rowhammer,010,0,120,,\n"),
                  ObservationParseError);
  // half a bracket
  CHECK_THROWS_AS(
      parse_observations(head + "0,D1,retention,all1,1,,0.5,\n"),
      ObservationParseError);
  // inverted bracket
  CHECK_THROWS_AS(
      parse_observations(head + "0,D1,retention,all1,1,,2.0,1.0\n"),
      ObservationParseError);
}

TEST_CASE("17-digit serialization round-trips doubles exactly") {
  std::vector<ObservationRecord> records(1);
  records[0].dimm = "D1";
  records[0].obs.mechanism = Mechanism::Retention;
  records[0].obs.pattern = PatternClass::AllOnes;
  records[0].obs.flipped = true;
  records[0].obs.bracket = std::make_pair(0.1, 0.30000000000000004);
  const auto row = format_observation(records[0]);
  const auto parsed =
      parse_observations(std::string(kObservationsHeader) + "\n" + row + "\n");
  REQUIRE(parsed.size() == 1);
  CHECK(parsed[0].obs.bracket->first == 0.1);
  CHECK(parsed[0].obs.bracket->second == 0.30000000000000004);
}
