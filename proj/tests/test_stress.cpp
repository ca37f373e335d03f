#include <cmath>

#include "doctest.h"
#include "dramcell/profiles.hpp"
#include "dramcell/rng.hpp"
#include "dramcell/stress.hpp"
#include "oracle.hpp"

using namespace dramcell;

namespace {
const DeviceConstants dc{};
}

TEST_CASE("flip_time: retention cell matches the bisected RK4 oracle") {
  CellParams cell{.r_s = 1.06e14, .a = 0.0, .c_s = 25e-15};
  const double t = *flip_time(cell, PatternClass::AllOnes, dc);
  CHECK(t == doctest::Approx(2.32).epsilon(2e-3));
  CHECK(t == doctest::Approx(oracle::bisect_flip_time(
                 cell, PatternClass::AllOnes, dc))
                 .epsilon(1e-7));
}

TEST_CASE("flip_time: affine 010 branch matches the oracle") {
  CellParams cell{.r_s = 5e10, .a = 4.308e-12, .c_s = 25e-15};
  const double t = *flip_time(cell, PatternClass::P010, dc);
  CHECK(t == doctest::Approx(0.853e-3).epsilon(1e-3));
  CHECK(t == doctest::Approx(oracle::bisect_flip_time(cell,
                                                      PatternClass::P010, dc))
                 .epsilon(1e-7));
  // disabled branch equals the 111 value
  cell.a = 0.0;
  CHECK(*flip_time(cell, PatternClass::P010, dc) ==
        *flip_time(cell, PatternClass::P111, dc));
}

TEST_CASE("flip_time: degenerate threshold flips immediately") {
  CellParams cell{.r_s = 5e10, .a = 0.0, .c_s = 25e-15, .n_noise = -0.15};
  // v_eff = 0.5 + 0.15/0.2 = 1.25 >= vdd
  CHECK(*flip_time(cell, PatternClass::Checkerboard, dc) == 0.0);
}

TEST_CASE("flip_time properties: pattern ordering and noise monotonicity") {
  Rng rng(23);
  for (int i = 0; i < 300; ++i) {
    CellParams cell;
    cell.r_s = rng.log_uniform(1e10, 1e16);
    cell.a = i % 5 == 0 ? 0.0 : dc.v_th / rng.log_uniform(1e8, 1e13);
    const double t010 = *flip_time(cell, PatternClass::P010, dc);
    const double t111 = *flip_time(cell, PatternClass::P111, dc);
    if (cell.a == 0.0)
      CHECK(t010 == t111);
    else
      CHECK(t010 < t111);

    double prev = -1.0;
    for (double n : {-0.04, -0.02, -0.01, -0.001, 0.0}) {
      cell.n_noise = n;
      const double t = *flip_time(cell, PatternClass::Checkerboard, dc);
      CHECK(t > prev);
      prev = t;
    }
    cell.n_noise = 0.0;
  }
}

TEST_CASE("find_flip_hc: rate mapping and budget") {
  CellParams cell{.r_s = 5e10, .a = 0.0, .c_s = 25e-15};
  auto stress = StressSpec::rowhammer(PatternClass::P111);
  CHECK(stress.f_rd_hz == doctest::Approx(20.619e6).epsilon(1e-4));

  const double t111 = *flip_time(cell, PatternClass::P111, dc);
  CHECK(t111 == doctest::Approx(1.0944e-3).epsilon(1e-4));
  const auto hc = find_flip_hc(cell, stress, dc);
  REQUIRE(hc.has_value());
  CHECK(*hc == static_cast<std::uint64_t>(std::ceil(t111 * stress.f_rd_hz)));
  CHECK(*hc == doctest::Approx(22565).epsilon(1e-3));
  // rate consistency |HC/f - t| <= 1/f
  CHECK(std::abs(static_cast<double>(*hc) / stress.f_rd_hz - t111) <=
        1.0 / stress.f_rd_hz);

  // 010 flips earlier
  cell.a = 4.308e-12;
  stress.pattern = PatternClass::P010;
  const auto hc010 = find_flip_hc(cell, stress, dc);
  REQUIRE(hc010.has_value());
  CHECK(*hc010 == doctest::Approx(17586).epsilon(1e-3));
  CHECK(*hc010 < *hc);

  // budget exhaustion
  stress.hc_budget = *hc010 - 1;
  CHECK_FALSE(find_flip_hc(cell, stress, dc).has_value());

  CHECK_THROWS_AS(
      find_flip_hc(cell, StressSpec::retention(PatternClass::AllOnes), dc),
      InvalidParameter);
}

TEST_CASE("find_flip_hc scales linearly with the rate") {
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    CellParams cell;
    cell.r_s = rng.log_uniform(5e10, 5e12);
    cell.a = dc.v_th / rng.log_uniform(1e9, 1e11);
    auto stress = StressSpec::rowhammer(PatternClass::P010, 1u << 30);
    const double t = *flip_time(cell, PatternClass::P010, dc);
    for (double f : {1e6, 20.6e6, 123.4e6}) {
      stress.f_rd_hz = f;
      const auto hc = find_flip_hc(cell, stress, dc);
      REQUIRE(hc.has_value());
      CHECK(std::abs(static_cast<double>(*hc) / f - t) <= 1.0 / f);
    }
  }
}

TEST_CASE("simulate_disturbance threshold strictness and monotonicity") {
  CellParams cell{.r_s = 5e10, .a = 4.308e-12, .c_s = 25e-15};
  const auto stress = StressSpec::rowhammer(PatternClass::P010);
  const auto hc = *find_flip_hc(cell, stress, dc);
  CHECK(simulate_disturbance(cell, stress, hc, dc));
  CHECK_FALSE(simulate_disturbance(cell, stress, hc - 1, dc));
  CHECK_FALSE(simulate_disturbance(cell, stress, 0, dc));
  bool flipped = false;
  for (std::uint64_t h : {hc / 2, hc - 1, hc, hc + 1, 2 * hc}) {
    const bool now = simulate_disturbance(cell, stress, h, dc);
    CHECK((now || !flipped));  // once true, stays true
    flipped = flipped || now;
  }
}

TEST_CASE("simulate_retention bracketing") {
  // plant t_flip = 1.837 s
  const double target = 1.837;
  CellParams cell;
  cell.c_s = 25e-15;
  cell.r_s = target / (cell.c_s * std::log(dc.vdd / dc.v_flip));
  CHECK(*flip_time(cell, PatternClass::AllOnes, dc) ==
        doctest::Approx(target).epsilon(1e-12));

  const std::vector<double> schedule{0.5, 1.0, 2.0, 4.0};
  auto obs = simulate_retention(cell, PatternClass::AllOnes, schedule, dc);
  CHECK(obs.flipped);
  REQUIRE(obs.bracket.has_value());
  CHECK(obs.bracket->first == 1.0);
  CHECK(obs.bracket->second == 2.0);

  // insufficient window
  const std::vector<double> shorter{0.5, 1.0};
  obs = simulate_retention(cell, PatternClass::AllOnes, shorter, dc);
  CHECK_FALSE(obs.flipped);
  CHECK_FALSE(obs.bracket.has_value());

  // earliest bracket
  cell.r_s /= 100.0;
  obs = simulate_retention(cell, PatternClass::AllOnes, schedule, dc);
  REQUIRE(obs.bracket.has_value());
  CHECK(obs.bracket->first == 0.0);
  CHECK(obs.bracket->second == 0.5);

  CHECK_THROWS_AS(simulate_retention(cell, PatternClass::AllOnes, {}, dc),
                  InvalidParameter);
  const std::vector<double> bad{1.0, 1.0};
  CHECK_THROWS_AS(simulate_retention(cell, PatternClass::AllOnes, bad, dc),
                  InvalidParameter);
}

TEST_CASE("integrate_ode: closed-form agreement and order-4 convergence") {
  CellParams cell{.r_s = 7.3e11, .a = 0.0, .c_s = 25e-15};
  const double tau = cell.r_s * cell.c_s;

  auto trace = integrate_ode(cell, PatternClass::P111, 5.0 * tau, tau / 1e4, dc);
  CHECK(trace.size() == 50001);
  CHECK(std::abs(trace.back().second -
                 storage_voltage(trace.back().first, cell,
                                 PatternClass::P111, dc)) < 1e-6 * dc.vdd);

  // Richardson: halving dt moves the endpoint by < 1e-8 * VDD
  auto fine = integrate_ode(cell, PatternClass::P111, 5.0 * tau, tau / 2e4, dc);
  CHECK(std::abs(fine.back().second - trace.back().second) < 1e-8 * dc.vdd);

  // t_end == 0: single sample at the initial condition
  auto single = integrate_ode(cell, PatternClass::P111, 0.0, tau / 1e4, dc);
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair<double, double>{0.0, dc.vdd});

  CHECK_THROWS_AS(integrate_ode(cell, PatternClass::P111, tau, 0.0, dc),
                  InvalidParameter);
  CHECK_THROWS_AS(integrate_ode(cell, PatternClass::P111, tau, tau / 1e9, dc),
                  InvalidParameter);  // step-count guard
}

TEST_CASE("integrate_ode: affine branch with clamp agrees with closed form") {
  CellParams cell{.r_s = 5e10, .a = 4.308e-12, .c_s = 25e-15};
  const double tau = cell.r_s * cell.c_s;
  auto trace = integrate_ode(cell, PatternClass::P010, 5.0 * tau, tau / 1e4, dc);
  double worst = 0.0;
  for (std::size_t i = 0; i < trace.size(); i += 97) {
    const auto [t, v] = trace[i];
    worst = std::max(worst,
                     std::abs(v - storage_voltage(t, cell,
                                                  PatternClass::P010, dc)));
  }
  CHECK(worst < 1e-6 * dc.vdd);
  CHECK(trace.back().second == 0.0);  // the drain pulls the node to the clamp
}

TEST_CASE("default_retention_schedule doubles and caps") {
  const auto s = default_retention_schedule();
  REQUIRE(!s.empty());
  CHECK(s.front() == 0.25);
  CHECK(s.back() == 3600.0);
  for (std::size_t i = 1; i + 1 < s.size(); ++i)
    CHECK(s[i] == 2.0 * s[i - 1]);
  CHECK_THROWS_AS(default_retention_schedule(0.0, 10.0), InvalidParameter);
}

TEST_CASE("simulate_array: determinism, emptiness, and flip fraction") {
  const auto profile = *find_profile("D1", Mechanism::Rowhammer);
  const auto stress = StressSpec::rowhammer(PatternClass::P010);

  const auto empty = simulate_array(profile, 0, stress, 1, dc);
  CHECK(empty.observations.empty());
  CHECK(empty.rows == 0);

  const auto a = simulate_array(profile, 5000, stress, 7, dc);
  const auto b = simulate_array(profile, 5000, stress, 7, dc);
  REQUIRE(a.observations.size() == 5000);
  CHECK(a.rows * a.cols >= 5000);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < a.observations.size(); ++i) {
    CHECK(a.observations[i].cell_id == i);
    CHECK(a.observations[i].flipped == b.observations[i].flipped);
    CHECK(a.observations[i].flip_hc == b.observations[i].flip_hc);
    flips += a.observations[i].flipped;
  }
  CHECK(flips > 0);
  CHECK(flips <= 5000);
  // Table II D1 rowhammer cells all flip within the 15M budget
  CHECK(flips == 5000);

  const auto c = simulate_array(profile, 5000, stress, 8, dc);
  bool any_diff = false;
  for (std::size_t i = 0; i < c.observations.size(); ++i)
    any_diff |= c.observations[i].flip_hc != a.observations[i].flip_hc;
  CHECK(any_diff);

  // mechanism mismatch
  const auto vol = *find_profile("D1", Mechanism::Retention);
  CHECK_THROWS_AS(simulate_array(vol, 10, stress, 1, dc), InvalidParameter);
}

TEST_CASE("simulate_array: retention run produces brackets") {
  const auto profile = *find_profile("D1", Mechanism::Retention);
  const auto stress = StressSpec::retention(PatternClass::AllOnes);
  const auto map = simulate_array(profile, 200, stress, 3, dc);
  std::size_t flips = 0;
  for (const auto& o : map.observations) {
    if (o.flipped) {
      REQUIRE(o.bracket.has_value());
      CHECK(o.bracket->first < o.bracket->second);
      ++flips;
    }
    CHECK_FALSE(o.flip_hc.has_value());
  }
  CHECK(flips == 200);  // all D1 volatility cells flip within 3600 s
}
