#include <cmath>

#include "doctest.h"
#include "dramcell/extraction.hpp"
#include "dramcell/profiles.hpp"
#include "dramcell/rng.hpp"
#include "dramcell/stress.hpp"

using namespace dramcell;

namespace {

const DeviceConstants dc{};

// Inversion of the two-pattern discharge model on exact (unquantized) stress
// times; used to bound the quantization error interval.
double a_from_times(double t_111, double t_010, double c_s) {
  const double log_ratio = std::log(dc.vdd / dc.v_flip);
  const double r_s = t_111 / (c_s * log_ratio);
  const double e_minus_1 = std::expm1(t_010 / t_111 * log_ratio);
  return ((dc.vdd - dc.v_flip) - dc.v_flip * e_minus_1) / (e_minus_1 * r_s);
}

}  // namespace

TEST_CASE("hc_at_target_flips recovers the exact threshold") {
  CellParams cell{.r_s = 5e10, .a = 0.0, .c_s = 25e-15};
  auto stress = StressSpec::rowhammer(PatternClass::P111);
  const auto expected = *find_flip_hc(cell, stress, dc);

  SimDisturbanceProbe probe({cell}, stress, dc);
  CHECK(hc_at_target_flips(probe, PatternClass::P111, stress, 1) == expected);

  // immediate satisfaction at hc_init
  CHECK(hc_at_target_flips(probe, PatternClass::P111, stress, 1, expected) ==
        expected);
  CHECK(hc_at_target_flips(probe, PatternClass::P111, stress, 1,
                           expected + 10) == expected + 10);

  // budget exhausted
  stress.hc_budget = expected - 1;
  SimDisturbanceProbe starved({cell}, stress, dc);
  CHECK_THROWS_AS(
      hc_at_target_flips(starved, PatternClass::P111, stress, 1),
      HcNotReached);

  // target above the population size
  stress.hc_budget = kDefaultHcBudgetRowhammer;
  SimDisturbanceProbe small({cell}, stress, dc);
  CHECK_THROWS_AS(hc_at_target_flips(small, PatternClass::P111, stress, 2),
                  HcNotReached);
  CHECK_THROWS_AS(hc_at_target_flips(small, PatternClass::P111, stress, 0),
                  InvalidParameter);
}

TEST_CASE("hc_at_target_flips over a population counts distinct cells") {
  Rng rng(31);
  std::vector<CellParams> cells;
  auto stress = StressSpec::rowhammer(PatternClass::P010, 1ull << 40);
  std::vector<std::uint64_t> thresholds;
  for (int i = 0; i < 50; ++i) {
    CellParams c;
    c.r_s = rng.log_uniform(5e10, 5e12);
    c.a = dc.v_th / rng.log_uniform(6e9, 9e10);
    cells.push_back(c);
    thresholds.push_back(*find_flip_hc(c, stress, dc));
  }
  std::sort(thresholds.begin(), thresholds.end());
  SimDisturbanceProbe probe(cells, stress, dc);
  for (std::size_t k : {std::size_t{1}, std::size_t{10}, std::size_t{50}}) {
    CHECK(hc_at_target_flips(probe, PatternClass::P010, stress, k) ==
          thresholds[k - 1]);
  }
}

TEST_CASE("disturbance extraction: algebraic round-trip without quantization") {
  Rng rng(37);
  for (int i = 0; i < 500; ++i) {
    CellParams cell;
    cell.r_s = rng.log_uniform(4e10, 5e14);
    cell.a = dc.v_th / rng.log_uniform(1e9, 9e11);
    const double t111 = *flip_time(cell, PatternClass::P111, dc);
    const double t010 = *flip_time(cell, PatternClass::P010, dc);
    const double a_est = a_from_times(t111, t010, cell.c_s);
    CHECK(a_est == doctest::Approx(cell.a).epsilon(1e-9));
    CHECK(t111 / (cell.c_s * std::log(dc.vdd / dc.v_flip)) ==
          doctest::Approx(cell.r_s).epsilon(1e-12));
  }
}

TEST_CASE("disturbance extraction on the planted example cell") {
  CellParams cell{.r_s = 5e10, .a = dc.v_th / 6e9, .c_s = 25e-15};
  const auto stress = StressSpec::rowhammer();

  SimDisturbanceProbe probe({cell}, stress, dc);
  const auto res = extract_rs_rb_disturbance(probe, stress, 1, dc);

  CHECK(res.hc_010 < res.hc_111);
  CHECK(res.t_010 <= res.t_111);
  CHECK(res.quantization_rel_err ==
        std::max(1.0 / res.hc_111, 1.0 / res.hc_010));
  CHECK(res.r_s_est == doctest::Approx(5e10).epsilon(2.0 * res.quantization_rel_err));
  CHECK(res.a_est == doctest::Approx(cell.a).epsilon(1e-3));
  CHECK(res.r_b_est == doctest::Approx(6e9).epsilon(1e-3));
}

TEST_CASE("disturbance extraction: quantization error stays in the propagated interval") {
  Rng rng(41);
  const auto base = StressSpec::rowhammer(PatternClass::P010, 1ull << 50);
  int checked = 0;
  for (int i = 0; i < 300; ++i) {
    CellParams cell;
    cell.r_s = rng.log_uniform(4.78e10, 3.05e12);
    cell.a = dc.v_th / rng.log_uniform(5.79e9, 9.09e10);
    SimDisturbanceProbe probe({cell}, base, dc);
    const auto res = extract_rs_rb_disturbance(probe, base, 1, dc);

    // R_S: plain one-sided ceiling error
    CHECK(std::abs(res.r_s_est - cell.r_s) / cell.r_s <=
          1.0 / static_cast<double>(res.hc_111) + 1e-12);

    // A: true value must lie in the interval spanned by the +-1 HC corners
    const double inv_f = 1.0 / base.f_rd_hz;
    const double a_hi = a_from_times(res.t_111, res.t_010 - inv_f, cell.c_s);
    const double a_lo = a_from_times(res.t_111 - inv_f, res.t_010, cell.c_s);
    CHECK(cell.a <= a_hi * (1.0 + 1e-9));
    CHECK(cell.a >= a_lo - std::abs(a_lo) * 1e-9);
    if (res.a_est > 0.0) ++checked;
  }
  CHECK(checked > 250);  // quantization rarely erases the branch entirely
}

TEST_CASE("disturbance extraction degenerates cleanly when A == 0") {
  CellParams cell{.r_s = 8e10, .a = 0.0, .c_s = 25e-15};
  const auto stress = StressSpec::rowhammer();
  SimDisturbanceProbe probe({cell}, stress, dc);
  const auto res = extract_rs_rb_disturbance(probe, stress, 1, dc);
  CHECK(res.hc_111 == res.hc_010);
  CHECK(res.a_est == 0.0);
  CHECK(std::isinf(res.r_b_est));
  CHECK(res.r_s_est == doctest::Approx(cell.r_s)
                           .epsilon(2.0 * res.quantization_rel_err));
}

TEST_CASE("extraction estimator monotonicity") {
  const auto stress = StressSpec::rowpress(PatternClass::P010, 1ull << 40);
  // R_S_est grows with observed flip time; A_est shrinks as T_010 approaches
  // T_111.
  CellParams slow{.r_s = 8e12, .a = dc.v_th / 5e9, .c_s = 25e-15};
  CellParams fast = slow;
  fast.r_s = 2e12;
  SimDisturbanceProbe p1({slow}, stress, dc);
  SimDisturbanceProbe p2({fast}, stress, dc);
  const auto r1 = extract_rs_rb_disturbance(p1, stress, 1, dc);
  const auto r2 = extract_rs_rb_disturbance(p2, stress, 1, dc);
  CHECK(r1.r_s_est > r2.r_s_est);

  CellParams weak = slow;
  weak.a = dc.v_th / 5e10;  // weaker branch -> longer T_010
  SimDisturbanceProbe p3({weak}, stress, dc);
  const auto r3 = extract_rs_rb_disturbance(p3, stress, 1, dc);
  CHECK(r3.t_010 > r1.t_010);
  CHECK(r3.a_est < r1.a_est);
}

TEST_CASE("trace-backed extraction equals simulator-backed extraction") {
  CellParams cell{.r_s = 7e10, .a = dc.v_th / 2e10, .c_s = 25e-15};
  const auto stress = StressSpec::rowhammer();
  SimDisturbanceProbe sim({cell}, stress, dc);
  const auto from_sim = extract_rs_rb_disturbance(sim, stress, 1, dc);

  StressSpec s111 = stress;
  s111.pattern = PatternClass::P111;
  StressSpec s010 = stress;
  s010.pattern = PatternClass::P010;
  TraceDisturbanceProbe trace(find_flip_hc(cell, s111, dc),
                              find_flip_hc(cell, s010, dc));
  const auto from_trace = extract_rs_rb_disturbance(trace, stress, 1, dc);
  CHECK(from_sim.hc_111 == from_trace.hc_111);
  CHECK(from_sim.hc_010 == from_trace.hc_010);
  CHECK(from_sim.r_s_est == from_trace.r_s_est);
  CHECK(from_sim.a_est == from_trace.a_est);
}

TEST_CASE("retention extraction: refined bracket recovers the planted R_S") {
  CellParams cell{.r_s = 1.06e14, .a = 0.0, .c_s = 25e-15};
  SimRetentionProbe probe(cell, dc);
  const auto schedule = default_retention_schedule();
  const auto est = extract_rs_retention(probe, PatternClass::AllOnes,
                                        schedule, dc);
  CHECK_FALSE(est.censored);
  const double width_r =
      (est.t_hi - est.t_lo) / (cell.c_s * std::log(dc.vdd / dc.v_flip));
  CHECK(std::abs(est.r_s_est - cell.r_s) <= width_r);
  CHECK(est.r_s_est == doctest::Approx(1.06e14).epsilon(2e-3));
  CHECK(est.r_s_est >= cell.r_s);  // upper-endpoint convention
}

TEST_CASE("retention extraction: censored result is a lower bound") {
  CellParams cell{.r_s = 1e18, .a = 0.0, .c_s = 25e-15};
  SimRetentionProbe probe(cell, dc);
  const auto schedule = default_retention_schedule();
  const auto est = extract_rs_retention(probe, PatternClass::AllOnes,
                                        schedule, dc);
  CHECK(est.censored);
  CHECK(est.r_s_est ==
        doctest::Approx(3600.0 / (cell.c_s * std::log(dc.vdd / dc.v_flip)))
            .epsilon(1e-12));
  CHECK(est.r_s_est < cell.r_s);
}

TEST_CASE("retention extraction reproduces the pattern-noise ratio law") {
  const auto schedule = default_retention_schedule();
  Rng rng(43);
  for (double n : {-0.02, -0.01, -0.005}) {
    for (int i = 0; i < 20; ++i) {
      CellParams cell;
      cell.r_s = rng.log_uniform(1.06e14, 5.53e16);
      cell.n_noise = n;
      SimRetentionProbe probe(cell, dc);
      const auto base = extract_rs_retention(probe, PatternClass::AllOnes,
                                             schedule, dc);
      const auto noisy = extract_rs_retention(probe, PatternClass::Checkerboard,
                                              schedule, dc);
      const double expected =
          std::log(dc.vdd / (dc.v_flip - n / dc.alpha)) /
          std::log(dc.vdd / dc.v_flip);
      CHECK(noisy.r_s_est / base.r_s_est ==
            doctest::Approx(expected).epsilon(4e-3));
      CHECK(noisy.r_s_est <= base.r_s_est);
      CHECK(expected < 1.0);
    }
  }
}

TEST_CASE("retention extraction input validation") {
  CellParams cell{.r_s = 1e14, .a = 0.0, .c_s = 25e-15};
  SimRetentionProbe probe(cell, dc);
  CHECK_THROWS_AS(
      extract_rs_retention(probe, PatternClass::AllOnes, {}, dc),
      InvalidParameter);
}
