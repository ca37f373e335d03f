#include "dramcell/cell_model.hpp"

#include <cmath>

namespace dramcell {

namespace {

void check_decay_params(double t, const CellParams& cell) {
  if (!std::isfinite(t) || t < 0.0)
    throw InvalidParameter("time must be finite and non-negative");
  if (!(cell.r_s > 0.0) || !std::isfinite(cell.r_s))
    throw InvalidParameter("r_s must be positive and finite");
  if (!(cell.c_s > 0.0) || !std::isfinite(cell.c_s))
    throw InvalidParameter("c_s must be positive and finite");
  if (cell.a < 0.0 || !std::isfinite(cell.a))
    throw InvalidParameter("subthreshold factor must be finite and >= 0");
}

// Exponent guard for subthreshold_factor: exp(709) is the last finite double.
constexpr double kMaxExponent = 709.0;

}  // namespace

const char* to_string(Mechanism m) {
  switch (m) {
    case Mechanism::Retention: return "retention";
    case Mechanism::Rowhammer: return "rowhammer";
    case Mechanism::Rowpress: return "rowpress";
  }
  return "?";
}

const char* to_string(PatternClass p) {
  switch (p) {
    case PatternClass::P111: return "111";
    case PatternClass::P010: return "010";
    case PatternClass::AllOnes: return "all1";
    case PatternClass::Checkerboard: return "checker";
  }
  return "?";
}

const char* to_string(ReadOutcome r) {
  switch (r) {
    case ReadOutcome::Correct: return "correct";
    case ReadOutcome::Flip: return "flip";
    case ReadOutcome::Uncertain: return "uncertain";
  }
  return "?";
}

std::optional<Mechanism> mechanism_from_string(const std::string& s) {
  if (s == "retention" || s == "volatility") return Mechanism::Retention;
  if (s == "rowhammer") return Mechanism::Rowhammer;
  if (s == "rowpress") return Mechanism::Rowpress;
  return std::nullopt;
}

std::optional<PatternClass> pattern_from_string(const std::string& s) {
  if (s == "111") return PatternClass::P111;
  if (s == "010") return PatternClass::P010;
  if (s == "all1") return PatternClass::AllOnes;
  if (s == "checker") return PatternClass::Checkerboard;
  return std::nullopt;
}

void validate(const DeviceConstants& dc) {
  if (!(dc.vdd > 0.0) || !(dc.v_flip > 0.0) || !(dc.v_flip < dc.vdd))
    throw InvalidParameter("require 0 < v_flip < vdd");
  if (!(dc.alpha > 0.0) || !(dc.alpha < 1.0))
    throw InvalidParameter("require 0 < alpha < 1");
  if (!(dc.v_th > 0.0)) throw InvalidParameter("require v_th > 0");
  if (!(dc.n_swing >= 1.0)) throw InvalidParameter("require n_swing >= 1");
  if (!(dc.k_couple >= 0.0) || !(dc.k_couple <= 1.0))
    throw InvalidParameter("require 0 <= k_couple <= 1");
  if (!(dc.k_prefactor > 0.0)) throw InvalidParameter("require k_prefactor > 0");
  if (!(dc.v_sa >= 0.0)) throw InvalidParameter("require v_sa >= 0");
}

void validate(const CellParams& cell) {
  if (!(cell.r_s > 0.0) || !std::isfinite(cell.r_s))
    throw InvalidParameter("require r_s > 0");
  if (!(cell.c_s > 0.0) || !std::isfinite(cell.c_s))
    throw InvalidParameter("require c_s > 0");
  if (!(cell.a >= 0.0) || !std::isfinite(cell.a))
    throw InvalidParameter("require a >= 0");
  if (!(cell.n_noise <= 0.0))
    throw InvalidParameter("require n_noise <= 0");
}

double storage_voltage(double t, const CellParams& cell, PatternClass pattern,
                       const DeviceConstants& dc) {
  check_decay_params(t, cell);
  const double r = t / (cell.r_s * cell.c_s);
  const double decay = std::exp(-r);
  if (!bitline_branch_enabled(pattern) || cell.a == 0.0)
    return dc.vdd * decay;
  // (VDD + A R_S) e^-r - A R_S, written via expm1 so V(0) is exactly VDD and
  // the large-A cancellation stays benign.
  const double v = dc.vdd * decay + cell.a * cell.r_s * std::expm1(-r);
  return v > 0.0 ? v : 0.0;
}

double leakage_current_i1(double t, const CellParams& cell,
                          const DeviceConstants& dc) {
  check_decay_params(t, cell);
  return dc.vdd / cell.r_s * std::exp(-t / (cell.r_s * cell.c_s));
}

double leakage_current_i1_count(std::uint64_t hc, double t_aggon,
                                const CellParams& cell,
                                const DeviceConstants& dc) {
  if (!(t_aggon > 0.0) || !std::isfinite(t_aggon))
    throw InvalidParameter("t_aggon must be positive");
  return leakage_current_i1(static_cast<double>(hc) * t_aggon, cell, dc);
}

double bitline_swing(double v_s, const DeviceConstants& dc) {
  if (!(v_s >= 0.0) || !(v_s <= dc.vdd))
    throw InvalidParameter("storage voltage outside [0, vdd]");
  return dc.alpha * (v_s - dc.vdd / 2.0);
}

ReadOutcome readout(double dv_bl, double noise, const DeviceConstants& dc) {
  const double s = dv_bl + noise;
  if (s > dc.v_sa) return ReadOutcome::Correct;
  if (s < -dc.v_sa) return ReadOutcome::Flip;
  return ReadOutcome::Uncertain;
}

double victim_coupling(const DeviceConstants& dc) {
  return dc.v_pp * dc.k_couple;
}

double subthreshold_factor(double v_b, const DeviceConstants& dc,
                           bool* saturated) {
  double e = (victim_coupling(dc) - v_b - dc.v_t) / (dc.n_swing * dc.v_th);
  if (saturated) *saturated = e > kMaxExponent;
  if (e > kMaxExponent) e = kMaxExponent;
  return dc.k_prefactor * std::exp(e);
}

double subthreshold_current(double v_s, double v_b, double a,
                            const DeviceConstants& dc) {
  return a * -std::expm1(-(v_s - v_b) / dc.v_th);
}

double effective_rb(double v_s, double v_b, double a,
                    const DeviceConstants& dc) {
  if (a == 0.0) return std::numeric_limits<double>::infinity();
  const double dv = v_s - v_b;
  if (dv == 0.0) return dc.v_th / a;  // linearized limit
  return dv / (a * -std::expm1(-dv / dc.v_th));
}

double parallel_resistance(double r1, double r2) {
  if (std::isinf(r1)) return r2;
  if (std::isinf(r2)) return r1;
  return r1 * r2 / (r1 + r2);
}

double time_constant(const CellParams& cell, PatternClass pattern,
                     const DeviceConstants& dc) {
  const double r_b = bitline_branch_enabled(pattern)
                         ? r_b_from_factor(cell.a, dc)
                         : std::numeric_limits<double>::infinity();
  return cell.c_s * parallel_resistance(cell.r_s, r_b);
}

StressSpec StressSpec::rowhammer(PatternClass p, std::uint64_t budget) {
  StressSpec s;
  s.mechanism = Mechanism::Rowhammer;
  s.pattern = p;
  s.f_rd_hz = rowhammer_rate_hz();
  s.t_aggon_s = kTRas;
  s.hc_budget = budget;
  return s;
}

StressSpec StressSpec::rowpress(PatternClass p, std::uint64_t budget,
                                double t_aggon) {
  StressSpec s;
  s.mechanism = Mechanism::Rowpress;
  s.pattern = p;
  s.f_rd_hz = rowpress_rate_hz(t_aggon);
  s.t_aggon_s = t_aggon;
  s.hc_budget = budget;
  return s;
}

StressSpec StressSpec::retention(PatternClass p, double budget_s) {
  StressSpec s;
  s.mechanism = Mechanism::Retention;
  s.pattern = p;
  s.f_rd_hz = 0.0;
  s.hc_budget = 0;
  s.time_budget_s = budget_s;
  return s;
}

void validate(const StressSpec& stress) {
  if (is_disturbance(stress.mechanism)) {
    if (!(stress.f_rd_hz > 0.0))
      throw InvalidParameter("disturbance stress requires f_rd > 0");
    if (stress.hc_budget == 0)
      throw InvalidParameter("disturbance stress requires hc_budget > 0");
    if (stress.mechanism == Mechanism::Rowpress && !(stress.t_aggon_s > 0.0))
      throw InvalidParameter("rowpress requires t_aggon > 0");
    if (stress.pattern != PatternClass::P111 &&
        stress.pattern != PatternClass::P010)
      throw InvalidParameter("disturbance patterns are 111/010");
  } else {
    if (!(stress.time_budget_s > 0.0))
      throw InvalidParameter("retention stress requires time_budget > 0");
    if (stress.pattern != PatternClass::AllOnes &&
        stress.pattern != PatternClass::Checkerboard)
      throw InvalidParameter("retention patterns are all1/checker");
  }
}

}  // namespace dramcell
