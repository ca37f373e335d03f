#pragma once

#include "dramcell/types.hpp"

namespace dramcell {

// Closed-form single-cell physics. Everything here is a pure function of its
// arguments; state lives in CellParams/DeviceConstants. Voltages in volts,
// currents in amperes, resistances in ohms, times in seconds.

/// Storage-node voltage after an idle/stress interval t.
///
/// Benign patterns discharge through the p-well alone:
///   V(t) = V_DD * exp(-t / (R_S * C_S)).
/// Adverse patterns add a constant subthreshold drain A toward the grounded
/// bitline, giving the affine-exponential solution
///   V(t) = (V_DD + A*R_S) * exp(-t / (R_S*C_S)) - A*R_S,
/// clamped at 0 (the drain stops once the node reaches the bitline level).
double storage_voltage(double t, const CellParams& cell, PatternClass pattern,
                       const DeviceConstants& dc);

/// Instantaneous p-well leakage current magnitude, V_DD/R_S * exp(-t/tau).
/// Discharge current is reported positive.
double leakage_current_i1(double t, const CellParams& cell,
                          const DeviceConstants& dc);

/// Count-domain form of the p-well leakage: exposure t = HC * t_AggON.
double leakage_current_i1_count(std::uint64_t hc, double t_aggon,
                                const CellParams& cell,
                                const DeviceConstants& dc);

/// Charge-sharing swing seen by the sense amplifier for a stored '1' read
/// against a half-VDD precharge. Positive swing means the '1' reads
/// correctly.
double bitline_swing(double v_s, const DeviceConstants& dc);

/// Sense-amplifier decision: swing plus noise against the +-V_SA margin.
/// Boundary ties classify as Uncertain.
ReadOutcome readout(double dv_bl, double noise, const DeviceConstants& dc);

/// Transient spike coupled onto the victim wordline by an aggressor
/// activation: V_PP * C_C/(C_C+C_WL).
double victim_coupling(const DeviceConstants& dc);

/// Subthreshold factor A(V_B) = K * exp((dV_victim - V_B - V_T)/(n*v_th)).
/// The exponent is saturated to avoid overflow; `saturated`, when non-null,
/// reports that the guard fired.
double subthreshold_factor(double v_b, const DeviceConstants& dc,
                           bool* saturated = nullptr);

/// Bitline subthreshold current I_2 = A * (1 - exp(-(V_S - V_B)/v_th)).
double subthreshold_current(double v_s, double v_b, double a,
                            const DeviceConstants& dc);

/// Effective bitline resistance (V_S-V_B) / I_2, continuously extended to
/// v_th/A at V_S == V_B. a == 0 yields the infinite-resistance sentinel.
double effective_rb(double v_s, double v_b, double a,
                    const DeviceConstants& dc);

/// Pattern-conditioned discharge time constant C_S * (R_S || R_B^pat),
/// where R_B^pat is v_th/A under adverse patterns and infinite otherwise.
double time_constant(const CellParams& cell, PatternClass pattern,
                     const DeviceConstants& dc);

/// Parallel resistance with an infinity-absorbing convention.
double parallel_resistance(double r1, double r2);

}  // namespace dramcell
