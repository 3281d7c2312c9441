#pragma once

#include <iosfwd>
#include <string>

#include "aeqsim/experiment.hpp"

namespace aeqsim {

/// Plain decimal rendering (no exponent) with 12 significant digits.
/// Deterministic: the same double always yields the same text.
std::string format_sig12(double x);

/// Column header of the trajectory CSV.
extern const char* const kTrajectoryCsvHeader;

/// Writes one run as CSV with columns
/// t, psi_d_rad, psi_rad, qw, qx, qy, qz, wx, wy, wz, tau_x, tau_y, tau_z,
/// sigma, delta_gamma. One row per control step, header included.
void write_trajectory_csv(std::ostream& os, const RunRecord& rec);

/// Writes sweep-cell statistics as CSV with columns
/// spec_id, controller, trials, gamma_mean, gamma_esd, switch_count_max.
/// Failed cells carry the marker "failed" in their statistics columns.
void write_summary_csv(std::ostream& os, const SweepSummary& summary);

/// Human-readable comparison of the two controllers per maneuver, with the
/// aggregate average cost reduction on the last line.
std::string comparison_table(const SweepSummary& summary);

}  // namespace aeqsim
