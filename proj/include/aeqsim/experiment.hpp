#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "aeqsim/mps.hpp"

namespace aeqsim {

/// Three-stage yaw maneuver: hover, constant-rate yaw ramp, then a step of
/// the reference back to zero yaw once the ramp has swept psi0. The third
/// stage is where the two stabilizable error equilibria genuinely compete.
struct ManeuverSpec {
    std::string id;
    Eigen::Vector3d omega0{Eigen::Vector3d::Zero()};  // rad/s, stage-2 spin command about b3
    double psi0{0.0};                                 // rad, ramp angle that triggers stage 3
    double stage1_duration{1.0};                      // s
    double control_dt{0.002};                         // s, control/sampling period
    int n_samples_stage3{1500};                       // scored samples after stage-3 entry

    void validate() const;
};

enum class ControllerKind { continuous, benchmark, mps };

const char* to_string(ControllerKind kind);

/// Scale of the seeded initial-condition perturbation applied per trial.
/// Both zero (the default) means every trial starts exactly at rest.
struct JitterSpec {
    double attitude_stddev_rad{0.0};
    double rate_stddev_rad_s{0.0};
};

/// Time of the stage-2 -> stage-3 reference step, aligned to the control
/// grid: the first multiple of control_dt at which the ramp has reached
/// psi0. +infinity when the ramp can never get there (e.g. omega0 = 0).
double stage3_entry_time(const ManeuverSpec& spec);

/// Stage index 1, 2 or 3 at time t. Transitions are monotone and latched:
/// once stage 3 is reached the reference never leaves it.
int stage_at(const ManeuverSpec& spec, double t);

/// Reference sample at time t. omega_d / omega_d_rate are expressed in the
/// desired body frame; run the sample through localized_reference() before
/// feeding a control law.
ReferenceSample reference_at(const ManeuverSpec& spec, double t);

/// Per-step time series of one simulated run plus its scored aggregates.
/// psi_d / psi are wrapped headings in (-pi, pi]; sigma and delta_gamma hold
/// the selector outputs for predictive runs (+1 / sgn(m_e) and 0 otherwise).
struct RunRecord {
    std::vector<double> t;
    std::vector<double> psi_d;
    std::vector<double> psi;
    std::vector<UnitQuaternion> q;
    std::vector<Eigen::Vector3d> omega;
    std::vector<Eigen::Vector3d> tau;
    std::vector<int> sigma;
    std::vector<double> delta_gamma;
    std::vector<double> m_e;
    std::vector<Eigen::Vector3d> n_e;

    double gamma_exp{0.0};
    int switch_count{0};
    long stage3_entry_index{-1};
    int sigma_at_stage3_entry{0};

    std::size_t size() const { return t.size(); }
};

/// Everything a run needs besides the maneuver itself.
struct RunSetup {
    ControllerGains gains;
    PfmWeights weights;
    SelectorConfig selector;
    InertiaModel inertia;
    double omega_limit{200.0};                        // rad/s divergence bound
    std::optional<Eigen::Vector3d> torque_limit;      // symmetric per-axis clamp, N m
    JitterSpec jitter;
};

/// Simulates one maneuver under the chosen controller at the spec's control
/// rate. Scoring starts at stage-3 entry and covers exactly n_samples_stage3
/// control steps; the run ends when scoring completes. Bit-deterministic for
/// a fixed (spec, kind, setup, seed).
RunRecord run_maneuver(const ManeuverSpec& spec, ControllerKind kind, const RunSetup& setup,
                       std::uint64_t seed);

/// Sampled quadratic cost sum((tau' R tau + n_e' Q n_e) * sample_dt) over
/// paired series. Throws LengthMismatch when the series disagree in length.
double gamma_exp(const std::vector<Eigen::Vector3d>& tau_series,
                 const std::vector<Eigen::Vector3d>& n_e_series, const PfmWeights& weights,
                 double sample_dt);

/// Aggregates of one (maneuver, controller) sweep cell. A failed cell keeps
/// the first error message and reports no statistics.
struct SweepCell {
    std::string spec_id;
    ControllerKind controller{ControllerKind::benchmark};
    int trials{0};
    double gamma_mean{0.0};
    double gamma_esd{0.0};  // sample standard deviation (n - 1); 0 for n = 1
    int switch_count_max{0};
    int sigma_at_stage3_entry{0};
    bool failed{false};
    std::string error;
};

/// Head-to-head comparison of the two controllers on one maneuver.
struct SweepPair {
    std::string spec_id;
    double first_mean{0.0};
    double second_mean{0.0};
    double reduction{0.0};  // 1 - second_mean / first_mean
    bool equilibria_differ{false};
    bool valid{false};
};

struct SweepSummary {
    std::vector<SweepCell> cells;  // two per maneuver, first controller then second
    std::vector<SweepPair> pairs;  // one per maneuver
    double aggregate_reduction{std::numeric_limits<double>::quiet_NaN()};
};

/// Runs trials x maneuvers x two controllers and aggregates per-cell
/// statistics. Per-run seeds derive from (seed, maneuver index, controller,
/// trial), so results do not depend on execution order; jobs > 1 distributes
/// independent runs across threads without changing any output.
SweepSummary run_sweep(const std::vector<ManeuverSpec>& specs, int trials, const RunSetup& setup,
                       std::uint64_t seed, int jobs = 1,
                       ControllerKind first = ControllerKind::benchmark,
                       ControllerKind second = ControllerKind::mps);

/// Deterministic per-run seed derivation used by run_sweep.
std::uint64_t run_seed(std::uint64_t base, std::size_t spec_index, ControllerKind kind, int trial);

/// Removes the 2*pi jumps from a sampled wrapped-angle series.
std::vector<double> unwrap_angles(const std::vector<double>& wrapped);

}  // namespace aeqsim
