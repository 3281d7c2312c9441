#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "aeqsim/experiment.hpp"

namespace aeqsim {

inline Eigen::Matrix3d default_inertia_matrix() {
    return Eigen::Vector3d(1.66e-5, 1.66e-5, 2.93e-5).asDiagonal();
}

/// One maneuver entry as it appears in the configuration file. Angles stay in
/// the file's unit (degrees) so a load/serialize cycle is exact; conversion
/// to radians happens when the entry is turned into a ManeuverSpec.
struct ManeuverEntry {
    std::string id;
    Eigen::Vector3d omega0{Eigen::Vector3d::Zero()};  // rad/s
    double psi0_deg{0.0};
    double stage1_s{1.0};
    int stage3_samples{1500};

    bool operator==(const ManeuverEntry& other) const;
};

/// Fully resolved experiment configuration. Gain/weight shorthands from the
/// file (scalars, diagonals) are expanded to full matrices on load.
struct ExperimentConfig {
    Eigen::Matrix3d inertia = default_inertia_matrix();
    Eigen::Matrix3d k_n = 900.0 * default_inertia_matrix();
    Eigen::Matrix3d k_omega = 90.0 * default_inertia_matrix();
    Eigen::Matrix3d weight_r = Eigen::Matrix3d::Identity();
    Eigen::Matrix3d weight_q = 1e-6 * Eigen::Matrix3d::Identity();
    SelectorConfig selector;
    double control_dt_s{0.002};
    double omega_limit_rad_s{200.0};
    std::optional<Eigen::Vector3d> torque_limit_nm;
    JitterSpec jitter;
    std::vector<ManeuverEntry> maneuvers;
    int trials{1};
    std::uint64_t seed{0};
    std::string output_dir{"out"};

    /// Throws ConfigInvalid naming the offending field.
    void validate() const;

    /// Builds the validated runtime objects (gains, weights, inertia, ...).
    RunSetup run_setup() const;

    std::vector<ManeuverSpec> maneuver_specs() const;

    /// Throws ConfigInvalid when no maneuver has the given id.
    ManeuverSpec spec_for(const std::string& id) const;

    /// Index of the maneuver with the given id; throws ConfigInvalid.
    std::size_t maneuver_index(const std::string& id) const;

    bool operator==(const ExperimentConfig& other) const;
};

/// Parses a configuration object. Unknown keys anywhere are rejected.
ExperimentConfig config_from_json(const nlohmann::json& j);

/// Serializes the resolved configuration. config_from_json(config_to_json(c))
/// reproduces c exactly.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// Loads, parses, and validates a configuration file. A missing or
/// unparsable file throws ConfigInvalid.
ExperimentConfig load_config(const std::string& path);

}  // namespace aeqsim
