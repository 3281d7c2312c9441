#include "aeqsim/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

namespace aeqsim {
namespace {

using nlohmann::json;

void check_keys(const json& obj, const char* context, std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigInvalid(std::string(context) + ": unknown key \"" + item.key() + "\"");
        }
    }
}

double as_number(const json& j, const std::string& context) {
    if (!j.is_number()) {
        throw ConfigInvalid(context + ": expected a number");
    }
    return j.get<double>();
}

Eigen::Vector3d as_vec3(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigInvalid(context + ": expected an array of 3 numbers");
    }
    Eigen::Vector3d v;
    for (int i = 0; i < 3; ++i) {
        v(i) = as_number(j[i], context + "[" + std::to_string(i) + "]");
    }
    return v;
}

Eigen::Matrix3d as_mat3(const json& j, const std::string& context) {
    if (!j.is_array() || j.size() != 3) {
        throw ConfigInvalid(context + ": expected 3 rows of 3 numbers");
    }
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r) {
        m.row(r) = as_vec3(j[r], context + " row " + std::to_string(r)).transpose();
    }
    return m;
}

// number -> scalar * identity; [3] -> diagonal; [[3],[3],[3]] -> full matrix.
Eigen::Matrix3d as_spd_matrix(const json& j, const std::string& context) {
    if (j.is_number()) {
        return j.get<double>() * Eigen::Matrix3d::Identity();
    }
    if (j.is_array() && j.size() == 3 && j[0].is_number()) {
        return Eigen::Matrix3d(as_vec3(j, context).asDiagonal());
    }
    return as_mat3(j, context);
}

// number -> scalar multiple of the inertia matrix; nested array -> absolute.
Eigen::Matrix3d as_gain_matrix(const json& j, const Eigen::Matrix3d& inertia,
                               const std::string& context) {
    if (j.is_number()) {
        return j.get<double>() * inertia;
    }
    return as_mat3(j, context);
}

json mat3_to_json(const Eigen::Matrix3d& m) {
    json rows = json::array();
    for (int r = 0; r < 3; ++r) {
        rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
    }
    return rows;
}

bool mat3_equal(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
    return (a.array() == b.array()).all();
}

ManeuverEntry maneuver_from_json(const json& j, std::size_t index) {
    const std::string context = "maneuvers[" + std::to_string(index) + "]";
    if (!j.is_object()) {
        throw ConfigInvalid(context + ": expected an object");
    }
    check_keys(j, context.c_str(), {"id", "omega0_rad_s", "psi0_deg", "stage1_s", "stage3_samples"});
    ManeuverEntry entry;
    if (!j.contains("id") || !j["id"].is_string()) {
        throw ConfigInvalid(context + ".id: expected a string");
    }
    entry.id = j["id"].get<std::string>();
    if (j.contains("omega0_rad_s")) {
        entry.omega0 = as_vec3(j["omega0_rad_s"], context + ".omega0_rad_s");
    }
    if (j.contains("psi0_deg")) {
        entry.psi0_deg = as_number(j["psi0_deg"], context + ".psi0_deg");
    }
    if (j.contains("stage1_s")) {
        entry.stage1_s = as_number(j["stage1_s"], context + ".stage1_s");
    }
    if (j.contains("stage3_samples")) {
        if (!j["stage3_samples"].is_number_integer()) {
            throw ConfigInvalid(context + ".stage3_samples: expected an integer");
        }
        entry.stage3_samples = j["stage3_samples"].get<int>();
    }
    return entry;
}

}  // namespace

bool ManeuverEntry::operator==(const ManeuverEntry& other) const {
    return id == other.id && (omega0.array() == other.omega0.array()).all() &&
           psi0_deg == other.psi0_deg && stage1_s == other.stage1_s &&
           stage3_samples == other.stage3_samples;
}

void ExperimentConfig::validate() const {
    try {
        run_setup();
        selector.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigInvalid(e.what());
    }
    if (!std::isfinite(control_dt_s) || !(control_dt_s > 0.0) || control_dt_s > kMaxTimestep) {
        throw ConfigInvalid("simulation.control_dt_s must be in (0, " +
                            std::to_string(kMaxTimestep) + "] s");
    }
    if (!std::isfinite(omega_limit_rad_s) || !(omega_limit_rad_s > 0.0)) {
        throw ConfigInvalid("simulation.omega_limit_rad_s must be > 0");
    }
    if (torque_limit_nm &&
        (!torque_limit_nm->allFinite() || !(torque_limit_nm->minCoeff() > 0.0))) {
        throw ConfigInvalid("simulation.torque_limit_nm components must be > 0");
    }
    if (!(jitter.attitude_stddev_rad >= 0.0) || !(jitter.rate_stddev_rad_s >= 0.0)) {
        throw ConfigInvalid("jitter stddevs must be >= 0");
    }
    if (trials < 1) {
        throw ConfigInvalid("trials must be >= 1");
    }
    if (maneuvers.empty()) {
        throw ConfigInvalid("maneuvers must contain at least one entry");
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < maneuvers.size(); ++i) {
        const ManeuverEntry& entry = maneuvers[i];
        const std::string context = "maneuvers[" + std::to_string(i) + "]";
        if (entry.id.empty()) {
            throw ConfigInvalid(context + ".id must be non-empty");
        }
        if (!seen.insert(entry.id).second) {
            throw ConfigInvalid(context + ".id \"" + entry.id + "\" is duplicated");
        }
        if (entry.omega0.x() != 0.0 || entry.omega0.y() != 0.0) {
            throw ConfigInvalid(context + ".omega0_rad_s: the yaw-ramp reference only supports a "
                                "spin about the body z axis (x and y must be 0)");
        }
        try {
            ManeuverSpec spec;
            spec.id = entry.id;
            spec.omega0 = entry.omega0;
            spec.psi0 = entry.psi0_deg * std::numbers::pi / 180.0;
            spec.stage1_duration = entry.stage1_s;
            spec.control_dt = control_dt_s;
            spec.n_samples_stage3 = entry.stage3_samples;
            spec.validate();
        } catch (const InvalidParameter& e) {
            throw ConfigInvalid(e.what());
        }
    }
    if (output_dir.empty()) {
        throw ConfigInvalid("output_dir must be non-empty");
    }
}

RunSetup ExperimentConfig::run_setup() const {
    return RunSetup{ControllerGains(k_n, k_omega), PfmWeights(weight_r, weight_q), selector,
                    InertiaModel(inertia), omega_limit_rad_s, torque_limit_nm, jitter};
}

std::vector<ManeuverSpec> ExperimentConfig::maneuver_specs() const {
    std::vector<ManeuverSpec> specs;
    specs.reserve(maneuvers.size());
    for (const ManeuverEntry& entry : maneuvers) {
        ManeuverSpec spec;
        spec.id = entry.id;
        spec.omega0 = entry.omega0;
        spec.psi0 = entry.psi0_deg * std::numbers::pi / 180.0;
        spec.stage1_duration = entry.stage1_s;
        spec.control_dt = control_dt_s;
        spec.n_samples_stage3 = entry.stage3_samples;
        specs.push_back(spec);
    }
    return specs;
}

std::size_t ExperimentConfig::maneuver_index(const std::string& id) const {
    for (std::size_t i = 0; i < maneuvers.size(); ++i) {
        if (maneuvers[i].id == id) {
            return i;
        }
    }
    throw ConfigInvalid("unknown maneuver id \"" + id + "\"");
}

ManeuverSpec ExperimentConfig::spec_for(const std::string& id) const {
    return maneuver_specs()[maneuver_index(id)];
}

bool ExperimentConfig::operator==(const ExperimentConfig& other) const {
    const bool limits_equal =
        torque_limit_nm.has_value() == other.torque_limit_nm.has_value() &&
        (!torque_limit_nm ||
         (torque_limit_nm->array() == other.torque_limit_nm->array()).all());
    return mat3_equal(inertia, other.inertia) && mat3_equal(k_n, other.k_n) &&
           mat3_equal(k_omega, other.k_omega) && mat3_equal(weight_r, other.weight_r) &&
           mat3_equal(weight_q, other.weight_q) && selector.horizon_s == other.selector.horizon_s &&
           selector.prediction_dt_s == other.selector.prediction_dt_s &&
           selector.delta == other.selector.delta &&
           selector.sigma_init == other.selector.sigma_init &&
           control_dt_s == other.control_dt_s && omega_limit_rad_s == other.omega_limit_rad_s &&
           limits_equal && jitter.attitude_stddev_rad == other.jitter.attitude_stddev_rad &&
           jitter.rate_stddev_rad_s == other.jitter.rate_stddev_rad_s &&
           maneuvers == other.maneuvers && trials == other.trials && seed == other.seed &&
           output_dir == other.output_dir;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) {
        throw ConfigInvalid("config root: expected an object");
    }
    check_keys(j, "config", {"inertia", "gains", "weights", "selector", "simulation", "jitter",
                             "maneuvers", "trials", "seed", "output_dir"});
    ExperimentConfig config;

    if (j.contains("inertia")) {
        config.inertia = as_spd_matrix(j["inertia"], "inertia");
    }
    if (j.contains("gains")) {
        const json& gains = j["gains"];
        check_keys(gains, "gains", {"kn", "komega"});
        if (gains.contains("kn")) {
            config.k_n = as_gain_matrix(gains["kn"], config.inertia, "gains.kn");
        }
        if (gains.contains("komega")) {
            config.k_omega = as_gain_matrix(gains["komega"], config.inertia, "gains.komega");
        }
    } else {
        // Re-derive the defaults from the configured inertia so the shipped
        // scalar-times-inertia convention holds whatever J is.
        config.k_n = 900.0 * config.inertia;
        config.k_omega = 90.0 * config.inertia;
    }
    if (j.contains("weights")) {
        const json& weights = j["weights"];
        check_keys(weights, "weights", {"r", "q"});
        if (weights.contains("r")) {
            config.weight_r = as_spd_matrix(weights["r"], "weights.r");
        }
        if (weights.contains("q")) {
            config.weight_q = as_spd_matrix(weights["q"], "weights.q");
        }
    }
    if (j.contains("selector")) {
        const json& selector = j["selector"];
        check_keys(selector, "selector", {"horizon_s", "prediction_dt_s", "delta", "sigma_init"});
        if (selector.contains("horizon_s")) {
            config.selector.horizon_s = as_number(selector["horizon_s"], "selector.horizon_s");
        }
        if (selector.contains("prediction_dt_s")) {
            config.selector.prediction_dt_s =
                as_number(selector["prediction_dt_s"], "selector.prediction_dt_s");
        }
        if (selector.contains("delta")) {
            config.selector.delta = as_number(selector["delta"], "selector.delta");
        }
        if (selector.contains("sigma_init")) {
            if (!selector["sigma_init"].is_number_integer()) {
                throw ConfigInvalid("selector.sigma_init: expected an integer");
            }
            config.selector.sigma_init = selector["sigma_init"].get<int>();
        }
    }
    if (j.contains("simulation")) {
        const json& simulation = j["simulation"];
        check_keys(simulation, "simulation",
                   {"control_dt_s", "omega_limit_rad_s", "torque_limit_nm"});
        if (simulation.contains("control_dt_s")) {
            config.control_dt_s = as_number(simulation["control_dt_s"], "simulation.control_dt_s");
        }
        if (simulation.contains("omega_limit_rad_s")) {
            config.omega_limit_rad_s =
                as_number(simulation["omega_limit_rad_s"], "simulation.omega_limit_rad_s");
        }
        if (simulation.contains("torque_limit_nm") && !simulation["torque_limit_nm"].is_null()) {
            const json& limit = simulation["torque_limit_nm"];
            if (limit.is_number()) {
                config.torque_limit_nm =
                    Eigen::Vector3d::Constant(limit.get<double>());
            } else {
                config.torque_limit_nm = as_vec3(limit, "simulation.torque_limit_nm");
            }
        }
    }
    if (j.contains("jitter")) {
        const json& jitter = j["jitter"];
        check_keys(jitter, "jitter", {"attitude_stddev_rad", "rate_stddev_rad_s"});
        if (jitter.contains("attitude_stddev_rad")) {
            config.jitter.attitude_stddev_rad =
                as_number(jitter["attitude_stddev_rad"], "jitter.attitude_stddev_rad");
        }
        if (jitter.contains("rate_stddev_rad_s")) {
            config.jitter.rate_stddev_rad_s =
                as_number(jitter["rate_stddev_rad_s"], "jitter.rate_stddev_rad_s");
        }
    }
    if (!j.contains("maneuvers")) {
        throw ConfigInvalid("config: \"maneuvers\" is required");
    }
    if (!j["maneuvers"].is_array()) {
        throw ConfigInvalid("maneuvers: expected an array");
    }
    for (std::size_t i = 0; i < j["maneuvers"].size(); ++i) {
        config.maneuvers.push_back(maneuver_from_json(j["maneuvers"][i], i));
    }
    if (j.contains("trials")) {
        if (!j["trials"].is_number_integer()) {
            throw ConfigInvalid("trials: expected an integer");
        }
        config.trials = j["trials"].get<int>();
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer()) {
            throw ConfigInvalid("seed: expected an integer");
        }
        config.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) {
            throw ConfigInvalid("output_dir: expected a string");
        }
        config.output_dir = j["output_dir"].get<std::string>();
    }
    return config;
}

nlohmann::json config_to_json(const ExperimentConfig& config) {
    json j;
    j["inertia"] = mat3_to_json(config.inertia);
    j["gains"] = {{"kn", mat3_to_json(config.k_n)}, {"komega", mat3_to_json(config.k_omega)}};
    j["weights"] = {{"r", mat3_to_json(config.weight_r)}, {"q", mat3_to_json(config.weight_q)}};
    j["selector"] = {{"horizon_s", config.selector.horizon_s},
                     {"prediction_dt_s", config.selector.prediction_dt_s},
                     {"delta", config.selector.delta},
                     {"sigma_init", config.selector.sigma_init}};
    j["simulation"] = {{"control_dt_s", config.control_dt_s},
                       {"omega_limit_rad_s", config.omega_limit_rad_s}};
    if (config.torque_limit_nm) {
        j["simulation"]["torque_limit_nm"] = {(*config.torque_limit_nm)(0),
                                              (*config.torque_limit_nm)(1),
                                              (*config.torque_limit_nm)(2)};
    }
    j["jitter"] = {{"attitude_stddev_rad", config.jitter.attitude_stddev_rad},
                   {"rate_stddev_rad_s", config.jitter.rate_stddev_rad_s}};
    j["maneuvers"] = json::array();
    for (const ManeuverEntry& entry : config.maneuvers) {
        j["maneuvers"].push_back({{"id", entry.id},
                                  {"omega0_rad_s", {entry.omega0(0), entry.omega0(1), entry.omega0(2)}},
                                  {"psi0_deg", entry.psi0_deg},
                                  {"stage1_s", entry.stage1_s},
                                  {"stage3_samples", entry.stage3_samples}});
    }
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["output_dir"] = config.output_dir;
    return j;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigInvalid("config file not found or unreadable: " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(buffer.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigInvalid("config file " + path + " is not valid JSON: " + e.what());
    }
    ExperimentConfig config = config_from_json(parsed);
    config.validate();
    return config;
}

}  // namespace aeqsim
