#include "aeqsim/mps.hpp"

#include <cmath>
#include <string>

#include "aeqsim/matrix_checks.hpp"

namespace aeqsim {

PfmWeights::PfmWeights(const Eigen::Matrix3d& r, const Eigen::Matrix3d& q) : r_(r), q_(q) {
    require_spd(r, "weights.r");
    require_spd(q, "weights.q");
}

PfmWeights PfmWeights::from_scales(double r_scale, double q_scale) {
    if (!(r_scale > 0.0) || !(q_scale > 0.0)) {
        throw InvalidParameter("weights: scales must be > 0");
    }
    return PfmWeights(r_scale * Eigen::Matrix3d::Identity(),
                      q_scale * Eigen::Matrix3d::Identity());
}

int SelectorConfig::horizon_steps() const {
    return static_cast<int>(std::lround(horizon_s / prediction_dt_s));
}

void SelectorConfig::validate() const {
    if (!std::isfinite(prediction_dt_s) || !(prediction_dt_s > 0.0)) {
        throw InvalidParameter("selector.prediction_dt_s must be > 0");
    }
    if (prediction_dt_s > kMaxTimestep) {
        throw InvalidParameter("selector.prediction_dt_s must not exceed " +
                               std::to_string(kMaxTimestep) + " s");
    }
    if (!std::isfinite(horizon_s) || horizon_s < prediction_dt_s) {
        throw InvalidParameter("selector.horizon_s must be >= prediction_dt_s");
    }
    if (!std::isfinite(delta) || !(delta > 0.0)) {
        throw InvalidParameter("selector.delta must be > 0");
    }
    if (sigma_init != 1 && sigma_init != -1) {
        throw InvalidParameter("selector.sigma_init must be -1 or +1");
    }
}

double rollout_cost(int sigma, const BodyState& state, const ReferenceSample& ref,
                    const ControllerGains& gains, const InertiaModel& inertia,
                    const PfmWeights& weights, const SelectorConfig& config) {
    if (sigma != 1 && sigma != -1) {
        throw InvalidSigma("rollout_cost: sigma must be -1 or +1, got " + std::to_string(sigma));
    }
    config.validate();
    const int steps = config.horizon_steps();
    const double dt = config.prediction_dt_s;

    BodyState s = state;
    double cost = 0.0;
    for (int k = 0; k < steps; ++k) {
        const AttitudeError err = attitude_error(s.q, ref, s.omega);
        const Eigen::Vector3d tau = torque_sigma(sigma, err, s, ref, gains, inertia);
        cost += (tau.dot(weights.r() * tau) + err.n_e.dot(weights.q() * err.n_e)) * dt;
        s = integrate_step(s, tau, inertia, dt);
    }
    return cost;
}

SelectorState select_sigma(const SelectorState& previous, double gamma_star, double gamma_dagger,
                           double delta) {
    if (!std::isfinite(gamma_star) || !std::isfinite(gamma_dagger)) {
        throw NonFiniteCost("select_sigma: predicted costs must be finite");
    }
    if (!std::isfinite(delta) || !(delta > 0.0)) {
        throw InvalidParameter("select_sigma: delta must be > 0");
    }
    const double delta_gamma = gamma_star - gamma_dagger;
    int sigma = previous.sigma;
    if (delta_gamma >= delta) {
        sigma = -1;
    } else if (delta_gamma <= -delta) {
        sigma = +1;
    }
    return {sigma, delta_gamma};
}

MpsDecision mps_torque(const BodyState& state, const ReferenceSample& ref,
                       const SelectorState& selector, const ControllerGains& gains,
                       const InertiaModel& inertia, const PfmWeights& weights,
                       const SelectorConfig& config) {
    const double gamma_star = rollout_cost(+1, state, ref, gains, inertia, weights, config);
    const double gamma_dagger = rollout_cost(-1, state, ref, gains, inertia, weights, config);
    const SelectorState next = select_sigma(selector, gamma_star, gamma_dagger, config.delta);
    const AttitudeError err = attitude_error(state.q, ref, state.omega);
    return {torque_sigma(next.sigma, err, state, ref, gains, inertia), next};
}

}  // namespace aeqsim
