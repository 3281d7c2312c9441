#pragma once

#include <Eigen/Core>

#include "aeqsim/attitude_control.hpp"

namespace aeqsim {

/// Quadratic weights of the predicted-cost functional: R penalizes torque,
/// Q penalizes the attitude-error vector part. Both symmetric positive
/// definite.
class PfmWeights {
public:
    PfmWeights(const Eigen::Matrix3d& r, const Eigen::Matrix3d& q);

    static PfmWeights from_scales(double r_scale, double q_scale);

    const Eigen::Matrix3d& r() const { return r_; }
    const Eigen::Matrix3d& q() const { return q_; }

private:
    Eigen::Matrix3d r_;
    Eigen::Matrix3d q_;
};

/// Parameters of the predictive equilibrium selector.
struct SelectorConfig {
    double horizon_s{0.4};         // prediction horizon t_h
    double prediction_dt_s{0.002}; // internal rollout step
    double delta{5e-7};            // switching hysteresis threshold, N^2 m^2 s
    int sigma_init{+1};

    /// Number of rollout steps, round(horizon_s / prediction_dt_s).
    int horizon_steps() const;

    /// Throws InvalidParameter on any violated bound.
    void validate() const;
};

/// Selector memory carried between control steps.
struct SelectorState {
    int sigma{+1};
    double last_delta_gamma{0.0};
};

/// Predicted quadratic cost of flying the sigma-parameterized feedback law
/// for one horizon from the given state. The full plant state is propagated
/// with sigma held fixed and the reference sample held constant (zero-order
/// hold); the integral is a left-endpoint Riemann sum, so horizon_steps()
/// terms are accumulated, each evaluated before the corresponding plant step.
/// Deterministic and free of side effects on the caller's state.
double rollout_cost(int sigma, const BodyState& state, const ReferenceSample& ref,
                    const ControllerGains& gains, const InertiaModel& inertia,
                    const PfmWeights& weights, const SelectorConfig& config);

/// Hysteresis switching rule. With delta_gamma = gamma_star - gamma_dagger:
/// keeps the previous sigma while |delta_gamma| < delta, selects -1 when
/// delta_gamma >= delta, and +1 when delta_gamma <= -delta. Comparisons are
/// exact at the boundaries. gamma_star / gamma_dagger are the predicted costs
/// of stabilizing the (+1, 0) and (-1, 0) error equilibria respectively.
SelectorState select_sigma(const SelectorState& previous, double gamma_star, double gamma_dagger,
                           double delta);

struct MpsDecision {
    Eigen::Vector3d torque;
    SelectorState selector;
};

/// One full predictive-selection control step: both rollouts, the hysteresis
/// decision, and the torque for the newly selected equilibrium.
MpsDecision mps_torque(const BodyState& state, const ReferenceSample& ref,
                       const SelectorState& selector, const ControllerGains& gains,
                       const InertiaModel& inertia, const PfmWeights& weights,
                       const SelectorConfig& config);

}  // namespace aeqsim
