#pragma once

#include <Eigen/Core>

#include "aeqsim/quaternion.hpp"

namespace aeqsim {

/// Largest integration step the fixed-step integrator accepts, in seconds.
inline constexpr double kMaxTimestep = 0.01;

/// Attitude plus body-frame angular velocity; the full simulated plant state.
struct BodyState {
    UnitQuaternion q;
    Eigen::Vector3d omega{Eigen::Vector3d::Zero()};  // rad/s, body frame
};

/// Symmetric positive-definite inertia with a cached inverse.
class InertiaModel {
public:
    /// Validates symmetry and positive definiteness.
    explicit InertiaModel(const Eigen::Matrix3d& j);

    static InertiaModel from_diagonal(const Eigen::Vector3d& diag);

    const Eigen::Matrix3d& matrix() const { return j_; }
    const Eigen::Matrix3d& inverse() const { return j_inv_; }

private:
    Eigen::Matrix3d j_;
    Eigen::Matrix3d j_inv_;
};

struct StateDerivative {
    Eigen::Vector4d q_dot;      // raw quaternion rate (w, x, y, z)
    Eigen::Vector3d omega_dot;  // rad/s^2, body frame
};

/// Body-frame angular acceleration J^-1 (tau - omega x J omega).
Eigen::Vector3d angular_acceleration(const BodyState& state, const Eigen::Vector3d& tau,
                                     const InertiaModel& inertia);

/// Open-loop state rate: quaternion kinematics 0.5 q (x) (0, omega) together
/// with the rigid-body moment balance.
StateDerivative state_derivative(const BodyState& state, const Eigen::Vector3d& tau,
                                 const InertiaModel& inertia);

/// One classical fourth-order Runge-Kutta step with the torque held constant
/// over the step. The attitude quaternion is renormalized after the update.
/// dt must lie in (0, kMaxTimestep].
BodyState integrate_step(const BodyState& state, const Eigen::Vector3d& tau,
                         const InertiaModel& inertia, double dt);

}  // namespace aeqsim
