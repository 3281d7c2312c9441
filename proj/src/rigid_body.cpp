#include "aeqsim/rigid_body.hpp"

#include <cmath>
#include <string>

#include "aeqsim/matrix_checks.hpp"

namespace aeqsim {
namespace {

void require_finite(const Eigen::Vector3d& x, const char* what) {
    if (!x.allFinite()) {
        throw NonFiniteInput(std::string(what) + ": vector must be finite");
    }
}

void require_unit_attitude(const UnitQuaternion& q, const char* where) {
    const double n = q.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance) {
        throw NonUnitInput(std::string(where) + ": attitude quaternion norm is " + std::to_string(n));
    }
}

// Plant rate on the raw 7-dimensional state. Works on plain 4-vectors so the
// slightly off-manifold quaternions produced inside a Runge-Kutta step are
// handled without tripping unit checks.
void plant_rate(const Eigen::Vector4d& q, const Eigen::Vector3d& omega, const Eigen::Vector3d& tau,
                const InertiaModel& inertia, Eigen::Vector4d& q_dot, Eigen::Vector3d& omega_dot) {
    Eigen::Vector4d omega_quat;
    omega_quat << 0.0, omega;
    q_dot = 0.5 * hamilton_product_raw(q, omega_quat);
    omega_dot = inertia.inverse() * (tau - omega.cross(inertia.matrix() * omega));
}

}  // namespace

InertiaModel::InertiaModel(const Eigen::Matrix3d& j) : j_(j) {
    require_spd(j, "inertia");
    j_inv_ = j.inverse();
}

InertiaModel InertiaModel::from_diagonal(const Eigen::Vector3d& diag) {
    return InertiaModel(Eigen::Matrix3d(diag.asDiagonal()));
}

Eigen::Vector3d angular_acceleration(const BodyState& state, const Eigen::Vector3d& tau,
                                     const InertiaModel& inertia) {
    require_finite(state.omega, "angular_acceleration omega");
    require_finite(tau, "angular_acceleration tau");
    return inertia.inverse() * (tau - state.omega.cross(inertia.matrix() * state.omega));
}

StateDerivative state_derivative(const BodyState& state, const Eigen::Vector3d& tau,
                                 const InertiaModel& inertia) {
    require_unit_attitude(state.q, "state_derivative");
    require_finite(state.omega, "state_derivative omega");
    require_finite(tau, "state_derivative tau");
    StateDerivative d;
    plant_rate(state.q.as_vec4(), state.omega, tau, inertia, d.q_dot, d.omega_dot);
    return d;
}

BodyState integrate_step(const BodyState& state, const Eigen::Vector3d& tau,
                         const InertiaModel& inertia, double dt) {
    if (!std::isfinite(dt) || !(dt > 0.0) || dt > kMaxTimestep) {
        throw InvalidTimestep("integrate_step: dt must be in (0, " + std::to_string(kMaxTimestep) +
                              "] s, got " + std::to_string(dt));
    }
    require_unit_attitude(state.q, "integrate_step");
    require_finite(state.omega, "integrate_step omega");
    require_finite(tau, "integrate_step tau");

    const Eigen::Vector4d q0 = state.q.as_vec4();
    const Eigen::Vector3d w0 = state.omega;

    Eigen::Vector4d k1q, k2q, k3q, k4q;
    Eigen::Vector3d k1w, k2w, k3w, k4w;
    plant_rate(q0, w0, tau, inertia, k1q, k1w);
    plant_rate(q0 + (0.5 * dt) * k1q, w0 + (0.5 * dt) * k1w, tau, inertia, k2q, k2w);
    plant_rate(q0 + (0.5 * dt) * k2q, w0 + (0.5 * dt) * k2w, tau, inertia, k3q, k3w);
    plant_rate(q0 + dt * k3q, w0 + dt * k3w, tau, inertia, k4q, k4w);

    const Eigen::Vector4d q1 = q0 + (dt / 6.0) * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
    const Eigen::Vector3d w1 = w0 + (dt / 6.0) * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);

    const double n = q1.norm();
    return {UnitQuaternion{q1(0) / n, q1.tail<3>() / n}, w1};
}

}  // namespace aeqsim
