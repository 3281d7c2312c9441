#include "aeqsim/attitude_control.hpp"

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

// Shared feedback law; the three public torque functions differ only in the
// sign applied to the proportional term.
Eigen::Vector3d torque_law(double proportional_sign, const AttitudeError& err,
                           const BodyState& state, const ReferenceSample& ref,
                           const ControllerGains& gains, const InertiaModel& inertia) {
    require_finite(err.n_e, "torque n_e");
    require_finite(err.omega_e, "torque omega_e");
    require_finite(state.omega, "torque omega");
    require_finite(ref.omega_d_rate, "torque omega_d_rate");
    return proportional_sign * (gains.k_n() * err.n_e) + gains.k_omega() * err.omega_e +
           inertia.matrix() * ref.omega_d_rate + state.omega.cross(inertia.matrix() * state.omega);
}

}  // namespace

ControllerGains::ControllerGains(const Eigen::Matrix3d& k_n, const Eigen::Matrix3d& k_omega)
    : k_n_(k_n), k_omega_(k_omega) {
    require_spd(k_n, "gains.k_n");
    require_spd(k_omega, "gains.k_omega");
}

ControllerGains ControllerGains::from_inertia_scale(double n_scale, double omega_scale,
                                                    const InertiaModel& inertia) {
    if (!(n_scale > 0.0) || !(omega_scale > 0.0)) {
        throw InvalidParameter("gains: inertia scales must be > 0");
    }
    return ControllerGains(n_scale * inertia.matrix(), omega_scale * inertia.matrix());
}

AttitudeError attitude_error(const UnitQuaternion& q, const ReferenceSample& ref,
                             const Eigen::Vector3d& omega) {
    require_finite(omega, "attitude_error omega");
    require_finite(ref.omega_d, "attitude_error omega_d");
    const UnitQuaternion e = hamilton_product(inverse(q), ref.q_d);
    return {e.w, e.v, ref.omega_d - omega};
}

Eigen::Vector3d desired_body_rate(const UnitQuaternion& q, const UnitQuaternion& q_d,
                                  const Eigen::Vector4d& q_d_rate) {
    if (!q_d_rate.allFinite()) {
        throw NonFiniteInput("desired_body_rate: q_d_rate must be finite");
    }
    const Eigen::Vector4d rate = 2.0 * hamilton_product_raw(inverse(q_d).as_vec4(), q_d_rate);
    if (std::abs(rate(0)) > 1e-6) {
        throw NonTangentRate("desired_body_rate: rate is not tangent to q_d (scalar part " +
                             std::to_string(rate(0)) + ")");
    }
    return rotation_matrix(q).transpose() * (rotation_matrix(q_d) * rate.tail<3>());
}

ReferenceSample localized_reference(const ReferenceSample& ref, const UnitQuaternion& q) {
    ReferenceSample out = ref;
    out.omega_d = desired_body_rate(q, ref.q_d, ref.q_d_rate);
    out.omega_d_rate =
        rotation_matrix(q).transpose() * (rotation_matrix(ref.q_d) * ref.omega_d_rate);
    return out;
}

Eigen::Vector3d torque_continuous(const AttitudeError& err, const BodyState& state,
                                  const ReferenceSample& ref, const ControllerGains& gains,
                                  const InertiaModel& inertia) {
    return torque_law(1.0, err, state, ref, gains, inertia);
}

Eigen::Vector3d torque_benchmark(const AttitudeError& err, const BodyState& state,
                                 const ReferenceSample& ref, const ControllerGains& gains,
                                 const InertiaModel& inertia) {
    if (!std::isfinite(err.m_e)) {
        throw NonFiniteInput("torque_benchmark: m_e must be finite");
    }
    return torque_law(err.m_e >= 0.0 ? 1.0 : -1.0, err, state, ref, gains, inertia);
}

Eigen::Vector3d torque_sigma(int sigma, const AttitudeError& err, const BodyState& state,
                             const ReferenceSample& ref, const ControllerGains& gains,
                             const InertiaModel& inertia) {
    if (sigma != 1 && sigma != -1) {
        throw InvalidSigma("torque_sigma: sigma must be -1 or +1, got " + std::to_string(sigma));
    }
    return torque_law(static_cast<double>(sigma), err, state, ref, gains, inertia);
}

}  // namespace aeqsim
