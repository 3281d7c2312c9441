#pragma once

#include <Eigen/Core>

#include "aeqsim/rigid_body.hpp"

namespace aeqsim {

/// Attitude-error quaternion split into scalar part m_e and vector part n_e,
/// plus the body-rate error omega_e = omega_d - omega. The error quaternion
/// is inverse(q) (x) q_d, i.e. the rotation still needed to reach the
/// reference, expressed in the body frame.
struct AttitudeError {
    double m_e{1.0};
    Eigen::Vector3d n_e{Eigen::Vector3d::Zero()};
    Eigen::Vector3d omega_e{Eigen::Vector3d::Zero()};
};

/// One sample of the attitude reference. omega_d and omega_d_rate are carried
/// in whatever frame the producer documents: reference generators emit them in
/// the desired body frame, and localized_reference() rotates them into the
/// vehicle body frame before they feed a control law.
struct ReferenceSample {
    UnitQuaternion q_d;
    Eigen::Vector4d q_d_rate{Eigen::Vector4d::Zero()};  // tangent 4-vector (w, x, y, z)
    Eigen::Vector3d omega_d{Eigen::Vector3d::Zero()};   // rad/s
    Eigen::Vector3d omega_d_rate{Eigen::Vector3d::Zero()};  // rad/s^2
};

/// Proportional/derivative attitude gains, both symmetric positive definite.
class ControllerGains {
public:
    ControllerGains(const Eigen::Matrix3d& k_n, const Eigen::Matrix3d& k_omega);

    /// Gains expressed as scalar multiples of the inertia matrix, the usual
    /// way to make the closed-loop error dynamics inertia-independent.
    static ControllerGains from_inertia_scale(double n_scale, double omega_scale,
                                              const InertiaModel& inertia);

    const Eigen::Matrix3d& k_n() const { return k_n_; }
    const Eigen::Matrix3d& k_omega() const { return k_omega_; }

private:
    Eigen::Matrix3d k_n_;
    Eigen::Matrix3d k_omega_;
};

/// Attitude and rate error of state (q, omega) against a reference sample
/// whose omega_d is already expressed in the vehicle body frame.
AttitudeError attitude_error(const UnitQuaternion& q, const ReferenceSample& ref,
                             const Eigen::Vector3d& omega);

/// Desired body rate implied by (q_d, q_d_rate), rotated into the vehicle
/// body frame of attitude q. The scalar part of 2 q_d^-1 (x) q_d_rate must
/// vanish (|.| < 1e-6) or NonTangentRate is thrown.
Eigen::Vector3d desired_body_rate(const UnitQuaternion& q, const UnitQuaternion& q_d,
                                  const Eigen::Vector4d& q_d_rate);

/// Copy of ref with omega_d and omega_d_rate rotated from the desired body
/// frame into the body frame of attitude q.
ReferenceSample localized_reference(const ReferenceSample& ref, const UnitQuaternion& q);

/// Tracking torque K_n n_e + K_omega omega_e + J omega_d_rate + omega x J omega.
/// Always drives the error toward the (+1, 0) equilibrium.
Eigen::Vector3d torque_continuous(const AttitudeError& err, const BodyState& state,
                                  const ReferenceSample& ref, const ControllerGains& gains,
                                  const InertiaModel& inertia);

/// Discontinuous variant: the proportional term is premultiplied by
/// sgn(m_e), with sgn(0) := +1, so the closer equilibrium is stabilized.
Eigen::Vector3d torque_benchmark(const AttitudeError& err, const BodyState& state,
                                 const ReferenceSample& ref, const ControllerGains& gains,
                                 const InertiaModel& inertia);

/// Equilibrium-parameterized variant: the proportional term is premultiplied
/// by sigma in {-1, +1}. torque_sigma(+1, ...) equals torque_continuous
/// exactly, componentwise.
Eigen::Vector3d torque_sigma(int sigma, const AttitudeError& err, const BodyState& state,
                             const ReferenceSample& ref, const ControllerGains& gains,
                             const InertiaModel& inertia);

}  // namespace aeqsim
