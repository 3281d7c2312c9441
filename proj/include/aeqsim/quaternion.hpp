#pragma once

#include <Eigen/Dense>

#include "aeqsim/errors.hpp"

namespace aeqsim {

/// Scalar-first unit quaternion (w, v) over right-handed frames.
///
/// q and -q encode the same physical rotation (double cover); no operation
/// canonicalizes the sign, so callers that care about the hemisphere must
/// track it themselves.
struct UnitQuaternion {
    double w{1.0};
    Eigen::Vector3d v{Eigen::Vector3d::Zero()};

    static UnitQuaternion identity() { return {}; }

    double norm() const;

    /// Components as (w, x, y, z).
    Eigen::Vector4d as_vec4() const;

    /// Antipode: same rotation, opposite hemisphere.
    UnitQuaternion operator-() const { return {-w, -v}; }
};

/// Euler axis/angle pair. to_axis_angle reports angle in [0, 2*pi]; the
/// upper bound is reached only at the antipodal identity (-1, 0).
struct AxisAngle {
    Eigen::Vector3d axis{0.0, 0.0, 1.0};
    double angle{0.0};
};

/// Unit-norm gate applied to quaternion and axis inputs before use.
inline constexpr double kUnitTolerance = 1e-6;

/// Hamilton product a (x) b: the right operand applied in the left operand's
/// frame. Inputs must be unit within kUnitTolerance; the result is
/// renormalized.
UnitQuaternion hamilton_product(const UnitQuaternion& a, const UnitQuaternion& b);

/// Component-wise Hamilton product of two raw 4-vectors (w, x, y, z).
/// No unit checks and no normalization; intended for kinematics that must
/// tolerate off-manifold intermediates.
Eigen::Vector4d hamilton_product_raw(const Eigen::Vector4d& a, const Eigen::Vector4d& b);

/// Inverse of a unit quaternion, i.e. its conjugate.
UnitQuaternion inverse(const UnitQuaternion& q);

/// Quaternion for a rotation of aa.angle radians about aa.axis. The axis must
/// be unit length; the angle only needs to be finite.
UnitQuaternion from_axis_angle(const AxisAngle& aa);

/// Axis/angle form with angle = 2*atan2(|v|, w). When |v| < 1e-12 the axis is
/// reported as (0, 0, 1) by convention.
AxisAngle to_axis_angle(const UnitQuaternion& q);

/// Proper rotation matrix taking body-frame vectors into the inertial frame.
/// rotation_matrix(q) == rotation_matrix(-q) exactly.
Eigen::Matrix3d rotation_matrix(const UnitQuaternion& q);

/// Heading of the body x-axis projected onto the inertial horizontal plane,
/// in (-pi, pi]. When the body x-axis lies within ~1e-6 rad of vertical the
/// projection is degenerate: the function reports 0 and sets *degenerate if
/// provided. Reporting/plotting only; never used inside control laws.
double yaw_of(const UnitQuaternion& q, bool* degenerate = nullptr);

}  // namespace aeqsim
