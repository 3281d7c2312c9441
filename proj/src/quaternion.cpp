#include "aeqsim/quaternion.hpp"

#include <cmath>

namespace aeqsim {
namespace {

void require_unit(const UnitQuaternion& q, const char* where) {
    const double n = q.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance) {
        throw NonUnitInput(std::string(where) + ": quaternion norm is " + std::to_string(n));
    }
}

UnitQuaternion renormalized(double w, const Eigen::Vector3d& v) {
    const double n = std::sqrt(w * w + v.squaredNorm());
    return {w / n, v / n};
}

}  // namespace

double UnitQuaternion::norm() const { return std::sqrt(w * w + v.squaredNorm()); }

Eigen::Vector4d UnitQuaternion::as_vec4() const {
    return {w, v.x(), v.y(), v.z()};
}

Eigen::Vector4d hamilton_product_raw(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
    const Eigen::Vector3d av = a.tail<3>();
    const Eigen::Vector3d bv = b.tail<3>();
    Eigen::Vector4d out;
    out(0) = a(0) * b(0) - av.dot(bv);
    out.tail<3>() = a(0) * bv + b(0) * av + av.cross(bv);
    return out;
}

UnitQuaternion hamilton_product(const UnitQuaternion& a, const UnitQuaternion& b) {
    require_unit(a, "hamilton_product lhs");
    require_unit(b, "hamilton_product rhs");
    const double w = a.w * b.w - a.v.dot(b.v);
    const Eigen::Vector3d v = a.w * b.v + b.w * a.v + a.v.cross(b.v);
    return renormalized(w, v);
}

UnitQuaternion inverse(const UnitQuaternion& q) {
    require_unit(q, "inverse");
    return {q.w, -q.v};
}

UnitQuaternion from_axis_angle(const AxisAngle& aa) {
    if (!std::isfinite(aa.angle)) {
        throw NonFiniteInput("from_axis_angle: angle is not finite");
    }
    const double n = aa.axis.norm();
    if (!std::isfinite(n) || std::abs(n - 1.0) > kUnitTolerance) {
        throw NonUnitAxis("from_axis_angle: axis norm is " + std::to_string(n));
    }
    const Eigen::Vector3d u = aa.axis / n;
    const double half = 0.5 * aa.angle;
    return renormalized(std::cos(half), std::sin(half) * u);
}

AxisAngle to_axis_angle(const UnitQuaternion& q) {
    require_unit(q, "to_axis_angle");
    const double vn = q.v.norm();
    const double angle = 2.0 * std::atan2(vn, q.w);
    if (vn < 1e-12) {
        return {Eigen::Vector3d(0.0, 0.0, 1.0), angle};
    }
    return {q.v / vn, angle};
}

Eigen::Matrix3d rotation_matrix(const UnitQuaternion& q) {
    require_unit(q, "rotation_matrix");
    const UnitQuaternion u = renormalized(q.w, q.v);
    const double w = u.w;
    const double x = u.v.x();
    const double y = u.v.y();
    const double z = u.v.z();
    Eigen::Matrix3d r;
    r << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - z * w), 2.0 * (x * z + y * w),
        2.0 * (x * y + z * w), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - x * w),
        2.0 * (x * z - y * w), 2.0 * (y * z + x * w), 1.0 - 2.0 * (x * x + y * y);
    return r;
}

double yaw_of(const UnitQuaternion& q, bool* degenerate) {
    const Eigen::Matrix3d r = rotation_matrix(q);
    const double cx = r(0, 0);
    const double cy = r(1, 0);
    if (degenerate != nullptr) {
        *degenerate = false;
    }
    // Horizontal projection of the body x-axis; its length equals the sine of
    // the angle to vertical, so this gate is ~1e-6 rad.
    if (std::hypot(cx, cy) < 1e-6) {
        if (degenerate != nullptr) {
            *degenerate = true;
        }
        return 0.0;
    }
    return std::atan2(cy, cx);
}

}  // namespace aeqsim
