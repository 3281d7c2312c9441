#pragma once

#include <random>

#include "aeqsim/quaternion.hpp"

namespace test_support {

inline aeqsim::UnitQuaternion random_unit_quaternion(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector4d x;
    do {
        x << normal(rng), normal(rng), normal(rng), normal(rng);
    } while (x.norm() < 1e-6);
    x.normalize();
    return {x(0), x.tail<3>()};
}

inline Eigen::Vector3d random_unit_axis(std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::Vector3d v;
    do {
        v << normal(rng), normal(rng), normal(rng);
    } while (v.norm() < 1e-6);
    return v.normalized();
}

inline Eigen::Vector3d random_vec3(std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> uniform(-scale, scale);
    return {uniform(rng), uniform(rng), uniform(rng)};
}

}  // namespace test_support
