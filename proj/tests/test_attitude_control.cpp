#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aeqsim/attitude_control.hpp"
#include "support/closed_loop.hpp"
#include "support/random_states.hpp"

using namespace aeqsim;
using test_support::random_unit_axis;
using test_support::random_unit_quaternion;
using test_support::random_vec3;
using test_support::regulate;

namespace {

const InertiaModel kInertia =
    InertiaModel::from_diagonal({1.66e-5, 1.66e-5, 2.93e-5});
const ControllerGains kGains = ControllerGains::from_inertia_scale(900.0, 90.0, kInertia);

UnitQuaternion yaw_rotation(double psi) {
    return from_axis_angle({Eigen::Vector3d(0.0, 0.0, 1.0), psi});
}

}  // namespace

TEST_CASE("gain validation") {
    CHECK_THROWS_AS(ControllerGains::from_inertia_scale(-900.0, 90.0, kInertia),
                    InvalidParameter);
    CHECK_THROWS_AS(ControllerGains::from_inertia_scale(900.0, 0.0, kInertia), InvalidParameter);

    Eigen::Matrix3d lopsided = Eigen::Matrix3d::Identity();
    lopsided(0, 1) = 0.5;
    CHECK_THROWS_AS(ControllerGains(lopsided, Eigen::Matrix3d::Identity()), InvalidParameter);
    CHECK_THROWS_AS(ControllerGains(Eigen::Matrix3d::Identity(), -Eigen::Matrix3d::Identity()),
                    InvalidParameter);
}

TEST_CASE("attitude error") {
    SUBCASE("aligned state has the identity error") {
        const AttitudeError err = attitude_error(UnitQuaternion::identity(), {},
                                                 Eigen::Vector3d::Zero());
        CHECK(err.m_e == 1.0);
        CHECK(err.n_e.norm() == 0.0);
        CHECK(err.omega_e.norm() == 0.0);
    }

    SUBCASE("pure yaw offsets split into cos/sin of the half angle") {
        for (const double psi : {0.3, 2.0 * std::numbers::pi / 3.0, 170.0 * std::numbers::pi / 180.0,
                                 210.0 * std::numbers::pi / 180.0, -2.0}) {
            ReferenceSample ref;
            ref.q_d = yaw_rotation(psi);
            const AttitudeError err =
                attitude_error(UnitQuaternion::identity(), ref, Eigen::Vector3d::Zero());
            CHECK(err.m_e == doctest::Approx(std::cos(0.5 * psi)).epsilon(1e-12));
            CHECK(err.n_e.x() == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(err.n_e.y() == doctest::Approx(0.0).epsilon(1e-15));
            CHECK(err.n_e.z() == doctest::Approx(std::sin(0.5 * psi)).epsilon(1e-12));
        }
    }

    SUBCASE("error rotates the body onto the reference") {
        std::mt19937_64 rng(31);
        for (int i = 0; i < 200; ++i) {
            const UnitQuaternion q = random_unit_quaternion(rng);
            ReferenceSample ref;
            ref.q_d = random_unit_quaternion(rng);
            const AttitudeError err = attitude_error(q, ref, Eigen::Vector3d::Zero());
            const UnitQuaternion back =
                hamilton_product(q, UnitQuaternion{err.m_e, err.n_e});
            CHECK((back.as_vec4() - ref.q_d.as_vec4()).norm() < 1e-9);
        }
    }

    SUBCASE("rate error is the plain difference") {
        ReferenceSample ref;
        ref.omega_d = Eigen::Vector3d(0.5, -1.0, 2.0);
        const AttitudeError err =
            attitude_error(UnitQuaternion::identity(), ref, Eigen::Vector3d(0.1, 0.2, 0.3));
        CHECK((err.omega_e - Eigen::Vector3d(0.4, -1.2, 1.7)).norm() < 1e-15);
    }
}

TEST_CASE("desired body rate") {
    SUBCASE("identity reference") {
        const Eigen::Vector3d w = desired_body_rate(UnitQuaternion::identity(),
                                                    UnitQuaternion::identity(),
                                                    {0.0, 0.0, 0.0, 1.0});
        CHECK((w - Eigen::Vector3d(0.0, 0.0, 2.0)).norm() < 1e-15);
    }

    SUBCASE("yaw ramp reference recovers its spin rate") {
        const double spin = 2.0;
        for (const double angle : {0.0, 0.7, 2.9}) {
            const UnitQuaternion q_d = yaw_rotation(angle);
            const Eigen::Vector4d q_d_rate =
                0.5 * hamilton_product_raw(q_d.as_vec4(), {0.0, 0.0, 0.0, spin});
            const Eigen::Vector3d w =
                desired_body_rate(UnitQuaternion::identity(), q_d, q_d_rate);
            CHECK((w - Eigen::Vector3d(0.0, 0.0, spin)).norm() < 1e-12);
        }
    }

    SUBCASE("result lands in the vehicle body frame") {
        const UnitQuaternion q =
            from_axis_angle({Eigen::Vector3d(1.0, 0.0, 0.0), std::numbers::pi / 2.0});
        const Eigen::Vector3d w =
            desired_body_rate(q, UnitQuaternion::identity(), {0.0, 0.0, 0.0, 0.5});
        CHECK((w - Eigen::Vector3d(0.0, 1.0, 0.0)).norm() < 1e-12);
    }

    SUBCASE("non-tangent rate rejected") {
        CHECK_THROWS_AS(desired_body_rate(UnitQuaternion::identity(), UnitQuaternion::identity(),
                                          {1.0, 0.0, 0.0, 0.0}),
                        NonTangentRate);
    }

    SUBCASE("non-finite rate rejected") {
        CHECK_THROWS_AS(desired_body_rate(UnitQuaternion::identity(), UnitQuaternion::identity(),
                                          {0.0, std::nan(""), 0.0, 0.0}),
                        NonFiniteInput);
    }
}

TEST_CASE("localized reference") {
    const UnitQuaternion q =
        from_axis_angle({Eigen::Vector3d(1.0, 0.0, 0.0), std::numbers::pi / 2.0});
    ReferenceSample ref;
    ref.q_d_rate = {0.0, 0.0, 0.0, 0.5};
    ref.omega_d = Eigen::Vector3d(0.0, 0.0, 1.0);
    ref.omega_d_rate = Eigen::Vector3d(0.0, 0.0, 3.0);

    const ReferenceSample local = localized_reference(ref, q);
    CHECK((local.q_d.as_vec4() - ref.q_d.as_vec4()).norm() == 0.0);
    CHECK((local.omega_d - Eigen::Vector3d(0.0, 1.0, 0.0)).norm() < 1e-12);
    CHECK((local.omega_d_rate - Eigen::Vector3d(0.0, 3.0, 0.0)).norm() < 1e-12);
}

TEST_CASE("torque laws") {
    SUBCASE("zero error at rest needs no torque") {
        const AttitudeError err;
        const BodyState rest;
        CHECK(torque_continuous(err, rest, {}, kGains, kInertia).norm() == 0.0);
        CHECK(torque_benchmark(err, rest, {}, kGains, kInertia).norm() == 0.0);
    }

    SUBCASE("terms add up as gain, damping, feedforward and gyroscopic parts") {
        std::mt19937_64 rng(32);
        for (int i = 0; i < 100; ++i) {
            AttitudeError err;
            err.m_e = 0.5;
            err.n_e = random_vec3(rng, 1.0);
            err.omega_e = random_vec3(rng, 3.0);
            BodyState state{random_unit_quaternion(rng), random_vec3(rng, 3.0)};
            ReferenceSample ref;
            ref.omega_d_rate = random_vec3(rng, 2.0);

            const Eigen::Vector3d expected =
                kGains.k_n() * err.n_e + kGains.k_omega() * err.omega_e +
                kInertia.matrix() * ref.omega_d_rate +
                state.omega.cross(kInertia.matrix() * state.omega);
            const Eigen::Vector3d tau = torque_continuous(err, state, ref, kGains, kInertia);
            CHECK((tau - expected).norm() < 1e-15);
        }
    }

    SUBCASE("sigma +1 matches the continuous law exactly") {
        std::mt19937_64 rng(33);
        for (int i = 0; i < 100; ++i) {
            AttitudeError err;
            err.m_e = -0.3;
            err.n_e = random_vec3(rng, 1.0);
            err.omega_e = random_vec3(rng, 3.0);
            BodyState state{random_unit_quaternion(rng), random_vec3(rng, 3.0)};
            ReferenceSample ref;
            ref.omega_d_rate = random_vec3(rng, 2.0);

            const Eigen::Vector3d a = torque_continuous(err, state, ref, kGains, kInertia);
            const Eigen::Vector3d b = torque_sigma(+1, err, state, ref, kGains, kInertia);
            CHECK((a - b).norm() == 0.0);
        }
    }

    SUBCASE("benchmark flips only the proportional term") {
        AttitudeError err;
        err.m_e = -0.4;
        err.n_e = Eigen::Vector3d(0.1, -0.2, 0.9);
        err.omega_e = Eigen::Vector3d(0.5, 0.0, -0.5);
        BodyState state;
        state.omega = Eigen::Vector3d(0.2, 0.3, -0.1);
        ReferenceSample ref;
        ref.omega_d_rate = Eigen::Vector3d(0.0, 1.0, 0.0);

        const Eigen::Vector3d flipped = torque_benchmark(err, state, ref, kGains, kInertia);
        const Eigen::Vector3d minus = torque_sigma(-1, err, state, ref, kGains, kInertia);
        CHECK((flipped - minus).norm() == 0.0);

        err.m_e = 0.4;
        const Eigen::Vector3d straight = torque_benchmark(err, state, ref, kGains, kInertia);
        const Eigen::Vector3d plus = torque_sigma(+1, err, state, ref, kGains, kInertia);
        CHECK((straight - plus).norm() == 0.0);

        err.m_e = 0.0;  // the tie goes to the positive branch
        CHECK((torque_benchmark(err, state, ref, kGains, kInertia) - plus).norm() == 0.0);
    }

    SUBCASE("invalid sigma rejected") {
        const AttitudeError err;
        const BodyState rest;
        CHECK_THROWS_AS(torque_sigma(0, err, rest, {}, kGains, kInertia), InvalidSigma);
        CHECK_THROWS_AS(torque_sigma(2, err, rest, {}, kGains, kInertia), InvalidSigma);
    }

    SUBCASE("benchmark turns the short way for every yaw offset") {
        for (const double psi : {0.3, 2.0, 3.0}) {
            ReferenceSample ref;
            ref.q_d = yaw_rotation(psi);
            const AttitudeError err =
                attitude_error(UnitQuaternion::identity(), ref, Eigen::Vector3d::Zero());
            const BodyState rest;
            CHECK(torque_benchmark(err, rest, ref, kGains, kInertia).z() > 0.0);
        }
        for (const double psi : {3.5, 5.0, 6.0}) {
            ReferenceSample ref;
            ref.q_d = yaw_rotation(psi);
            const AttitudeError err =
                attitude_error(UnitQuaternion::identity(), ref, Eigen::Vector3d::Zero());
            const BodyState rest;
            CHECK(torque_benchmark(err, rest, ref, kGains, kInertia).z() < 0.0);
        }
    }
}

TEST_CASE("closed-loop regulation") {
    SUBCASE("moderate offsets settle within two seconds") {
        // the slow closed-loop mode decays at about 5.3 1/s, so two seconds
        // buy a 2e-5 contraction of the initial offset
        std::mt19937_64 rng(34);
        for (int i = 0; i < 10; ++i) {
            BodyState start;
            start.q = from_axis_angle({random_unit_axis(rng), 0.5});
            const auto result = regulate(start, kGains, kInertia, 2.0, 0.002);
            CHECK(result.final_error.n_e.norm() < 1e-4);
            CHECK(result.final_error.m_e > 1.0 - 1e-6);
            CHECK(result.state.omega.norm() < 1e-3);
        }
    }

    SUBCASE("the law drags a near-antipodal start the long way around") {
        BodyState start;
        start.q = from_axis_angle({Eigen::Vector3d(0.0, 0.0, 1.0), 2.0 * std::numbers::pi - 0.02});
        const AttitudeError initial = attitude_error(start.q, {}, Eigen::Vector3d::Zero());
        CHECK(initial.m_e < -0.99);

        const auto result = regulate(start, kGains, kInertia, 3.0, 0.002);
        CHECK(result.final_error.m_e > 1.0 - 1e-6);
        CHECK(result.final_error.n_e.norm() < 1e-4);
        // A short-way unwind would need about 0.02 rad of travel; the
        // positive-equilibrium law has to cover nearly a full turn instead.
        CHECK(result.accumulated_rotation > 5.0);
    }
}
