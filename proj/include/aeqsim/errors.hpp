#pragma once

#include <stdexcept>
#include <string>

namespace aeqsim {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quaternion argument failed its unit-norm pre-check.
class NonUnitInput : public Error {
public:
    using Error::Error;
};

/// A rotation-axis argument is not a unit vector.
class NonUnitAxis : public Error {
public:
    using Error::Error;
};

/// A quaternion rate is not tangent to its quaternion.
class NonTangentRate : public Error {
public:
    using Error::Error;
};

/// An input contains NaN or infinity.
class NonFiniteInput : public Error {
public:
    using Error::Error;
};

/// Integration step size outside the supported range.
class InvalidTimestep : public Error {
public:
    using Error::Error;
};

/// Equilibrium selector called with a value other than -1 or +1.
class InvalidSigma : public Error {
public:
    using Error::Error;
};

/// A predicted rollout cost is NaN or infinite.
class NonFiniteCost : public Error {
public:
    using Error::Error;
};

/// A constructor argument violates a type invariant.
class InvalidParameter : public Error {
public:
    using Error::Error;
};

/// Paired series have different lengths.
class LengthMismatch : public Error {
public:
    using Error::Error;
};

/// The simulated body rate exceeded the configured divergence bound.
class DivergedState : public Error {
public:
    using Error::Error;
};

/// A maneuver finished without ever reaching its scored stage.
class StageNeverEntered : public Error {
public:
    using Error::Error;
};

/// Configuration file missing, unparsable, or invalid.
class ConfigInvalid : public Error {
public:
    using Error::Error;
};

/// Filesystem read or write failure.
class IoFailure : public Error {
public:
    using Error::Error;
};

}  // namespace aeqsim
