#pragma once

#include <Eigen/Core>

namespace aeqsim {

/// Throws InvalidParameter unless m is finite, symmetric, and positive
/// definite (smallest eigenvalue > 0). name is used in the error message.
void require_spd(const Eigen::Matrix3d& m, const char* name);

}  // namespace aeqsim
