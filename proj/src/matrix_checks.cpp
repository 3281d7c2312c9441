#include "aeqsim/matrix_checks.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <string>

#include "aeqsim/errors.hpp"

namespace aeqsim {

void require_spd(const Eigen::Matrix3d& m, const char* name) {
    if (!m.allFinite()) {
        throw InvalidParameter(std::string(name) + ": entries must be finite");
    }
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw InvalidParameter(std::string(name) + ": matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success || solver.eigenvalues().minCoeff() <= 0.0) {
        throw InvalidParameter(std::string(name) + ": matrix must be positive definite");
    }
}

}  // namespace aeqsim
