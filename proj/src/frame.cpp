#include "slung/frame.hpp"

namespace slung {

Mat3 orthonormalize(const Mat3& bodyAxes) {
    const double drift = frameDrift(bodyAxes);
    if (drift >= 0.1) {
        throw NumericError("body axes drifted beyond repair (|B^T B - I| = " +
                               std::to_string(drift) + ")",
                           0.0);
    }
    Eigen::SelfAdjointEigenSolver<Mat3> es(bodyAxes.transpose() * bodyAxes);
    const Vec3 invSqrt = es.eigenvalues().cwiseSqrt().cwiseInverse();
    const Mat3 correction =
        es.eigenvectors() * invSqrt.asDiagonal() * es.eigenvectors().transpose();
    return bodyAxes * correction;
}

}  // namespace slung
