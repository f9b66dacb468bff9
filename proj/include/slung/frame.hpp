#ifndef SLUNG_FRAME_HPP
#define SLUNG_FRAME_HPP

#include "slung/types.hpp"

#include <algorithm>
#include <cmath>

namespace slung {

/// Express a body-frame vector in inertial coordinates.
inline Vec3 bodyToInertial(const Mat3& bodyAxes, const Vec3& vBody) {
    return bodyAxes * vBody;
}

/// Express an inertial point in the payload body frame.
inline Vec3 inertialToBody(const Mat3& bodyAxes, const Vec3& rInertial, const Vec3& payloadPos) {
    return bodyAxes.transpose() * (rInertial - payloadPos);
}

inline double frameDrift(const Mat3& bodyAxes) {
    return (bodyAxes.transpose() * bodyAxes - Mat3::Identity()).cwiseAbs().maxCoeff();
}

/// Nearest orthonormal frame via the orthogonal polar factor B (B^T B)^{-1/2}.
/// Throws NumericError when the input has drifted too far to trust.
Mat3 orthonormalize(const Mat3& bodyAxes);

/// Azimuth/elevation of the payload plane normal b_z. Elevation is measured
/// from the horizontal; azimuth is reported as 0 at the vertical singularity.
inline void measureAzimuthElevation(const Mat3& bodyAxes, double& azimuth, double& elevation) {
    const Vec3 bz = bodyAxes.col(2);
    const double sinElev = std::clamp(bz.z(), -1.0, 1.0);
    elevation = std::asin(sinElev);
    azimuth = (std::cos(elevation) < 1e-9) ? 0.0 : std::atan2(bz.y(), bz.x());
}

/// Unit normal commanded by desired azimuth/elevation.
inline Vec3 attitudeNormal(double azimuth, double elevation) {
    const double ce = std::cos(elevation);
    return {ce * std::cos(azimuth), ce * std::sin(azimuth), std::sin(elevation)};
}

inline double degrees(double rad) { return rad * 180.0 / M_PI; }
inline double radians(double deg) { return deg * M_PI / 180.0; }

/// Smallest signed difference a-b between two angles (rad).
inline double angleDifference(double a, double b) {
    return std::atan2(std::sin(a - b), std::cos(a - b));
}

}  // namespace slung

#endif
