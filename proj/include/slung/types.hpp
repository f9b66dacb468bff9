#ifndef SLUNG_TYPES_HPP
#define SLUNG_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace slung {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using StateVec = Eigen::VectorXd;

/// Gravitational acceleration magnitude used throughout (m/s^2), +z up.
inline constexpr double kGravity = 9.8;

inline Mat3 skew(const Vec3& w) {
    Mat3 s;
    s <<    0.0, -w.z(),  w.y(),
          w.z(),    0.0, -w.x(),
         -w.y(),  w.x(),    0.0;
    return s;
}

/// Thrown when two coupled nodes coincide and a force direction is undefined.
struct DegenerateGeometryError : std::runtime_error {
    int agentIndex;    // -1 when not tied to a chain
    int elementIndex;  // -1 when not tied to an element
    DegenerateGeometryError(const std::string& what, int agent = -1, int element = -1)
        : std::runtime_error(what), agentIndex(agent), elementIndex(element) {}
};

/// Thrown on integration blow-up: step underflow, non-finite state, frame drift.
struct NumericError : std::runtime_error {
    double timeOfFailure;
    NumericError(const std::string& what, double t) : std::runtime_error(what), timeOfFailure(t) {}
};

/// Thrown when the commanded attitude makes the tilt-offset division ill posed.
struct AttitudeInfeasibleError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace slung

#endif
