#ifndef SLUNG_PAYLOAD_HPP
#define SLUNG_PAYLOAD_HPP

#include "slung/types.hpp"

#include <vector>

namespace slung {

/// Force and moment on the payload, both in inertial coordinates.
struct Wrench {
    Vec3 force = Vec3::Zero();    // N
    Vec3 moment = Vec3::Zero();   // N m, about the center of mass
};

/// Translational acceleration: drag, summed anchor-side cable forces, any
/// external (wind) force, and weight.
inline Vec3 payloadTranslationalAccel(const Vec3& payloadVel, double payloadMass,
                                      double dragCoefficient,
                                      const Vec3& cableForceSum,
                                      const Vec3& externalForce, double gravity) {
    return (-dragCoefficient * payloadVel + cableForceSum + externalForce) / payloadMass
           - Vec3(0.0, 0.0, gravity);
}

/// Euler-structured rotational dynamics with omega kept in inertial
/// coordinates and a constant inertia tensor, applied literally. The payload
/// here is near-isotropic and omega stays small, which keeps the error of
/// that convention negligible.
inline Vec3 payloadAngularAccel(const Vec3& omega, const Vec3& inertiaDiag, const Vec3& moment) {
    const Vec3 angularMomentum = inertiaDiag.cwiseProduct(omega);
    const Vec3 rhs = -omega.cross(angularMomentum) + moment;
    return rhs.cwiseQuotient(inertiaDiag);
}

/// d/dt of each body axis: omega x b_i, i.e. [omega]_x B.
inline Mat3 bodyAxesDerivative(const Mat3& bodyAxes, const Vec3& omega) {
    return skew(omega) * bodyAxes;
}

/// Net force and moment (about the center of mass) from the per-anchor cable
/// forces. Fixed ascending-index summation so results are order-independent.
inline Wrench accumulateAnchorWrench(const std::vector<Vec3>& anchorOffsetsInertial,
                                     const std::vector<Vec3>& cableForces) {
    Wrench w;
    for (std::size_t k = 0; k < cableForces.size(); ++k) {
        w.force += cableForces[k];
        w.moment += anchorOffsetsInertial[k].cross(cableForces[k]);
    }
    return w;
}

}  // namespace slung

#endif
