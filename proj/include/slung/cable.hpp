#ifndef SLUNG_CABLE_HPP
#define SLUNG_CABLE_HPP

#include "slung/types.hpp"

#include <cmath>
#include <vector>

namespace slung {

struct CableParams {
    double stiffness;       // N/m, per link
    double damping;         // N s/m, per link
    double naturalLength;   // m, per link
    double elementMass;     // kg
};

/// Unilateral gate: 1 for positive extension, 0 otherwise. Exactly a step,
/// no smoothing; a slack link transmits neither spring nor damper force.
inline double tautGate(double extension) { return extension > 0.0 ? 1.0 : 0.0; }

inline constexpr double kDegenerateLinkLength = 1e-12;  // m

/// Spring-damper force on node i due to the link between nodes i and j.
/// Zero whenever the link is at or below natural length.
inline Vec3 cableLinkForce(const Vec3& xi, const Vec3& xj,
                           const Vec3& vi, const Vec3& vj,
                           const CableParams& p) {
    const Vec3 xij = xi - xj;
    const double len = xij.norm();
    if (len < kDegenerateLinkLength) {
        throw DegenerateGeometryError("coincident cable nodes, link direction undefined");
    }
    const double extension = len - p.naturalLength;
    const double gate = tautGate(extension);
    if (gate == 0.0) return Vec3::Zero();
    const Vec3 vij = vi - vj;
    const double stretchRate = xij.dot(vij) / len;
    return -(p.stiffness * extension + p.damping * stretchRate) * (xij / len);
}

/// Elastic energy stored in one link (taut side of the gate only).
inline double linkPotentialEnergy(const Vec3& xi, const Vec3& xj, const CableParams& p) {
    const double extension = (xi - xj).norm() - p.naturalLength;
    return extension > 0.0 ? 0.5 * p.stiffness * extension * extension : 0.0;
}

/// Inertial anchor point and its velocity for a body-frame anchor offset.
/// The offset is rotated to inertial coordinates before the cross product.
inline void anchorKinematics(const Vec3& payloadPos, const Vec3& payloadVel,
                             const Vec3& omega, const Mat3& bodyAxes,
                             const Vec3& anchorBody,
                             Vec3& anchorPos, Vec3& anchorVel) {
    const Vec3 offset = bodyAxes * anchorBody;
    anchorPos = payloadPos + offset;
    anchorVel = payloadVel + omega.cross(offset);
}

/// One cable chain: node 0 is the payload anchor, nodes 1..t_n the lumped
/// elements (payload side first), node t_n+1 the agent.
struct CableChain {
    int agentIndex = 0;
    std::vector<Vec3> elementPos;   // size t_n
    std::vector<Vec3> elementVel;   // size t_n
};

/// Accelerations of every lumped element in a chain. Element 0 couples to the
/// anchor below and element t_n-1 to the agent above; with a single element
/// both couplings act on it. gravity enters as -(0,0,g).
std::vector<Vec3> cableAccelerations(const CableChain& chain,
                                     const Vec3& agentPos, const Vec3& agentVel,
                                     const Vec3& anchorPos, const Vec3& anchorVel,
                                     const CableParams& params, double gravity);

}  // namespace slung

#endif
