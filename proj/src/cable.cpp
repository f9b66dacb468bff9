#include "slung/cable.hpp"

namespace slung {

std::vector<Vec3> cableAccelerations(const CableChain& chain,
                                     const Vec3& agentPos, const Vec3& agentVel,
                                     const Vec3& anchorPos, const Vec3& anchorVel,
                                     const CableParams& params, double gravity) {
    const int tn = static_cast<int>(chain.elementPos.size());
    std::vector<Vec3> accel(tn);
    const Vec3 g(0.0, 0.0, gravity);

    for (int i = 0; i < tn; ++i) {
        const Vec3& xi = chain.elementPos[i];
        const Vec3& vi = chain.elementVel[i];
        const Vec3& below = (i == 0) ? anchorPos : chain.elementPos[i - 1];
        const Vec3& belowVel = (i == 0) ? anchorVel : chain.elementVel[i - 1];
        const Vec3& above = (i == tn - 1) ? agentPos : chain.elementPos[i + 1];
        const Vec3& aboveVel = (i == tn - 1) ? agentVel : chain.elementVel[i + 1];
        try {
            const Vec3 f = cableLinkForce(xi, below, vi, belowVel, params) +
                           cableLinkForce(xi, above, vi, aboveVel, params);
            accel[i] = f / params.elementMass - g;
        } catch (const DegenerateGeometryError& e) {
            throw DegenerateGeometryError(std::string(e.what()) + " (agent " +
                                              std::to_string(chain.agentIndex) + ", element " +
                                              std::to_string(i) + ")",
                                          chain.agentIndex, i);
        }
    }
    return accel;
}

}  // namespace slung
