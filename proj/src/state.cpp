#include "slung/state.hpp"

namespace slung {

double staticLinkTension(const SimConfig& cfg, int linkIndex) {
    const double payloadShare = cfg.payloadMass * cfg.gravity / cfg.swarmSize;
    return payloadShare + linkIndex * cfg.cableElementMass * cfg.gravity;
}

double staticCableElongation(const SimConfig& cfg) {
    double total = 0.0;
    for (int j = 0; j <= cfg.cableElements; ++j) {
        total += staticLinkTension(cfg, j) / cfg.cableStiffness;
    }
    return total;
}

namespace {

StateVec buildStackedState(const SimConfig& cfg, bool prestretched) {
    const StateLayout layout = layoutFor(cfg);
    StateVec y = StateVec::Zero(layout.size());
    StateRef s(y, layout);

    s.bodyAxes() = Mat3::Identity();

    const auto anchors = cfg.anchors();

    // Swarm center starts at the anchor-plane centroid.
    Vec3 centroid = Vec3::Zero();
    for (const auto& a : anchors) centroid += a;
    centroid /= static_cast<double>(anchors.size());
    s.swarmCenter() = centroid;

    for (int k = 0; k < cfg.swarmSize; ++k) {
        const Vec3 base = anchors[k];  // payload at origin, identity attitude
        double z = base.z();
        for (int i = 0; i < cfg.cableElements; ++i) {
            z += cfg.segmentNaturalLength;
            if (prestretched) z += staticLinkTension(cfg, i) / cfg.cableStiffness;
            s.elementPos(k, i) = Vec3(base.x(), base.y(), z);
        }
        z += cfg.segmentNaturalLength;
        if (prestretched) z += staticLinkTension(cfg, cfg.cableElements) / cfg.cableStiffness;
        s.agentPos(k) = Vec3(base.x(), base.y(), z);
    }

    if (prestretched) {
        // Polish the stacked heights so the tensions recomputed from the
        // stored positions hit the analytic values at machine precision;
        // accumulated rounding in the raw stack otherwise leaves force
        // residuals around k_t * eps * |z| on the light cable elements.
        for (int sweep = 0; sweep < 4; ++sweep) {
            for (int k = 0; k < cfg.swarmSize; ++k) {
                double lower = anchors[k].z();
                for (int link = 0; link <= cfg.cableElements; ++link) {
                    const bool agentSide = link == cfg.cableElements;
                    double& upper = agentSide ? s.agentPos(k).z() : s.elementPos(k, link).z();
                    const double targetTension = staticLinkTension(cfg, link);
                    const double actualTension =
                        cfg.cableStiffness * ((upper - lower) - cfg.segmentNaturalLength);
                    const double shift = (targetTension - actualTension) / cfg.cableStiffness;
                    // shift this node and everything stacked above it
                    for (int j = link; j < cfg.cableElements; ++j) {
                        s.elementPos(k, j).z() += shift;
                    }
                    s.agentPos(k).z() += shift;
                    lower = agentSide ? s.agentPos(k).z() : s.elementPos(k, link).z();
                }
            }
        }
    }
    return y;
}

}  // namespace

StateVec naturalInitialState(const SimConfig& cfg) {
    return buildStackedState(cfg, false);
}

StateVec equilibriumInitialState(const SimConfig& cfg) {
    return buildStackedState(cfg, true);
}

}  // namespace slung
