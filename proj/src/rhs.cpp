#include "slung/rhs.hpp"

#include "slung/controller.hpp"
#include "slung/payload.hpp"

#include <cmath>

namespace slung {

Vec3 windForce(double t, const WindEvent& wind) {
    if (!wind.enabled || t < wind.startTime || t > wind.endTime) return Vec3::Zero();
    const double phase = 2.0 * M_PI * wind.frequencyHz * (t - wind.startTime);
    return wind.amplitude * std::sin(phase);
}

namespace {

struct ChainResult {
    Vec3 anchorForce;   // force on the payload anchor from this chain
    Vec3 anchorOffset;  // B c_k, inertial
};

// One cable chain plus its agent. Nodes from the bottom: anchor, elements
// 0..tn-1, agent. Each link force is evaluated once and applied with opposite
// signs to its two nodes, so internal forces cancel exactly.
ChainResult chainKernel(int k, const StateVec& y, StateVec& dydt,
                        const Vec3& control, const SimConfig& cfg,
                        const StateLayout& layout, const Vec3& anchorBody,
                        const CableParams& params,
                        const Vec3& payloadPos, const Vec3& payloadVel,
                        const Vec3& omega, const Mat3& bodyAxes) {
    const StateView s(y, layout);
    StateRef ds(dydt, layout);
    const int tn = cfg.cableElements;
    const Vec3 g(0.0, 0.0, cfg.gravity);

    Vec3 anchorPos, anchorVel;
    anchorKinematics(payloadPos, payloadVel, omega, bodyAxes, anchorBody, anchorPos, anchorVel);

    ChainResult out;
    out.anchorOffset = bodyAxes * anchorBody;

    try {
        // force the current link exerts on its upper node
        Vec3 lowerPos = anchorPos;
        Vec3 lowerVel = anchorVel;
        Vec3 prevLinkUp = Vec3::Zero();
        for (int link = 0; link <= tn; ++link) {
            const Vec3 upperPos = (link == tn) ? s.agentPos(k) : s.elementPos(k, link);
            const Vec3 upperVel = (link == tn) ? s.agentVel(k) : s.elementVel(k, link);
            const Vec3 linkUp = cableLinkForce(upperPos, lowerPos, upperVel, lowerVel, params);
            if (link == 0) {
                out.anchorForce = -linkUp;
            } else {
                const int i = link - 1;  // element below this link
                ds.elementPos(k, i) = s.elementVel(k, i);
                ds.elementVel(k, i) = (prevLinkUp - linkUp) / params.elementMass - g;
            }
            prevLinkUp = linkUp;
            lowerPos = upperPos;
            lowerVel = upperVel;
        }
        ds.agentPos(k) = s.agentVel(k);
        ds.agentVel(k) = agentAcceleration(s.agentVel(k), cfg.agentMass, cfg.dragCoefficient,
                                           prevLinkUp, control, cfg.gravity);
    } catch (const DegenerateGeometryError& e) {
        throw DegenerateGeometryError(std::string(e.what()) + " (agent " + std::to_string(k) + ")",
                                      k, -1);
    }
    return out;
}

}  // namespace

void assembleRhs(double t, const StateVec& y, StateVec& dydt,
                 const std::vector<Vec3>& controls, const SimConfig& cfg,
                 const StateLayout& layout, RhsWorkspace& ws, bool parallel) {
    const StateView s(y, layout);
    StateRef ds(dydt, layout);
    const int n = cfg.swarmSize;

    const Vec3 payloadPos = s.payloadPos();
    const Vec3 payloadVel = s.payloadVel();
    const Vec3 omega = s.omega();
    const Mat3 bodyAxes = s.bodyAxes();
    const CableParams params{cfg.cableStiffness, cfg.cableDamping,
                             cfg.segmentNaturalLength, cfg.cableElementMass};

    if (!ws.ready(n)) ws.prepare(cfg);

    if (parallel) {
        // Exceptions may not cross the parallel region; keep the lowest-index
        // failure so the error surfaced matches the serial path.
        std::exception_ptr firstError = nullptr;
        int firstErrorChain = n;
#pragma omp parallel for schedule(static)
        for (int k = 0; k < n; ++k) {
            try {
                const ChainResult r = chainKernel(k, y, dydt, controls[k], cfg, layout,
                                                  ws.anchorsBody[k], params, payloadPos,
                                                  payloadVel, omega, bodyAxes);
                ws.anchorForce[k] = r.anchorForce;
                ws.anchorOffset[k] = r.anchorOffset;
            } catch (...) {
#pragma omp critical(slung_rhs_error)
                if (k < firstErrorChain) {
                    firstErrorChain = k;
                    firstError = std::current_exception();
                }
            }
        }
        if (firstError) std::rethrow_exception(firstError);
    } else {
        for (int k = 0; k < n; ++k) {
            const ChainResult r = chainKernel(k, y, dydt, controls[k], cfg, layout,
                                              ws.anchorsBody[k], params, payloadPos,
                                              payloadVel, omega, bodyAxes);
            ws.anchorForce[k] = r.anchorForce;
            ws.anchorOffset[k] = r.anchorOffset;
        }
    }

    // Payload reductions in fixed ascending order, identical for both paths.
    const Wrench cableWrench = accumulateAnchorWrench(ws.anchorOffset, ws.anchorForce);

    ds.payloadPos() = payloadVel;
    ds.payloadVel() = payloadTranslationalAccel(payloadVel, cfg.payloadMass,
                                                cfg.dragCoefficient, cableWrench.force,
                                                windForce(t, cfg.wind), cfg.gravity);
    ds.omega() = payloadAngularAccel(omega, cfg.payloadInertiaDiag, cableWrench.moment);
    ds.bodyAxes() = bodyAxesDerivative(bodyAxes, omega);
    ds.swarmCenter() = swarmCenterVelocity(s.swarmCenter(), cfg.goalPoint,
                                           cfg.centerGainDiag, cfg.centerScale);
}

std::vector<double> anchorTensions(const StateVec& y, const SimConfig& cfg,
                                   const StateLayout& layout) {
    const StateView s(y, layout);
    const auto anchors = cfg.anchors();
    const CableParams params{cfg.cableStiffness, cfg.cableDamping,
                             cfg.segmentNaturalLength, cfg.cableElementMass};
    std::vector<double> tensions(cfg.swarmSize);
    for (int k = 0; k < cfg.swarmSize; ++k) {
        Vec3 anchorPos, anchorVel;
        anchorKinematics(s.payloadPos(), s.payloadVel(), s.omega(), s.bodyAxes(),
                         anchors[k], anchorPos, anchorVel);
        tensions[k] = cableLinkForce(anchorPos, s.elementPos(k, 0), anchorVel,
                                     s.elementVel(k, 0), params)
                          .norm();
    }
    return tensions;
}

}  // namespace slung
