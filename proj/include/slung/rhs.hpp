#ifndef SLUNG_RHS_HPP
#define SLUNG_RHS_HPP

#include "slung/cable.hpp"
#include "slung/config.hpp"
#include "slung/state.hpp"

#include <vector>

namespace slung {

/// Cached geometry and per-chain reduction buffers for the right-hand side.
struct RhsWorkspace {
    std::vector<Vec3> anchorsBody;   // body-frame anchor offsets, cached
    std::vector<Vec3> anchorForce;   // per-chain anchor-side cable force
    std::vector<Vec3> anchorOffset;  // per-chain inertial anchor offset B c_k

    void prepare(const SimConfig& cfg) {
        anchorsBody = cfg.anchors();
        anchorForce.assign(anchorsBody.size(), Vec3::Zero());
        anchorOffset.assign(anchorsBody.size(), Vec3::Zero());
    }
    bool ready(int swarmSize) const {
        return static_cast<int>(anchorsBody.size()) == swarmSize;
    }
};

/// Acceleration of one agent under drag, its top cable link and the held
/// control input.
inline Vec3 agentAcceleration(const Vec3& agentVel, double agentMass,
                              double dragCoefficient, const Vec3& topLinkForce,
                              const Vec3& control, double gravity) {
    return (-dragCoefficient * agentVel + topLinkForce + control) / agentMass
           - Vec3(0.0, 0.0, gravity);
}

/// Sinusoidal payload disturbance force; zero outside the wind window.
Vec3 windForce(double t, const WindEvent& wind);

/// Full right-hand side: cable element accelerations, payload translational
/// and rotational dynamics, body-axes evolution, agent dynamics under the
/// held controls, and the swarm-center ODE.
///
/// The per-chain kernels are independent; `parallel` runs them under OpenMP
/// with each chain writing only its own state slice and per-chain reductions
/// buffered and summed serially in ascending order, so both paths produce
/// bit-identical results.
void assembleRhs(double t, const StateVec& y, StateVec& dydt,
                 const std::vector<Vec3>& controls, const SimConfig& cfg,
                 const StateLayout& layout, RhsWorkspace& ws, bool parallel);

/// Anchor-side cable force magnitudes (tension at each payload anchor).
std::vector<double> anchorTensions(const StateVec& y, const SimConfig& cfg,
                                   const StateLayout& layout);

}  // namespace slung

#endif
