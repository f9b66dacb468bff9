#ifndef SLUNG_STATE_HPP
#define SLUNG_STATE_HPP

#include "slung/config.hpp"
#include "slung/types.hpp"

namespace slung {

// Flat state-vector layout. The ordering below is fixed; logs and regression
// fixtures depend on it being bit-stable.
//
//   [0..2]    payload position r_P (inertial, m)
//   [3..5]    payload velocity (m/s)
//   [6..8]    payload angular velocity omega (rad/s, inertial coordinates)
//   [9..17]   body axes B, column major: b_x, b_y, b_z
//   [18..20]  swarm center p (m)
//   then one block per agent k = 0..n-1, each 6*(1 + t_n) wide:
//     agent position (3), agent velocity (3),
//     element i = 0..t_n-1 (payload side first): position (3), velocity (3)
struct StateLayout {
    int swarmSize = 0;
    int cableElements = 0;

    static constexpr int kHeader = 21;

    int agentBlock() const { return 6 * (1 + cableElements); }
    int size() const { return kHeader + swarmSize * agentBlock(); }

    int payloadPos() const { return 0; }
    int payloadVel() const { return 3; }
    int omega() const { return 6; }
    int bodyAxes() const { return 9; }
    int swarmCenter() const { return 18; }
    int agentPos(int k) const { return kHeader + k * agentBlock(); }
    int agentVel(int k) const { return agentPos(k) + 3; }
    int elementPos(int k, int i) const { return agentPos(k) + 6 + 6 * i; }
    int elementVel(int k, int i) const { return elementPos(k, i) + 3; }
};

/// Read-only view over a flat state vector.
class StateView {
public:
    StateView(const StateVec& y, const StateLayout& layout) : y_(y), l_(layout) {}

    Vec3 payloadPos() const { return y_.segment<3>(l_.payloadPos()); }
    Vec3 payloadVel() const { return y_.segment<3>(l_.payloadVel()); }
    Vec3 omega() const { return y_.segment<3>(l_.omega()); }
    Mat3 bodyAxes() const {
        return Eigen::Map<const Mat3>(y_.data() + l_.bodyAxes());
    }
    Vec3 swarmCenter() const { return y_.segment<3>(l_.swarmCenter()); }
    Vec3 agentPos(int k) const { return y_.segment<3>(l_.agentPos(k)); }
    Vec3 agentVel(int k) const { return y_.segment<3>(l_.agentVel(k)); }
    Vec3 elementPos(int k, int i) const { return y_.segment<3>(l_.elementPos(k, i)); }
    Vec3 elementVel(int k, int i) const { return y_.segment<3>(l_.elementVel(k, i)); }

    const StateLayout& layout() const { return l_; }

private:
    const StateVec& y_;
    StateLayout l_;
};

/// Mutable companion to StateView.
class StateRef {
public:
    StateRef(StateVec& y, const StateLayout& layout) : y_(y), l_(layout) {}

    Eigen::Ref<Vec3> payloadPos() { return y_.segment<3>(l_.payloadPos()); }
    Eigen::Ref<Vec3> payloadVel() { return y_.segment<3>(l_.payloadVel()); }
    Eigen::Ref<Vec3> omega() { return y_.segment<3>(l_.omega()); }
    Eigen::Map<Mat3> bodyAxes() { return Eigen::Map<Mat3>(y_.data() + l_.bodyAxes()); }
    Eigen::Ref<Vec3> swarmCenter() { return y_.segment<3>(l_.swarmCenter()); }
    Eigen::Ref<Vec3> agentPos(int k) { return y_.segment<3>(l_.agentPos(k)); }
    Eigen::Ref<Vec3> agentVel(int k) { return y_.segment<3>(l_.agentVel(k)); }
    Eigen::Ref<Vec3> elementPos(int k, int i) { return y_.segment<3>(l_.elementPos(k, i)); }
    Eigen::Ref<Vec3> elementVel(int k, int i) { return y_.segment<3>(l_.elementVel(k, i)); }

private:
    StateVec& y_;
    StateLayout l_;
};

inline StateLayout layoutFor(const SimConfig& cfg) {
    return StateLayout{cfg.swarmSize, cfg.cableElements};
}

/// Payload at the origin with identity attitude, agents directly above their
/// anchors at height L, cable elements evenly spaced, everything at rest.
/// Cables start at natural length (unstretched).
StateVec naturalInitialState(const SimConfig& cfg);

/// Static hover solution: same geometry as naturalInitialState but every
/// link pre-stretched by its share of the hanging weight, so the gravity
/// compensated system starts exactly at its equilibrium.
StateVec equilibriumInitialState(const SimConfig& cfg);

/// Tension carried by link j (0 = anchor-side link, t_n = agent-side link)
/// of a vertical cable at static equilibrium: the payload share plus the
/// weight of the j elements hanging below the link.
double staticLinkTension(const SimConfig& cfg, int linkIndex);

/// Sum of per-link static stretches over a whole cable (m).
double staticCableElongation(const SimConfig& cfg);

}  // namespace slung

#endif
