#ifndef SLUNG_CONTROLLER_HPP
#define SLUNG_CONTROLLER_HPP

#include "slung/config.hpp"
#include "slung/types.hpp"

#include <vector>

namespace slung {

/// Commanded payload-plane orientation, cached as a unit normal.
struct DesiredAttitude {
    double azimuth = 0.0;    // rad
    double elevation = 0.0;  // rad
    Vec3 normal = Vec3::UnitZ();

    static DesiredAttitude fromAngles(double azimuth, double elevation);
};

/// Everything one agent is allowed to see: positions inside its sensing
/// radii, the shared virtual center, and the goal. Deliberately excludes any
/// payload state.
struct LocalPerception {
    std::vector<Vec3> neighborPositions;
    std::vector<Vec3> obstaclePositions;
    Vec3 swarmCenter = Vec3::Zero();
    Vec3 goal = Vec3::Zero();
};

/// Discrete per-agent controller memory.
struct AgentPidState {
    Vec3 integral = Vec3::Zero();
    Vec3 previousError = Vec3::Zero();
    bool hasPreviousError = false;
    bool failed = false;
};

struct ControllerState {
    std::vector<AgentPidState> agents;
    explicit ControllerState(int swarmSize = 0) : agents(swarmSize) {}
};

/// Constant feedforward lifting the agent, its cable and its payload share:
/// (m + t_n m_t + m_P/n) g, straight up.
Vec3 gravityCompensation(const SimConfig& cfg);

/// Vertical offset of the attraction plane that realizes the commanded tilt
/// at this agent's in-plane position. Clamped to +-L/2 so agents are never
/// sent beyond cable reach. Throws AttitudeInfeasibleError when the commanded
/// plane is too close to vertical (|n_z| < 0.1).
double tiltOffset(const Vec3& agentPos, const Vec3& swarmCenter,
                  const DesiredAttitude& attitude, double cableLength);

/// Scalar altitude error field: k_z (z_k - (z_g + L + delta_k)).
double altitudeField(const Vec3& agentPos, double goalZ, double cableLength,
                     double offset, double altitudeGain);

/// Bounded planar attraction magnitude in [0,1): zero at the center, close
/// to one far away, with a beta-controlled flat region near the center.
double transportField(double planarDistance, double beta);

/// Net attractive field sample (planar transport + altitude channel). This is
/// the error-like signal fed to the PID stage.
Vec3 attractiveField(const Vec3& agentPos, const Vec3& swarmCenter, double goalZ,
                     const DesiredAttitude& attitude, const SimConfig& cfg);

/// Discrete PID on e = -fieldSample (setpoint at the field's global minimum).
/// Rectangle-rule integral with a per-axis anti-windup clamp, backward
/// difference derivative zeroed on the first sample.
Vec3 pidShape(const Vec3& fieldSample, AgentPidState& state,
              const SimConfig& cfg, double dt);

/// Negative gradient of the exponential inter-agent potential: pushes away
/// from every sensed neighbor.
Vec3 neighborRepulsion(const Vec3& agentPos, const std::vector<Vec3>& neighbors,
                       double gain, double lengthScale);

/// Negative gradient of the obstacle potential; same shape, larger scale.
Vec3 obstacleRepulsion(const Vec3& agentPos, const std::vector<Vec3>& obstacles,
                       double gain, double lengthScale);

/// Virtual swarm-center velocity toward the goal: the z channel responds
/// first, the x-y channels are released as the vertical error settles.
Vec3 swarmCenterVelocity(const Vec3& center, const Vec3& goal,
                         const Vec3& centerGainDiag, double centerScale);

/// Full decentralized control input for one agent. A failed agent returns
/// exactly zero and its PID memory is left untouched.
Vec3 agentControl(const Vec3& agentPos, const LocalPerception& perception,
                  AgentPidState& pid, const DesiredAttitude& attitude,
                  const SimConfig& cfg);

}  // namespace slung

#endif
