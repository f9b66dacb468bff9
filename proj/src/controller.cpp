#include "slung/controller.hpp"

#include "slung/frame.hpp"

#include <algorithm>
#include <cmath>

namespace slung {

namespace {
constexpr double kPlanarEps = 1e-9;     // removable singularity of the unit vector
constexpr double kNormalZGuard = 0.1;   // minimum |n_z| for the tilt offset
}  // namespace

DesiredAttitude DesiredAttitude::fromAngles(double azimuth, double elevation) {
    DesiredAttitude a;
    a.azimuth = azimuth;
    a.elevation = elevation;
    a.normal = attitudeNormal(azimuth, elevation);
    return a;
}

Vec3 gravityCompensation(const SimConfig& cfg) {
    const double lifted = cfg.agentMass + cfg.cableElements * cfg.cableElementMass +
                          cfg.payloadMass / cfg.swarmSize;
    return {0.0, 0.0, lifted * cfg.gravity};
}

double tiltOffset(const Vec3& agentPos, const Vec3& swarmCenter,
                  const DesiredAttitude& attitude, double cableLength) {
    const Vec3& n = attitude.normal;
    if (std::abs(n.z()) < kNormalZGuard) {
        throw AttitudeInfeasibleError("commanded plane too steep: |n_z| < 0.1");
    }
    const double dx = agentPos.x() - swarmCenter.x();
    const double dy = agentPos.y() - swarmCenter.y();
    const double offset = (-n.x() * dx - n.y() * dy) / n.z();
    const double bound = cableLength / 2.0;
    return std::clamp(offset, -bound, bound);
}

double altitudeField(const Vec3& agentPos, double goalZ, double cableLength,
                     double offset, double altitudeGain) {
    return altitudeGain * (agentPos.z() - (goalZ + cableLength + offset));
}

double transportField(double planarDistance, double beta) {
    const double eb = std::exp(beta);
    const double numerator = (1.0 + eb) * (1.0 + eb);
    const double denominator =
        (1.0 + std::exp(-planarDistance + beta)) * (1.0 + std::exp(planarDistance + beta));
    return 1.0 - numerator / denominator;
}

Vec3 attractiveField(const Vec3& agentPos, const Vec3& swarmCenter, double goalZ,
                     const DesiredAttitude& attitude, const SimConfig& cfg) {
    const double L = cfg.cableLength();
    const double offset = tiltOffset(agentPos, swarmCenter, attitude, L);
    const double fz = altitudeField(agentPos, goalZ, L, offset, cfg.altitudeGain);

    const double dx = agentPos.x() - swarmCenter.x();
    const double dy = agentPos.y() - swarmCenter.y();
    const double d = std::hypot(dx, dy);
    Vec3 field(0.0, 0.0, fz);
    if (d >= kPlanarEps) {
        const double fxy = transportField(d, cfg.transportBeta);
        field.x() = fxy * dx / d;
        field.y() = fxy * dy / d;
    }
    return field;
}

Vec3 pidShape(const Vec3& fieldSample, AgentPidState& state, const SimConfig& cfg, double dt) {
    const Vec3 error = -fieldSample;  // setpoint is the field's origin

    state.integral += error * dt;
    state.integral = state.integral.cwiseMax(-cfg.pidIntegralClamp).cwiseMin(cfg.pidIntegralClamp);

    Vec3 derivative = Vec3::Zero();
    if (state.hasPreviousError) {
        derivative = (error - state.previousError) / dt;
    }
    state.previousError = error;
    state.hasPreviousError = true;

    return cfg.pidKp.cwiseProduct(error) + cfg.pidKi.cwiseProduct(state.integral) +
           cfg.pidKd.cwiseProduct(derivative);
}

namespace {

Vec3 exponentialRepulsion(const Vec3& pos, const std::vector<Vec3>& sources,
                          double gain, double lengthScale) {
    Vec3 force = Vec3::Zero();
    for (const auto& src : sources) {
        const Vec3 away = pos - src;
        const double dist = away.norm();
        if (dist < 1e-12) {
            throw DegenerateGeometryError("repulsion source coincides with agent");
        }
        force += (gain / lengthScale) * std::exp(-dist / lengthScale) * (away / dist);
    }
    return force;
}

}  // namespace

Vec3 neighborRepulsion(const Vec3& agentPos, const std::vector<Vec3>& neighbors,
                       double gain, double lengthScale) {
    return exponentialRepulsion(agentPos, neighbors, gain, lengthScale);
}

Vec3 obstacleRepulsion(const Vec3& agentPos, const std::vector<Vec3>& obstacles,
                       double gain, double lengthScale) {
    return exponentialRepulsion(agentPos, obstacles, gain, lengthScale);
}

Vec3 swarmCenterVelocity(const Vec3& center, const Vec3& goal,
                         const Vec3& centerGainDiag, double centerScale) {
    const Vec3 toGoal = goal - center;
    const double dist = toGoal.norm();
    if (dist < kPlanarEps) return Vec3::Zero();

    const double speedFactor = (1.0 - std::exp(-dist / centerScale)) / centerScale;
    const double xyHold = std::exp(-std::abs(toGoal.z()));
    const Vec3 channelGain(xyHold, xyHold, 1.0);
    return speedFactor *
           channelGain.cwiseProduct(centerGainDiag.cwiseProduct(toGoal / dist));
}

Vec3 agentControl(const Vec3& agentPos, const LocalPerception& perception,
                  AgentPidState& pid, const DesiredAttitude& attitude,
                  const SimConfig& cfg) {
    if (pid.failed) return Vec3::Zero();

    const Vec3 fieldSample = attractiveField(agentPos, perception.swarmCenter,
                                             perception.goal.z(), attitude, cfg);
    const Vec3 shaped = pidShape(fieldSample, pid, cfg, cfg.controlPeriod);
    const Vec3 repulsion = neighborRepulsion(agentPos, perception.neighborPositions,
                                             cfg.repulsionGain, cfg.repulsionScale);
    const Vec3 avoidance = obstacleRepulsion(agentPos, perception.obstaclePositions,
                                             cfg.obstacleGain, cfg.obstacleScale);
    return gravityCompensation(cfg) + shaped + repulsion + avoidance;
}

}  // namespace slung
