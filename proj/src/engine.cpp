#include "slung/engine.hpp"

#include "slung/frame.hpp"
#include "slung/rhs.hpp"
#include "slung/sensing.hpp"

#include <cmath>
#include <stdexcept>

namespace slung {

int TimeSeriesLog::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return static_cast<int>(i);
    }
    throw std::out_of_range("no such log column: " + name);
}

double TimeSeriesLog::at(std::size_t row, const std::string& name) const {
    return rows.at(row).at(column(name));
}

namespace {

std::vector<std::string> buildHeader(int n) {
    std::vector<std::string> h = {
        "time",
        "payload_x", "payload_y", "payload_z",
        "payload_vx", "payload_vy", "payload_vz",
        "omega_x", "omega_y", "omega_z",
        "azimuth_deg", "elevation_deg",
        "centroid_x", "centroid_y", "centroid_z",
        "center_x", "center_y", "center_z",
        "wind_active", "failed_agent"};
    for (int k = 1; k <= n; ++k) {
        h.push_back("agent" + std::to_string(k) + "_x");
        h.push_back("agent" + std::to_string(k) + "_y");
        h.push_back("agent" + std::to_string(k) + "_z");
    }
    for (int k = 1; k <= n; ++k) {
        h.push_back("u" + std::to_string(k) + "_x");
        h.push_back("u" + std::to_string(k) + "_y");
        h.push_back("u" + std::to_string(k) + "_z");
    }
    for (int k = 1; k <= n; ++k) {
        h.push_back("tension" + std::to_string(k));
    }
    return h;
}

Vec3 anchorPlaneCentroid(const StateView& s, const std::vector<Vec3>& anchorsBody) {
    Vec3 c = Vec3::Zero();
    for (const auto& a : anchorsBody) c += s.payloadPos() + s.bodyAxes() * a;
    return c / static_cast<double>(anchorsBody.size());
}

}  // namespace

RunResult runScenario(const SimConfig& cfg, const std::optional<StateVec>& initialState) {
    const StateLayout layout = layoutFor(cfg);
    const int n = cfg.swarmSize;

    StateVec y = initialState ? *initialState
                              : (cfg.initialConditions == InitialConditions::Equilibrium
                                     ? equilibriumInitialState(cfg)
                                     : naturalInitialState(cfg));
    if (y.size() != layout.size()) {
        throw std::invalid_argument("initial state size does not match the config layout");
    }

    ControllerState controller(n);
    const DesiredAttitude attitude =
        DesiredAttitude::fromAngles(radians(cfg.desiredAzimuthDeg), radians(cfg.desiredElevationDeg));
    Integrator integrator(cfg.integrator);
    RhsWorkspace ws;
    ws.prepare(cfg);

    std::vector<Vec3> controls(n, Vec3::Zero());
    std::vector<Vec3> agentPositions(n);
    const bool parallel = cfg.execution == ExecutionMode::Parallel;
    const Vec3 uGravity = gravityCompensation(cfg);

    const auto computeControls = [&](double t) {
        const StateView s(y, layout);
        if (cfg.failure.enabled && t >= cfg.failure.time) {
            controller.agents[cfg.failure.agentIndex - 1].failed = true;
        }
        for (int k = 0; k < n; ++k) agentPositions[k] = s.agentPos(k);

        if (cfg.controlMode == ControlMode::GravityOnly) {
            for (int k = 0; k < n; ++k) {
                controls[k] = controller.agents[k].failed ? Vec3::Zero() : uGravity;
            }
            return;
        }

        const Vec3 center = s.swarmCenter();
        std::exception_ptr firstError = nullptr;
        int firstErrorAgent = n;
#pragma omp parallel for schedule(static) if (parallel)
        for (int k = 0; k < n; ++k) {
            try {
                LocalPerception perception;
                perception.neighborPositions =
                    senseNeighbors(k, agentPositions, cfg.neighborSenseRadius);
                perception.obstaclePositions =
                    senseObstacles(agentPositions[k], cfg.obstacles, cfg.obstacleSenseRadius);
                perception.swarmCenter = center;
                perception.goal = cfg.goalPoint;
                controls[k] = agentControl(agentPositions[k], perception,
                                           controller.agents[k], attitude, cfg);
            } catch (...) {
#pragma omp critical(slung_control_error)
                if (k < firstErrorAgent) {
                    firstErrorAgent = k;
                    firstError = std::current_exception();
                }
            }
        }
        if (firstError) std::rethrow_exception(firstError);
    };

    TimeSeriesLog log;
    log.header = buildHeader(n);
    log.swarmSize = n;
    log.windEnabled = cfg.wind.enabled;
    log.windStart = cfg.wind.startTime;
    log.windEnd = cfg.wind.endTime;
    log.failureAgent = cfg.failure.enabled ? cfg.failure.agentIndex : 0;
    log.failureTime = cfg.failure.enabled ? cfg.failure.time : 0.0;

    const auto appendSample = [&](double t) {
        const StateView s(y, layout);
        std::vector<double> row;
        row.reserve(log.header.size());
        row.push_back(t);
        const Vec3 rp = s.payloadPos(), vp = s.payloadVel(), om = s.omega();
        row.insert(row.end(), {rp.x(), rp.y(), rp.z()});
        row.insert(row.end(), {vp.x(), vp.y(), vp.z()});
        row.insert(row.end(), {om.x(), om.y(), om.z()});
        double azimuth, elevation;
        measureAzimuthElevation(s.bodyAxes(), azimuth, elevation);
        row.push_back(degrees(azimuth));
        row.push_back(degrees(elevation));
        const Vec3 centroid = anchorPlaneCentroid(s, ws.anchorsBody);
        row.insert(row.end(), {centroid.x(), centroid.y(), centroid.z()});
        const Vec3 center = s.swarmCenter();
        row.insert(row.end(), {center.x(), center.y(), center.z()});
        const bool windActive =
            cfg.wind.enabled && t >= cfg.wind.startTime && t <= cfg.wind.endTime;
        row.push_back(windActive ? 1.0 : 0.0);
        double failedAgent = 0.0;
        for (int k = 0; k < n; ++k) {
            if (controller.agents[k].failed) failedAgent = k + 1;
        }
        row.push_back(failedAgent);
        for (int k = 0; k < n; ++k) {
            const Vec3 a = s.agentPos(k);
            row.insert(row.end(), {a.x(), a.y(), a.z()});
        }
        for (int k = 0; k < n; ++k) {
            row.insert(row.end(), {controls[k].x(), controls[k].y(), controls[k].z()});
        }
        const auto tensions = anchorTensions(y, cfg, layout);
        row.insert(row.end(), tensions.begin(), tensions.end());
        log.rows.push_back(std::move(row));
    };

    const double dtc = cfg.controlPeriod;
    const long logEvery = std::max(1L, std::lround(cfg.loggingPeriod / dtc));
    const long totalTicks = static_cast<long>(std::ceil(cfg.totalTime / dtc - 1e-9));

    const RhsFn rhs = [&](double t, const StateVec& yy, StateVec& dd) {
        assembleRhs(t, yy, dd, controls, cfg, layout, ws, parallel);
    };

    computeControls(0.0);
    appendSample(0.0);

    double t = 0.0;
    for (long tick = 0; tick < totalTicks; ++tick) {
        const double tEnd = std::min((tick + 1) * dtc, cfg.totalTime);
        try {
            integrator.integrate(rhs, y, t, tEnd);
        } catch (NumericError& e) {
            throw NumericError(std::string(e.what()) + " (last good state at t=" +
                                   std::to_string(t) + " s)",
                               t);
        }
        t = tEnd;

        if (!y.allFinite()) {
            throw NumericError("non-finite state encountered (last good tick at t=" +
                                   std::to_string(t - dtc) + " s)",
                               t - dtc);
        }

        // Re-orthonormalize the attitude once per control period.
        StateRef sref(y, layout);
        try {
            const Mat3 fixed = orthonormalize(sref.bodyAxes());
            sref.bodyAxes() = fixed;
        } catch (const NumericError& e) {
            throw NumericError(std::string(e.what()) + " (last good tick at t=" +
                                   std::to_string(t - dtc) + " s)",
                               t - dtc);
        }

        computeControls(t);
        if ((tick + 1) % logEvery == 0) appendSample(t);
    }

    RunResult result;
    result.log = std::move(log);
    result.finalState = std::move(y);
    result.finalControls = controls;
    result.controller = std::move(controller);
    result.layout = layout;
    result.integratorStats = integrator.stats();
    result.finalTime = t;
    return result;
}

Vec3 totalLinearMomentum(const StateVec& y, const SimConfig& cfg, const StateLayout& layout) {
    const StateView s(y, layout);
    Vec3 p = cfg.payloadMass * s.payloadVel();
    for (int k = 0; k < cfg.swarmSize; ++k) {
        p += cfg.agentMass * s.agentVel(k);
        for (int i = 0; i < cfg.cableElements; ++i) {
            p += cfg.cableElementMass * s.elementVel(k, i);
        }
    }
    return p;
}

double totalMechanicalEnergy(const StateVec& y, const SimConfig& cfg, const StateLayout& layout) {
    const StateView s(y, layout);
    const CableParams params{cfg.cableStiffness, cfg.cableDamping,
                             cfg.segmentNaturalLength, cfg.cableElementMass};
    const auto anchors = cfg.anchors();

    double e = 0.5 * cfg.payloadMass * s.payloadVel().squaredNorm() +
               cfg.payloadMass * cfg.gravity * s.payloadPos().z();
    e += 0.5 * s.omega().dot(cfg.payloadInertiaDiag.cwiseProduct(s.omega()));

    for (int k = 0; k < cfg.swarmSize; ++k) {
        e += 0.5 * cfg.agentMass * s.agentVel(k).squaredNorm() +
             cfg.agentMass * cfg.gravity * s.agentPos(k).z();
        for (int i = 0; i < cfg.cableElements; ++i) {
            e += 0.5 * cfg.cableElementMass * s.elementVel(k, i).squaredNorm() +
                 cfg.cableElementMass * cfg.gravity * s.elementPos(k, i).z();
        }

        Vec3 anchorPos, anchorVel;
        anchorKinematics(s.payloadPos(), s.payloadVel(), s.omega(), s.bodyAxes(), anchors[k],
                         anchorPos, anchorVel);
        Vec3 lower = anchorPos;
        for (int i = 0; i <= cfg.cableElements; ++i) {
            const Vec3 upper = (i == cfg.cableElements) ? s.agentPos(k) : s.elementPos(k, i);
            e += linkPotentialEnergy(upper, lower, params);
            lower = upper;
        }
    }
    return e;
}

}  // namespace slung
