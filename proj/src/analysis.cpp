#include "slung/analysis.hpp"

#include "slung/cable.hpp"
#include "slung/frame.hpp"
#include "slung/rhs.hpp"
#include "slung/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace slung {

EquilibriumReport verifyEquilibrium(const RunResult& run, const SimConfig& cfg,
                                    double steadySpeedTol) {
    const StateView s(run.finalState, run.layout);
    const int n = cfg.swarmSize;
    const int tn = cfg.cableElements;
    EquilibriumReport report;

    double maxSpeed = s.payloadVel().norm();
    for (int k = 0; k < n; ++k) {
        maxSpeed = std::max(maxSpeed, s.agentVel(k).norm());
        for (int i = 0; i < tn; ++i) maxSpeed = std::max(maxSpeed, s.elementVel(k, i).norm());
    }
    report.maxResidualSpeed = maxSpeed;
    report.steady = maxSpeed < steadySpeedTol;
    if (!report.steady) return report;

    const auto anchors = cfg.anchors();
    const CableParams params{cfg.cableStiffness, cfg.cableDamping,
                             cfg.segmentNaturalLength, cfg.cableElementMass};
    const Vec3 gVec(0.0, 0.0, cfg.gravity);

    report.analyticElongation = staticCableElongation(cfg);
    report.minNeighborsSensed = n;

    std::vector<Vec3> agentPositions(n);
    for (int k = 0; k < n; ++k) agentPositions[k] = s.agentPos(k);

    for (int k = 0; k < n; ++k) {
        Vec3 anchorPos, anchorVel;
        anchorKinematics(s.payloadPos(), s.payloadVel(), s.omega(), s.bodyAxes(), anchors[k],
                         anchorPos, anchorVel);

        const Vec3 cableDir = (s.agentPos(k) - anchorPos).normalized();
        report.cableAngleDeg.push_back(degrees(std::acos(std::clamp(cableDir.z(), -1.0, 1.0))));

        double chainLength = 0.0;
        Vec3 lower = anchorPos;
        for (int i = 0; i <= tn; ++i) {
            const Vec3 upper = (i == tn) ? s.agentPos(k) : s.elementPos(k, i);
            chainLength += (upper - lower).norm();
            lower = upper;
        }
        report.cableElongation.push_back(chainLength - cfg.cableLength());

        CableChain chain;
        chain.agentIndex = k;
        for (int i = 0; i < tn; ++i) {
            chain.elementPos.push_back(s.elementPos(k, i));
            chain.elementVel.push_back(s.elementVel(k, i));
        }
        const auto accel = cableAccelerations(chain, s.agentPos(k), s.agentVel(k), anchorPos,
                                              anchorVel, params, cfg.gravity);
        for (const auto& a : accel) {
            report.maxChainNodeResidual =
                std::max(report.maxChainNodeResidual, params.elementMass * a.norm());
        }

        const auto sensed = senseNeighbors(k, agentPositions, cfg.neighborSenseRadius);
        report.minNeighborsSensed =
            std::min(report.minNeighborsSensed, static_cast<int>(sensed.size()));
    }

    // Force balance: sum of controls against the total hanging weight.
    Vec3 controlSum = Vec3::Zero();
    for (const auto& u : run.finalControls) controlSum += u;
    const double totalWeight =
        (cfg.payloadMass + n * (cfg.agentMass + tn * cfg.cableElementMass)) * cfg.gravity;
    report.controlSumResidual = (controlSum - Vec3(0.0, 0.0, totalWeight)).norm();

    // Formation moment condition about the inertial origin.
    const Vec3 uGravity = gravityCompensation(cfg);
    Vec3 momentLhs = Vec3::Zero();
    Vec3 momentRhs = Vec3::Zero();
    for (int k = 0; k < n; ++k) {
        const Vec3 anchorInertial = s.payloadPos() + s.bodyAxes() * anchors[k];
        momentLhs += anchorInertial.cross(run.finalControls[k] - uGravity);
        momentRhs -= anchorInertial.cross(cfg.payloadMass / n * gVec);
    }
    report.momentResidual = (momentLhs - momentRhs).norm();

    return report;
}

double staticGamma(const SimConfig& cfg) {
    const double payloadShare = cfg.payloadMass * cfg.gravity / cfg.swarmSize;
    const double seriesStiffness = cfg.cableStiffness / (cfg.cableElements + 1);
    return cfg.cableLength() + payloadShare / seriesStiffness;
}

namespace {

void quadraticRoots(double mass, double damping, double stiffness, std::complex<double> out[2]) {
    const double a = damping / mass;
    const double disc = a * a - 4.0 * stiffness / mass;
    if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        out[0] = std::complex<double>((-a + sq) / 2.0, 0.0);
        out[1] = std::complex<double>((-a - sq) / 2.0, 0.0);
    } else {
        const double sq = std::sqrt(-disc);
        out[0] = std::complex<double>(-a / 2.0, sq / 2.0);
        out[1] = std::complex<double>(-a / 2.0, -sq / 2.0);
    }
}

}  // namespace

StabilityReport analyticStabilityRoots(const SimConfig& cfg, double gamma) {
    const double L = cfg.cableLength();
    if (gamma <= L) {
        throw std::invalid_argument(
            "slack equilibrium: gamma <= total cable length, linearization invalid");
    }
    StabilityReport report;
    report.gamma = gamma;
    report.effectiveStiffness =
        cfg.cableStiffness * (gamma - L) / (gamma * (cfg.cableElements + 1));

    quadraticRoots(cfg.agentMass, cfg.dragCoefficient, report.effectiveStiffness, report.rootXY);
    const double zDamping = cfg.dragCoefficient + cfg.cableDamping / (cfg.cableElements + 1);
    quadraticRoots(cfg.agentMass, zDamping, report.effectiveStiffness, report.rootZ);

    report.allRootsStable = report.rootXY[0].real() < 0.0 && report.rootXY[1].real() < 0.0 &&
                            report.rootZ[0].real() < 0.0 && report.rootZ[1].real() < 0.0;
    report.predictedDominantDecay =
        std::min({std::abs(report.rootXY[0].real()), std::abs(report.rootXY[1].real()),
                  std::abs(report.rootZ[0].real()), std::abs(report.rootZ[1].real())});
    report.verdict = report.allRootsStable ? "stable" : "unstable";
    report.verdictPass = report.allRootsStable;
    return report;
}

bool fitEnvelopeDecay(const std::vector<double>& t, const std::vector<double>& signal,
                      double& decayRate) {
    // Peaks of |signal|, strictly above both neighbors. Peaks below 5% of the
    // first one are dropped: past that point slower coupled modes take over
    // the envelope and would bias the fitted rate.
    std::vector<double> peakT, peakLog;
    double firstPeak = 0.0;
    for (std::size_t i = 1; i + 1 < signal.size(); ++i) {
        const double a = std::abs(signal[i]);
        if (a > std::abs(signal[i - 1]) && a > std::abs(signal[i + 1])) {
            if (firstPeak == 0.0) firstPeak = a;
            if (a < std::max(1e-9, 5e-2 * firstPeak)) continue;
            peakT.push_back(t[i]);
            peakLog.push_back(std::log(a));
        }
    }
    if (peakT.size() < 3) return false;

    const double nPts = static_cast<double>(peakT.size());
    const double meanT = std::accumulate(peakT.begin(), peakT.end(), 0.0) / nPts;
    const double meanY = std::accumulate(peakLog.begin(), peakLog.end(), 0.0) / nPts;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < peakT.size(); ++i) {
        sxx += (peakT[i] - meanT) * (peakT[i] - meanT);
        sxy += (peakT[i] - meanT) * (peakLog[i] - meanY);
    }
    if (sxx <= 0.0) return false;
    const double slope = sxy / sxx;
    if (slope >= 0.0) return false;  // not decaying
    decayRate = -slope;
    return true;
}

StabilityReport measureDisturbanceDecay(const SimConfig& cfg, double perturbation,
                                        int agentIndex, double horizonSeconds,
                                        double matchTolerance) {
    StabilityReport report = analyticStabilityRoots(cfg, staticGamma(cfg));

    SimConfig probe = cfg;
    probe.controlMode = ControlMode::GravityOnly;
    probe.initialConditions = InitialConditions::Equilibrium;
    probe.totalTime = horizonSeconds;
    probe.wind = WindEvent{};
    probe.failure = FailureEvent{};

    StateVec y0 = equilibriumInitialState(probe);
    {
        const StateLayout layout = layoutFor(probe);
        StateRef s(y0, layout);
        s.agentPos(agentIndex).x() += perturbation;
    }
    const RunResult run = runScenario(probe, y0);

    if (perturbation == 0.0) {
        report.simulatedDecay = 0.0;
        report.fitSucceeded = false;
        report.verdict = "zero perturbation, nothing to fit";
        report.verdictPass = report.allRootsStable;
        return report;
    }

    const auto anchors = probe.anchors();
    const std::string agentCol = "agent" + std::to_string(agentIndex + 1) + "_x";
    const int colAgent = run.log.column(agentCol);
    const int colPayload = run.log.column("payload_x");
    const int colTime = run.log.column("time");

    std::vector<double> tSamples, channel;
    for (const auto& row : run.log.rows) {
        tSamples.push_back(row[colTime]);
        channel.push_back(row[colAgent] - row[colPayload] - anchors[agentIndex].x());
    }

    double fitted = 0.0;
    report.fitSucceeded = fitEnvelopeDecay(tSamples, channel, fitted);
    if (!report.fitSucceeded) {
        report.verdict = "envelope fit failed: signal is not a decaying oscillation";
        report.verdictPass = false;
        return report;
    }
    report.simulatedDecay = fitted;
    const double rel =
        std::abs(fitted - report.predictedDominantDecay) / report.predictedDominantDecay;
    report.verdictPass = report.allRootsStable && rel <= matchTolerance;
    report.verdict = report.verdictPass
                         ? "stable; simulated decay matches the analytic rate"
                         : "decay rate mismatch beyond tolerance";
    return report;
}

MissionMetrics computeMissionMetrics(const TimeSeriesLog& log, const SimConfig& cfg) {
    MissionMetrics m;
    if (log.rows.empty()) return m;

    const std::size_t nRows = log.rows.size();
    const std::size_t tailStart = nRows - std::max<std::size_t>(1, nRows / 10);

    const int cPx = log.column("payload_x"), cPy = log.column("payload_y"),
              cPz = log.column("payload_z");
    const int cCx = log.column("centroid_x"), cCy = log.column("centroid_y"),
              cCz = log.column("centroid_z");
    const int cAz = log.column("azimuth_deg"), cEl = log.column("elevation_deg");
    const int cOx = log.column("omega_x"), cOy = log.column("omega_y"), cOz = log.column("omega_z");
    const int cT = log.column("time");

    Vec3 comSum = Vec3::Zero(), centroidSum = Vec3::Zero();
    double azSin = 0.0, azCos = 0.0, elSum = 0.0, omegaSum = 0.0;
    std::size_t tailCount = 0;
    for (std::size_t r = tailStart; r < nRows; ++r) {
        const auto& row = log.rows[r];
        comSum += Vec3(row[cPx], row[cPy], row[cPz]);
        centroidSum += Vec3(row[cCx], row[cCy], row[cCz]);
        azSin += std::sin(radians(row[cAz]));
        azCos += std::cos(radians(row[cAz]));
        elSum += row[cEl];
        omegaSum += Vec3(row[cOx], row[cOy], row[cOz]).norm();
        ++tailCount;
    }
    m.terminalPayloadPos = comSum / static_cast<double>(tailCount);
    m.terminalCentroidPos = centroidSum / static_cast<double>(tailCount);
    m.terminalAzimuthDeg = degrees(std::atan2(azSin, azCos));
    m.terminalElevationDeg = elSum / static_cast<double>(tailCount);
    m.terminalOmega = omegaSum / static_cast<double>(tailCount);

    m.horizontalErrorCom =
        (m.terminalPayloadPos.head<2>() - cfg.goalPoint.head<2>()).norm();
    m.horizontalErrorCentroid =
        (m.terminalCentroidPos.head<2>() - cfg.goalPoint.head<2>()).norm();
    m.verticalErrorCentroid =
        m.terminalCentroidPos.z() - (cfg.goalPoint.z() - staticCableElongation(cfg));
    m.azimuthErrorDeg = degrees(std::abs(
        angleDifference(radians(m.terminalAzimuthDeg), radians(cfg.desiredAzimuthDeg))));
    m.elevationErrorDeg = degrees(std::abs(
        angleDifference(radians(m.terminalElevationDeg), radians(cfg.desiredElevationDeg))));

    m.peakOmega = 0.0;
    for (const auto& row : log.rows) {
        m.peakOmega = std::max(m.peakOmega, Vec3(row[cOx], row[cOy], row[cOz]).norm());
    }

    const int n = log.swarmSize;
    std::vector<int> ax(n), ay(n), az(n);
    for (int k = 0; k < n; ++k) {
        ax[k] = log.column("agent" + std::to_string(k + 1) + "_x");
        ay[k] = log.column("agent" + std::to_string(k + 1) + "_y");
        az[k] = log.column("agent" + std::to_string(k + 1) + "_z");
    }

    m.minAgentObstacleDistance = std::numeric_limits<double>::infinity();
    m.minInterAgentDistance = std::numeric_limits<double>::infinity();
    for (const auto& row : log.rows) {
        for (int k = 0; k < n; ++k) {
            const Vec3 agent(row[ax[k]], row[ay[k]], row[az[k]]);
            for (const auto& obs : cfg.obstacles) {
                m.minAgentObstacleDistance =
                    std::min(m.minAgentObstacleDistance, (agent - obs).norm());
            }
            for (int j = k + 1; j < n; ++j) {
                const Vec3 other(row[ax[j]], row[ay[j]], row[az[j]]);
                m.minInterAgentDistance =
                    std::min(m.minInterAgentDistance, (agent - other).norm());
            }
        }
    }

    // Earliest time after which the payload stays inside the settle band.
    constexpr double kSettleBand = 0.5;  // m, horizontal
    m.settleTime = -1.0;
    for (std::size_t r = 0; r < nRows; ++r) {
        const auto& row = log.rows[r];
        const double err =
            (Eigen::Vector2d(row[cPx], row[cPy]) - cfg.goalPoint.head<2>()).norm();
        if (err < kSettleBand) {
            if (m.settleTime < 0.0) m.settleTime = row[cT];
        } else {
            m.settleTime = -1.0;
        }
    }
    return m;
}

}  // namespace slung
