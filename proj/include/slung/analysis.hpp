#ifndef SLUNG_ANALYSIS_HPP
#define SLUNG_ANALYSIS_HPP

#include "slung/config.hpp"
#include "slung/engine.hpp"

#include <complex>
#include <string>
#include <vector>

namespace slung {

/// Static residuals of a (near-)steady terminal state.
struct EquilibriumReport {
    bool steady = false;
    double maxResidualSpeed = 0.0;            // m/s, worst body speed seen
    std::vector<double> cableAngleDeg;        // per cable, from vertical
    std::vector<double> cableElongation;      // m, chain length minus (t_n+1) l_free
    double analyticElongation = 0.0;          // m, static stretch incl. cable weight
    double controlSumResidual = 0.0;          // N, |sum u_k - total weight|
    double momentResidual = 0.0;              // N m, formation moment condition
    double maxChainNodeResidual = 0.0;        // N, worst per-node static force balance
    int minNeighborsSensed = 0;               // connectivity check at the end state
};

/// Hover equilibrium checks: cable verticality and stretch against the
/// analytic statics, the control-sum force balance, and the formation moment
/// condition. Refuses (steady=false) when the state is still moving.
EquilibriumReport verifyEquilibrium(const RunResult& run, const SimConfig& cfg,
                                    double steadySpeedTol = 1e-2);

struct StabilityReport {
    double gamma = 0.0;                 // m, equilibrium cable length
    double effectiveStiffness = 0.0;    // N/m, k_t (gamma - L) / (gamma (t_n+1))
    std::complex<double> rootXY[2];
    std::complex<double> rootZ[2];
    double predictedDominantDecay = 0.0;  // 1/s, slowest |Re|
    double simulatedDecay = 0.0;          // 1/s, fitted (0 when not simulated)
    bool allRootsStable = false;
    bool fitSucceeded = false;
    bool verdictPass = false;
    std::string verdict;
};

/// Equilibrium cable length gamma = L + static stretch of the lumped series
/// spring under the payload share.
double staticGamma(const SimConfig& cfg);

/// Closed-form roots of the linearized hover dynamics about a taut vertical
/// cable of length gamma. Throws ConfigError-free domain error (std::invalid_argument)
/// when gamma <= L because the linearization needs a taut cable.
StabilityReport analyticStabilityRoots(const SimConfig& cfg, double gamma);

/// Displaces one agent from the gravity-compensated hover equilibrium,
/// simulates, fits an exponential envelope to the anchor-relative
/// displacement and compares against the analytic dominant decay rate.
StabilityReport measureDisturbanceDecay(const SimConfig& cfg,
                                        double perturbation = 0.05,
                                        int agentIndex = 0,
                                        double horizonSeconds = 60.0,
                                        double matchTolerance = 0.20);

struct MissionMetrics {
    Vec3 terminalPayloadPos = Vec3::Zero();     // center of mass, tail mean
    Vec3 terminalCentroidPos = Vec3::Zero();    // anchor-plane centroid, tail mean
    double horizontalErrorCom = 0.0;            // m, vs goal x-y
    double horizontalErrorCentroid = 0.0;       // m
    double verticalErrorCentroid = 0.0;         // m, vs z_g minus static stretch
    double terminalAzimuthDeg = 0.0;
    double terminalElevationDeg = 0.0;
    double azimuthErrorDeg = 0.0;
    double elevationErrorDeg = 0.0;
    double peakOmega = 0.0;                     // rad/s
    double terminalOmega = 0.0;                 // rad/s, tail mean
    double minAgentObstacleDistance = 0.0;      // m, +inf when no obstacles
    double minInterAgentDistance = 0.0;         // m
    double settleTime = -1.0;                   // s, -1 when never settled
};

/// Pure function of (log, config); terminal quantities are means over the
/// final 10% of samples.
MissionMetrics computeMissionMetrics(const TimeSeriesLog& log, const SimConfig& cfg);

/// Log-envelope least-squares decay fit over the peaks of |signal|.
/// Returns false when fewer than three usable peaks exist or the signal grows.
bool fitEnvelopeDecay(const std::vector<double>& t, const std::vector<double>& signal,
                      double& decayRate);

}  // namespace slung

#endif
