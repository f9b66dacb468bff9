// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Thresholds are pinned in code next to each check.

#include "slung/analysis.hpp"
#include "slung/cable.hpp"
#include "slung/controller.hpp"
#include "slung/engine.hpp"
#include "slung/frame.hpp"
#include "slung/rhs.hpp"
#include "slung/writers.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

using namespace slung;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] %d. %s — %s\n", pass ? "PASS" : "FAIL", id, name.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list args;
    va_start(args, f);
    std::vsnprintf(buf, sizeof(buf), f, args);
    va_end(args);
    return buf;
}

// ---------------------------------------------------------------- criterion 1
void forceKernelOracle() {
    const CableParams p{10073.0, 0.0, 1.5, 0.003};
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> dist(-2.5, 2.5);

    const auto potential = [&](const Vec3& a, const Vec3& b) {
        const double ext = (a - b).norm() - p.naturalLength;
        return ext > 0.0 ? 0.5 * p.stiffness * ext * ext : 0.0;
    };

    double worstRel = 0.0;
    int tautTested = 0;
    bool slackClean = true;
    while (tautTested < 20) {
        const Vec3 xi(dist(rng), dist(rng), dist(rng));
        const Vec3 xj(dist(rng), dist(rng), dist(rng));
        const double len = (xi - xj).norm();
        if (len < 0.05) continue;
        if (len <= p.naturalLength) {
            slackClean &= cableLinkForce(xi, xj, Vec3(1, 2, 3), Vec3(-1, 0, 4), p).norm() == 0.0;
            continue;
        }
        if (len < p.naturalLength + 0.02) continue;  // keep FD off the gate edge
        ++tautTested;

        const Vec3 f = cableLinkForce(xi, xj, Vec3::Zero(), Vec3::Zero(), p);
        const double h = 1e-6;
        Vec3 grad;
        for (int axis = 0; axis < 3; ++axis) {
            Vec3 plus = xi, minus = xi;
            plus[axis] += h;
            minus[axis] -= h;
            grad[axis] = (potential(plus, xj) - potential(minus, xj)) / (2.0 * h);
        }
        worstRel = std::max(worstRel, (f + grad).norm() / grad.norm());
    }
    // explicit slack probes as well
    for (int i = 1; i <= 10; ++i) {
        const Vec3 xi(0, 0, 0.1 * i);
        slackClean &=
            cableLinkForce(xi, Vec3::Zero(), Vec3(5, 5, 5), Vec3::Zero(), p).norm() == 0.0;
    }

    report(1, "force kernel matches the potential gradient", worstRel < 1e-5 && slackClean,
           fmt("worst relative error %.2e over 20 taut states, slack forces %s", worstRel,
               slackClean ? "exactly zero" : "NONZERO"));
}

// ---------------------------------------------------------------- criterion 2
struct SpinRig {
    SimConfig cfg;
    StateVec state;
};

SpinRig makeSpinRig(double spinRate, double gravity, double cableDamping, double drag) {
    SimConfig cfg;
    cfg.swarmSize = 1;
    cfg.agentMass = 1.0;
    cfg.payloadMass = 5.0;
    cfg.payloadInertiaDiag = Vec3(1.0, 1.0, 1.0);
    cfg.cableElements = 2;
    cfg.cableElementMass = 0.01;
    cfg.segmentNaturalLength = 1.0;
    cfg.cableStiffness = 2000.0;
    cfg.cableDamping = cableDamping;
    cfg.dragCoefficient = drag;
    cfg.gravity = gravity;
    cfg.anchorPointsBody = {Vec3::Zero()};
    cfg.integrator.mode = IntegratorMode::FixedStep;

    const double l = cfg.segmentNaturalLength;
    const double k = cfg.cableStiffness;
    const double w2 = spinRate * spinRate;
    double xP = -0.5, x1 = 0.5, x2 = 1.5, x3 = 2.5;
    for (int iter = 0; iter < 200; ++iter) {
        const double t0 = w2 * (cfg.cableElementMass * (x1 + x2) + cfg.agentMass * x3);
        const double t1 = w2 * (cfg.cableElementMass * x2 + cfg.agentMass * x3);
        const double t2 = w2 * cfg.agentMass * x3;
        x1 = xP + l + t0 / k;
        x2 = x1 + l + t1 / k;
        x3 = x2 + l + t2 / k;
        const double com = (cfg.payloadMass * xP + cfg.cableElementMass * (x1 + x2) +
                            cfg.agentMass * x3) /
                           (cfg.payloadMass + 2.0 * cfg.cableElementMass + cfg.agentMass);
        xP -= com;
        x1 -= com;
        x2 -= com;
        x3 -= com;
    }

    const StateLayout layout = layoutFor(cfg);
    StateVec y = StateVec::Zero(layout.size());
    StateRef s(y, layout);
    s.bodyAxes() = Mat3::Identity();
    const auto place = [&](Eigen::Ref<Vec3> pos, Eigen::Ref<Vec3> vel, double x) {
        pos = Vec3(x, 0.0, 0.0);
        vel = Vec3(0.0, spinRate * x, 0.0);
    };
    place(s.payloadPos(), s.payloadVel(), xP);
    place(s.elementPos(0, 0), s.elementVel(0, 0), x1);
    place(s.elementPos(0, 1), s.elementVel(0, 1), x2);
    place(s.agentPos(0), s.agentVel(0), x3);
    s.swarmCenter() = cfg.goalPoint;
    return SpinRig{cfg, y};
}

void integrateRaw(const SimConfig& cfg, StateVec& y, double t1) {
    const StateLayout layout = layoutFor(cfg);
    RhsWorkspace ws;
    ws.prepare(cfg);
    std::vector<Vec3> controls(cfg.swarmSize, Vec3::Zero());
    Integrator integ(cfg.integrator);
    integ.integrate(
        [&](double t, const StateVec& yy, StateVec& dd) {
            assembleRhs(t, yy, dd, controls, cfg, layout, ws, true);
        },
        y, 0.0, t1);
}

void conservationSuite() {
    // energy: taut spinning rig free-falling under gravity, no damping
    SpinRig energyRig = makeSpinRig(2.0, 9.8, 0.0, 0.0);
    const StateLayout layout = layoutFor(energyRig.cfg);
    const double e0 = totalMechanicalEnergy(energyRig.state, energyRig.cfg, layout);
    integrateRaw(energyRig.cfg, energyRig.state, 10.0);
    const double e1 = totalMechanicalEnergy(energyRig.state, energyRig.cfg, layout);
    const double energyDrift = std::abs(e1 - e0) / std::abs(e0);

    // momentum: gravity off, internal forces only
    SpinRig momentumRig = makeSpinRig(2.0, 0.0, 0.3, 0.0);
    const Vec3 p0 = totalLinearMomentum(momentumRig.state, momentumRig.cfg, layout);
    integrateRaw(momentumRig.cfg, momentumRig.state, 10.0);
    const Vec3 p1 = totalLinearMomentum(momentumRig.state, momentumRig.cfg, layout);
    const double momentumDrift = (p1 - p0).norm();

    report(2, "conservation suite",
           energyDrift < 1e-3 && momentumDrift < 1e-9,
           fmt("energy drift %.2e (limit 1e-3), momentum drift %.2e kg m/s (limit 1e-9)",
               energyDrift, momentumDrift));
}

// ---------------------------------------------------------------- criterion 3
void hoverEquilibrium() {
    SimConfig cfg = scenarioPreset("hover");  // gravity compensation only, 30 s
    const RunResult run = runScenario(cfg);
    const EquilibriumReport rep = verifyEquilibrium(run, cfg);

    bool pass = rep.steady;
    double worstAngle = 0.0, worstElongRel = 0.0;
    const double simplifiedElongation =
        (cfg.payloadMass * cfg.gravity / cfg.swarmSize) * (cfg.cableElements + 1) /
        cfg.cableStiffness;  // 0.00834 m for the reference table
    for (std::size_t k = 0; k < rep.cableAngleDeg.size(); ++k) {
        worstAngle = std::max(worstAngle, rep.cableAngleDeg[k]);
        worstElongRel = std::max(
            worstElongRel,
            std::abs(rep.cableElongation[k] - simplifiedElongation) / simplifiedElongation);
    }
    const StateView s(run.finalState, run.layout);
    const double omegaNorm = s.omega().norm();

    pass = pass && worstAngle < 1.0 && worstElongRel < 0.05 && omegaNorm < 1e-3 &&
           rep.controlSumResidual < 1e-6 && rep.minNeighborsSensed >= 2;

    report(3, "hover equilibrium", pass,
           fmt("max cable angle %.2e deg (<1), worst elongation error %.2f%% (<5%%), "
               "|omega| %.2e rad/s (<1e-3), control-sum residual %.2e N (<1e-6), "
               "min neighbors %d (>=2)",
               worstAngle, 100.0 * worstElongRel, omegaNorm, rep.controlSumResidual,
               rep.minNeighborsSensed));
}

// ---------------------------------------------------------------- criterion 4
void stabilityReproduction() {
    SimConfig cfg;
    cfg.dragCoefficient = 0.2;  // the lightly damped regime of the worked example
    const StabilityReport rep = measureDisturbanceDecay(cfg, 0.05, 0, 60.0, 0.20);
    const double rel = rep.fitSucceeded
                           ? std::abs(rep.simulatedDecay - rep.predictedDominantDecay) /
                                 rep.predictedDominantDecay
                           : 1.0;
    report(4, "linearized hover stability", rep.allRootsStable && rep.verdictPass,
           fmt("roots stable=%s, predicted decay %.4f 1/s, simulated %.4f 1/s, error %.1f%% "
               "(limit 20%%)",
               rep.allRootsStable ? "yes" : "no", rep.predictedDominantDecay,
               rep.simulatedDecay, 100.0 * rel));
}

// ------------------------------------------------------------- criteria 5-7
MissionMetrics runCase(const std::string& name, RunResult& runOut) {
    SimConfig cfg = scenarioPreset(name);
    runOut = runScenario(cfg);
    return computeMissionMetrics(runOut.log, cfg);
}

void caseObstacle() {
    RunResult run;
    const MissionMetrics m = runCase("case1", run);
    const bool pass = m.horizontalErrorCom < 0.5 && m.azimuthErrorDeg < 5.0 &&
                      m.elevationErrorDeg < 5.0 && m.minAgentObstacleDistance > 1.0 &&
                      m.terminalOmega < 0.01;
    report(5, "case 1: transport and manipulation around an obstacle", pass,
           fmt("horizontal error %.3f m (<0.5), azimuth error %.2f deg (<5), elevation error "
               "%.2f deg (<5), min obstacle distance %.2f m (>1), |omega| %.2e rad/s (<0.01)",
               m.horizontalErrorCom, m.azimuthErrorDeg, m.elevationErrorDeg,
               m.minAgentObstacleDistance, m.terminalOmega));
}

void caseWind() {
    SimConfig cfg = scenarioPreset("case2");
    const RunResult run = runScenario(cfg);
    const MissionMetrics m = computeMissionMetrics(run.log, cfg);

    // after the window closes the angular rate must drop back quickly
    const int cT = run.log.column("time");
    const int cOx = run.log.column("omega_x");
    const int cOy = run.log.column("omega_y");
    const int cOz = run.log.column("omega_z");
    bool omegaRecovered = true;
    for (const auto& row : run.log.rows) {
        if (row[cT] >= cfg.wind.endTime + 20.0) {
            const double w = Vec3(row[cOx], row[cOy], row[cOz]).norm();
            omegaRecovered &= w < 0.01;
        }
    }

    const bool pass = m.horizontalErrorCom < 0.5 && m.azimuthErrorDeg < 5.0 &&
                      m.elevationErrorDeg < 5.0 && m.terminalOmega < 0.01 && omegaRecovered;
    report(6, "case 2: wind disturbance rejection", pass,
           fmt("horizontal error %.3f m (<0.5), azimuth error %.2f deg (<5), elevation error "
               "%.2f deg (<5), |omega| %.2e rad/s (<0.01), recovered within 20 s: %s",
               m.horizontalErrorCom, m.azimuthErrorDeg, m.elevationErrorDeg, m.terminalOmega,
               omegaRecovered ? "yes" : "no"));
}

void caseFailure() {
    SimConfig cfg = scenarioPreset("case3");
    const RunResult run = runScenario(cfg);
    const MissionMetrics m = computeMissionMetrics(run.log, cfg);

    // the failed agent's control is identically zero from the failure on
    const int cT = run.log.column("time");
    const int cUx = run.log.column("u1_x");
    const int cUy = run.log.column("u1_y");
    const int cUz = run.log.column("u1_z");
    bool controlsZero = true;
    for (const auto& row : run.log.rows) {
        if (row[cT] >= cfg.failure.time) {
            controlsZero &= row[cUx] == 0.0 && row[cUy] == 0.0 && row[cUz] == 0.0;
        }
    }

    // still cable-coupled: it hangs within reach of its anchor at the end
    const StateView s(run.finalState, run.layout);
    const Vec3 anchor = s.payloadPos() + s.bodyAxes() * cfg.anchors()[0];
    const double reach = (s.agentPos(0) - anchor).norm();
    const bool coupled = reach < cfg.cableLength() + 0.5;

    const bool pass = m.horizontalErrorCom < 1.0 && m.azimuthErrorDeg < 10.0 &&
                      m.elevationErrorDeg < 10.0 && controlsZero && coupled;
    report(7, "case 3: loss of one agent", pass,
           fmt("horizontal error %.3f m (<1), azimuth error %.2f deg (<10), elevation error "
               "%.2f deg (<10), failed control zero: %s, cable reach %.2f m (coupled: %s)",
               m.horizontalErrorCom, m.azimuthErrorDeg, m.elevationErrorDeg,
               controlsZero ? "yes" : "no", reach, coupled ? "yes" : "no"));
}

// ---------------------------------------------------------------- criterion 8
void determinism() {
    SimConfig cfg = scenarioPreset("case1");
    cfg.totalTime = 15.0;
    cfg.integrator.mode = IntegratorMode::FixedStep;

    const std::string a = logToCsv(runScenario(cfg).log);
    const std::string b = logToCsv(runScenario(cfg).log);

    SimConfig serial = cfg;
    serial.execution = ExecutionMode::Serial;
    const std::string c = logToCsv(runScenario(serial).log);

    report(8, "determinism", a == b && a == c,
           fmt("double run identical: %s, serial matches parallel: %s", a == b ? "yes" : "no",
               a == c ? "yes" : "no"));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();

    forceKernelOracle();
    conservationSuite();
    hoverEquilibrium();
    stabilityReproduction();
    caseObstacle();
    caseWind();
    caseFailure();
    determinism();

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d/8 criteria passed in %.1f s\n", 8 - failures, elapsed);
    return failures == 0 ? 0 : 1;
}
