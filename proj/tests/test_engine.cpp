#include "slung/engine.hpp"

#include "slung/frame.hpp"
#include "slung/payload.hpp"
#include "slung/rhs.hpp"
#include "slung/writers.hpp"

#include <doctest.h>

#include <cmath>

using namespace slung;

namespace {

// Spinning taut configuration in free fall: payload on one side of the system
// center of mass, a single chain and agent on the other, everything in rigid
// rotation about the z axis through the center of mass. Uniform gravity keeps
// the relative geometry intact, rotation keeps every link taut, so no
// slack/taut transitions occur and total mechanical energy is conserved.
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
    cfg.anchorPointsBody = {Vec3::Zero()};  // anchor at the payload center
    cfg.controlMode = ControlMode::GravityOnly;  // unused; controls overridden below
    cfg.integrator.mode = IntegratorMode::FixedStep;

    const double l = cfg.segmentNaturalLength;
    const double k = cfg.cableStiffness;
    const double w2 = spinRate * spinRate;

    // Fixed-point solve of the rotating equilibrium: tensions supply exactly
    // the centripetal force of everything outboard of each link.
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
        vel = Vec3(0.0, spinRate * x, 0.0);  // rigid rotation about z
    };
    place(s.payloadPos(), s.payloadVel(), xP);
    place(s.elementPos(0, 0), s.elementVel(0, 0), x1);
    place(s.elementPos(0, 1), s.elementVel(0, 1), x2);
    place(s.agentPos(0), s.agentVel(0), x3);
    s.swarmCenter() = cfg.goalPoint;  // park the virtual center

    return SpinRig{cfg, y};
}

// Integrate a raw state with zero controls at the default fixed step.
void integrateRaw(const SimConfig& cfg, StateVec& y, double t1) {
    const StateLayout layout = layoutFor(cfg);
    RhsWorkspace ws;
    ws.prepare(cfg);
    std::vector<Vec3> controls(cfg.swarmSize, Vec3::Zero());
    Integrator integ(cfg.integrator);
    const RhsFn rhs = [&](double t, const StateVec& yy, StateVec& dd) {
        assembleRhs(t, yy, dd, controls, cfg, layout, ws, false);
    };
    integ.integrate(rhs, y, 0.0, t1);
}

}  // namespace

TEST_CASE("energy audit: undamped taut spinning system in free fall") {
    SpinRig rig = makeSpinRig(2.0, 9.8, 0.0, 0.0);
    const StateLayout layout = layoutFor(rig.cfg);

    const double e0 = totalMechanicalEnergy(rig.state, rig.cfg, layout);
    REQUIRE(std::abs(e0) > 1.0);  // a meaningful energy scale

    // confirm every link is taut at the start
    const auto tensions = anchorTensions(rig.state, rig.cfg, layout);
    CHECK(tensions[0] > 1.0);

    integrateRaw(rig.cfg, rig.state, 10.0);

    const double e1 = totalMechanicalEnergy(rig.state, rig.cfg, layout);
    CHECK(std::abs(e1 - e0) / std::abs(e0) < 1e-3);

    // free fall carried the whole rig down by g t^2 / 2
    const StateView s(rig.state, layout);
    CHECK(s.payloadPos().z() == doctest::Approx(-0.5 * 9.8 * 100.0).epsilon(1e-6));
}

TEST_CASE("energy is non-increasing across slack/taut transitions when damped") {
    SpinRig rig = makeSpinRig(2.0, 0.0, 0.5, 0.05);
    const StateLayout layout = layoutFor(rig.cfg);

    // radial kick makes the links cycle through slack and taut
    {
        StateRef s(rig.state, layout);
        s.agentVel(0) += Vec3(1.5, 0, 0);
    }

    double prev = totalMechanicalEnergy(rig.state, rig.cfg, layout);
    const double scale = std::abs(prev);
    bool sawSlack = false;
    for (int step = 0; step < 200; ++step) {
        integrateRaw(rig.cfg, rig.state, 0.05);
        const double e = totalMechanicalEnergy(rig.state, rig.cfg, layout);
        CHECK(e <= prev + 1e-9 * scale);
        prev = e;
        if (anchorTensions(rig.state, rig.cfg, layout)[0] == 0.0) sawSlack = true;
    }
    CHECK(sawSlack);
}

TEST_CASE("momentum audit: drift below 1e-9 with gravity off") {
    SpinRig rig = makeSpinRig(2.0, 0.0, 0.3, 0.0);
    const StateLayout layout = layoutFor(rig.cfg);

    const Vec3 p0 = totalLinearMomentum(rig.state, rig.cfg, layout);
    integrateRaw(rig.cfg, rig.state, 10.0);
    const Vec3 p1 = totalLinearMomentum(rig.state, rig.cfg, layout);
    CHECK((p1 - p0).norm() < 1e-9);
}

TEST_CASE("zero-duration run logs only the initial state") {
    SimConfig cfg;
    cfg.totalTime = 0.0;
    const RunResult run = runScenario(cfg);
    CHECK(run.log.rows.size() == 1);
    CHECK(run.log.rows[0][0] == 0.0);
    CHECK(run.finalTime == 0.0);
}

TEST_CASE("fixed-step runs are bit deterministic") {
    SimConfig cfg = scenarioPreset("case1");
    cfg.totalTime = 2.0;
    cfg.integrator.mode = IntegratorMode::FixedStep;

    const RunResult a = runScenario(cfg);
    const RunResult b = runScenario(cfg);
    CHECK(logToCsv(a.log) == logToCsv(b.log));

    // serial execution reproduces the parallel log bit for bit
    SimConfig serial = cfg;
    serial.execution = ExecutionMode::Serial;
    const RunResult c = runScenario(serial);
    CHECK(logToCsv(a.log) == logToCsv(c.log));
}

TEST_CASE("adaptive runs are deterministic too") {
    SimConfig cfg = scenarioPreset("case1");
    cfg.totalTime = 1.0;
    const RunResult a = runScenario(cfg);
    const RunResult b = runScenario(cfg);
    CHECK(logToCsv(a.log) == logToCsv(b.log));
}

TEST_CASE("failed agent control drops to zero and stays there") {
    SimConfig cfg = scenarioPreset("case3");
    cfg.totalTime = 1.0;
    cfg.failure.time = 0.4;
    cfg.integrator.mode = IntegratorMode::FixedStep;

    const RunResult run = runScenario(cfg);
    const int cT = run.log.column("time");
    const int cUx = run.log.column("u1_x");
    const int cUy = run.log.column("u1_y");
    const int cUz = run.log.column("u1_z");
    const int cFlag = run.log.column("failed_agent");

    bool sawLive = false, sawDead = false;
    for (const auto& row : run.log.rows) {
        if (row[cT] < 0.4) {
            CHECK(row[cUz] > 0.0);  // lifting before the failure
            CHECK(row[cFlag] == 0.0);
            sawLive = true;
        } else {
            CHECK(row[cUx] == 0.0);
            CHECK(row[cUy] == 0.0);
            CHECK(row[cUz] == 0.0);
            CHECK(row[cFlag] == 1.0);
            sawDead = true;
        }
    }
    CHECK(sawLive);
    CHECK(sawDead);

    // still cable-coupled but unpowered: it sinks below the climbing swarm
    const StateView s(run.finalState, run.layout);
    CHECK(s.agentVel(0).z() < 0.0);
    CHECK(s.agentPos(0).z() < s.agentPos(1).z() - 0.5);
}

TEST_CASE("omega along a principal axis is preserved by the attitude dynamics") {
    // pure rigid-body spin, no moments: integrate omega and the frame only
    const Vec3 inertia(291.67, 291.67, 250.0);
    StateVec y(12);
    y.setZero();
    y[2] = 0.4;  // omega_z
    Eigen::Map<Mat3>(y.data() + 3) = Mat3::Identity();

    IntegratorSettings settings;
    settings.mode = IntegratorMode::FixedStep;
    settings.fixedStep = 1e-3;
    Integrator integ(settings);
    const RhsFn rhs = [&](double, const StateVec& yy, StateVec& dd) {
        const Vec3 omega = yy.segment<3>(0);
        const Mat3 B = Eigen::Map<const Mat3>(yy.data() + 3);
        dd.segment<3>(0) = payloadAngularAccel(omega, inertia, Vec3::Zero());
        Eigen::Map<Mat3>(dd.data() + 3) = bodyAxesDerivative(B, omega);
    };
    integ.integrate(rhs, y, 0.0, 10.0);

    CHECK(std::abs(y[0]) < 1e-9);
    CHECK(std::abs(y[1]) < 1e-9);
    CHECK(std::abs(y[2] - 0.4) < 1e-9);

    // the frame should have turned by 4 radians about z
    const Mat3 B = Eigen::Map<const Mat3>(y.data() + 3);
    const Mat3 exact = Eigen::AngleAxisd(4.0, Vec3::UnitZ()).toRotationMatrix();
    CHECK((B - exact).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("angular momentum magnitude is conserved without external moments") {
    const Vec3 inertia(291.67, 291.67, 250.0);
    StateVec y(3);
    y << 0.3, -0.2, 0.5;  // skewed spin, gyroscopic term active

    IntegratorSettings settings;
    settings.mode = IntegratorMode::FixedStep;
    settings.fixedStep = 1e-3;
    Integrator integ(settings);
    const RhsFn rhs = [&](double, const StateVec& yy, StateVec& dd) {
        dd = payloadAngularAccel(yy.segment<3>(0), inertia, Vec3::Zero());
    };

    const double h0 = inertia.cwiseProduct(Vec3(y[0], y[1], y[2])).norm();
    integ.integrate(rhs, y, 0.0, 10.0);
    const double h1 = inertia.cwiseProduct(Vec3(y[0], y[1], y[2])).norm();
    CHECK(std::abs(h1 - h0) / h0 < 1e-4);
}

TEST_CASE("frame drift stays bounded through a long run") {
    SimConfig cfg = scenarioPreset("case1");
    cfg.totalTime = 5.0;
    const RunResult run = runScenario(cfg);
    const StateView s(run.finalState, run.layout);
    CHECK(frameDrift(s.bodyAxes()) < 1e-6);
}

TEST_CASE("adaptive and fixed-step integration agree on a mission segment") {
    SimConfig cfg = scenarioPreset("case1");
    cfg.totalTime = 10.0;

    SimConfig fixed = cfg;
    fixed.integrator.mode = IntegratorMode::FixedStep;

    const RunResult a = runScenario(cfg);
    const RunResult b = runScenario(fixed);
    REQUIRE(a.log.rows.size() == b.log.rows.size());

    const int cols[] = {a.log.column("payload_x"), a.log.column("payload_y"),
                        a.log.column("payload_z"), a.log.column("agent1_z")};
    for (std::size_t r = 0; r < a.log.rows.size(); ++r) {
        for (int c : cols) {
            CHECK(a.log.rows[r][c] == doctest::Approx(b.log.rows[r][c]).epsilon(1e-4));
        }
    }
}

TEST_CASE("single-element cables run end to end") {
    SimConfig cfg;
    cfg.cableElements = 1;
    cfg.goalPoint = Vec3(0, 0, cfg.anchorCircleHeight);
    cfg.controlMode = ControlMode::GravityOnly;
    cfg.initialConditions = InitialConditions::Equilibrium;
    cfg.totalTime = 2.0;
    CHECK_NOTHROW(validate(cfg));

    const RunResult run = runScenario(cfg);
    const StateView s(run.finalState, run.layout);
    // started at the static solution, so it stays there
    CHECK(s.payloadVel().norm() < 1e-6);
    CHECK(s.payloadPos().norm() < 1e-6);
    const auto tensions = anchorTensions(run.finalState, cfg, run.layout);
    for (double t : tensions) {
        CHECK(t == doctest::Approx(cfg.payloadMass * cfg.gravity / cfg.swarmSize).epsilon(1e-6));
    }
}

TEST_CASE("explicit anchor lists drive the engine like generated rings") {
    SimConfig cfg;
    cfg.swarmSize = 3;
    cfg.anchorPointsBody = {Vec3(2, 0, 0.5), Vec3(-1, 1.5, 0.5), Vec3(-1, -1.5, 0.5)};
    cfg.goalPoint = Vec3(0, 0, 2);
    cfg.totalTime = 0.5;
    cfg.integrator.mode = IntegratorMode::FixedStep;
    CHECK_NOTHROW(validate(cfg));

    const RunResult run = runScenario(cfg);
    CHECK(run.finalTime == 0.5);
    CHECK(run.finalState.allFinite());
    const auto tensions = anchorTensions(run.finalState, cfg, run.layout);
    CHECK(tensions.size() == 3);
}

TEST_CASE("blow-up aborts with a last-good-time diagnostic") {
    SimConfig cfg = scenarioPreset("hover");
    cfg.totalTime = 1.0;
    cfg.integrator.mode = IntegratorMode::FixedStep;
    cfg.integrator.fixedStep = 0.01;  // far beyond the cable stability limit

    try {
        runScenario(cfg);
        FAIL("expected NumericError");
    } catch (const NumericError& e) {
        CHECK(std::string(e.what()).find("last good") != std::string::npos);
        CHECK(e.timeOfFailure >= 0.0);
        CHECK(e.timeOfFailure < 1.0);
    }
}

TEST_CASE("initial-state override must match the layout") {
    SimConfig cfg;
    StateVec wrong(5);
    wrong.setZero();
    CHECK_THROWS_AS((void)runScenario(cfg, wrong), std::invalid_argument);
}
