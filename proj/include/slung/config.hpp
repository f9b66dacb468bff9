#ifndef SLUNG_CONFIG_HPP
#define SLUNG_CONFIG_HPP

#include "slung/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slung {

enum class IntegratorMode { Adaptive, FixedStep };
enum class ControlMode { Full, GravityOnly };
enum class InitialConditions { Natural, Equilibrium };
enum class ExecutionMode { Serial, Parallel };

struct IntegratorSettings {
    IntegratorMode mode = IntegratorMode::Adaptive;
    double fixedStep = 2.5e-4;   // s, classical 4th-order path
    double relTol = 1e-6;
    double absTol = 1e-8;
    double minStep = 1e-9;       // s, underflow threshold
};

struct WindEvent {
    double startTime = 0.0;      // s
    double endTime = 0.0;        // s
    Vec3 amplitude = Vec3::Zero();  // N, applied to the payload
    double frequencyHz = 1.0;
    bool enabled = false;
};

struct FailureEvent {
    int agentIndex = 0;          // 1-based; 0 disables
    double time = 0.0;           // s
    bool enabled = false;
};

/// All physical parameters, gains, anchor layout, scenario events and solver
/// settings for one run. Defaults reproduce the reference parameter set.
struct SimConfig {
    // payload
    double payloadMass = 20.0;                    // kg
    Vec3 payloadInertiaDiag{291.67, 291.67, 250.0};  // kg m^2, principal axes

    // swarm + cables
    int swarmSize = 7;
    double agentMass = 1.3;                       // kg
    int cableElements = 2;                        // lumped masses per cable
    double cableElementMass = 0.003;              // kg
    double segmentNaturalLength = 1.5;            // m
    double cableStiffness = 10073.0;              // N/m
    double cableDamping = 0.1;                    // N s/m
    // linearized air drag on payload and agents; the large bluff payload
    // dominates. Also the only damping of the payload-sway mode, which
    // limit-cycles near 0.2 rad/s if this is set much smaller.
    double dragCoefficient = 2.0;                 // N s/m

    // anchor layout: explicit points win; otherwise a circle is generated.
    // The ring sits in the center-of-mass plane: a tilted hang then leaves
    // the support centroid over the center of mass and the cable tensions
    // stay balanced at any commanded attitude.
    std::vector<Vec3> anchorPointsBody;           // m, body frame
    double anchorCircleRadius = 4.0;              // m
    double anchorCircleHeight = 0.75;             // m

    // mission (angles kept in degrees exactly as authored; converted at use)
    Vec3 goalPoint{0.0, 0.0, 5.0};                // m
    double desiredAzimuthDeg = 0.0;
    double desiredElevationDeg = 90.0;

    // controller gains
    double transportBeta = 2.0;
    Vec3 centerGainDiag{2.0, 2.0, 20.0};
    double centerScale = 5.0;                     // m
    double repulsionGain = 0.1;
    double repulsionScale = 1.0;                  // m
    double obstacleGain = 500.0;
    double obstacleScale = 3.0;                   // m
    double altitudeGain = 1.0;
    Vec3 pidKp{2.0, 2.0, 4.0};
    Vec3 pidKi{0.0, 0.0, 0.5};
    Vec3 pidKd{0.0, 0.0, 8.0};
    double pidIntegralClamp = 100.0;              // per-axis accumulator bound

    // sensing
    double neighborSenseRadius = 5.0;             // m
    double obstacleSenseRadius = 6.0;             // m
    std::vector<Vec3> obstacles;                  // m

    // run control
    double controlPeriod = 0.01;                  // s
    double loggingPeriod = 0.05;                  // s
    double totalTime = 30.0;                      // s
    double gravity = kGravity;                    // m/s^2; 0 disables gravity
    IntegratorSettings integrator;
    WindEvent wind;
    FailureEvent failure;
    ControlMode controlMode = ControlMode::Full;
    InitialConditions initialConditions = InitialConditions::Natural;
    ExecutionMode execution = ExecutionMode::Parallel;

    /// Anchor points actually in effect (explicit list or generated circle).
    std::vector<Vec3> anchors() const;

    /// Total unstretched cable length L = l_free * (t_n + 1).
    double cableLength() const { return segmentNaturalLength * (cableElements + 1); }
};

enum class ConfigErrorCode {
    ParseFailure,
    UnknownKey,
    SwarmTooSmall,
    BadElementCount,
    NonPositiveMass,
    NonPositiveLength,
    NonPositiveStiffness,
    NegativeDamping,
    NegativeGain,
    AnchorCountMismatch,
    AnchorsNotCoplanar,
    ComOutsideAnchorHull,
    AttitudeSingular,
    BadWindWindow,
    BadFailureIndex,
    BadControlPeriod,
    BadLoggingPeriod,
    BadDuration,
    BadIntegratorSettings,
    FileIo,
};

const char* errorCodeName(ConfigErrorCode code);

struct ConfigError : std::runtime_error {
    ConfigErrorCode code;
    ConfigError(ConfigErrorCode c, const std::string& what)
        : std::runtime_error(what), code(c) {}
};

/// Throws ConfigError with a distinct code for the first violated invariant.
void validate(const SimConfig& cfg);

SimConfig loadConfigFile(const std::string& path);
SimConfig parseConfigJson(const std::string& text);
std::string configToJson(const SimConfig& cfg);
void saveConfigFile(const SimConfig& cfg, const std::string& path);

/// Bundled mission presets. "hover" holds the reference parameters with the
/// gravity-compensation-only controller; case1..case3 are the transport
/// missions (obstacle, wind window, agent failure).
SimConfig scenarioPreset(const std::string& name);

}  // namespace slung

#endif
