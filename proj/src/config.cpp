#include "slung/config.hpp"

#include "slung/frame.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace slung {

using nlohmann::json;

std::vector<Vec3> SimConfig::anchors() const {
    if (!anchorPointsBody.empty()) return anchorPointsBody;
    std::vector<Vec3> pts;
    pts.reserve(swarmSize);
    for (int k = 0; k < swarmSize; ++k) {
        const double phi = 2.0 * M_PI * k / swarmSize;
        pts.emplace_back(anchorCircleRadius * std::cos(phi),
                         anchorCircleRadius * std::sin(phi),
                         anchorCircleHeight);
    }
    return pts;
}

const char* errorCodeName(ConfigErrorCode code) {
    switch (code) {
        case ConfigErrorCode::ParseFailure: return "ParseFailure";
        case ConfigErrorCode::UnknownKey: return "UnknownKey";
        case ConfigErrorCode::SwarmTooSmall: return "SwarmTooSmall";
        case ConfigErrorCode::BadElementCount: return "BadElementCount";
        case ConfigErrorCode::NonPositiveMass: return "NonPositiveMass";
        case ConfigErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ConfigErrorCode::NonPositiveStiffness: return "NonPositiveStiffness";
        case ConfigErrorCode::NegativeDamping: return "NegativeDamping";
        case ConfigErrorCode::NegativeGain: return "NegativeGain";
        case ConfigErrorCode::AnchorCountMismatch: return "AnchorCountMismatch";
        case ConfigErrorCode::AnchorsNotCoplanar: return "AnchorsNotCoplanar";
        case ConfigErrorCode::ComOutsideAnchorHull: return "ComOutsideAnchorHull";
        case ConfigErrorCode::AttitudeSingular: return "AttitudeSingular";
        case ConfigErrorCode::BadWindWindow: return "BadWindWindow";
        case ConfigErrorCode::BadFailureIndex: return "BadFailureIndex";
        case ConfigErrorCode::BadControlPeriod: return "BadControlPeriod";
        case ConfigErrorCode::BadLoggingPeriod: return "BadLoggingPeriod";
        case ConfigErrorCode::BadDuration: return "BadDuration";
        case ConfigErrorCode::BadIntegratorSettings: return "BadIntegratorSettings";
        case ConfigErrorCode::FileIo: return "FileIo";
    }
    return "Unknown";
}

namespace {

[[noreturn]] void fail(ConfigErrorCode code, const std::string& detail) {
    throw ConfigError(code, std::string(errorCodeName(code)) + ": " + detail);
}

// Origin-in-convex-hull test for the anchor footprint: with the points sorted
// by polar angle, the origin is inside iff no angular gap reaches pi.
bool originInsideHull(const std::vector<Vec3>& anchors) {
    std::vector<double> angles;
    for (const auto& a : anchors) {
        const double r = std::hypot(a.x(), a.y());
        if (r < 1e-12) return true;  // an anchor sits on the axis
        angles.push_back(std::atan2(a.y(), a.x()));
    }
    std::sort(angles.begin(), angles.end());
    double maxGap = 2.0 * M_PI - (angles.back() - angles.front());
    for (std::size_t i = 1; i < angles.size(); ++i) {
        maxGap = std::max(maxGap, angles[i] - angles[i - 1]);
    }
    return maxGap < M_PI - 1e-12;
}

}  // namespace

void validate(const SimConfig& cfg) {
    if (cfg.swarmSize < 3) fail(ConfigErrorCode::SwarmTooSmall, "swarmSize must be >= 3");
    if (cfg.cableElements < 1) fail(ConfigErrorCode::BadElementCount, "cableElements must be >= 1");
    if (cfg.payloadMass <= 0.0 || cfg.agentMass <= 0.0 || cfg.cableElementMass <= 0.0)
        fail(ConfigErrorCode::NonPositiveMass, "masses must be strictly positive");
    if (cfg.payloadInertiaDiag.minCoeff() <= 0.0)
        fail(ConfigErrorCode::NonPositiveMass, "inertia diagonal must be strictly positive");
    if (cfg.segmentNaturalLength <= 0.0)
        fail(ConfigErrorCode::NonPositiveLength, "segmentNaturalLength must be strictly positive");
    if (cfg.cableStiffness <= 0.0)
        fail(ConfigErrorCode::NonPositiveStiffness, "cableStiffness must be strictly positive");
    if (cfg.cableDamping < 0.0 || cfg.dragCoefficient < 0.0)
        fail(ConfigErrorCode::NegativeDamping, "damping coefficients must be >= 0");
    if (cfg.repulsionGain < 0.0 || cfg.obstacleGain < 0.0 || cfg.altitudeGain < 0.0 ||
        cfg.repulsionScale <= 0.0 || cfg.obstacleScale <= 0.0 || cfg.centerScale <= 0.0)
        fail(ConfigErrorCode::NegativeGain, "field gains must be >= 0 and scales > 0");

    const auto anchors = cfg.anchors();
    if (static_cast<int>(anchors.size()) != cfg.swarmSize)
        fail(ConfigErrorCode::AnchorCountMismatch, "anchor list size must equal swarmSize");
    for (const auto& a : anchors) {
        if (std::abs(a.z() - anchors.front().z()) > 1e-9)
            fail(ConfigErrorCode::AnchorsNotCoplanar, "anchors must share one body-frame plane");
    }
    if (!originInsideHull(anchors))
        fail(ConfigErrorCode::ComOutsideAnchorHull,
             "payload center of mass must lie inside the anchor footprint");

    if (std::abs(std::sin(radians(cfg.desiredElevationDeg))) < 0.1)
        fail(ConfigErrorCode::AttitudeSingular,
             "|sin(desiredElevation)| must be >= 0.1 for a well-posed tilt offset");

    if (cfg.wind.enabled && !(cfg.wind.startTime < cfg.wind.endTime))
        fail(ConfigErrorCode::BadWindWindow, "wind window needs startTime < endTime");
    if (cfg.failure.enabled &&
        (cfg.failure.agentIndex < 1 || cfg.failure.agentIndex > cfg.swarmSize))
        fail(ConfigErrorCode::BadFailureIndex, "failure agentIndex must be in [1, swarmSize]");

    if (cfg.controlPeriod <= 0.0)
        fail(ConfigErrorCode::BadControlPeriod, "controlPeriod must be > 0");
    if (cfg.loggingPeriod < cfg.controlPeriod ||
        std::abs(std::remainder(cfg.loggingPeriod, cfg.controlPeriod)) > 1e-9)
        fail(ConfigErrorCode::BadLoggingPeriod,
             "loggingPeriod must be a positive multiple of controlPeriod");
    if (cfg.totalTime < 0.0) fail(ConfigErrorCode::BadDuration, "totalTime must be >= 0");
    if (cfg.integrator.fixedStep <= 0.0 || cfg.integrator.relTol <= 0.0 ||
        cfg.integrator.absTol <= 0.0 || cfg.integrator.minStep <= 0.0)
        fail(ConfigErrorCode::BadIntegratorSettings, "integrator steps and tolerances must be > 0");
}

namespace {

Vec3 toVec3(const json& j, const std::string& key) {
    if (!j.is_array() || j.size() != 3)
        fail(ConfigErrorCode::ParseFailure, key + " must be a 3-element array");
    return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

void requireKnownKeys(const json& obj, const std::set<std::string>& known,
                      const std::string& scope) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!known.count(it.key()))
            fail(ConfigErrorCode::UnknownKey, scope + "." + it.key());
    }
}

}  // namespace

SimConfig parseConfigJson(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ConfigErrorCode::ParseFailure, e.what());
    }

    static const std::set<std::string> topKeys = {
        "payloadMass", "payloadInertiaDiag", "swarmSize", "agentMass", "cableElements",
        "cableElementMass", "segmentNaturalLength", "cableStiffness", "cableDamping",
        "dragCoefficient", "anchorPointsBody", "anchorCircle", "goalPoint",
        "desiredAzimuthDeg", "desiredElevationDeg", "transportBeta", "centerGainDiag",
        "centerScale", "repulsionGain", "repulsionScale", "obstacleGain", "obstacleScale",
        "altitudeGain", "pidKp", "pidKi", "pidKd", "pidIntegralClamp",
        "neighborSenseRadius", "obstacleSenseRadius", "obstacles", "controlPeriod",
        "loggingPeriod", "totalTime", "gravity", "integrator", "wind", "failure",
        "controlMode", "initialConditions", "execution"};
    requireKnownKeys(j, topKeys, "config");

    SimConfig cfg;
    auto num = [&](const char* key, double& out) {
        if (j.contains(key)) out = j[key].get<double>();
    };
    auto integer = [&](const char* key, int& out) {
        if (j.contains(key)) out = j[key].get<int>();
    };
    auto vec = [&](const char* key, Vec3& out) {
        if (j.contains(key)) out = toVec3(j[key], key);
    };

    num("payloadMass", cfg.payloadMass);
    vec("payloadInertiaDiag", cfg.payloadInertiaDiag);
    integer("swarmSize", cfg.swarmSize);
    num("agentMass", cfg.agentMass);
    integer("cableElements", cfg.cableElements);
    num("cableElementMass", cfg.cableElementMass);
    num("segmentNaturalLength", cfg.segmentNaturalLength);
    num("cableStiffness", cfg.cableStiffness);
    num("cableDamping", cfg.cableDamping);
    num("dragCoefficient", cfg.dragCoefficient);
    vec("goalPoint", cfg.goalPoint);
    if (j.contains("desiredAzimuthDeg")) cfg.desiredAzimuthDeg = j["desiredAzimuthDeg"].get<double>();
    if (j.contains("desiredElevationDeg")) cfg.desiredElevationDeg = j["desiredElevationDeg"].get<double>();
    num("transportBeta", cfg.transportBeta);
    vec("centerGainDiag", cfg.centerGainDiag);
    num("centerScale", cfg.centerScale);
    num("repulsionGain", cfg.repulsionGain);
    num("repulsionScale", cfg.repulsionScale);
    num("obstacleGain", cfg.obstacleGain);
    num("obstacleScale", cfg.obstacleScale);
    num("altitudeGain", cfg.altitudeGain);
    vec("pidKp", cfg.pidKp);
    vec("pidKi", cfg.pidKi);
    vec("pidKd", cfg.pidKd);
    num("pidIntegralClamp", cfg.pidIntegralClamp);
    num("neighborSenseRadius", cfg.neighborSenseRadius);
    num("obstacleSenseRadius", cfg.obstacleSenseRadius);
    num("controlPeriod", cfg.controlPeriod);
    num("loggingPeriod", cfg.loggingPeriod);
    num("totalTime", cfg.totalTime);
    num("gravity", cfg.gravity);

    if (j.contains("anchorPointsBody")) {
        for (const auto& item : j["anchorPointsBody"])
            cfg.anchorPointsBody.push_back(toVec3(item, "anchorPointsBody"));
    }
    if (j.contains("anchorCircle")) {
        const auto& c = j["anchorCircle"];
        requireKnownKeys(c, {"radius", "height"}, "anchorCircle");
        if (c.contains("radius")) cfg.anchorCircleRadius = c["radius"].get<double>();
        if (c.contains("height")) cfg.anchorCircleHeight = c["height"].get<double>();
    }
    if (j.contains("obstacles")) {
        for (const auto& item : j["obstacles"])
            cfg.obstacles.push_back(toVec3(item, "obstacles"));
    }
    if (j.contains("integrator")) {
        const auto& i = j["integrator"];
        requireKnownKeys(i, {"mode", "fixedStep", "relTol", "absTol", "minStep"}, "integrator");
        if (i.contains("mode")) {
            const std::string mode = i["mode"].get<std::string>();
            if (mode == "adaptive") cfg.integrator.mode = IntegratorMode::Adaptive;
            else if (mode == "fixed") cfg.integrator.mode = IntegratorMode::FixedStep;
            else fail(ConfigErrorCode::BadIntegratorSettings, "integrator.mode: " + mode);
        }
        if (i.contains("fixedStep")) cfg.integrator.fixedStep = i["fixedStep"].get<double>();
        if (i.contains("relTol")) cfg.integrator.relTol = i["relTol"].get<double>();
        if (i.contains("absTol")) cfg.integrator.absTol = i["absTol"].get<double>();
        if (i.contains("minStep")) cfg.integrator.minStep = i["minStep"].get<double>();
    }
    if (j.contains("wind")) {
        const auto& w = j["wind"];
        requireKnownKeys(w, {"startTime", "endTime", "amplitude", "frequencyHz"}, "wind");
        cfg.wind.enabled = true;
        if (w.contains("startTime")) cfg.wind.startTime = w["startTime"].get<double>();
        if (w.contains("endTime")) cfg.wind.endTime = w["endTime"].get<double>();
        if (w.contains("amplitude")) cfg.wind.amplitude = toVec3(w["amplitude"], "wind.amplitude");
        if (w.contains("frequencyHz")) cfg.wind.frequencyHz = w["frequencyHz"].get<double>();
    }
    if (j.contains("failure")) {
        const auto& f = j["failure"];
        requireKnownKeys(f, {"agentIndex", "time"}, "failure");
        cfg.failure.enabled = true;
        if (f.contains("agentIndex")) cfg.failure.agentIndex = f["agentIndex"].get<int>();
        if (f.contains("time")) cfg.failure.time = f["time"].get<double>();
    }
    if (j.contains("controlMode")) {
        const std::string mode = j["controlMode"].get<std::string>();
        if (mode == "full") cfg.controlMode = ControlMode::Full;
        else if (mode == "gravity-only") cfg.controlMode = ControlMode::GravityOnly;
        else fail(ConfigErrorCode::ParseFailure, "controlMode: " + mode);
    }
    if (j.contains("initialConditions")) {
        const std::string ic = j["initialConditions"].get<std::string>();
        if (ic == "natural") cfg.initialConditions = InitialConditions::Natural;
        else if (ic == "equilibrium") cfg.initialConditions = InitialConditions::Equilibrium;
        else fail(ConfigErrorCode::ParseFailure, "initialConditions: " + ic);
    }
    if (j.contains("execution")) {
        const std::string ex = j["execution"].get<std::string>();
        if (ex == "serial") cfg.execution = ExecutionMode::Serial;
        else if (ex == "parallel") cfg.execution = ExecutionMode::Parallel;
        else fail(ConfigErrorCode::ParseFailure, "execution: " + ex);
    }

    validate(cfg);
    return cfg;
}

SimConfig loadConfigFile(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ConfigErrorCode::FileIo, "cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parseConfigJson(ss.str());
}

std::string configToJson(const SimConfig& cfg) {
    json j;
    j["payloadMass"] = cfg.payloadMass;
    j["payloadInertiaDiag"] = {cfg.payloadInertiaDiag.x(), cfg.payloadInertiaDiag.y(),
                               cfg.payloadInertiaDiag.z()};
    j["swarmSize"] = cfg.swarmSize;
    j["agentMass"] = cfg.agentMass;
    j["cableElements"] = cfg.cableElements;
    j["cableElementMass"] = cfg.cableElementMass;
    j["segmentNaturalLength"] = cfg.segmentNaturalLength;
    j["cableStiffness"] = cfg.cableStiffness;
    j["cableDamping"] = cfg.cableDamping;
    j["dragCoefficient"] = cfg.dragCoefficient;
    if (!cfg.anchorPointsBody.empty()) {
        json pts = json::array();
        for (const auto& a : cfg.anchorPointsBody) pts.push_back({a.x(), a.y(), a.z()});
        j["anchorPointsBody"] = pts;
    } else {
        j["anchorCircle"] = {{"radius", cfg.anchorCircleRadius},
                             {"height", cfg.anchorCircleHeight}};
    }
    j["goalPoint"] = {cfg.goalPoint.x(), cfg.goalPoint.y(), cfg.goalPoint.z()};
    j["desiredAzimuthDeg"] = cfg.desiredAzimuthDeg;
    j["desiredElevationDeg"] = cfg.desiredElevationDeg;
    j["transportBeta"] = cfg.transportBeta;
    j["centerGainDiag"] = {cfg.centerGainDiag.x(), cfg.centerGainDiag.y(), cfg.centerGainDiag.z()};
    j["centerScale"] = cfg.centerScale;
    j["repulsionGain"] = cfg.repulsionGain;
    j["repulsionScale"] = cfg.repulsionScale;
    j["obstacleGain"] = cfg.obstacleGain;
    j["obstacleScale"] = cfg.obstacleScale;
    j["altitudeGain"] = cfg.altitudeGain;
    j["pidKp"] = {cfg.pidKp.x(), cfg.pidKp.y(), cfg.pidKp.z()};
    j["pidKi"] = {cfg.pidKi.x(), cfg.pidKi.y(), cfg.pidKi.z()};
    j["pidKd"] = {cfg.pidKd.x(), cfg.pidKd.y(), cfg.pidKd.z()};
    j["pidIntegralClamp"] = cfg.pidIntegralClamp;
    j["neighborSenseRadius"] = cfg.neighborSenseRadius;
    j["obstacleSenseRadius"] = cfg.obstacleSenseRadius;
    if (!cfg.obstacles.empty()) {
        json obs = json::array();
        for (const auto& o : cfg.obstacles) obs.push_back({o.x(), o.y(), o.z()});
        j["obstacles"] = obs;
    }
    j["controlPeriod"] = cfg.controlPeriod;
    j["loggingPeriod"] = cfg.loggingPeriod;
    j["totalTime"] = cfg.totalTime;
    j["gravity"] = cfg.gravity;
    j["integrator"] = {
        {"mode", cfg.integrator.mode == IntegratorMode::Adaptive ? "adaptive" : "fixed"},
        {"fixedStep", cfg.integrator.fixedStep},
        {"relTol", cfg.integrator.relTol},
        {"absTol", cfg.integrator.absTol},
        {"minStep", cfg.integrator.minStep}};
    if (cfg.wind.enabled) {
        j["wind"] = {{"startTime", cfg.wind.startTime},
                     {"endTime", cfg.wind.endTime},
                     {"amplitude", {cfg.wind.amplitude.x(), cfg.wind.amplitude.y(),
                                    cfg.wind.amplitude.z()}},
                     {"frequencyHz", cfg.wind.frequencyHz}};
    }
    if (cfg.failure.enabled) {
        j["failure"] = {{"agentIndex", cfg.failure.agentIndex}, {"time", cfg.failure.time}};
    }
    j["controlMode"] = cfg.controlMode == ControlMode::Full ? "full" : "gravity-only";
    j["initialConditions"] =
        cfg.initialConditions == InitialConditions::Natural ? "natural" : "equilibrium";
    j["execution"] = cfg.execution == ExecutionMode::Serial ? "serial" : "parallel";
    return j.dump(2) + "\n";
}

void saveConfigFile(const SimConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(ConfigErrorCode::FileIo, "cannot write config file: " + path);
    out << configToJson(cfg);
}

SimConfig scenarioPreset(const std::string& name) {
    SimConfig cfg;  // defaults already hold the reference parameter set

    if (name == "default") {
        validate(cfg);
        return cfg;
    }
    if (name == "hover") {
        cfg.controlMode = ControlMode::GravityOnly;
        cfg.initialConditions = InitialConditions::Equilibrium;
        cfg.goalPoint = Vec3(0.0, 0.0, cfg.anchorCircleHeight);
        cfg.desiredAzimuthDeg = 0.0;
        cfg.desiredElevationDeg = 90.0;
        cfg.totalTime = 30.0;
        validate(cfg);
        return cfg;
    }

    cfg.goalPoint = Vec3(15.0, 15.0, 10.0);
    cfg.desiredAzimuthDeg = -60.0;
    cfg.desiredElevationDeg = 60.0;
    cfg.totalTime = 140.0;

    if (name == "case1") {
        cfg.obstacles.push_back(Vec3(6.0, 11.0, 10.0));
    } else if (name == "case2") {
        cfg.wind.enabled = true;
        cfg.wind.startTime = 50.0;
        cfg.wind.endTime = 60.0;
        cfg.wind.amplitude = Vec3(10.0, 10.0, 0.0);
        cfg.wind.frequencyHz = 1.0;
    } else if (name == "case3") {
        cfg.failure.enabled = true;
        cfg.failure.agentIndex = 1;
        cfg.failure.time = 10.0;
    } else {
        fail(ConfigErrorCode::ParseFailure, "unknown scenario preset: " + name);
    }
    validate(cfg);
    return cfg;
}

}  // namespace slung
