#include "slung/writers.hpp"

#include "slung/config.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace slung {

using nlohmann::json;

namespace {

void appendDouble(std::string& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out += buf;
}

[[noreturn]] void ioFail(const std::string& what, const std::string& path) {
    throw ConfigError(ConfigErrorCode::FileIo, what + ": " + path);
}

}  // namespace

std::string logToCsv(const TimeSeriesLog& log) {
    std::string out;
    out += "# swarm_size=" + std::to_string(log.swarmSize) + "\n";
    if (log.windEnabled) {
        out += "# wind_window_start=";
        appendDouble(out, log.windStart);
        out += "\n# wind_window_end=";
        appendDouble(out, log.windEnd);
        out += "\n";
    }
    if (log.failureAgent > 0) {
        out += "# failure_agent=" + std::to_string(log.failureAgent) + "\n# failure_time=";
        appendDouble(out, log.failureTime);
        out += "\n";
    }
    for (std::size_t i = 0; i < log.header.size(); ++i) {
        if (i) out += ",";
        out += log.header[i];
    }
    out += "\n";
    for (const auto& row : log.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            appendDouble(out, row[i]);
        }
        out += "\n";
    }
    return out;
}

void writeCsv(const TimeSeriesLog& log, const std::string& path) {
    std::ofstream f(path);
    if (!f) ioFail("cannot open time-series output", path);
    f << logToCsv(log);
    if (!f) ioFail("failed while writing time-series output", path);
}

TimeSeriesLog readCsv(const std::string& path) {
    std::ifstream f(path);
    if (!f) ioFail("cannot open time-series input", path);

    TimeSeriesLog log;
    std::string line;
    bool haveHeader = false;
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream ss(line.substr(1));
            std::string key;
            if (std::getline(ss, key, '=')) {
                const std::string value = line.substr(line.find('=') + 1);
                key.erase(0, key.find_first_not_of(' '));
                if (key == "swarm_size") log.swarmSize = std::stoi(value);
                else if (key == "wind_window_start") { log.windStart = std::stod(value); log.windEnabled = true; }
                else if (key == "wind_window_end") log.windEnd = std::stod(value);
                else if (key == "failure_agent") log.failureAgent = std::stoi(value);
                else if (key == "failure_time") log.failureTime = std::stod(value);
            }
            continue;
        }
        std::istringstream ss(line);
        std::string cell;
        if (!haveHeader) {
            while (std::getline(ss, cell, ',')) log.header.push_back(cell);
            haveHeader = true;
            continue;
        }
        std::vector<double> row;
        row.reserve(log.header.size());
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != log.header.size())
            ioFail("malformed row in time-series input", path);
        log.rows.push_back(std::move(row));
    }
    if (!haveHeader) ioFail("missing header in time-series input", path);
    return log;
}

namespace {

json metricsToJson(const MissionMetrics& m) {
    json j;
    j["terminalPayloadPos"] = {m.terminalPayloadPos.x(), m.terminalPayloadPos.y(),
                               m.terminalPayloadPos.z()};
    j["terminalCentroidPos"] = {m.terminalCentroidPos.x(), m.terminalCentroidPos.y(),
                                m.terminalCentroidPos.z()};
    j["horizontalErrorCom"] = m.horizontalErrorCom;
    j["horizontalErrorCentroid"] = m.horizontalErrorCentroid;
    j["verticalErrorCentroid"] = m.verticalErrorCentroid;
    j["terminalAzimuthDeg"] = m.terminalAzimuthDeg;
    j["terminalElevationDeg"] = m.terminalElevationDeg;
    j["azimuthErrorDeg"] = m.azimuthErrorDeg;
    j["elevationErrorDeg"] = m.elevationErrorDeg;
    j["peakOmega"] = m.peakOmega;
    j["terminalOmega"] = m.terminalOmega;
    if (std::isfinite(m.minAgentObstacleDistance))
        j["minAgentObstacleDistance"] = m.minAgentObstacleDistance;
    if (std::isfinite(m.minInterAgentDistance))
        j["minInterAgentDistance"] = m.minInterAgentDistance;
    j["settleTime"] = m.settleTime;
    return j;
}

}  // namespace

std::string summaryJson(const SimConfig& cfg, const MissionMetrics& metrics,
                        const IntegratorStats& stats, double finalTime) {
    json j;
    j["config"] = json::parse(configToJson(cfg));
    j["metrics"] = metricsToJson(metrics);
    j["integrator"] = {{"steps", stats.steps},
                       {"rejectedSteps", stats.rejectedSteps},
                       {"rhsEvaluations", stats.rhsEvaluations}};
    j["finalTime"] = finalTime;
    j["verdicts"] = {{"completed", finalTime >= cfg.totalTime},
                     {"settled", metrics.settleTime >= 0.0}};
    return j.dump(2) + "\n";
}

void writeSummary(const SimConfig& cfg, const MissionMetrics& metrics,
                  const IntegratorStats& stats, double finalTime, const std::string& path) {
    std::ofstream f(path);
    if (!f) ioFail("cannot open summary output", path);
    f << summaryJson(cfg, metrics, stats, finalTime);
    if (!f) ioFail("failed while writing summary output", path);
}

namespace {

void writeExtract(const TimeSeriesLog& log, const std::string& path,
                  const std::vector<std::string>& columns) {
    std::ofstream f(path);
    if (!f) ioFail("cannot open figure extract", path);

    std::string out;
    if (log.windEnabled) {
        out += "# wind_window_start=";
        appendDouble(out, log.windStart);
        out += "\n# wind_window_end=";
        appendDouble(out, log.windEnd);
        out += "\n";
    }
    if (log.failureAgent > 0) {
        out += "# failure_agent=" + std::to_string(log.failureAgent) + "\n# failure_time=";
        appendDouble(out, log.failureTime);
        out += "\n";
    }
    std::vector<int> idx;
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ",";
        out += columns[i];
        idx.push_back(log.column(columns[i]));
    }
    out += "\n";
    for (const auto& row : log.rows) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (i) out += ",";
            appendDouble(out, row[idx[i]]);
        }
        out += "\n";
    }
    f << out;
    if (!f) ioFail("failed while writing figure extract", path);
}

}  // namespace

void writeFigureExtracts(const TimeSeriesLog& log, const std::string& directory) {
    writeExtract(log, directory + "/payload_track.csv",
                 {"time", "payload_x", "payload_y", "payload_z"});
    writeExtract(log, directory + "/attitude.csv", {"time", "azimuth_deg", "elevation_deg"});
    writeExtract(log, directory + "/angular_velocity.csv",
                 {"time", "omega_x", "omega_y", "omega_z"});

    std::vector<std::string> agentCols = {"time"};
    for (int k = 1; k <= log.swarmSize; ++k) {
        agentCols.push_back("agent" + std::to_string(k) + "_x");
        agentCols.push_back("agent" + std::to_string(k) + "_y");
        agentCols.push_back("agent" + std::to_string(k) + "_z");
    }
    writeExtract(log, directory + "/agent_tracks.csv", agentCols);
}

}  // namespace slung
