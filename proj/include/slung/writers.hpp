#ifndef SLUNG_WRITERS_HPP
#define SLUNG_WRITERS_HPP

#include "slung/analysis.hpp"
#include "slung/engine.hpp"

#include <string>

namespace slung {

/// Serializes the log as comma-separated text, header first, values printed
/// with 17 significant digits so a re-parse reproduces every double exactly.
std::string logToCsv(const TimeSeriesLog& log);
void writeCsv(const TimeSeriesLog& log, const std::string& path);

/// Reads a CSV produced by writeCsv back into a log (event markers are
/// reconstructed from the marker columns and header comments).
TimeSeriesLog readCsv(const std::string& path);

/// Machine-parseable run summary: config echo, metrics, verdict fields.
std::string summaryJson(const SimConfig& cfg, const MissionMetrics& metrics,
                        const IntegratorStats& stats, double finalTime);
void writeSummary(const SimConfig& cfg, const MissionMetrics& metrics,
                  const IntegratorStats& stats, double finalTime,
                  const std::string& path);

/// Plot-ready extracts (payload track, attitude angles, angular velocity,
/// agent tracks), each prefixed with event-marker comment lines.
void writeFigureExtracts(const TimeSeriesLog& log, const std::string& directory);

}  // namespace slung

#endif
