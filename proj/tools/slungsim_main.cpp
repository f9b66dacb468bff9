// slungsim: scenario runner and verification front end for the cable-slung
// payload swarm simulator.
//
// Exit codes: 0 success, 1 configuration/input error, 2 numerical failure,
// 3 verification-check failure.

#include "slung/analysis.hpp"
#include "slung/engine.hpp"
#include "slung/frame.hpp"
#include "slung/writers.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

using namespace slung;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNumeric = 2;
constexpr int kExitCheckFailed = 3;

struct RunOptions {
    std::string outDir = "out";
    bool fixedStep = false;
    bool seedCheck = false;
    bool figures = false;
};

int executeRun(SimConfig cfg, const RunOptions& opt) {
    if (opt.fixedStep) cfg.integrator.mode = IntegratorMode::FixedStep;
    std::filesystem::create_directories(opt.outDir);

    const RunResult run = runScenario(cfg);

    if (opt.seedCheck) {
        const RunResult rerun = runScenario(cfg);
        if (logToCsv(run.log) != logToCsv(rerun.log)) {
            std::cerr << "seed-check FAILED: repeated run diverged from the first\n";
            return kExitCheckFailed;
        }
        std::cout << "seed-check: byte-identical logs across two runs\n";
    }

    const MissionMetrics metrics = computeMissionMetrics(run.log, cfg);
    writeCsv(run.log, opt.outDir + "/timeseries.csv");
    writeSummary(cfg, metrics, run.integratorStats, run.finalTime,
                 opt.outDir + "/summary.json");
    if (opt.figures) writeFigureExtracts(run.log, opt.outDir);

    std::cout << "simulated " << run.finalTime << " s, " << run.log.rows.size()
              << " samples, " << run.integratorStats.steps << " integrator steps\n"
              << "terminal payload position: " << run.log.rows.back()[1] << ", "
              << run.log.rows.back()[2] << ", " << run.log.rows.back()[3] << "\n"
              << "horizontal error (com): " << metrics.horizontalErrorCom << " m\n"
              << "azimuth/elevation: " << metrics.terminalAzimuthDeg << " / "
              << metrics.terminalElevationDeg << " deg\n"
              << "outputs in " << opt.outDir << "\n";
    return kExitOk;
}

int runVerifyEquilibrium(const SimConfig& cfg) {
    const RunResult run = runScenario(cfg);
    const EquilibriumReport report = verifyEquilibrium(run, cfg);

    if (!report.steady) {
        std::cerr << "not steady: max residual speed " << report.maxResidualSpeed
                  << " m/s, refusing to verify\n";
        return kExitCheckFailed;
    }

    double worstAngle = 0.0, worstElongationError = 0.0;
    for (std::size_t k = 0; k < report.cableAngleDeg.size(); ++k) {
        worstAngle = std::max(worstAngle, report.cableAngleDeg[k]);
        worstElongationError =
            std::max(worstElongationError,
                     std::abs(report.cableElongation[k] - report.analyticElongation) /
                         report.analyticElongation);
        std::cout << "cable " << k + 1 << ": angle " << report.cableAngleDeg[k]
                  << " deg, elongation " << report.cableElongation[k] << " m\n";
    }
    std::cout << "analytic elongation: " << report.analyticElongation << " m\n"
              << "control-sum residual: " << report.controlSumResidual << " N\n"
              << "moment residual: " << report.momentResidual << " N m\n"
              << "worst chain node residual: " << report.maxChainNodeResidual << " N\n"
              << "min neighbors sensed: " << report.minNeighborsSensed << "\n";

    const bool pass = worstAngle < 1.0 && worstElongationError < 0.05 &&
                      report.controlSumResidual < 1e-6;
    std::cout << (pass ? "equilibrium checks PASSED\n" : "equilibrium checks FAILED\n");
    return pass ? kExitOk : kExitCheckFailed;
}

int runStability(const SimConfig& cfg, double perturbation, double horizon,
                 bool skipEmpirical) {
    StabilityReport report;
    if (skipEmpirical) {
        report = analyticStabilityRoots(cfg, staticGamma(cfg));
    } else {
        report = measureDisturbanceDecay(cfg, perturbation, 0, horizon);
    }

    std::cout << "gamma: " << report.gamma << " m\n"
              << "effective stiffness: " << report.effectiveStiffness << " N/m\n"
              << "x-y roots: " << report.rootXY[0] << ", " << report.rootXY[1] << "\n"
              << "z roots:   " << report.rootZ[0] << ", " << report.rootZ[1] << "\n"
              << "predicted dominant decay: " << report.predictedDominantDecay << " 1/s\n";
    if (!skipEmpirical) {
        std::cout << "simulated decay: " << report.simulatedDecay << " 1/s (fit "
                  << (report.fitSucceeded ? "ok" : "failed") << ")\n";
    }
    std::cout << "verdict: " << report.verdict << "\n";

    const bool pass = skipEmpirical ? report.allRootsStable : report.verdictPass;
    return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cable-slung payload swarm transport simulator"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string configPath;
    std::string scenarioName;
    std::string emitConfigPath;
    std::string logPath;
    double totalTimeOverride = -1.0;
    double perturbation = 0.05;
    double horizon = 60.0;
    bool skipEmpirical = false;

    auto* cmdRun = app.add_subcommand("run", "simulate a config file");
    cmdRun->add_option("--config", configPath, "config JSON path")->required();
    cmdRun->add_option("--out-dir", opt.outDir, "output directory");
    cmdRun->add_flag("--fixed-step", opt.fixedStep, "force the fixed-step integrator");
    cmdRun->add_flag("--seed-check", opt.seedCheck, "run twice and demand identical logs");
    cmdRun->add_flag("--figures", opt.figures, "emit plot-ready extracts");

    auto* cmdScenario =
        app.add_subcommand("scenario", "simulate a bundled preset (case1|case2|case3|hover)");
    cmdScenario->add_option("name", scenarioName, "preset name")->required();
    cmdScenario->add_option("--out-dir", opt.outDir, "output directory");
    cmdScenario->add_flag("--fixed-step", opt.fixedStep, "force the fixed-step integrator");
    cmdScenario->add_flag("--seed-check", opt.seedCheck, "run twice and demand identical logs");
    cmdScenario->add_flag("--figures", opt.figures, "emit plot-ready extracts");
    cmdScenario->add_option("--total-time", totalTimeOverride, "override mission duration (s)");
    cmdScenario->add_option("--emit-config", emitConfigPath,
                            "write the preset config JSON to this path and exit");

    auto* cmdVerify =
        app.add_subcommand("verify-equilibrium", "run a hover and verify the static balance");
    cmdVerify->add_option("--config", configPath, "config JSON path (default: hover preset)");

    auto* cmdStability =
        app.add_subcommand("stability", "analytic hover roots plus a perturbation-decay run");
    cmdStability->add_option("--config", configPath, "config JSON path (default: reference)");
    cmdStability->add_option("--perturbation", perturbation, "agent displacement (m)");
    cmdStability->add_option("--horizon", horizon, "simulated decay horizon (s)");
    cmdStability->add_flag("--skip-empirical", skipEmpirical, "analytic roots only");

    auto* cmdMetrics = app.add_subcommand("metrics", "recompute metrics from an emitted log");
    cmdMetrics->add_option("--log", logPath, "timeseries.csv path")->required();
    cmdMetrics->add_option("--config", configPath, "config JSON path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (cmdRun->parsed()) {
            return executeRun(loadConfigFile(configPath), opt);
        }
        if (cmdScenario->parsed()) {
            SimConfig cfg = scenarioPreset(scenarioName);
            if (!emitConfigPath.empty()) {
                saveConfigFile(cfg, emitConfigPath);
                std::cout << "wrote " << emitConfigPath << "\n";
                return kExitOk;
            }
            if (totalTimeOverride >= 0.0) cfg.totalTime = totalTimeOverride;
            return executeRun(cfg, opt);
        }
        if (cmdVerify->parsed()) {
            const SimConfig cfg =
                configPath.empty() ? scenarioPreset("hover") : loadConfigFile(configPath);
            return runVerifyEquilibrium(cfg);
        }
        if (cmdStability->parsed()) {
            const SimConfig cfg = configPath.empty() ? SimConfig{} : loadConfigFile(configPath);
            return runStability(cfg, perturbation, horizon, skipEmpirical);
        }
        if (cmdMetrics->parsed()) {
            const SimConfig cfg = loadConfigFile(configPath);
            const TimeSeriesLog log = readCsv(logPath);
            const MissionMetrics metrics = computeMissionMetrics(log, cfg);
            IntegratorStats none;
            std::cout << summaryJson(cfg, metrics, none,
                                     log.rows.empty() ? 0.0 : log.rows.back()[0]);
            return kExitOk;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitOk;
}
