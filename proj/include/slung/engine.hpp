#ifndef SLUNG_ENGINE_HPP
#define SLUNG_ENGINE_HPP

#include "slung/config.hpp"
#include "slung/controller.hpp"
#include "slung/integrator.hpp"
#include "slung/state.hpp"

#include <optional>
#include <string>
#include <vector>

namespace slung {

/// Uniformly sampled trajectory of everything the analysis layer needs:
/// payload pose and rates, measured attitude angles, anchor-plane centroid,
/// swarm center, per-agent positions and controls, anchor tensions, and
/// event markers. Column order is fixed and documented by the header.
struct TimeSeriesLog {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    double windStart = 0.0, windEnd = 0.0;
    bool windEnabled = false;
    double failureTime = 0.0;
    int failureAgent = 0;  // 1-based, 0 = none
    int swarmSize = 0;

    int column(const std::string& name) const;
    double at(std::size_t row, const std::string& name) const;
};

struct RunResult {
    TimeSeriesLog log;
    StateVec finalState;
    std::vector<Vec3> finalControls;
    ControllerState controller;
    StateLayout layout;
    IntegratorStats integratorStats;
    double finalTime = 0.0;
};

/// Runs one mission: sense -> control tick (zero-order hold) -> integrate to
/// the next tick -> apply events -> re-orthonormalize -> log. Deterministic
/// for a given config regardless of execution mode or thread count.
/// Throws NumericError on integrator failure or non-finite state.
RunResult runScenario(const SimConfig& cfg,
                      const std::optional<StateVec>& initialState = std::nullopt);

/// Sum of m_i v_i over payload, agents and cable elements (kg m/s).
Vec3 totalLinearMomentum(const StateVec& y, const SimConfig& cfg, const StateLayout& layout);

/// Kinetic + gravitational + taut-spring elastic energy (J). Rotational
/// kinetic energy of the payload is included.
double totalMechanicalEnergy(const StateVec& y, const SimConfig& cfg, const StateLayout& layout);

}  // namespace slung

#endif
