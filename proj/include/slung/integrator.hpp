#ifndef SLUNG_INTEGRATOR_HPP
#define SLUNG_INTEGRATOR_HPP

#include "slung/config.hpp"
#include "slung/types.hpp"

#include <functional>

namespace slung {

using RhsFn = std::function<void(double t, const StateVec& y, StateVec& dydt)>;

struct IntegratorStats {
    long steps = 0;
    long rejectedSteps = 0;
    long rhsEvaluations = 0;
};

/// Advances y in place across [t0, t1].
///
/// Adaptive mode is an embedded Dormand-Prince 5(4) pair with PI-free step
/// control and FSAL reuse; fixed mode is the classical 4th-order scheme with
/// the interval split into equal steps no longer than the configured dt.
/// Throws NumericError on step-size underflow.
class Integrator {
public:
    explicit Integrator(const IntegratorSettings& settings) : settings_(settings) {}

    void integrate(const RhsFn& rhs, StateVec& y, double t0, double t1);

    const IntegratorStats& stats() const { return stats_; }
    void resetStats() { stats_ = IntegratorStats{}; }

    /// Carry-over adaptive step size; reset between unrelated runs.
    void resetStepSize() { h_ = 0.0; }

private:
    void integrateFixed(const RhsFn& rhs, StateVec& y, double t0, double t1);
    void integrateAdaptive(const RhsFn& rhs, StateVec& y, double t0, double t1);

    IntegratorSettings settings_;
    IntegratorStats stats_;
    double h_ = 0.0;

    // scratch
    StateVec k1_, k2_, k3_, k4_, k5_, k6_, k7_, ytmp_, yerr_;
};

}  // namespace slung

#endif
