#include "slung/integrator.hpp"

#include <doctest.h>

#include <cmath>

using namespace slung;

namespace {

// damped oscillator xdot = v, vdot = -w2 x - 2 zeta w v, exact solution known
struct Oscillator {
    double omega;
    double zeta;

    void operator()(double, const StateVec& y, StateVec& dy) const {
        dy[0] = y[1];
        dy[1] = -omega * omega * y[0] - 2.0 * zeta * omega * y[1];
    }

    double exactPosition(double t, double x0) const {
        if (zeta == 0.0) return x0 * std::cos(omega * t);
        const double wd = omega * std::sqrt(1.0 - zeta * zeta);
        return x0 * std::exp(-zeta * omega * t) *
               (std::cos(wd * t) + zeta * omega / wd * std::sin(wd * t));
    }
};

double fixedStepError(double dt) {
    const Oscillator osc{2.0, 0.1};
    IntegratorSettings settings;
    settings.mode = IntegratorMode::FixedStep;
    settings.fixedStep = dt;
    Integrator integ(settings);

    StateVec y(2);
    y << 1.0, 0.0;
    integ.integrate([&](double t, const StateVec& yy, StateVec& dd) { osc(t, yy, dd); }, y,
                    0.0, 5.0);
    return std::abs(y[0] - osc.exactPosition(5.0, 1.0));
}

}  // namespace

TEST_CASE("fixed-step scheme shows 4th-order convergence") {
    const double errCoarse = fixedStepError(2e-3);
    const double errFine = fixedStepError(1e-3);
    const double ratio = errCoarse / errFine;
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("free fall over one second") {
    IntegratorSettings settings;
    settings.mode = IntegratorMode::FixedStep;
    settings.fixedStep = 2.5e-4;
    Integrator integ(settings);

    StateVec y(2);
    y << 0.0, 0.0;  // z, vz
    integ.integrate(
        [](double, const StateVec&, StateVec& dd) {
            dd[0] = 0.0;  // filled below
        },
        y, 0.0, 0.0);  // no-op guard for t1 <= t0

    const RhsFn rhs = [](double, const StateVec& yy, StateVec& dd) {
        dd[0] = yy[1];
        dd[1] = -9.8;
    };
    integ.integrate(rhs, y, 0.0, 1.0);
    CHECK(y[0] == doctest::Approx(-4.9).epsilon(1e-12));

    // the adaptive pair agrees
    settings.mode = IntegratorMode::Adaptive;
    Integrator adaptive(settings);
    StateVec z(2);
    z << 0.0, 0.0;
    adaptive.integrate(rhs, z, 0.0, 1.0);
    CHECK(z[0] == doctest::Approx(-4.9).epsilon(1e-9));
}

TEST_CASE("undamped spring keeps its analytic period") {
    // reference stiffness on an agent-sized mass
    const double k = 10073.0, m = 1.3;
    const double omega = std::sqrt(k / m);
    const Oscillator osc{omega, 0.0};

    IntegratorSettings settings;
    settings.mode = IntegratorMode::FixedStep;
    settings.fixedStep = 2.5e-4;
    Integrator integ(settings);

    StateVec y(2);
    y << 0.1, 0.0;
    const RhsFn rhs = [&](double t, const StateVec& yy, StateVec& dd) { osc(t, yy, dd); };

    // count upward zero crossings of x over many periods
    const double horizon = 20.0 * 2.0 * M_PI / omega;
    double prev = y[0];
    double prevT = 0.0;
    std::vector<double> crossings;
    const double dtSample = 2.5e-4;
    for (double t = dtSample; t <= horizon + 1e-12; t += dtSample) {
        integ.integrate(rhs, y, prevT, t);
        if (prev < 0.0 && y[0] >= 0.0) {
            // linear interpolation of the crossing instant
            crossings.push_back(prevT + dtSample * (-prev) / (y[0] - prev));
        }
        prev = y[0];
        prevT = t;
    }
    REQUIRE(crossings.size() >= 10);
    const double measuredPeriod =
        (crossings.back() - crossings.front()) / static_cast<double>(crossings.size() - 1);
    const double analyticPeriod = 2.0 * M_PI / omega;
    CHECK(std::abs(measuredPeriod - analyticPeriod) / analyticPeriod < 1e-4);
}

TEST_CASE("adaptive mode meets its tolerance on a stiff-ish oscillation") {
    const double omega = 300.0;
    const Oscillator osc{omega, 0.05};
    IntegratorSettings settings;
    settings.mode = IntegratorMode::Adaptive;
    Integrator integ(settings);

    StateVec y(2);
    y << 1.0, 0.0;
    integ.integrate([&](double t, const StateVec& yy, StateVec& dd) { osc(t, yy, dd); }, y,
                    0.0, 1.0);
    CHECK(y[0] == doctest::Approx(osc.exactPosition(1.0, 1.0)).epsilon(1e-3));
    CHECK(integ.stats().steps > 100);
}

TEST_CASE("step-size underflow raises a stiffness failure") {
    IntegratorSettings settings;
    settings.mode = IntegratorMode::Adaptive;
    settings.minStep = 1e-9;
    Integrator integ(settings);

    // discontinuous right-hand side the error estimator can never accept
    const RhsFn nasty = [](double t, const StateVec& yy, StateVec& dd) {
        dd[0] = (std::sin(1e9 * t) > 0.0 ? 1e12 : -1e12) * (1.0 + yy[0] * yy[0]);
    };
    StateVec y(1);
    y << 0.0;
    CHECK_THROWS_AS(integ.integrate(nasty, y, 0.0, 1.0), NumericError);
}
