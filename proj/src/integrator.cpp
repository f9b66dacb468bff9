#include "slung/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace slung {

namespace {

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
// 5th-minus-4th order error weights
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kShrinkLimit = 0.2;
constexpr double kGrowLimit = 5.0;

}  // namespace

void Integrator::integrate(const RhsFn& rhs, StateVec& y, double t0, double t1) {
    if (t1 <= t0) return;
    if (settings_.mode == IntegratorMode::FixedStep) {
        integrateFixed(rhs, y, t0, t1);
    } else {
        integrateAdaptive(rhs, y, t0, t1);
    }
}

void Integrator::integrateFixed(const RhsFn& rhs, StateVec& y, double t0, double t1) {
    const double span = t1 - t0;
    const long nSteps = std::max(1L, static_cast<long>(std::ceil(span / settings_.fixedStep - 1e-12)));
    const double h = span / nSteps;

    const auto size = y.size();
    k1_.resize(size); k2_.resize(size); k3_.resize(size); k4_.resize(size);
    ytmp_.resize(size);

    double t = t0;
    for (long s = 0; s < nSteps; ++s) {
        rhs(t, y, k1_);
        ytmp_ = y + 0.5 * h * k1_;
        rhs(t + 0.5 * h, ytmp_, k2_);
        ytmp_ = y + 0.5 * h * k2_;
        rhs(t + 0.5 * h, ytmp_, k3_);
        ytmp_ = y + h * k3_;
        rhs(t + h, ytmp_, k4_);
        y += (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        t = t0 + (s + 1) * h;
        stats_.steps++;
        stats_.rhsEvaluations += 4;
    }
}

void Integrator::integrateAdaptive(const RhsFn& rhs, StateVec& y, double t0, double t1) {
    const auto size = y.size();
    k1_.resize(size); k2_.resize(size); k3_.resize(size); k4_.resize(size);
    k5_.resize(size); k6_.resize(size); k7_.resize(size);
    ytmp_.resize(size); yerr_.resize(size);

    double t = t0;
    if (h_ <= 0.0) h_ = std::min(1e-3, t1 - t0);

    rhs(t, y, k1_);
    stats_.rhsEvaluations++;

    while (t < t1) {
        double h = std::min(h_, t1 - t);
        bool accepted = false;
        while (!accepted) {
            if (h < settings_.minStep) {
                throw NumericError("adaptive step size underflow (stiffness failure)", t);
            }

            ytmp_ = y + h * (a21 * k1_);
            rhs(t + c2 * h, ytmp_, k2_);
            ytmp_ = y + h * (a31 * k1_ + a32 * k2_);
            rhs(t + c3 * h, ytmp_, k3_);
            ytmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
            rhs(t + c4 * h, ytmp_, k4_);
            ytmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
            rhs(t + c5 * h, ytmp_, k5_);
            ytmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
            rhs(t + h, ytmp_, k6_);
            ytmp_ = y + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
            rhs(t + h, ytmp_, k7_);  // FSAL: ytmp_ is the 5th-order solution
            stats_.rhsEvaluations += 6;

            yerr_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);

            double errNorm = 0.0;
            for (Eigen::Index i = 0; i < size; ++i) {
                const double scale = settings_.absTol +
                                     settings_.relTol * std::max(std::abs(y[i]), std::abs(ytmp_[i]));
                const double e = yerr_[i] / scale;
                errNorm += e * e;
            }
            errNorm = std::sqrt(errNorm / static_cast<double>(size));

            if (!std::isfinite(errNorm)) {
                // blown-up trial state: treat as a hard rejection
                stats_.rejectedSteps++;
                h *= kShrinkLimit;
                continue;
            }

            if (errNorm <= 1.0) {
                accepted = true;
                t += h;
                y.swap(ytmp_);
                k1_.swap(k7_);  // first-same-as-last
                stats_.steps++;
                const double grow = (errNorm <= 1e-30)
                                        ? kGrowLimit
                                        : kSafety * std::pow(errNorm, -0.2);
                h_ = h * std::clamp(grow, kShrinkLimit, kGrowLimit);
            } else {
                stats_.rejectedSteps++;
                h *= std::clamp(kSafety * std::pow(errNorm, -0.2), kShrinkLimit, 1.0);
            }
        }
    }
}

}  // namespace slung
