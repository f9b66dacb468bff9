// Benchmarks the serial reference right-hand side against the OpenMP kernels
// on scaled-up swarms and checks that both produce identical bits.

#include "slung/rhs.hpp"

#include "slung/controller.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace slung;

namespace {

double benchmark(const SimConfig& cfg, bool parallel, int evals, StateVec& checksumOut) {
    const StateLayout layout = layoutFor(cfg);
    StateVec y = naturalInitialState(cfg);

    // shake the state so the kernels do representative work
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> dist(-0.05, 0.05);
    for (Eigen::Index i = 0; i < y.size(); ++i) y[i] += dist(rng);
    StateRef s(y, layout);
    s.bodyAxes() = Mat3::Identity();

    std::vector<Vec3> controls(cfg.swarmSize, gravityCompensation(cfg));
    RhsWorkspace ws;
    ws.prepare(cfg);
    StateVec dydt(layout.size());

    const auto start = std::chrono::steady_clock::now();
    for (int e = 0; e < evals; ++e) {
        assembleRhs(1e-3 * e, y, dydt, controls, cfg, layout, ws, parallel);
    }
    const auto stop = std::chrono::steady_clock::now();
    checksumOut = dydt;
    return std::chrono::duration<double>(stop - start).count();
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP, parallel path runs serially\n");
#endif
    std::printf("%8s %6s %12s %12s %9s %9s\n", "agents", "elems", "serial s", "parallel s",
                "speedup", "bitmatch");

    for (int n : {8, 32, 128, 512}) {
        for (int tn : {2, 8}) {
            SimConfig cfg;
            cfg.swarmSize = n;
            cfg.cableElements = tn;
            cfg.anchorCircleRadius = 0.5 * n;  // keep neighbors apart

            const int evals = 200000 / n + 100;
            StateVec serialOut, parallelOut;
            const double tSerial = benchmark(cfg, false, evals, serialOut);
            const double tParallel = benchmark(cfg, true, evals, parallelOut);
            const bool match = (serialOut.array() == parallelOut.array()).all();

            std::printf("%8d %6d %12.4f %12.4f %8.2fx %9s\n", n, tn, tSerial, tParallel,
                        tSerial / tParallel, match ? "yes" : "NO");
            if (!match) return 1;
        }
    }
    return 0;
}
