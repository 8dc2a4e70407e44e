// scratch: p_cr timing after the tensor fast path
#include <chrono>
#include <cmath>
#include <cstdio>

#include "bellkit/states.hpp"
#include "bellkit/visibility.hpp"

using namespace bellkit;
using Clock = std::chrono::steady_clock;

static double secs(Clock::time_point a, Clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

int main(int argc, char** argv) {
    struct Case { int n, e, s; double target; int restarts; };
    const Case cases[] = {
        {5, 2, 2, 0.7671, 20}, {5, 1, 2, 0.536, 20},
        {7, 1, 2, 0.271, 20}, {7, 2, 2, 0.295, 20}, {7, 3, 2, 0.508, 20},
        {5, 1, 3, 0.477, 8}, {5, 2, 3, 0.746, 8},
    };
    const int only = argc > 1 ? std::atoi(argv[1]) : -1;
    int idx = 0;
    for (const auto& c : cases) {
        if (only >= 0 && idx++ != only) continue;
        const DensityMatrix rho = dicke_mixture(c.n, c.e);
        auto t0 = Clock::now();
        CriticalVisibilityOptions opt;
        opt.restarts = c.restarts;
        opt.seed = 11;
        const auto res = critical_visibility(rho, c.s, opt);
        auto t1 = Clock::now();
        std::printf("p_cr(rho_%d^%d, %dset) = %.6f  target %.4f  diff %.2e  (%.1fs)\n", c.n,
                    c.e, c.s, res.p_crit, c.target, std::abs(res.p_crit - c.target),
                    secs(t0, t1));
        std::fflush(stdout);
    }
    return 0;
}
