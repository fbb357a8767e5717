// Timing harness for the phase-diagram sweep: serial reference loop vs the
// OpenMP kernel on the same grid, with an equality check on the outputs.

#include <chrono>
#include <cstdio>
#include <string>

#include "sh3/sweep.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

double time_ms(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const int n = argc > 1 ? std::atoi(argv[1]) : 256;
    const double ell = 2.0 * 3.14159265358979323846;
    const sh3::GridSpec grid{0.0, 10.0, n, 0.0, 2.0, n};

    std::printf("phase diagram sweep, %d x %d cells at ell = 2 pi\n", n, n);
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; parallel path falls back to serial\n");
#endif

    sh3::PhaseDiagram serial, parallel;
    const double t_serial = time_ms([&] { serial = sh3::phase_diagram_serial(ell, grid); });
    const double t_parallel = time_ms([&] { parallel = sh3::phase_diagram(ell, grid); });

    const bool match = sh3::phase_diagram_csv(serial) == sh3::phase_diagram_csv(parallel) &&
                       sh3::boundary_csv(serial) == sh3::boundary_csv(parallel);

    std::printf("serial   : %9.2f ms\n", t_serial);
    std::printf("parallel : %9.2f ms\n", t_parallel);
    std::printf("speedup  : %9.2fx\n", t_serial / t_parallel);
    std::printf("outputs  : %s\n", match ? "byte-identical" : "MISMATCH");
    return match ? 0 : 1;
}
