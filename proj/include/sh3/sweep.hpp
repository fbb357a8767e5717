#pragma once

#include <string>
#include <vector>

#include "sh3/reduced.hpp"
#include "sh3/transition.hpp"

namespace sh3 {

// Phase diagrams over (sigma, b) and radius-vs-lambda scans, emitted as CSV.
// Grid cells are independent pure-function evaluations; phase_diagram runs
// them under OpenMP while phase_diagram_serial is the plain-loop reference
// the tests compare against (outputs must be byte-identical). Output row
// order is row-major in sigma then b regardless of scheduling.

struct GridSpec {
    double sigma_lo, sigma_hi;
    int sigma_count;
    double b_lo, b_hi;
    int b_count;

    void validate() const;
    double sigma_at(int i) const;
    double b_at(int j) const;
};

enum class CellClass { Continuous, Catastrophic, Mixed, Degenerate, Indeterminate };

const char* to_string(CellClass c);

struct BoundaryPoint {
    double sigma;
    double b_critical;
};

struct PhaseDiagram {
    double ell;
    GridSpec grid;
    std::vector<CellClass> cells;         // row-major: i * b_count + j
    std::vector<BoundaryPoint> boundary;  // continuous/catastrophic contour
};

// Parallel evaluation. threads = 0 defers to SH3_THREADS, then to the OpenMP
// default. Requires analyze(ell) in {I2, I4}.
PhaseDiagram phase_diagram(double ell, const GridSpec& grid, int threads = 0);

// Serial reference implementation (kept for testing the parallel kernel).
PhaseDiagram phase_diagram_serial(double ell, const GridSpec& grid);

// Effective thread count: requested if > 0, else SH3_THREADS if set and > 0,
// else 0 (library default).
int resolve_threads(int requested);

struct RadiusScanRow {
    double lambda;
    double radius_numeric;   // NaN marks rows where no cycle was found
    double radius_analytic;
};

enum class RadiusMethod { Cubic, CubicAtLambda, FullProjection };

const char* to_string(RadiusMethod m);

// Limit-cycle radius by binary search on the chosen reduced field versus the
// analytic Hopf amplitude, per lambda. Requires analyze(ell) = I2.
std::vector<RadiusScanRow> radius_scan(double ell, double sigma, double b,
                                       const std::vector<double>& lambdas, RadiusMethod method);

// CSV writers; fixed schemas, 17 significant digits.
std::string phase_diagram_csv(const PhaseDiagram& pd);   // sigma,b,class
std::string boundary_csv(const PhaseDiagram& pd);        // sigma,b_critical
std::string radius_scan_csv(const std::vector<RadiusScanRow>& rows, RadiusMethod method);

}  // namespace sh3
