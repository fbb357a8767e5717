#include "sh3/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sh3/errors.hpp"

namespace sh3 {

namespace {

CellClass classify_cell(double ell, double sigma, double b) {
    try {
        switch (classify(ell, sigma, b).ttype) {
            case TransitionType::Continuous: return CellClass::Continuous;
            case TransitionType::Catastrophic: return CellClass::Catastrophic;
            case TransitionType::Mixed: return CellClass::Mixed;
        }
    } catch (const DegenerateTransitionNumber&) {
        return CellClass::Degenerate;
    } catch (const IndeterminateBranch&) {
        return CellClass::Indeterminate;
    }
    return CellClass::Indeterminate;
}

// Boundary point between adjacent cells of opposite verdict. On I2 the
// boundary is the zero level set of Re P, which is bisected directly until
// the residual drops below 1e-7; on I4 the verdict flip is bisected to 1e-6
// in b.
double bisect_boundary(double ell, double sigma, double b_lo, double b_hi,
                       PartitionClass pc) {
    if (pc == PartitionClass::I2) {
        auto re_p = [&](double b) { return single_hopf_numbers(ell, sigma, b).P.real(); };
        double flo = re_p(b_lo);
        for (int it = 0; it < 200; ++it) {
            const double mid = 0.5 * (b_lo + b_hi);
            const double fm = re_p(mid);
            if (std::abs(fm) <= 1e-7 && b_hi - b_lo <= 1e-6) return mid;
            if ((fm < 0.0) == (flo < 0.0)) {
                b_lo = mid;
                flo = fm;
            } else {
                b_hi = mid;
            }
        }
        return 0.5 * (b_lo + b_hi);
    }
    const CellClass lo_class = classify_cell(ell, sigma, b_lo);
    while (b_hi - b_lo > 1e-6) {
        const double mid = 0.5 * (b_lo + b_hi);
        if (classify_cell(ell, sigma, mid) == lo_class)
            b_lo = mid;
        else
            b_hi = mid;
    }
    return 0.5 * (b_lo + b_hi);
}

void compute_boundary(PhaseDiagram& pd, PartitionClass pc) {
    const GridSpec& g = pd.grid;
    for (int i = 0; i < g.sigma_count; ++i) {
        const double sigma = g.sigma_at(i);
        for (int j = 0; j + 1 < g.b_count; ++j) {
            const CellClass a = pd.cells[i * g.b_count + j];
            const CellClass b = pd.cells[i * g.b_count + j + 1];
            const bool flip = (a == CellClass::Continuous && b == CellClass::Catastrophic) ||
                              (a == CellClass::Catastrophic && b == CellClass::Continuous);
            if (flip)
                pd.boundary.push_back(
                    {sigma, bisect_boundary(pd.ell, sigma, g.b_at(j), g.b_at(j + 1), pc)});
        }
    }
}

PartitionClass require_sweepable(double ell) {
    const PartitionClass pc = analyze(ell).partition_class;
    if (pc != PartitionClass::I2 && pc != PartitionClass::I4)
        throw WrongClass("phase_diagram: ell must be in I2 or I4");
    return pc;
}

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void GridSpec::validate() const {
    if (!(sigma_lo < sigma_hi) || !(b_lo < b_hi) || sigma_count < 2 || b_count < 2)
        throw std::invalid_argument("GridSpec: need lo < hi and count >= 2 on both axes");
}

double GridSpec::sigma_at(int i) const {
    return sigma_lo + (sigma_hi - sigma_lo) * i / (sigma_count - 1);
}

double GridSpec::b_at(int j) const { return b_lo + (b_hi - b_lo) * j / (b_count - 1); }

const char* to_string(CellClass c) {
    switch (c) {
        case CellClass::Continuous: return "continuous";
        case CellClass::Catastrophic: return "catastrophic";
        case CellClass::Mixed: return "mixed";
        case CellClass::Degenerate: return "degenerate";
        case CellClass::Indeterminate: return "indeterminate";
    }
    return "?";
}

const char* to_string(RadiusMethod m) {
    switch (m) {
        case RadiusMethod::Cubic: return "cubic";
        case RadiusMethod::CubicAtLambda: return "cubic-lambda";
        case RadiusMethod::FullProjection: return "full";
    }
    return "?";
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SH3_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    return 0;
}

PhaseDiagram phase_diagram_serial(double ell, const GridSpec& grid) {
    grid.validate();
    const PartitionClass pc = require_sweepable(ell);

    PhaseDiagram pd;
    pd.ell = ell;
    pd.grid = grid;
    pd.cells.resize(static_cast<size_t>(grid.sigma_count) * grid.b_count);
    for (int i = 0; i < grid.sigma_count; ++i)
        for (int j = 0; j < grid.b_count; ++j)
            pd.cells[i * grid.b_count + j] = classify_cell(ell, grid.sigma_at(i), grid.b_at(j));

    compute_boundary(pd, pc);
    return pd;
}

PhaseDiagram phase_diagram(double ell, const GridSpec& grid, int threads) {
    grid.validate();
    const PartitionClass pc = require_sweepable(ell);

    PhaseDiagram pd;
    pd.ell = ell;
    pd.grid = grid;
    const int total = grid.sigma_count * grid.b_count;
    pd.cells.resize(total);

#ifdef _OPENMP
    const int requested = resolve_threads(threads);
    const int nt = requested > 0 ? requested : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
    for (int cell = 0; cell < total; ++cell) {
        const int i = cell / grid.b_count;
        const int j = cell % grid.b_count;
        pd.cells[cell] = classify_cell(ell, grid.sigma_at(i), grid.b_at(j));
    }
#else
    (void)threads;
    for (int cell = 0; cell < total; ++cell) {
        const int i = cell / grid.b_count;
        const int j = cell % grid.b_count;
        pd.cells[cell] = classify_cell(ell, grid.sigma_at(i), grid.b_at(j));
    }
#endif

    compute_boundary(pd, pc);
    return pd;
}

std::vector<RadiusScanRow> radius_scan(double ell, double sigma, double b,
                                       const std::vector<double>& lambdas,
                                       RadiusMethod method) {
    const SingleHopfNumbers shn = single_hopf_numbers(ell, sigma, b);  // WrongClass off I2
    const CriticalAnalysis ca = analyze(ell);

    std::vector<RadiusScanRow> rows;
    rows.reserve(lambdas.size());
    for (double lambda : lambdas) {
        RadiusScanRow row{lambda, std::numeric_limits<double>::quiet_NaN(), 0.0};

        SystemParams p{ell, sigma, b, lambda};
        const std::complex<double> beta{lambda - ca.lambda0, shn.beta_k.imag()};
        try {
            row.radius_analytic = hopf_prediction(beta, shn.P).amplitude;
        } catch (const WrongSide&) {
            row.radius_analytic = std::numeric_limits<double>::quiet_NaN();
        }

        if (lambda == ca.lambda0) {
            row.radius_numeric = 0.0;  // criticality: the orbit degenerates to the origin
            rows.push_back(row);
            continue;
        }

        try {
            ReducedSystem sys = method == RadiusMethod::Cubic
                                    ? make_planar_cubic(p, CubicCoeffs::AtLambda0)
                                    : method == RadiusMethod::CubicAtLambda
                                          ? make_planar_cubic(p, CubicCoeffs::AtLambda)
                                          : make_planar_full_projection(p);
            const Direction dir = lambda > ca.lambda0 ? Direction::Forward : Direction::Backward;
            const double guess = std::isfinite(row.radius_analytic) && row.radius_analytic > 0.0
                                     ? row.radius_analytic
                                     : 1.0;
            // generous bracket: higher-order saturation can park the cycle far
            // below the cubic prediction
            row.radius_numeric = radius_by_binary_search(sys, guess / 64.0, guess * 8.0, dir);
        } catch (const NoCycleFound&) {
        } catch (const BracketInvalid&) {
        }
        rows.push_back(row);
    }
    return rows;
}

std::string phase_diagram_csv(const PhaseDiagram& pd) {
    std::string out = "sigma,b,class\n";
    const GridSpec& g = pd.grid;
    for (int i = 0; i < g.sigma_count; ++i)
        for (int j = 0; j < g.b_count; ++j) {
            out += fmt17(g.sigma_at(i));
            out += ',';
            out += fmt17(g.b_at(j));
            out += ',';
            out += to_string(pd.cells[i * g.b_count + j]);
            out += '\n';
        }
    return out;
}

std::string boundary_csv(const PhaseDiagram& pd) {
    std::string out = "sigma,b_critical\n";
    for (const BoundaryPoint& p : pd.boundary) {
        out += fmt17(p.sigma);
        out += ',';
        out += fmt17(p.b_critical);
        out += '\n';
    }
    return out;
}

std::string radius_scan_csv(const std::vector<RadiusScanRow>& rows, RadiusMethod method) {
    std::string out = "lambda,radius_numeric,radius_analytic,method\n";
    for (const RadiusScanRow& r : rows) {
        out += fmt17(r.lambda);
        out += ',';
        out += fmt17(r.radius_numeric);
        out += ',';
        out += fmt17(r.radius_analytic);
        out += ',';
        out += to_string(method);
        out += '\n';
    }
    return out;
}

}  // namespace sh3
