#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "sh3/manifold.hpp"
#include "sh3/params.hpp"
#include "sh3/transition.hpp"

namespace sh3 {

// Reduced (center-subspace) ODE systems for all four partition classes,
// an adaptive Dormand-Prince 5(4) integrator, limit-cycle detection on a
// Poincare section, and the analytic Hopf amplitude/frequency prediction.

enum class SystemKind { Real1D, PlanarCubic, PlanarFullProjection, RealComplex3D, DoubleHopf4D };

enum class Direction { Forward, Backward };

// Where the planar cubic coefficients A, B, C are evaluated. AtLambda0 is the
// transition normal form (cubic coefficient frozen at
// criticality, limit-cycle radius exactly 2 sqrt((lambda-lambda0)/|Re P|)).
// AtLambda keeps their direct lambda dependence; that variant reproduces the
// reported desk-experiment radii.
enum class CubicCoeffs { AtLambda0, AtLambda };

struct ReducedSystem {
    SystemKind kind;
    int dim;
    SystemParams params;
    // autonomous right-hand side, u and du of length dim
    std::function<void(const double* u, double* du)> field;
};

// du/dt = (lambda - 1) u + b u^2 - u^3 (mode-0 projection; I1).
double vf_real1d(double u, double lambda, double b);

ReducedSystem make_real1d(const SystemParams& p);

// Planar cubic system on I2 in (u1, u2):
//   du1 = (lambda - lambda0) u1 - sigma (k rho)^3 u2
//         + b (u1 A + u2 B + 2 u1 C) - (3/4) u1 (u1^2 + u2^2)
//   du2 = sigma (k rho)^3 u1 + (lambda - lambda0) u2
//         + b (u1 B - u2 A + 2 u2 C) - (3/4) u2 (u1^2 + u2^2)
ReducedSystem make_planar_cubic(const SystemParams& p,
                                CubicCoeffs coeffs = CubicCoeffs::AtLambda0);

// Projection of the full nonlinearity G(u + Phi(u, lambda)) = b v^2 - v^3 onto
// e1, e2 by exact trigonometric quadrature (all orders kept, not just cubic).
ReducedSystem make_planar_full_projection(const SystemParams& p);

// I3 system at b = 0 in (z0, u1, u2), z1 = (u1 - i u2)/2:
//   dz0 = beta_0 z0 - z0^3,  dz1 = beta_1 z1 - z0^2 z1 - z1 |z1|^2.
ReducedSystem make_real_complex_3d(const SystemParams& p);

// Truncated double-Hopf field in (u1..u4), z1 = (u1 - i u2)/2, z2 = (u3 - i u4)/2:
//   dz1 = beta_k z1 + z1 (A |z1|^2 + B |z2|^2)
//   dz2 = beta_{k+1} z2 + z2 (C |z1|^2 + D |z2|^2)
ReducedSystem make_double_hopf_4d(const SystemParams& p);

// The complex-valued field itself, for amplitude-dynamics checks.
void vf_double_hopf(std::complex<double> z1, std::complex<double> z2,
                    std::complex<double> beta1, std::complex<double> beta2,
                    const DoubleHopfNumbers& n, std::complex<double>& dz1,
                    std::complex<double>& dz2);

struct Trajectory {
    std::vector<double> times;                // strictly increasing elapsed time
    std::vector<std::vector<double>> states;  // one vector per time
    Direction direction;
};

struct IntegrateOptions {
    double t_end = 100.0;
    double dt_max = 0.01;
    double tol = 1e-9;        // local error per step (abs and rel)
    int record_stride = 1;    // keep every n-th accepted step
};

// Observer invoked on every accepted step (t is elapsed time along the chosen
// direction). Lets callers stream output so partial results survive a
// NonFiniteState escape.
using StepObserver = std::function<void(double t, const std::vector<double>& u)>;

// Adaptive RK5(4) integration. Backward integrates the negated field.
// Throws StepSizeUnderflow or NonFiniteState (observer output already
// delivered up to the failure).
Trajectory integrate(const ReducedSystem& sys, std::vector<double> u0,
                     const IntegrateOptions& opts, Direction dir = Direction::Forward,
                     const StepObserver& observer = {});

struct LimitCycle {
    double radius;       // u1 at the Poincare crossing {u2 = 0, u1 > 0}
    double mean_radius;  // time-averaged orbit norm over one period
    double period;
    bool stable;         // forward convergence => stable, backward => unstable
};

struct CycleOptions {
    double t_max = 4000.0;
    double rtol = 1e-6;       // successive crossing radii agreement, 3 returns
    double tol = 1e-10;       // integrator tolerance
    double dt_max = 0.01;
    double escape_norm = 1e6;
    double decay_norm = 1e-9;
};

// Runs a planar system until successive Poincare crossings settle.
// Throws NoCycleFound on decay to the origin, escape, or timeout.
LimitCycle find_limit_cycle(const ReducedSystem& sys, std::vector<double> u0,
                            Direction dir, const CycleOptions& opts = {});

// Bisects on the initial radius r of (r, 0): inside a stable cycle one return
// grows the radius, outside it shrinks (reversed roles for backward runs).
// Converges to within 1e-4; throws BracketInvalid when both endpoints behave
// identically.
double radius_by_binary_search(const ReducedSystem& sys, double r_lo, double r_hi,
                               Direction dir = Direction::Forward,
                               double radius_tol = 1e-4);

struct HopfPrediction {
    double amplitude;  // 2 sqrt(-Re beta_k / Re P), the (u1, u2) norm of the orbit
    double omega;      // Im beta_k - Im P (Re beta_k / Re P)
};

// Bifurcated-orbit amplitude and frequency, from the critical
// eigenvalue at the queried lambda and the transition number P. Throws
// WrongSide when -Re beta / Re P < 0.
HopfPrediction hopf_prediction(std::complex<double> beta_k, std::complex<double> P);

// CSV export with header t,u1,..,u<dim>, 17 significant digits.
std::string trajectory_csv(const Trajectory& traj);

}  // namespace sh3
