#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "sh3/params.hpp"

namespace sh3 {

// Pseudospectral simulator of the full equation on the torus. The linear
// operator is diagonal in Fourier space with symbol beta_n and is integrated
// exactly; the nonlinearity b u^2 - u^3 is evaluated pointwise on the grid
// (transform, evaluate, transform back, 2/3-rule dealias). Time stepping is
// the fourth-order exponential Runge-Kutta scheme, so halving dt shrinks the
// nonlinear error by ~16x while the linear part stays exact.

// Truncated Fourier representation of a real field u(x) on [0, ell]:
// coefficients u_hat(n) for n in [-N/2, N/2) with u_hat(-n) = conj(u_hat(n)).
// Stored in standard wrap-around transform order.
struct SpectralField {
    int n_modes = 0;  // N, even
    double ell = 0.0;
    std::vector<std::complex<double>> coeffs;  // size N, index (n + N) % N

    std::complex<double> mode(int n) const { return coeffs[index(n)]; }
    void set_mode(int n, std::complex<double> v) { coeffs[index(n)] = v; }
    int index(int n) const { return (n % n_modes + n_modes) % n_modes; }

    // Conjugate-symmetrizes the stored coefficients and zeroes the Nyquist mode.
    void enforce_reality();
};

SpectralField zero_field(int n_modes, double ell);
SpectralField constant_field(int n_modes, double ell, double value);
// amplitude * cos(k rho x)
SpectralField cosine_field(int n_modes, double ell, int k, double amplitude);
// small random real field: modes |n| <= 8 with deterministic seed-driven
// coefficients of magnitude ~ amplitude
SpectralField random_field(int n_modes, double ell, std::uint64_t seed, double amplitude);

// Physical samples u(x_j), x_j = j ell / N.
std::vector<double> to_physical(const SpectralField& f);
double max_abs(const SpectralField& f);

// Real amplitudes of the k-th mode pair under z = (u1 - i u2)/2:
// u1 = 2 Re u_hat(k), u2 = -2 Im u_hat(k).
std::pair<double, double> mode_amplitudes(const SpectralField& f, int k);

struct PdeRunOptions {
    double dt = 1e-3;
    double t_end = 100.0;
    bool dealias = true;       // 2/3 rule
    int record_every = 100;    // snapshot stride in steps
    bool linear_only = false;  // drop the nonlinearity (linear test mode)
};

// Stepper with precomputed exponential factors for a fixed (params, N, dt).
class PdeStepper {
public:
    PdeStepper(const SystemParams& p, int n_modes, double dt, bool dealias,
               bool linear_only = false);
    ~PdeStepper();
    PdeStepper(const PdeStepper&) = delete;
    PdeStepper& operator=(const PdeStepper&) = delete;

    // Advances the field one step of dt. Throws NonFiniteState on overflow.
    void step(SpectralField& f);

    double dt() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Single step convenience wrapper (builds a stepper per call).
SpectralField step(const SpectralField& f, const SystemParams& p, double dt);

struct PdeRun {
    std::vector<double> times;
    std::vector<SpectralField> fields;
    bool escaped = false;   // state went non-finite; records end at the last good step
    double t_escape = 0.0;
};

// Repeated stepping with snapshots every record_every steps (plus t = 0 and
// the final state). Escape is reported, not thrown, so partial output survives.
PdeRun simulate(const SpectralField& init, const SystemParams& p, const PdeRunOptions& opts);

// CSV snapshot "x,u" on the N-point grid, 17 significant digits.
std::string field_csv(const SpectralField& f);

}  // namespace sh3
