#include "sh3/pde.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <mutex>
#include <stdexcept>

#include "sh3/errors.hpp"
#include "sh3/spectrum.hpp"

namespace sh3 {

namespace {

using cplx = std::complex<double>;

// FFTW plan creation is not thread safe; execution on distinct buffers is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

void check_field(const SpectralField& f) {
    if (f.n_modes < 4 || f.n_modes % 2 != 0)
        throw std::invalid_argument("SpectralField: n_modes must be even and >= 4");
    if (!(f.ell > 0.0)) throw std::invalid_argument("SpectralField: ell must be > 0");
    if (static_cast<int>(f.coeffs.size()) != f.n_modes)
        throw std::invalid_argument("SpectralField: coefficient count mismatch");
}

// phi-style coefficient functions of the exponential scheme. Direct formulas
// cancel catastrophically for small |z|; below the threshold the Taylor
// series of the analytic quotients are used instead.
struct EtdrkFactors {
    cplx E, E2;          // e^{z}, e^{z/2}
    cplx Q;              // dt (e^{z/2} - 1)/z
    cplx f1, f2, f3;     // dt * nu_i(z)/z^3
};

cplx series_sum(cplx z, const double* c, int n) {
    cplx acc = 0.0, p = 1.0;
    for (int i = 0; i < n; ++i) {
        acc += c[i] * p;
        p *= z;
    }
    return acc;
}

EtdrkFactors etdrk4_factors(cplx beta, double dt) {
    const cplx z = beta * dt;
    EtdrkFactors f;
    f.E = std::exp(z);
    f.E2 = std::exp(0.5 * z);

    constexpr int K = 22;
    if (std::abs(z) > 0.5) {
        const cplx z3 = z * z * z;
        f.Q = dt * (f.E2 - 1.0) / z;
        f.f1 = dt * (-4.0 - z + f.E * (4.0 - 3.0 * z + z * z)) / z3;
        f.f2 = dt * 2.0 * (2.0 + z + f.E * (-2.0 + z)) / z3;
        f.f3 = dt * (-4.0 - 3.0 * z - z * z + f.E * (4.0 - z)) / z3;
    } else {
        double fact[K + 3];
        fact[0] = 1.0;
        for (int i = 1; i < K + 3; ++i) fact[i] = fact[i - 1] * i;

        // (e^w - 1)/w = sum w^m / (m+1)!
        double cq[K];
        for (int m = 0; m < K; ++m) cq[m] = 1.0 / fact[m + 1];
        f.Q = dt * 0.5 * series_sum(0.5 * z, cq, K);

        // nu1 = -4 - z + e^z (4 - 3z + z^2),  coeff m+3: 4/m! - 3/(m-1)! + 1/(m-2)!
        double c1[K], c2[K], c3[K];
        for (int m = 0; m < K; ++m) {
            const int j = m + 3;
            c1[m] = 4.0 / fact[j] - 3.0 / fact[j - 1] + 1.0 / fact[j - 2];
            c2[m] = 2.0 * (1.0 / fact[j - 1] - 2.0 / fact[j]);
            c3[m] = 4.0 / fact[j] - 1.0 / fact[j - 1];
        }
        f.f1 = dt * series_sum(z, c1, K);
        f.f2 = dt * series_sum(z, c2, K);
        f.f3 = dt * series_sum(z, c3, K);
    }
    return f;
}

}  // namespace

void SpectralField::enforce_reality() {
    coeffs[0] = cplx(coeffs[0].real(), 0.0);
    coeffs[index(-n_modes / 2)] = 0.0;  // Nyquist mode dropped
    for (int n = 1; n < n_modes / 2; ++n) {
        const cplx avg = 0.5 * (coeffs[index(n)] + std::conj(coeffs[index(-n)]));
        coeffs[index(n)] = avg;
        coeffs[index(-n)] = std::conj(avg);
    }
}

SpectralField zero_field(int n_modes, double ell) {
    SpectralField f{n_modes, ell, std::vector<cplx>(n_modes, cplx(0.0))};
    check_field(f);
    return f;
}

SpectralField constant_field(int n_modes, double ell, double value) {
    SpectralField f = zero_field(n_modes, ell);
    f.set_mode(0, value);
    return f;
}

SpectralField cosine_field(int n_modes, double ell, int k, double amplitude) {
    SpectralField f = zero_field(n_modes, ell);
    if (std::abs(k) >= n_modes / 2)
        throw std::invalid_argument("cosine_field: |k| must be < n_modes/2");
    f.set_mode(k, 0.5 * amplitude);
    f.set_mode(-k, 0.5 * amplitude);
    return f;
}

SpectralField random_field(int n_modes, double ell, std::uint64_t seed, double amplitude) {
    SpectralField f = zero_field(n_modes, ell);
    // splitmix64: portable and deterministic across platforms
    auto next = [state = seed]() mutable {
        state += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        z = z ^ (z >> 31);
        return static_cast<double>(z >> 11) * 0x1.0p-53;  // [0,1)
    };
    const int kmax = std::min(8, n_modes / 2 - 1);
    for (int n = 0; n <= kmax; ++n) {
        const cplx v{amplitude * (2.0 * next() - 1.0), amplitude * (2.0 * next() - 1.0)};
        f.set_mode(n, v);
    }
    f.enforce_reality();
    return f;
}

std::pair<double, double> mode_amplitudes(const SpectralField& f, int k) {
    if (std::abs(k) >= f.n_modes / 2)
        throw std::invalid_argument("mode_amplitudes: |k| must be < n_modes/2");
    const cplx z = f.mode(k);
    return {2.0 * z.real(), -2.0 * z.imag()};
}

// ---------------------------------------------------------------------------
// Stepper
// ---------------------------------------------------------------------------

struct PdeStepper::Impl {
    int N;
    double dt;
    bool dealias;
    bool linear_only;
    double b;
    int n_keep;  // largest retained |n| under the 2/3 rule

    std::vector<cplx> E, E2, Q, f1, f2, f3;
    std::vector<cplx> a, bb, c, Nu, Na, Nb, Nc;

    fftw_plan fwd = nullptr, bwd = nullptr;
    std::vector<cplx> buf_s, buf_p;  // spectral and physical work buffers

    Impl(const SystemParams& p, int n_modes, double dt_, bool dealias_, bool linear_only_)
        : N(n_modes), dt(dt_), dealias(dealias_), linear_only(linear_only_), b(p.b) {
        p.validate();
        if (N < 4 || N % 2 != 0)
            throw std::invalid_argument("PdeStepper: n_modes must be even and >= 4");
        if (!(dt > 0.0)) throw std::invalid_argument("PdeStepper: dt must be > 0");

        n_keep = dealias ? N / 3 : N / 2 - 1;

        E.resize(N); E2.resize(N); Q.resize(N); f1.resize(N); f2.resize(N); f3.resize(N);
        for (auto* v : {&a, &bb, &c, &Nu, &Na, &Nb, &Nc}) v->resize(N);
        buf_s.resize(N);
        buf_p.resize(N);

        for (int j = 0; j < N; ++j) {
            const int n = j <= N / 2 ? j : j - N;
            const EtdrkFactors f = etdrk4_factors(growth_rate(n, p), dt);
            E[j] = f.E; E2[j] = f.E2; Q[j] = f.Q; f1[j] = f.f1; f2[j] = f.f2; f3[j] = f.f3;
        }

        std::lock_guard<std::mutex> lock(plan_mutex());
        fwd = fftw_plan_dft_1d(N, reinterpret_cast<fftw_complex*>(buf_p.data()),
                               reinterpret_cast<fftw_complex*>(buf_s.data()), FFTW_FORWARD,
                               FFTW_ESTIMATE);
        bwd = fftw_plan_dft_1d(N, reinterpret_cast<fftw_complex*>(buf_s.data()),
                               reinterpret_cast<fftw_complex*>(buf_p.data()), FFTW_BACKWARD,
                               FFTW_ESTIMATE);
        if (!fwd || !bwd) throw std::runtime_error("PdeStepper: FFTW plan creation failed");
    }

    ~Impl() {
        std::lock_guard<std::mutex> lock(plan_mutex());
        if (fwd) fftw_destroy_plan(fwd);
        if (bwd) fftw_destroy_plan(bwd);
    }

    // spectral -> physical -> g = b u^2 - u^3 -> spectral (normalized, dealiased)
    void nonlinear(const std::vector<cplx>& uhat, std::vector<cplx>& out) {
        if (linear_only) {
            std::fill(out.begin(), out.end(), cplx(0.0));
            return;
        }
        buf_s = uhat;
        fftw_execute(bwd);  // buf_p = physical samples (imag ~ roundoff)
        for (int j = 0; j < N; ++j) {
            const double u = buf_p[j].real();
            buf_p[j] = b * u * u - u * u * u;
        }
        fftw_execute(fwd);
        const double inv = 1.0 / N;
        for (int j = 0; j < N; ++j) {
            const int n = j <= N / 2 ? j : j - N;
            out[j] = std::abs(n) > n_keep ? cplx(0.0) : buf_s[j] * inv;
        }
    }

    void step(SpectralField& f) {
        auto& u = f.coeffs;
        nonlinear(u, Nu);
        for (int j = 0; j < N; ++j) a[j] = E2[j] * u[j] + Q[j] * Nu[j];
        nonlinear(a, Na);
        for (int j = 0; j < N; ++j) bb[j] = E2[j] * u[j] + Q[j] * Na[j];
        nonlinear(bb, Nb);
        for (int j = 0; j < N; ++j) c[j] = E2[j] * a[j] + Q[j] * (2.0 * Nb[j] - Nu[j]);
        nonlinear(c, Nc);
        for (int j = 0; j < N; ++j)
            u[j] = E[j] * u[j] + f1[j] * Nu[j] + f2[j] * (Na[j] + Nb[j]) + f3[j] * Nc[j];

        if (dealias)
            for (int j = 0; j < N; ++j) {
                const int n = j <= N / 2 ? j : j - N;
                if (std::abs(n) > n_keep) u[j] = 0.0;
            }
        f.enforce_reality();

        for (const cplx& v : u)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteState("pde: field escaped to non-finite values");
    }
};

PdeStepper::PdeStepper(const SystemParams& p, int n_modes, double dt, bool dealias,
                       bool linear_only)
    : impl_(std::make_unique<Impl>(p, n_modes, dt, dealias, linear_only)) {}

PdeStepper::~PdeStepper() = default;

void PdeStepper::step(SpectralField& f) {
    check_field(f);
    if (f.n_modes != impl_->N) throw std::invalid_argument("PdeStepper: n_modes mismatch");
    impl_->step(f);
}

double PdeStepper::dt() const { return impl_->dt; }

SpectralField step(const SpectralField& f, const SystemParams& p, double dt) {
    check_field(f);
    PdeStepper stepper(p, f.n_modes, dt, true);
    SpectralField out = f;
    stepper.step(out);
    return out;
}

PdeRun simulate(const SpectralField& init, const SystemParams& p, const PdeRunOptions& opts) {
    check_field(init);
    if (!(opts.t_end > 0.0) || opts.record_every < 1)
        throw std::invalid_argument("simulate: invalid options");
    if (std::abs(p.ell - init.ell) > 1e-12 * std::max(1.0, p.ell))
        throw std::invalid_argument("simulate: field and params disagree on ell");

    PdeStepper stepper(p, init.n_modes, opts.dt, opts.dealias, opts.linear_only);
    const long n_steps = static_cast<long>(std::ceil(opts.t_end / opts.dt - 1e-12));

    PdeRun run;
    SpectralField f = init;
    run.times.push_back(0.0);
    run.fields.push_back(f);

    for (long s = 1; s <= n_steps; ++s) {
        try {
            stepper.step(f);
        } catch (const NonFiniteState&) {
            run.escaped = true;
            run.t_escape = s * opts.dt;
            return run;
        }
        if (s % opts.record_every == 0 || s == n_steps) {
            run.times.push_back(s * opts.dt);
            run.fields.push_back(f);
        }
    }
    return run;
}

std::vector<double> to_physical(const SpectralField& f) {
    check_field(f);
    const int N = f.n_modes;
    std::vector<cplx> in = f.coeffs, out(N);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(N, reinterpret_cast<fftw_complex*>(in.data()),
                                reinterpret_cast<fftw_complex*>(out.data()), FFTW_BACKWARD,
                                FFTW_ESTIMATE);
    }
    // FFTW_ESTIMATE does not touch the input during planning, but re-assign to
    // be safe against future plan-flag changes.
    in = f.coeffs;
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    std::vector<double> phys(N);
    for (int j = 0; j < N; ++j) phys[j] = out[j].real();
    return phys;
}

double max_abs(const SpectralField& f) {
    double m = 0.0;
    for (double v : to_physical(f)) m = std::max(m, std::abs(v));
    return m;
}

std::string field_csv(const SpectralField& f) {
    const std::vector<double> u = to_physical(f);
    std::string out = "x,u\n";
    char buf[64];
    for (int j = 0; j < f.n_modes; ++j) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", f.ell * j / f.n_modes, u[j]);
        out += buf;
    }
    return out;
}

}  // namespace sh3
