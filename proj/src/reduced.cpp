#include "sh3/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "sh3/errors.hpp"

namespace sh3 {

namespace {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with PI-free standard step control.
// ---------------------------------------------------------------------------

class Dopri5 {
public:
    using Rhs = std::function<void(const double*, double*)>;

    Dopri5(Rhs rhs, int dim, double tol, double dt_max)
        : rhs_(std::move(rhs)), dim_(dim), tol_(tol), dt_max_(dt_max) {
        for (auto* v : {&y_, &ynew_, &tmp_, &k1_, &k2_, &k3_, &k4_, &k5_, &k6_, &k7_})
            v->resize(dim_);
    }

    void init(const std::vector<double>& y0) {
        t_ = 0.0;
        y_ = y0;
        rhs_(y_.data(), k1_.data());
        h_ = std::min(dt_max_, 1e-4);
    }

    double t() const { return t_; }
    const std::vector<double>& y() const { return y_; }
    const std::vector<double>& dy() const { return k1_; }  // derivative at t

    // Advances one accepted step, clamped so t never exceeds t_stop.
    // Returns the step actually taken.
    double step(double t_stop) {
        int rejects = 0;
        for (;;) {
            double h = std::min(h_, dt_max_);
            if (t_ + h > t_stop) h = t_stop - t_;
            if (!(h > 0.0)) return 0.0;

            const double err = attempt(h);
            if (!std::isfinite(err)) {
                // Blow-up inside the embedded stages: shrink and retry a few
                // times before declaring escape.
                if (++rejects > 40 || h < hmin())
                    throw NonFiniteState("integrate: state escaped to non-finite values");
                h_ = h * 0.2;
                continue;
            }
            if (err <= 1.0) {
                t_ += h;
                y_.swap(ynew_);
                k1_.swap(k7_);  // FSAL
                const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                h_ = std::min(dt_max_, h * fac);
                if (big_state())
                    throw NonFiniteState("integrate: state escaped beyond 1e12");
                return h;
            }
            if (h < hmin()) {
                // A step collapse with a huge state is a finite-time blow-up,
                // not stiffness.
                if (big_state(1e6))
                    throw NonFiniteState("integrate: state escaped (finite-time blow-up)");
                throw StepSizeUnderflow("integrate: step size underflow");
            }
            h_ = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
            ++rejects;
        }
    }

private:
    double hmin() const { return 1e-14 * std::max(1.0, std::abs(t_)); }

    bool big_state(double bound = 1e12) const {
        for (double v : y_)
            if (std::abs(v) > bound) return true;
        return false;
    }

    // One trial step of size h; fills ynew_/k7_ and returns the scaled error.
    double attempt(double h) {
        auto stage = [&](std::vector<double>& k, std::initializer_list<std::pair<double, const std::vector<double>*>> terms) {
            for (int i = 0; i < dim_; ++i) {
                double acc = y_[i];
                for (const auto& [a, kv] : terms) acc += h * a * (*kv)[i];
                tmp_[i] = acc;
            }
            rhs_(tmp_.data(), k.data());
        };

        stage(k2_, {{1.0 / 5, &k1_}});
        stage(k3_, {{3.0 / 40, &k1_}, {9.0 / 40, &k2_}});
        stage(k4_, {{44.0 / 45, &k1_}, {-56.0 / 15, &k2_}, {32.0 / 9, &k3_}});
        stage(k5_, {{19372.0 / 6561, &k1_},
                    {-25360.0 / 2187, &k2_},
                    {64448.0 / 6561, &k3_},
                    {-212.0 / 729, &k4_}});
        stage(k6_, {{9017.0 / 3168, &k1_},
                    {-355.0 / 33, &k2_},
                    {46732.0 / 5247, &k3_},
                    {49.0 / 176, &k4_},
                    {-5103.0 / 18656, &k5_}});

        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        for (int i = 0; i < dim_; ++i)
            ynew_[i] = y_[i] + h * (b1 * k1_[i] + b3 * k3_[i] + b4 * k4_[i] + b5 * k5_[i] +
                                    b6 * k6_[i]);
        rhs_(ynew_.data(), k7_.data());

        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
        double err2 = 0.0;
        for (int i = 0; i < dim_; ++i) {
            const double e = h * (e1 * k1_[i] + e3 * k3_[i] + e4 * k4_[i] + e5 * k5_[i] +
                                  e6 * k6_[i] + e7 * k7_[i]);
            const double sc = tol_ + tol_ * std::max(std::abs(y_[i]), std::abs(ynew_[i]));
            err2 += (e / sc) * (e / sc);
        }
        return std::sqrt(err2 / dim_);
    }

    Rhs rhs_;
    int dim_;
    double tol_, dt_max_;
    double t_ = 0.0, h_ = 1e-4;
    std::vector<double> y_, ynew_, tmp_, k1_, k2_, k3_, k4_, k5_, k6_, k7_;
};

std::function<void(const double*, double*)> oriented_field(const ReducedSystem& sys,
                                                           Direction dir) {
    if (dir == Direction::Forward) return sys.field;
    auto f = sys.field;
    const int dim = sys.dim;
    return [f, dim](const double* u, double* du) {
        f(u, du);
        for (int i = 0; i < dim; ++i) du[i] = -du[i];
    };
}

double norm2(const std::vector<double>& u) {
    double s = 0.0;
    for (double v : u) s += v * v;
    return std::sqrt(s);
}

}  // namespace

// ---------------------------------------------------------------------------
// Vector fields
// ---------------------------------------------------------------------------

double vf_real1d(double u, double lambda, double b) {
    return (lambda - 1.0) * u + b * u * u - u * u * u;
}

ReducedSystem make_real1d(const SystemParams& p) {
    p.validate();
    const double lambda = p.lambda, b = p.b;
    return {SystemKind::Real1D, 1, p,
            [lambda, b](const double* u, double* du) { du[0] = vf_real1d(u[0], lambda, b); }};
}

namespace {

struct PlanarCubicTerms {
    double lam_hat;    // lambda - lambda0
    double sigma_hat;  // sigma (k rho)^3
    ManifoldI2 m;
    double b;

    void operator()(const double* u, double* du) const {
        const double u1 = u[0], u2 = u[1];
        const double A = m.A(u1, u2), B = m.B(u1, u2), C = m.C(u1, u2);
        const double r2 = u1 * u1 + u2 * u2;
        du[0] = lam_hat * u1 - sigma_hat * u2 + b * (u1 * A + u2 * B + 2.0 * u1 * C) -
                0.75 * u1 * r2;
        du[1] = sigma_hat * u1 + lam_hat * u2 + b * (u1 * B - u2 * A + 2.0 * u2 * C) -
                0.75 * u2 * r2;
    }
};

}  // namespace

ReducedSystem make_planar_cubic(const SystemParams& p, CubicCoeffs coeffs) {
    p.validate();
    const CriticalAnalysis ca = analyze(p.ell);
    if (ca.partition_class != PartitionClass::I2)
        throw WrongClass("make_planar_cubic: ell is not in I2");

    const double krho = ca.k * p.rho();
    const double lambda_eval = coeffs == CubicCoeffs::AtLambda0 ? ca.lambda0 : p.lambda;
    PlanarCubicTerms f{p.lambda - ca.lambda0, p.sigma * krho * krho * krho,
                       manifold_i2(p.ell, p.sigma, p.b, lambda_eval), p.b};
    return {SystemKind::PlanarCubic, 2, p, f};
}

ReducedSystem make_planar_full_projection(const SystemParams& p) {
    p.validate();
    const CriticalAnalysis ca = analyze(p.ell);
    if (ca.partition_class != PartitionClass::I2)
        throw WrongClass("make_planar_full_projection: ell is not in I2");

    const int k = ca.k;
    const double krho = k * p.rho();
    const double lam_hat = p.lambda - ca.lambda0;
    const double sigma_hat = p.sigma * krho * krho * krho;
    const ManifoldI2 m = manifold_i2(p.ell, p.sigma, p.b, p.lambda);
    const double b = p.b;

    // Uniform-grid quadrature is exact here: the integrand is a trig
    // polynomial of mode at most 7k, well below the node count.
    const int M = std::max(32, 8 * k + 8);
    std::vector<double> ck(M), sk(M), x(M);
    for (int j = 0; j < M; ++j) {
        x[j] = p.ell * j / M;
        ck[j] = std::cos(krho * x[j]);
        sk[j] = std::sin(krho * x[j]);
    }

    auto field = [lam_hat, sigma_hat, m, b, M, ck, sk, x](const double* u, double* du) {
        const PhiI2 phi = m.phi(u[0], u[1]);
        double g1 = 0.0, g2 = 0.0;
        for (int j = 0; j < M; ++j) {
            const double v = u[0] * ck[j] + u[1] * sk[j] + phi(x[j]);
            const double g = b * v * v - v * v * v;
            g1 += g * ck[j];
            g2 += g * sk[j];
        }
        const double w = 2.0 / M;
        du[0] = lam_hat * u[0] - sigma_hat * u[1] + w * g1;
        du[1] = sigma_hat * u[0] + lam_hat * u[1] + w * g2;
    };
    return {SystemKind::PlanarFullProjection, 2, p, field};
}

ReducedSystem make_real_complex_3d(const SystemParams& p) {
    p.validate();
    const CriticalAnalysis ca = analyze(p.ell);
    if (ca.partition_class != PartitionClass::I3)
        throw WrongClass("make_real_complex_3d: ell is not in I3");
    if (p.b != 0.0)
        throw NonzeroB("make_real_complex_3d: the 3d reduced system is simulated at b = 0 only");

    const cplx beta0 = growth_rate(0, p);
    const cplx beta1 = growth_rate(1, p);
    auto field = [beta0, beta1](const double* u, double* du) {
        const double z0 = u[0];
        const cplx z1{0.5 * u[1], -0.5 * u[2]};
        const double az1 = std::norm(z1);
        du[0] = beta0.real() * z0 - z0 * z0 * z0;
        const cplx dz1 = beta1 * z1 - z0 * z0 * z1 - z1 * az1;
        du[1] = 2.0 * dz1.real();
        du[2] = -2.0 * dz1.imag();
    };
    return {SystemKind::RealComplex3D, 3, p, field};
}

void vf_double_hopf(cplx z1, cplx z2, cplx beta1, cplx beta2, const DoubleHopfNumbers& n,
                    cplx& dz1, cplx& dz2) {
    const double a1 = std::norm(z1), a2 = std::norm(z2);
    dz1 = beta1 * z1 + z1 * (n.A * a1 + n.B * a2);
    dz2 = beta2 * z2 + z2 * (n.C * a1 + n.D * a2);
}

ReducedSystem make_double_hopf_4d(const SystemParams& p) {
    p.validate();
    const CriticalAnalysis ca = analyze(p.ell);
    if (ca.partition_class != PartitionClass::I4)
        throw WrongClass("make_double_hopf_4d: ell is not in I4");

    const DoubleHopfNumbers n = double_hopf_numbers(p.ell, p.sigma, p.b);
    const cplx beta1 = growth_rate(ca.k, p);
    const cplx beta2 = growth_rate(ca.k + 1, p);
    auto field = [n, beta1, beta2](const double* u, double* du) {
        const cplx z1{0.5 * u[0], -0.5 * u[1]};
        const cplx z2{0.5 * u[2], -0.5 * u[3]};
        cplx dz1, dz2;
        vf_double_hopf(z1, z2, beta1, beta2, n, dz1, dz2);
        du[0] = 2.0 * dz1.real();
        du[1] = -2.0 * dz1.imag();
        du[2] = 2.0 * dz2.real();
        du[3] = -2.0 * dz2.imag();
    };
    return {SystemKind::DoubleHopf4D, 4, p, field};
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

Trajectory integrate(const ReducedSystem& sys, std::vector<double> u0,
                     const IntegrateOptions& opts, Direction dir,
                     const StepObserver& observer) {
    if (static_cast<int>(u0.size()) != sys.dim)
        throw std::invalid_argument("integrate: state dimension mismatch");
    if (!(opts.tol > 0.0) || !(opts.t_end > 0.0) || !(opts.dt_max > 0.0))
        throw std::invalid_argument("integrate: invalid options");
    for (double v : u0)
        if (!std::isfinite(v)) throw std::invalid_argument("integrate: non-finite initial state");

    Dopri5 stepper(oriented_field(sys, dir), sys.dim, opts.tol, opts.dt_max);
    stepper.init(u0);

    Trajectory traj;
    traj.direction = dir;
    traj.times.push_back(0.0);
    traj.states.push_back(u0);
    if (observer) observer(0.0, u0);

    long n = 0;
    while (stepper.t() < opts.t_end) {
        if (stepper.step(opts.t_end) == 0.0) break;
        ++n;
        if (n % opts.record_stride == 0 || stepper.t() >= opts.t_end) {
            traj.times.push_back(stepper.t());
            traj.states.push_back(stepper.y());
            if (observer) observer(stepper.t(), stepper.y());
        }
    }
    return traj;
}

// ---------------------------------------------------------------------------
// Limit cycles
// ---------------------------------------------------------------------------

namespace {

struct Crossing {
    double t;
    double u1;
    int orientation;  // sign of du2/dt at the crossing
};

// Cubic Hermite root of u2 between two accepted steps; returns the
// interpolated crossing. Both endpoint derivatives are available from the
// integrator, which keeps the radius estimate well below the section spacing.
std::optional<Crossing> locate_crossing(double t0, const std::vector<double>& y0,
                                        const std::vector<double>& d0, double t1,
                                        const std::vector<double>& y1,
                                        const std::vector<double>& d1) {
    const double a = y0[1], b = y1[1];
    if (a == 0.0 || (a < 0.0) == (b < 0.0)) return std::nullopt;

    const double h = t1 - t0;
    // Hermite basis in s in [0,1] for u2 and u1
    auto hermite = [&](int i, double s) {
        const double s2 = s * s, s3 = s2 * s;
        const double h00 = 2 * s3 - 3 * s2 + 1, h10 = s3 - 2 * s2 + s, h01 = -2 * s3 + 3 * s2,
                     h11 = s3 - s2;
        return h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
    };

    // bisection on the Hermite polynomial of u2
    double lo = 0.0, hi = 1.0, flo = a;
    for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = hermite(1, mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double s = 0.5 * (lo + hi);
    Crossing c;
    c.t = t0 + s * h;
    c.u1 = hermite(0, s);
    c.orientation = b > a ? +1 : -1;
    if (c.u1 <= 0.0) return std::nullopt;
    return c;
}

}  // namespace

LimitCycle find_limit_cycle(const ReducedSystem& sys, std::vector<double> u0, Direction dir,
                            const CycleOptions& opts) {
    if (sys.dim != 2) throw std::invalid_argument("find_limit_cycle: planar systems only");

    Dopri5 stepper(oriented_field(sys, dir), 2, opts.tol, opts.dt_max);
    stepper.init(u0);

    std::vector<Crossing> crossings;
    int orientation = 0;

    double prev_t = 0.0;
    std::vector<double> prev_y = u0, prev_d = stepper.dy();

    // accumulators for the mean orbit norm over the final return
    double arc_t0 = -1.0, arc_acc = 0.0, arc_len = 0.0;
    bool converged = false;
    LimitCycle out{};

    try {
        while (stepper.t() < opts.t_max) {
            if (stepper.step(opts.t_max) == 0.0) break;
            const double t = stepper.t();
            const auto& y = stepper.y();
            const auto& d = stepper.dy();

            const double nrm = norm2(y);
            if (nrm > opts.escape_norm)
                throw NoCycleFound("find_limit_cycle: trajectory escaped");
            if (nrm < opts.decay_norm)
                throw NoCycleFound("find_limit_cycle: trajectory decayed to the origin");

            if (arc_t0 >= 0.0) {
                arc_acc += 0.5 * (norm2(prev_y) + nrm) * (t - prev_t);
                arc_len += t - prev_t;
            }

            if (auto c = locate_crossing(prev_t, prev_y, prev_d, t, y, d)) {
                if (orientation == 0) orientation = c->orientation;
                if (c->orientation == orientation) {
                    crossings.push_back(*c);
                    const size_t n = crossings.size();
                    if (!converged && n >= 4) {
                        const double r = crossings[n - 1].u1;
                        const double dmax = std::max(
                            {std::abs(crossings[n - 1].u1 - crossings[n - 2].u1),
                             std::abs(crossings[n - 2].u1 - crossings[n - 3].u1),
                             std::abs(crossings[n - 3].u1 - crossings[n - 4].u1)});
                        // relative to the radius itself, so decaying spirals
                        // never register as converged
                        if (dmax < opts.rtol * r) {
                            // one more full return with the norm accumulator on
                            converged = true;
                            out.radius = r;
                            out.period = crossings[n - 1].t - crossings[n - 2].t;
                            arc_t0 = c->t;
                            arc_acc = 0.0;
                            arc_len = 0.0;
                        }
                    } else if (converged && arc_len > 0.0) {
                        out.mean_radius = arc_acc / arc_len;
                        out.period = c->t - arc_t0;
                        out.stable = dir == Direction::Forward;
                        return out;
                    }
                }
            }
            prev_t = t;
            prev_y = y;
            prev_d = d;
        }
    } catch (const NonFiniteState&) {
        throw NoCycleFound("find_limit_cycle: trajectory escaped to non-finite values");
    }
    throw NoCycleFound("find_limit_cycle: no converged cycle within t_max");
}

namespace {

// One Poincare return map evaluation: from (r, 0) to the next crossing of
// {u2 = 0, u1 > 0}. An orbit encircling the origin meets that half-line in a
// single orientation once per period, so no orientation filter is needed, and
// dropping it keeps the map defined when strong damping reverses the rotation
// away from the cycle.
double poincare_return(const ReducedSystem& sys, double r, Direction dir, double tol,
                       double dt_max, double t_max) {
    Dopri5 stepper(oriented_field(sys, dir), 2, tol, dt_max);
    stepper.init({r, 0.0});

    double prev_t = 0.0;
    std::vector<double> prev_y = {r, 0.0}, prev_d = stepper.dy();

    try {
        while (stepper.t() < t_max) {
            if (stepper.step(t_max) == 0.0) break;
            const double t = stepper.t();
            const auto& y = stepper.y();
            const auto& d = stepper.dy();
            if (auto c = locate_crossing(prev_t, prev_y, prev_d, t, y, d); c && c->t > 1e-12)
                return c->u1;
            prev_t = t;
            prev_y = y;
            prev_d = d;
        }
    } catch (const NonFiniteState&) {
        throw NoCycleFound("poincare_return: escaped before returning to the section");
    }
    throw NoCycleFound("poincare_return: no return crossing found");
}

}  // namespace

double radius_by_binary_search(const ReducedSystem& sys, double r_lo, double r_hi,
                               Direction dir, double radius_tol) {
    if (sys.dim != 2) throw std::invalid_argument("radius_by_binary_search: planar systems only");
    if (!(r_lo > 0.0) || !(r_hi > r_lo))
        throw std::invalid_argument("radius_by_binary_search: invalid bracket");

    constexpr double kTol = 1e-10, kDtMax = 0.01, kTmax = 1e4;
    auto growth = [&](double r) {
        return poincare_return(sys, r, dir, kTol, kDtMax, kTmax) > r;
    };

    bool lo_grows, hi_grows;
    try {
        lo_grows = growth(r_lo);
        hi_grows = growth(r_hi);
    } catch (const NoCycleFound&) {
        throw BracketInvalid("radius_by_binary_search: return map undefined at an endpoint");
    }
    if (lo_grows == hi_grows)
        throw BracketInvalid("radius_by_binary_search: both endpoints behave identically");

    while (r_hi - r_lo > radius_tol) {
        const double mid = 0.5 * (r_lo + r_hi);
        if (growth(mid) == lo_grows)
            r_lo = mid;
        else
            r_hi = mid;
    }
    return 0.5 * (r_lo + r_hi);
}

HopfPrediction hopf_prediction(cplx beta_k, cplx P) {
    if (std::abs(P.real()) <= kDegeneracyTol)
        throw DegenerateTransitionNumber("hopf_prediction: Re P = 0");
    const double ratio = -beta_k.real() / P.real();
    if (ratio < 0.0)
        throw WrongSide("hopf_prediction: no bifurcated orbit on this side of lambda0");
    HopfPrediction out;
    out.amplitude = 2.0 * std::sqrt(ratio);
    out.omega = beta_k.imag() - P.imag() * (beta_k.real() / P.real());
    return out;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    const size_t dim = traj.states.empty() ? 0 : traj.states.front().size();
    for (size_t i = 1; i <= dim; ++i) out += ",u" + std::to_string(i);
    out += "\n";
    char buf[32];
    for (size_t r = 0; r < traj.times.size(); ++r) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[r]);
        out += buf;
        for (double v : traj.states[r]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            out += ",";
            out += buf;
        }
        out += "\n";
    }
    return out;
}

}  // namespace sh3
