#include "sh3/manifold.hpp"

#include <cmath>

#include "sh3/errors.hpp"

namespace sh3 {

namespace {

using cplx = std::complex<double>;

cplx checked_quotient(double numerator, cplx denominator, const char* what) {
    if (std::abs(denominator) <= 1e-12)
        throw DegenerateDenominator(std::string("manifold: vanishing denominator in ") + what);
    return numerator / denominator;
}

}  // namespace

MuCoefficients mu_coefficients(double ell, double sigma, double b, double lambda) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I4 || ca.k < 2)
        throw WrongClass("mu_coefficients: requires I4 with k >= 2");

    const int k = ca.k;
    const SystemParams p{ell, sigma, b, lambda};
    const cplx bk = growth_rate(k, p);
    const cplx bk1 = growth_rate(k + 1, p);
    const cplx b0 = growth_rate(0, p);
    const cplx b1 = growth_rate(1, p);

    MuCoefficients mu;
    mu.mu1 = checked_quotient(b, 2.0 * bk - growth_rate(2 * k, p), "mu1");
    mu.mu2 = checked_quotient(b, 2.0 * bk1 - growth_rate(2 * k + 2, p), "mu2");
    mu.mu3 = checked_quotient(b, bk + std::conj(bk) - b0, "mu3");
    mu.mu4 = checked_quotient(b, bk1 + std::conj(bk1) - b0, "mu4");
    mu.mu5 = checked_quotient(2.0 * b, std::conj(bk) + bk1 - b1, "mu5");
    return mu;
}

NuCoefficients nu_coefficients(double ell, double sigma, double b, double lambda) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I4 || ca.k != 1)
        throw WrongClass("nu_coefficients: requires I4 with k = 1");

    const SystemParams p{ell, sigma, b, lambda};
    const cplx b1 = growth_rate(1, p);
    const cplx b2 = growth_rate(2, p);
    const cplx b0 = growth_rate(0, p);

    NuCoefficients nu;
    nu.nu1 = checked_quotient(b, 2.0 * b2 - growth_rate(4, p), "nu1");
    nu.nu2 = checked_quotient(b, b1 + std::conj(b1) - b0, "nu2");
    nu.nu3 = checked_quotient(b, b2 + std::conj(b2) - b0, "nu3");
    return nu;
}

double PhiI2::operator()(double x) const {
    const double t = 2.0 * k * rho * x;
    return a2k * std::cos(t) + b2k * std::sin(t) + mean;
}

double ManifoldI2::A(double u1, double u2) const {
    return 0.5 * (w.real() * (u1 * u1 - u2 * u2) + 2.0 * w.imag() * u1 * u2);
}

double ManifoldI2::B(double u1, double u2) const {
    return 0.5 * (2.0 * w.real() * u1 * u2 - w.imag() * (u1 * u1 - u2 * u2));
}

double ManifoldI2::C(double u1, double u2) const {
    return 0.5 * v * (u1 * u1 + u2 * u2);
}

PhiI2 ManifoldI2::phi(double u1, double u2) const {
    return {A(u1, u2), B(u1, u2), C(u1, u2), k, rho};
}

ManifoldI2 manifold_i2(double ell, double sigma, double b, double lambda) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I2)
        throw WrongClass("manifold_i2: ell is not in I2");

    const SystemParams p{ell, sigma, b, lambda};
    const cplx bk = growth_rate(ca.k, p);

    ManifoldI2 m;
    m.k = ca.k;
    m.rho = p.rho();
    m.lambda = lambda;
    m.w = checked_quotient(b, 2.0 * bk - growth_rate(2 * ca.k, p), "w");
    // beta_k + conj(beta_k) - beta_0 is real for every lambda
    m.v = checked_quotient(b, bk + std::conj(bk) - growth_rate(0, p), "v").real();
    return m;
}

PhiI2 phi_i2(double u1, double u2, double lambda, double ell, double sigma, double b) {
    return manifold_i2(ell, sigma, b, lambda).phi(u1, u2);
}

double PhiI4::operator()(double x) const {
    const double t = rho * x;
    return a1 * std::cos(2.0 * k * t) + a2 * std::sin(2.0 * k * t) +
           b1 * std::cos((2.0 * k + 2.0) * t) + b2 * std::sin((2.0 * k + 2.0) * t) + c +
           d1 * std::cos(t) + d2 * std::sin(t);
}

PhiI4 ManifoldI4::phi(double u1, double u2, double u3, double u4) const {
    PhiI4 out;
    out.k = k;
    out.rho = rho;

    const double p1 = u1 * u1 - u2 * u2;  // Re (u1 - i u2)^2
    const double q1 = 2.0 * u1 * u2;      // -Im (u1 - i u2)^2
    const double p2 = u3 * u3 - u4 * u4;
    const double q2 = 2.0 * u3 * u4;

    out.a1 = 0.5 * (c1 * p1 + d1 * q1);
    out.a2 = 0.5 * (c1 * q1 - d1 * p1);
    out.b1 = 0.5 * (c2 * p2 + d2 * q2);
    out.b2 = 0.5 * (c2 * q2 - d2 * p2);
    out.c = 0.5 * (c3 * (u1 * u1 + u2 * u2) + c4 * (u3 * u3 + u4 * u4));

    // conj(z1) z2 = ((u1 u3 + u2 u4) + i (u2 u3 - u1 u4)) / 4
    const double xr = u1 * u3 + u2 * u4;
    const double yi = u2 * u3 - u1 * u4;
    out.d1 = 0.5 * (c5 * xr - d5 * yi);
    out.d2 = -0.5 * (c5 * yi + d5 * xr);
    return out;
}

ManifoldI4 manifold_i4(double ell, double sigma, double b, double lambda) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I4)
        throw WrongClass("manifold_i4: ell is not in I4");

    ManifoldI4 m;
    m.k = ca.k;
    m.rho = 2.0 * std::numbers::pi / ell;
    m.lambda = lambda;

    if (ca.k == 1) {
        const NuCoefficients nu = nu_coefficients(ell, sigma, b, lambda);
        m.c1 = m.d1 = 0.0;  // z1^2 phi_2 is critical at k = 1
        m.c2 = nu.nu1.real();
        m.d2 = nu.nu1.imag();
        m.c3 = nu.nu2.real();
        m.c4 = nu.nu3.real();
        m.c5 = m.d5 = 0.0;  // conj(z1) z2 phi_1 is critical at k = 1
    } else {
        const MuCoefficients mu = mu_coefficients(ell, sigma, b, lambda);
        m.c1 = mu.mu1.real();
        m.d1 = mu.mu1.imag();
        m.c2 = mu.mu2.real();
        m.d2 = mu.mu2.imag();
        m.c3 = mu.mu3.real();
        m.c4 = mu.mu4.real();
        m.c5 = mu.mu5.real();
        m.d5 = mu.mu5.imag();
    }
    return m;
}

PhiI4 phi_i4(double u1, double u2, double u3, double u4, double lambda, double ell,
             double sigma, double b) {
    return manifold_i4(ell, sigma, b, lambda).phi(u1, u2, u3, u4);
}

}  // namespace sh3
