#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "sh3/errors.hpp"
#include "sh3/manifold.hpp"

using namespace sh3;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
using cplx = std::complex<double>;

// Complex-basis evaluation of Phi for I2: 2 Re[w z^2 e^{2 i k rho x}] + 2 v |z|^2
// with z = (u1 - i u2)/2. Independent of the real-coordinate assembly.
double phi_i2_complex(const ManifoldI2& m, double u1, double u2, double x) {
    const cplx z{0.5 * u1, -0.5 * u2};
    const cplx osc = m.w * z * z * std::exp(cplx(0.0, 2.0 * m.k * m.rho * x));
    return 2.0 * osc.real() + 2.0 * m.v * std::norm(z);
}

// Complex-basis evaluation for I4 from the mu (k >= 2) or nu (k = 1) bundles.
double phi_i4_complex(double ell, double sigma, double b, double lambda, int k, double u1,
                      double u2, double u3, double u4, double x) {
    const double rho = kTwoPi / ell;
    const cplx z1{0.5 * u1, -0.5 * u2};
    const cplx z2{0.5 * u3, -0.5 * u4};
    auto ph = [&](int n) { return std::exp(cplx(0.0, n * rho * x)); };

    if (k == 1) {
        const NuCoefficients nu = nu_coefficients(ell, sigma, b, lambda);
        const cplx r = nu.nu1 * z2 * z2 * ph(4) + nu.nu2 * std::norm(z1) + nu.nu3 * std::norm(z2);
        return 2.0 * r.real();
    }
    const MuCoefficients mu = mu_coefficients(ell, sigma, b, lambda);
    const cplx r = mu.mu1 * z1 * z1 * ph(2 * k) + mu.mu2 * z2 * z2 * ph(2 * k + 2) +
                   mu.mu3 * std::norm(z1) + mu.mu4 * std::norm(z2) +
                   mu.mu5 * std::conj(z1) * z2 * ph(1);
    return 2.0 * r.real();
}

// Discrete Fourier coefficient |c_n| of samples of f on a uniform grid.
double mode_magnitude(const std::vector<double>& samples, double ell, int n) {
    const int M = static_cast<int>(samples.size());
    cplx acc = 0.0;
    for (int j = 0; j < M; ++j)
        acc += samples[j] * std::exp(cplx(0.0, -n * (kTwoPi / ell) * (ell * j / M)));
    return std::abs(acc) / M;
}

}  // namespace

TEST_CASE("mu coefficients") {
    const double ell = i4_length(2);
    const double lam0 = analyze(ell).lambda0;

    SUBCASE("b = 0 gives all zeros") {
        const MuCoefficients mu = mu_coefficients(ell, 1.0, 0.0, lam0);
        CHECK(std::abs(mu.mu1) == 0.0);
        CHECK(std::abs(mu.mu5) == 0.0);
    }
    SUBCASE("mu3 = mu4 = b/(1 - lambda0) at criticality, both real") {
        const MuCoefficients mu = mu_coefficients(ell, 1.0, 0.7, lam0);
        CHECK(mu.mu3.real() == doctest::Approx(0.7 / (1.0 - lam0)).epsilon(1e-14));
        CHECK(mu.mu4.real() == doctest::Approx(0.7 / (1.0 - lam0)).epsilon(1e-14));
        CHECK(mu.mu3.imag() == 0.0);
        CHECK(mu.mu4.imag() == 0.0);
    }
    SUBCASE("mu5 matches the closed form at k = 2, sigma = 1, b = 1") {
        const MuCoefficients mu = mu_coefficients(ell, 1.0, 1.0, lam0);
        const double rho = kTwoPi / ell;
        const double r2 = rho * rho;
        const cplx closed = 2.0 / cplx(6.0 * r2 - 15.0 * r2 * r2, -18.0 * rho * rho * rho);
        CHECK(std::abs(mu.mu5 - closed) < 1e-12 * std::abs(closed));
    }
    SUBCASE("mu is rejected off I4 or at k = 1") {
        CHECK_THROWS_AS(mu_coefficients(kTwoPi, 1.0, 1.0, 0.0), WrongClass);
        CHECK_THROWS_AS(mu_coefficients(i4_length(1), 1.0, 1.0, 0.36), WrongClass);
    }
}

TEST_CASE("nu coefficients") {
    const double ell = i4_length(1);
    const double lam0 = analyze(ell).lambda0;
    CHECK(lam0 == doctest::Approx(0.36).epsilon(1e-14));

    SUBCASE("b = 0 gives zeros") {
        const NuCoefficients nu = nu_coefficients(ell, 1.0, 0.0, lam0);
        CHECK(std::abs(nu.nu1) == 0.0);
    }
    SUBCASE("nu2 = b/0.64 and nu3 = nu2 at lambda0") {
        const NuCoefficients nu = nu_coefficients(ell, 1.0, 0.5, lam0);
        CHECK(nu.nu2.real() == doctest::Approx(0.5 / 0.64).epsilon(1e-13));
        CHECK(nu.nu3.real() == doctest::Approx(nu.nu2.real()).epsilon(1e-13));
        CHECK(nu.nu2.imag() == 0.0);
        CHECK(nu.nu3.imag() == 0.0);
    }
}

TEST_CASE("phi_i2 reproduces the 2 pi formulas") {
    SUBCASE("zero amplitude gives zero") {
        const PhiI2 phi = phi_i2(0.0, 0.0, 0.3, kTwoPi, 2.0, 1.0);
        CHECK(phi.a2k == 0.0);
        CHECK(phi.b2k == 0.0);
        CHECK(phi.mean == 0.0);
    }
    SUBCASE("lambda = 0, sigma = 0, b = 1 at (1, 0)") {
        const PhiI2 phi = phi_i2(1.0, 0.0, 0.0, kTwoPi, 0.0, 1.0);
        CHECK(phi.a2k == doctest::Approx(1.0 / 18.0).epsilon(1e-15));
        CHECK(phi.b2k == doctest::Approx(0.0));
        CHECK(phi.mean == doctest::Approx(0.5).epsilon(1e-15));
    }
    SUBCASE("mean term at (1, 1), b = 0.86") {
        const PhiI2 phi = phi_i2(1.0, 1.0, 0.0, kTwoPi, 2.6, 0.86);
        CHECK(phi.mean == doctest::Approx(0.86).epsilon(1e-15));
    }
    SUBCASE("direct 2 pi proposition at general arguments") {
        const double lam = 0.07, sigma = 2.6, b = 0.86, u1 = 0.4, u2 = -1.1;
        const ManifoldI2 m = manifold_i2(kTwoPi, sigma, b, lam);
        const double den = (lam + 9.0) * (lam + 9.0) + 36.0 * sigma * sigma;
        const double A = 0.5 * b / den * ((9.0 + lam) * (u1 * u1 - u2 * u2) - 12.0 * u1 * u2 * sigma);
        const double B = 0.5 * b / den * ((9.0 + lam) * 2.0 * u1 * u2 + 6.0 * sigma * (u1 * u1 - u2 * u2));
        const double C = b / (2.0 * (lam + 1.0)) * (u1 * u1 + u2 * u2);
        CHECK(m.A(u1, u2) == doctest::Approx(A).epsilon(1e-13));
        CHECK(m.B(u1, u2) == doctest::Approx(B).epsilon(1e-13));
        CHECK(m.C(u1, u2) == doctest::Approx(C).epsilon(1e-13));
    }
}

TEST_CASE("real/complex agreement for phi_i2 at 1e-12") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uu(-2.0, 2.0), ux(0.0, 1.0);
    for (double ell : {kTwoPi, 12.0, 25.0}) {
        const ManifoldI2 m = manifold_i2(ell, 1.9, 0.9, analyze(ell).lambda0 + 0.05);
        for (int i = 0; i < 50; ++i) {
            const double u1 = uu(rng), u2 = uu(rng), x = ux(rng) * ell;
            const PhiI2 phi = m.phi(u1, u2);
            CHECK(std::abs(phi(x) - phi_i2_complex(m, u1, u2, x)) < 1e-12);
        }
    }
}

TEST_CASE("real/complex agreement for phi_i4 at 1e-12") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> uu(-1.5, 1.5), ux(0.0, 1.0);
    for (int k : {1, 2, 3}) {
        const double ell = i4_length(k);
        const double lam = analyze(ell).lambda0;  // evaluated at criticality
        for (int i = 0; i < 50; ++i) {
            const double u1 = uu(rng), u2 = uu(rng), u3 = uu(rng), u4 = uu(rng);
            const double x = ux(rng) * ell;
            const PhiI4 phi = phi_i4(u1, u2, u3, u4, lam, ell, 1.3, 0.8);
            CHECK(std::abs(phi(x) - phi_i4_complex(ell, 1.3, 0.8, lam, k, u1, u2, u3, u4, x)) <
                  1e-12);
        }
    }
}

TEST_CASE("phi_i4 structure") {
    const double ell = i4_length(2);
    const double lam = analyze(ell).lambda0;
    const ManifoldI4 m = manifold_i4(ell, 1.0, 1.0, lam);

    SUBCASE("all u zero gives zero") {
        const PhiI4 phi = m.phi(0.0, 0.0, 0.0, 0.0);
        CHECK(phi.a1 == 0.0);
        CHECK(phi.c == 0.0);
        CHECK(phi.d2 == 0.0);
    }
    SUBCASE("u3 = u4 = 0 kills the second pair and the cross terms") {
        const PhiI4 phi = m.phi(0.7, -0.3, 0.0, 0.0);
        CHECK(phi.b1 == 0.0);
        CHECK(phi.b2 == 0.0);
        CHECK(phi.d1 == 0.0);
        CHECK(phi.d2 == 0.0);
        CHECK(phi.c == doctest::Approx(0.5 * m.c3 * (0.49 + 0.09)).epsilon(1e-14));
    }
    SUBCASE("cross-term bilinear structure at (1,0,1,0)") {
        const PhiI4 phi = m.phi(1.0, 0.0, 1.0, 0.0);
        CHECK(phi.d1 == doctest::Approx(0.5 * m.c5).epsilon(1e-14));
        CHECK(phi.d2 == doctest::Approx(-0.5 * m.d5).epsilon(1e-14));
    }
    SUBCASE("k = 1 has no mode-1 or mode-2k content") {
        const ManifoldI4 m1 = manifold_i4(i4_length(1), 1.0, 1.0, 0.36);
        const PhiI4 phi = m1.phi(0.8, 0.2, -0.5, 0.4);
        CHECK(phi.a1 == 0.0);
        CHECK(phi.a2 == 0.0);
        CHECK(phi.d1 == 0.0);
        CHECK(phi.d2 == 0.0);
    }
}

TEST_CASE("degree-2 homogeneity of Phi") {
    const ManifoldI2 m2 = manifold_i2(12.0, 1.1, 0.6, 0.02);
    const PhiI2 p1 = m2.phi(0.3, -0.7);
    const PhiI2 p2 = m2.phi(0.6, -1.4);
    CHECK(p2.a2k == doctest::Approx(4.0 * p1.a2k).epsilon(1e-13));
    CHECK(p2.b2k == doctest::Approx(4.0 * p1.b2k).epsilon(1e-13));
    CHECK(p2.mean == doctest::Approx(4.0 * p1.mean).epsilon(1e-13));

    const ManifoldI4 m4 = manifold_i4(i4_length(2), 1.1, 0.6, 0.1);
    const PhiI4 q1 = m4.phi(0.3, -0.7, 0.2, 0.5);
    const PhiI4 q2 = m4.phi(0.9, -2.1, 0.6, 1.5);
    CHECK(q2.c == doctest::Approx(9.0 * q1.c).epsilon(1e-13));
    CHECK(q2.d1 == doctest::Approx(9.0 * q1.d1).epsilon(1e-13));
}

TEST_CASE("Fourier content of sampled Phi") {
    const int M = 128;

    SUBCASE("I2 carries only modes 0 and 2k") {
        const double ell = 12.0;  // k = 2
        const ManifoldI2 m = manifold_i2(ell, 2.3, 0.9, 0.01);
        const PhiI2 phi = m.phi(0.8, -0.45);
        std::vector<double> samples(M);
        for (int j = 0; j < M; ++j) samples[j] = phi(ell * j / M);
        for (int n = 0; n <= 10; ++n) {
            const double mag = mode_magnitude(samples, ell, n);
            if (n == 0 || n == 4)
                CHECK(mag > 1e-6);
            else
                CHECK(mag < 1e-13);
        }
    }
    SUBCASE("I4 (k = 2) carries only modes 0, 1, 2k, 2k+2") {
        const double ell = i4_length(2);
        const PhiI4 phi = phi_i4(0.8, -0.45, 0.3, 0.6, analyze(ell).lambda0, ell, 1.7, 0.9);
        std::vector<double> samples(M);
        for (int j = 0; j < M; ++j) samples[j] = phi(ell * j / M);
        for (int n = 0; n <= 12; ++n) {
            const double mag = mode_magnitude(samples, ell, n);
            if (n == 0 || n == 1 || n == 4 || n == 6)
                CHECK(mag > 1e-8);
            else
                CHECK(mag < 1e-13);
        }
    }
    SUBCASE("I4 (k = 1) carries only modes 0 and 4") {
        const double ell = i4_length(1);
        const PhiI4 phi = phi_i4(0.8, -0.45, 0.3, 0.6, 0.36, ell, 1.7, 0.9);
        std::vector<double> samples(M);
        for (int j = 0; j < M; ++j) samples[j] = phi(ell * j / M);
        for (int n = 0; n <= 8; ++n) {
            const double mag = mode_magnitude(samples, ell, n);
            if (n == 0 || n == 4)
                CHECK(mag > 1e-8);
            else
                CHECK(mag < 1e-13);
        }
    }
}

TEST_CASE("b = 0 gives Phi identically zero at quadratic order") {
    const PhiI2 p2 = phi_i2(1.0, 2.0, 0.05, kTwoPi, 3.0, 0.0);
    CHECK(p2(0.37) == 0.0);
    const PhiI4 p4 = phi_i4(1.0, 2.0, 0.5, -0.5, 0.2, i4_length(2), 3.0, 0.0);
    CHECK(p4(0.37) == 0.0);
}
