#pragma once

#include <complex>

#include "sh3/spectrum.hpp"

namespace sh3 {

// Quadratic-order center-manifold functions Phi for classes I2 and I4,
// in both the complex eigenbasis coefficients (mu / nu quotients) and real
// amplitude coordinates over the trigonometric basis. Phi is kept as a finite
// coefficient bundle rather than a bare callable so its Fourier content can
// be checked exactly.
//
// Real coordinates follow z = (u1 - i u2)/2 against e1 = cos(k rho x),
// e2 = sin(k rho x) (and z2 = (u3 - i u4)/2 against the (k+1)-modes on I4).
// All real-coordinate coefficients here equal the reconstruction
// 2 Re[ . ] of the complex-basis expansion to round-off; that reconstruction
// is what the agreement tests pin at 1e-12.

// Coefficients of the I4 (k >= 2) complex expansion
//   Phi = mu1 z1^2 phi_2k + mu2 z2^2 phi_{2k+2} + mu3 |z1|^2 + mu4 |z2|^2
//       + mu5 conj(z1) z2 phi_1 + c.c.
struct MuCoefficients {
    std::complex<double> mu1, mu2, mu3, mu4, mu5;  // mu3, mu4 real (real denominators)
};

// Coefficients of the degenerate k = 1 expansion
//   Phi = nu1 z2^2 phi_4 + nu2 |z1|^2 + nu3 |z2|^2 + c.c.
// (the phi_2k and phi_1 terms of the general case land on critical modes).
struct NuCoefficients {
    std::complex<double> nu1, nu2, nu3;  // nu2, nu3 real
};

// mu_i from the eigenvalue expressions at the given lambda:
//   mu1 = b/(2 beta_k - beta_2k)          mu2 = b/(2 beta_{k+1} - beta_{2k+2})
//   mu3 = b/(beta_k + conj beta_k - beta_0)  mu4 = likewise for k+1
//   mu5 = 2b/(conj beta_k + beta_{k+1} - beta_1)
// Requires I4 with k >= 2; throws DegenerateDenominator on vanishing quotients.
MuCoefficients mu_coefficients(double ell, double sigma, double b, double lambda);

// nu_i for I4 with k = 1:
//   nu1 = b/(2 beta_2 - beta_4), nu2 = b/(beta_1 + conj beta_1 - beta_0),
//   nu3 = b/(beta_2 + conj beta_2 - beta_0).
NuCoefficients nu_coefficients(double ell, double sigma, double b, double lambda);

// Phi on I2: a2k cos(2 k rho x) + b2k sin(2 k rho x) + mean.
struct PhiI2 {
    double a2k, b2k, mean;
    int k;
    double rho;

    double operator()(double x) const;
};

// Coefficient bundle for I2 at fixed (ell, sigma, b, lambda): the complex
// self-interaction quotient w = b/(2 beta_k - beta_2k) and the real mean-mode
// quotient v = b/(beta_k + conj beta_k - beta_0). The quadratic forms
// A, B, C of the real proposition are evaluated from these.
struct ManifoldI2 {
    int k;
    double rho;
    double lambda;
    std::complex<double> w;
    double v;

    double A(double u1, double u2) const;  // cos(2 k rho x) coefficient
    double B(double u1, double u2) const;  // sin(2 k rho x) coefficient
    double C(double u1, double u2) const;  // mean (mode 0)
    PhiI2 phi(double u1, double u2) const;
};

ManifoldI2 manifold_i2(double ell, double sigma, double b, double lambda);
PhiI2 phi_i2(double u1, double u2, double lambda, double ell, double sigma, double b);

// Phi on I4 over {cos/sin 2k, cos/sin (2k+2), 1, cos/sin 1} (mode indices in
// rho units). For k = 1 the 2k and mode-1 slots are identically zero.
struct PhiI4 {
    double a1, a2;  // cos(2 k rho x), sin(2 k rho x)
    double b1, b2;  // cos((2k+2) rho x), sin((2k+2) rho x)
    double c;       // mean
    double d1, d2;  // cos(rho x), sin(rho x)
    int k;
    double rho;

    double operator()(double x) const;
};

// Real-coordinate quotients c_i + d_i i for I4, mirroring mu/nu:
//   c1 + d1 i = b/(2 beta_k - beta_2k)        (zero slot at k = 1)
//   c2 + d2 i = b/(2 beta_{k+1} - beta_{2k+2})
//   c3 = b/(beta_k + conj beta_k - beta_0)    c4 = likewise for k+1
//   c5 + d5 i = 2b/(conj beta_k + beta_{k+1} - beta_1)   (zero slot at k = 1)
struct ManifoldI4 {
    int k;
    double rho;
    double lambda;
    double c1, d1, c2, d2, c3, c4, c5, d5;

    PhiI4 phi(double u1, double u2, double u3, double u4) const;
};

ManifoldI4 manifold_i4(double ell, double sigma, double b, double lambda);
PhiI4 phi_i4(double u1, double u2, double u3, double u4, double lambda, double ell,
             double sigma, double b);

}  // namespace sh3
