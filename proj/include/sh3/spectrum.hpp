#pragma once

#include <complex>
#include <vector>

#include "sh3/params.hpp"

namespace sh3 {

// Linear spectrum of L_lambda = lambda - (1 + d_xx)^2 + sigma d_xxx on the
// torus of length ell. In the Fourier basis phi_n = exp(i n rho x),
// rho = 2 pi / ell, the operator is diagonal with eigenvalues
//
//   beta_n(lambda) = lambda - (1 - (n rho)^2)^2 - i sigma (n rho)^3.
//
// The first eigenvalues to cross the imaginary axis as lambda increases are
// the argmax over n of Re beta_n(0); the size m(ell) of that set partitions
// the positive lengths into
//
//   I1: {0}            m = 1   (real simple),        ell < 2 pi / sqrt(2)
//   I2: {+-k}          m = 2   (complex simple),     open intervals
//   I3: {0, +-1}       m = 3   (real + pair),        the point 2 pi / sqrt(2)
//   I4: {+-k, +-k-1}   m = 4   (two pairs),          rho^2 = 2/(k^2+(k+1)^2)
//
// Crossing happens at lambda0 = (1 - (k rho)^2)^2 (= 1 for I1 and I3).

enum class PartitionClass { I1, I2, I3, I4 };

const char* to_string(PartitionClass c);

struct CriticalAnalysis {
    PartitionClass partition_class;
    int k;             // critical wavenumber; lower index of the pair for I4; 0 for I1/I3
    int multiplicity;  // m(ell), equals the class index
    double lambda0;    // critical value of the control parameter
};

// Tie detection tolerance for the measure-zero classes I3/I4. Relative to
// max(1, |max Re beta|) so that i4_length outputs round-trip through analyze.
inline constexpr double kDefaultTieTol = 1e-9;

// beta_n(lambda) for the given parameters. Exact conjugate symmetry:
// growth_rate(-n, p) == conj(growth_rate(n, p)).
std::complex<double> growth_rate(int n, const SystemParams& p);

// All n (both signs) with Re beta_n(0) within tie_tol of the maximum over
// the integers. The search is truncated to |n| <= ceil(ell/pi) + 2, justified
// by monotone decay of -(1 - (n rho)^2)^2 once (n rho)^2 > 1.
std::vector<int> max_real_indices(double ell, double tie_tol = kDefaultTieTol);

// Classifies ell into I1..I4 and reports k, m(ell) and lambda0.
// Throws AmbiguousPartition when the tie set matches no class pattern
// (signals tie_tol too large).
CriticalAnalysis analyze(double ell, double tie_tol = kDefaultTieTol);

// The k-th double-crossing length: ell = 2 pi sqrt((k^2 + (k+1)^2)/2).
// analyze(i4_length(k)) reports I4 with lower index k.
double i4_length(int k);

}  // namespace sh3
