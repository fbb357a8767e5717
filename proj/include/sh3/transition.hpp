#pragma once

#include <complex>
#include <string>
#include <variant>

#include "sh3/spectrum.hpp"

namespace sh3 {

// Transition numbers and dynamic-transition classification.
//
// On I2 the projected dynamics at criticality reduce to the complex normal
// form dz/dt = beta_k z + P z|z|^2 with the transition number
//
//   P = 2 b^2 / (15 (k rho)^4 - 6 (k rho)^2 + 6 sigma (k rho)^3 i)
//     + 4 b^2 / (1 - lambda0) - 3.
//
// Re P < 0 gives a continuous transition (stable periodic orbit for
// lambda > lambda0), Re P > 0 a catastrophic one (unstable orbit below).
//
// On I4 two pairs cross together and the reduced system carries four cubic
// coefficients A, B, C, D with eta1 = Re A, eta2 = Re B = Re C, eta3 = Re D.
// The k >= 2 verdict table lives in eta_table_k2; for k = 1 only the sign of
// eta3 decides. classify() dispatches on the partition class of ell.

enum class TransitionType { Continuous, Catastrophic, Mixed };

const char* to_string(TransitionType t);

struct SingleHopfNumbers {
    std::complex<double> P;       // cubic transition number at lambda0
    std::complex<double> beta_k;  // critical eigenvalue at lambda0 (Re == 0)
    int k;
};

struct DoubleHopfNumbers {
    std::complex<double> A, B, C, D;  // transition numbers at lambda0
    double eta1, eta2, eta3;          // Re A, Re B (= Re C), Re D
    double m1, m2;                    // -Re A / Re B, -Re C / Re D (inf/nan when degenerate)
    int k;                            // lower critical index
};

struct ClassificationReport {
    CriticalAnalysis analysis;
    TransitionType ttype;
    std::variant<std::monostate, SingleHopfNumbers, DoubleHopfNumbers> numbers;
    std::string bifurcation;  // post-transition object and the side of lambda0
};

// Real parts this close to zero are refused as undecidable at cubic order.
inline constexpr double kDegeneracyTol = 1e-12;

// Transition number for ell in I2. Throws WrongClass otherwise,
// DegenerateDenominator if 1 - lambda0 vanishes (cannot happen inside I2).
SingleHopfNumbers single_hopf_numbers(double ell, double sigma, double b);

// Transition numbers for ell in I4 (general k >= 2 formulas; the degenerate
// k = 1 case drops the terms whose feeding modes are themselves critical).
DoubleHopfNumbers double_hopf_numbers(double ell, double sigma, double b);

// Sign rule for a single critical pair. Throws DegenerateTransitionNumber
// when |Re P| <= kDegeneracyTol.
TransitionType classify_single_hopf(std::complex<double> P);

// Full double-Hopf sign table. Branches the table leaves unstated throw
// IndeterminateBranch; boundary real parts / vanishing required denominators
// throw DegenerateTransitionNumber.
TransitionType classify_double_hopf(std::complex<double> A, std::complex<double> B,
                                    std::complex<double> C, std::complex<double> D);

// The k >= 2 eta-table, kept verbatim and separate from classify_double_hopf
// so transcription errors in either are caught by the equivalence tests.
TransitionType eta_table_k2(double eta1, double eta2, double eta3);

// Top-level classifier: dispatches on analyze(ell).
ClassificationReport classify(double ell, double sigma, double b);

// Planar-system Lyapunov number at ell = 2 pi:
//   eta = pi (2 b^2 + b^2/(9 + 4 sigma^2) - 3/2),
// satisfying Re P = 2 eta / pi.
double lyapunov_number_2pi(double sigma, double b);

// Two transcriptions of the eta2 imaginary-part coefficient circulate; the
// derived Im(conj(beta_k) + beta_{k+1} - beta_1) = -sigma rho^3 (3k^2 + 3k)
// is the default. The other is kept for comparison only.
enum class Eta2Convention { Derived3k2Plus3k, Variant1k2Plus3k };

double eta2_value(double ell, double sigma, double b,
                  Eta2Convention convention = Eta2Convention::Derived3k2Plus3k);

}  // namespace sh3
