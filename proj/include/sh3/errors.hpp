#pragma once

#include <stdexcept>
#include <string>

namespace sh3 {

// Error hierarchy for the analysis and simulation layers. Everything derives
// from std::runtime_error; callers that care about a specific failure catch
// the concrete type, the CLI maps them onto exit codes.

// The set of first-crossing eigenvalue indices does not match any of the four
// partition patterns at the requested tie tolerance.
struct AmbiguousPartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// An operation was requested for a domain length whose partition class does
// not support it (e.g. single-Hopf numbers outside I2).
struct WrongClass : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A center-manifold or transition-number denominator vanished.
struct DegenerateDenominator : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A transition-number real part (or a quotient needed by a classification
// branch) sits on a decision boundary; cubic-order analysis is inconclusive.
struct DegenerateTransitionNumber : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The sign pattern falls in a region for which the classification table
// states no verdict.
struct IndeterminateBranch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The 3d real-complex reduced system is only simulated for b = 0.
struct NonzeroB : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Hopf amplitude queried on the side of lambda0 where no orbit exists.
struct WrongSide : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Limit-cycle search ended without convergence (decay, escape, or timeout).
struct NoCycleFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Both binary-search bracket endpoints behave identically under the return map.
struct BracketInvalid : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Adaptive integrator step size collapsed below the representable minimum.
struct StepSizeUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State escaped to overflow/NaN. Expected and reported for catastrophic
// regimes; callers flush partial output before surfacing it.
struct NonFiniteState : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace sh3
