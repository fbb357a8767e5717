#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sh3 {

// One problem instance of
//
//   u_t = lambda u - (1 + d_xx)^2 u + sigma d_xxx u + b u^2 - u^3
//
// on the periodic domain [0, ell]. All analysis and simulation routines take
// their parameters from here; rho() is the fundamental wavenumber 2*pi/ell.
struct SystemParams {
    double ell    = 2.0 * std::numbers::pi;  // domain length, > 0
    double sigma  = 0.0;                     // third-order dispersion
    double b      = 0.0;                     // quadratic coefficient
    double lambda = 0.0;                     // control parameter

    double rho() const { return 2.0 * std::numbers::pi / ell; }

    void validate() const {
        if (!(ell > 0.0)) throw std::invalid_argument("SystemParams: ell must be > 0");
        if (!std::isfinite(ell) || !std::isfinite(sigma) || !std::isfinite(b) ||
            !std::isfinite(lambda))
            throw std::invalid_argument("SystemParams: all fields must be finite");
    }
};

}  // namespace sh3
