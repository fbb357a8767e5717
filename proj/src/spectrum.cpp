#include "sh3/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sh3/errors.hpp"

namespace sh3 {

const char* to_string(PartitionClass c) {
    switch (c) {
        case PartitionClass::I1: return "I1";
        case PartitionClass::I2: return "I2";
        case PartitionClass::I3: return "I3";
        case PartitionClass::I4: return "I4";
    }
    return "?";
}

std::complex<double> growth_rate(int n, const SystemParams& p) {
    p.validate();
    const double nrho = static_cast<double>(n) * p.rho();
    const double q = nrho * nrho;
    const double re = p.lambda - (1.0 - q) * (1.0 - q);
    // (n rho)^3 carries the sign of n, so beta_{-n} = conj(beta_n) exactly.
    const double im = -p.sigma * nrho * nrho * nrho;
    return {re, im};
}

std::vector<int> max_real_indices(double ell, double tie_tol) {
    if (!(ell > 0.0)) throw std::invalid_argument("max_real_indices: ell must be > 0");
    if (!(tie_tol > 0.0)) throw std::invalid_argument("max_real_indices: tie_tol must be > 0");

    const double rho = 2.0 * std::numbers::pi / ell;
    const int nmax = static_cast<int>(std::ceil(ell / std::numbers::pi)) + 2;

    auto re0 = [rho](int n) {
        const double q = (n * rho) * (n * rho);
        return -(1.0 - q) * (1.0 - q);
    };

    double best = re0(0);
    for (int n = 1; n <= nmax; ++n) best = std::max(best, re0(n));

    const double thr = tie_tol * std::max(1.0, std::abs(best));
    std::vector<int> out;
    for (int n = -nmax; n <= nmax; ++n)
        if (best - re0(n) <= thr) out.push_back(n);
    return out;
}

CriticalAnalysis analyze(double ell, double tie_tol) {
    const std::vector<int> idx = max_real_indices(ell, tie_tol);
    const double rho = 2.0 * std::numbers::pi / ell;
    auto lam0_for = [rho](int k) {
        const double q = (k * rho) * (k * rho);
        return (1.0 - q) * (1.0 - q);
    };

    if (idx.size() == 1 && idx[0] == 0)
        return {PartitionClass::I1, 0, 1, 1.0};

    if (idx.size() == 2 && idx[0] == -idx[1] && idx[1] >= 1)
        return {PartitionClass::I2, idx[1], 2, lam0_for(idx[1])};

    if (idx.size() == 3 && idx[0] == -1 && idx[1] == 0 && idx[2] == 1)
        return {PartitionClass::I3, 0, 3, 1.0};

    if (idx.size() == 4 && idx[0] == -idx[3] && idx[1] == -idx[2] && idx[2] >= 1 &&
        idx[3] == idx[2] + 1)
        return {PartitionClass::I4, idx[2], 4, lam0_for(idx[2])};

    throw AmbiguousPartition("analyze: tie set of size " + std::to_string(idx.size()) +
                             " matches no partition class (tie_tol too large?)");
}

double i4_length(int k) {
    if (k < 1) throw std::invalid_argument("i4_length: k must be >= 1");
    const double kk = static_cast<double>(k);
    return 2.0 * std::numbers::pi * std::sqrt((kk * kk + (kk + 1.0) * (kk + 1.0)) / 2.0);
}

}  // namespace sh3
