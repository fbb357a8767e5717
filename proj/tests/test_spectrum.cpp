#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sh3/errors.hpp"
#include "sh3/spectrum.hpp"

using namespace sh3;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// brute-force argmax of Re beta_n(0) over |n| <= nmax, tie tolerance matching
// the library convention
std::vector<int> brute_force_max(double ell, int nmax, double tie_tol) {
    const double rho = kTwoPi / ell;
    auto re0 = [rho](int n) {
        const double q = (n * rho) * (n * rho);
        return -(1.0 - q) * (1.0 - q);
    };
    double best = re0(0);
    for (int n = 1; n <= nmax; ++n) best = std::max(best, re0(n));
    std::vector<int> out;
    for (int n = -nmax; n <= nmax; ++n)
        if (best - re0(n) <= tie_tol * std::max(1.0, std::abs(best))) out.push_back(n);
    return out;
}

}  // namespace

TEST_CASE("growth_rate matches the dispersion relation") {
    SystemParams p{1.0, 0.0, 0.0, 0.0};
    CHECK(growth_rate(0, p) == std::complex<double>(-1.0, 0.0));

    p = {kTwoPi, 2.6, 0.0, 0.0};
    const auto b1 = growth_rate(1, p);
    CHECK(b1.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(b1.imag() == doctest::Approx(-2.6));

    const auto b2 = growth_rate(2, p);
    CHECK(b2.real() == doctest::Approx(-9.0));
    CHECK(b2.imag() == doctest::Approx(-20.8));
}

TEST_CASE("growth_rate conjugate symmetry is exact") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> uell(0.3, 80.0), usig(-5.0, 5.0), ulam(-2.0, 2.0);
    for (int i = 0; i < 500; ++i) {
        SystemParams p{uell(rng), usig(rng), 0.0, ulam(rng)};
        const int n = static_cast<int>(rng() % 41) - 20;
        CHECK(growth_rate(-n, p) == std::conj(growth_rate(n, p)));
    }
}

TEST_CASE("Re beta_k(lambda) crosses zero monotonically at lambda0") {
    const CriticalAnalysis ca = analyze(12.0);
    for (double d : {-0.5, -0.01, 0.01, 0.5}) {
        SystemParams p{12.0, 1.0, 0.0, ca.lambda0 + d};
        const double re = growth_rate(ca.k, p).real();
        CHECK(re == doctest::Approx(d).epsilon(1e-12));
    }
}

TEST_CASE("max_real_indices on the named lengths") {
    CHECK(max_real_indices(1.0) == std::vector<int>{0});
    CHECK(max_real_indices(kTwoPi / std::sqrt(2.0)) == std::vector<int>{-1, 0, 1});
    CHECK(max_real_indices(kTwoPi * std::sqrt(2.5)) == std::vector<int>{-2, -1, 1, 2});
}

TEST_CASE("max_real_indices agrees with an exhaustive scan") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uell(0.2, 500.0);
    for (int i = 0; i < 200; ++i) {
        const double ell = uell(rng);
        CHECK(max_real_indices(ell) == brute_force_max(ell, 1000, kDefaultTieTol));
    }
}

TEST_CASE("analyze classifies the named lengths") {
    SUBCASE("I2 at 2 pi") {
        const CriticalAnalysis ca = analyze(kTwoPi);
        CHECK(ca.partition_class == PartitionClass::I2);
        CHECK(ca.k == 1);
        CHECK(ca.multiplicity == 2);
        CHECK(ca.lambda0 == doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("I3 at 2 pi / sqrt 2") {
        const CriticalAnalysis ca = analyze(kTwoPi / std::sqrt(2.0));
        CHECK(ca.partition_class == PartitionClass::I3);
        CHECK(ca.multiplicity == 3);
        CHECK(ca.lambda0 == 1.0);
    }
    SUBCASE("I2 at ell = 12 with k = 2") {
        const CriticalAnalysis ca = analyze(12.0);
        CHECK(ca.partition_class == PartitionClass::I2);
        CHECK(ca.k == 2);
        // (1 - 4 (pi/6)^2)^2
        const double rho = kTwoPi / 12.0;
        CHECK(ca.lambda0 == doctest::Approx(std::pow(1.0 - 4.0 * rho * rho, 2)).epsilon(1e-14));
        CHECK(ca.lambda0 == doctest::Approx(0.0093359483).epsilon(1e-7));
    }
    SUBCASE("I1 below 2 pi / sqrt 2") {
        CHECK(analyze(1.0).partition_class == PartitionClass::I1);
        CHECK(analyze(1.0).lambda0 == 1.0);
        CHECK(analyze(4.4).partition_class == PartitionClass::I1);
    }
}

TEST_CASE("i4_length round-trips through analyze") {
    for (int k = 1; k <= 12; ++k) {
        const double ell = i4_length(k);
        const CriticalAnalysis ca = analyze(ell);
        CHECK(ca.partition_class == PartitionClass::I4);
        CHECK(ca.k == k);
        CHECK(ca.multiplicity == 4);
    }
    CHECK(i4_length(1) == doctest::Approx(9.9345883).epsilon(1e-7));
    CHECK(i4_length(2) == doctest::Approx(16.0190417).epsilon(1e-7));
    CHECK(i4_length(6) == doctest::Approx(kTwoPi * std::sqrt(42.5)).epsilon(1e-15));
}

TEST_CASE("lengths strictly between consecutive I4 points are I2") {
    for (int k = 1; k <= 8; ++k) {
        const double mid = 0.5 * (i4_length(k) + i4_length(k + 1));
        CHECK(analyze(mid).partition_class == PartitionClass::I2);
    }
}

TEST_CASE("analyze flags unrecognized tie patterns") {
    // An absurd tolerance merges maxima of different moduli into one tie set.
    CHECK_THROWS_AS(analyze(kTwoPi * std::sqrt(2.5), 10.0), AmbiguousPartition);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(max_real_indices(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(i4_length(0), std::invalid_argument);
    SystemParams bad{-1.0, 0.0, 0.0, 0.0};
    CHECK_THROWS_AS(growth_rate(1, bad), std::invalid_argument);
}
