#include "sh3/transition.hpp"

#include <cmath>

#include "sh3/errors.hpp"

namespace sh3 {

namespace {

using cplx = std::complex<double>;

// Re(2 beta_m - beta_{2m}) at criticality is 15 q^2 - 6 q with q = (m rho)^2,
// the imaginary part 6 sigma (m rho)^3.
cplx self_interaction_denominator(double mrho, double sigma) {
    const double q = mrho * mrho;
    return {15.0 * q * q - 6.0 * q, 6.0 * sigma * mrho * mrho * mrho};
}

}  // namespace

const char* to_string(TransitionType t) {
    switch (t) {
        case TransitionType::Continuous: return "continuous";
        case TransitionType::Catastrophic: return "catastrophic";
        case TransitionType::Mixed: return "mixed";
    }
    return "?";
}

SingleHopfNumbers single_hopf_numbers(double ell, double sigma, double b) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I2)
        throw WrongClass("single_hopf_numbers: ell is not in I2");

    const double rho = 2.0 * std::numbers::pi / ell;
    const double one_minus_lam0 = 1.0 - ca.lambda0;
    if (std::abs(one_minus_lam0) <= kDegeneracyTol)
        throw DegenerateDenominator("single_hopf_numbers: 1 - lambda0 vanished");

    const double b2 = b * b;
    const cplx P = 2.0 * b2 / self_interaction_denominator(ca.k * rho, sigma) +
                   4.0 * b2 / one_minus_lam0 - 3.0;

    SystemParams p{ell, sigma, b, ca.lambda0};
    return {P, growth_rate(ca.k, p), ca.k};
}

DoubleHopfNumbers double_hopf_numbers(double ell, double sigma, double b) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I4)
        throw WrongClass("double_hopf_numbers: ell is not in I4");

    const int k = ca.k;
    const double rho = 2.0 * std::numbers::pi / ell;
    const double b2 = b * b;
    const double common = 4.0 * b2 / (1.0 - ca.lambda0);

    cplx A, B, C, D;
    if (k == 1) {
        // z1^2 phi_1^2 and conj(z1) z2 phi_1 land on critical modes and drop
        // out of the center-manifold function, so A and B = C lose their
        // oscillatory terms.
        A = common - 3.0;
        B = common - 6.0;
        C = common - 6.0;
        D = common + 2.0 * b2 / self_interaction_denominator(2.0 * rho, sigma) - 3.0;
    } else {
        const double kk = static_cast<double>(k);
        const double r2 = rho * rho;
        // conj(beta_k) + beta_{k+1} - beta_1 at lambda0
        const cplx cross{(2.0 * kk * kk - 2.0) * r2 - (kk * kk * kk * kk - 1.0) * r2 * r2,
                         -sigma * (3.0 * kk * kk + 3.0 * kk) * rho * rho * rho};
        A = common + 2.0 * b2 / self_interaction_denominator(k * rho, sigma) - 3.0;
        B = common + 4.0 * b2 / std::conj(cross) - 6.0;
        C = common + 4.0 * b2 / cross - 6.0;
        D = common + 2.0 * b2 / self_interaction_denominator((k + 1) * rho, sigma) - 3.0;
    }

    DoubleHopfNumbers out;
    out.A = A;
    out.B = B;
    out.C = C;
    out.D = D;
    out.eta1 = A.real();
    out.eta2 = B.real();
    out.eta3 = D.real();
    out.m1 = -A.real() / B.real();
    out.m2 = -C.real() / D.real();
    out.k = k;
    return out;
}

TransitionType classify_single_hopf(cplx P) {
    if (std::abs(P.real()) <= kDegeneracyTol)
        throw DegenerateTransitionNumber("classify_single_hopf: Re P = 0 at cubic order");
    return P.real() < 0.0 ? TransitionType::Continuous : TransitionType::Catastrophic;
}

TransitionType classify_double_hopf(cplx A, cplx B, cplx C, cplx D) {
    const double ra = A.real(), rb = B.real(), rc = C.real(), rd = D.real();
    if (std::abs(ra) <= kDegeneracyTol || std::abs(rb) <= kDegeneracyTol ||
        std::abs(rc) <= kDegeneracyTol || std::abs(rd) <= kDegeneracyTol)
        throw DegenerateTransitionNumber("classify_double_hopf: a real part is zero");

    const double m1 = -ra / rb;
    const double m2 = -rc / rd;

    if (ra < 0.0 && rb < 0.0) {
        if (rc < 0.0 && rd < 0.0) return TransitionType::Continuous;
        if (rc < 0.0 && rd > 0.0)
            return ra - rc > 0.0 ? TransitionType::Mixed : TransitionType::Catastrophic;
        if (rc > 0.0 && rd < 0.0) return TransitionType::Continuous;
        return TransitionType::Catastrophic;
    }

    if (ra < 0.0 && rb > 0.0) {
        if (rc < 0.0 && rd < 0.0) return TransitionType::Continuous;
        if (rc > 0.0 && rd < 0.0) {
            if (m1 > m2) return TransitionType::Continuous;
            if (m1 < m2) return TransitionType::Catastrophic;
            throw IndeterminateBranch("classify_double_hopf: m1 == m2 in branch ii(b)");
        }
        if (rc < 0.0 && rd > 0.0) {
            // continuous on m1 > m2, mirroring ii(b); the quotient decides
            // the m1 < m2 side
            if (m1 > m2) return TransitionType::Continuous;
            if (m1 < m2) {
                const double den = rd - rb;
                if (std::abs(den) <= kDegeneracyTol)
                    throw DegenerateTransitionNumber(
                        "classify_double_hopf: Re D - Re B = 0 in branch ii(c)");
                const double quot = (ra - rc) / den;
                if (quot > 0.0) return TransitionType::Mixed;
                if (quot < 0.0) return TransitionType::Catastrophic;
                throw IndeterminateBranch("classify_double_hopf: zero quotient in branch ii(c)");
            }
            throw IndeterminateBranch("classify_double_hopf: m1 == m2 in branch ii(c)");
        }
        return TransitionType::Catastrophic;
    }

    if (ra > 0.0 && rb < 0.0) {
        if (rc < 0.0 && rd < 0.0)
            return rd - rb > 0.0 ? TransitionType::Mixed : TransitionType::Catastrophic;
        if (rc < 0.0 && rd > 0.0) {
            if (m1 > m2) return TransitionType::Catastrophic;
            throw IndeterminateBranch("classify_double_hopf: m1 <= m2 in branch iii(b)");
        }
        if (rc > 0.0 && rd < 0.0) {
            const double den = ra - rc;
            if (std::abs(den) <= kDegeneracyTol)
                throw DegenerateTransitionNumber(
                    "classify_double_hopf: Re A - Re C = 0 in branch iii(c)");
            return (rd - rb) / den > 0.0 ? TransitionType::Mixed : TransitionType::Catastrophic;
        }
        return TransitionType::Catastrophic;
    }

    // Re A > 0 and Re B > 0
    return TransitionType::Catastrophic;
}

TransitionType eta_table_k2(double eta1, double eta2, double eta3) {
    if (std::abs(eta1) <= kDegeneracyTol || std::abs(eta2) <= kDegeneracyTol ||
        std::abs(eta3) <= kDegeneracyTol)
        throw DegenerateTransitionNumber("eta_table_k2: an eta sits on a sign boundary");

    if (eta1 > 0.0 && eta3 > 0.0) {
        if (eta2 > 0.0) return TransitionType::Catastrophic;
        return eta1 * eta3 < eta2 * eta2 ? TransitionType::Continuous
                                         : TransitionType::Catastrophic;
    }
    if (eta1 > 0.0 && eta3 < 0.0) {
        if (eta2 > 0.0) return TransitionType::Catastrophic;
        return eta3 > eta2 ? TransitionType::Mixed : TransitionType::Catastrophic;
    }
    if (eta1 < 0.0 && eta3 < 0.0) {
        if (eta2 > 0.0)
            return eta1 * eta3 > eta2 * eta2 ? TransitionType::Continuous
                                             : TransitionType::Catastrophic;
        return TransitionType::Continuous;
    }
    // eta1 < 0 < eta3 cannot arise from the formulas (eta1 >= eta3 there) and
    // has no row in the table.
    throw IndeterminateBranch("eta_table_k2: eta1 < 0 < eta3 has no table entry");
}

ClassificationReport classify(double ell, double sigma, double b) {
    const CriticalAnalysis ca = analyze(ell);
    ClassificationReport rep;
    rep.analysis = ca;

    switch (ca.partition_class) {
        case PartitionClass::I1:
            if (b != 0.0) {
                rep.ttype = TransitionType::Mixed;
                rep.bifurcation =
                    "sign-dependent basin split near u = 0; escape side matches sign of b";
            } else {
                rep.ttype = TransitionType::Continuous;
                rep.bifurcation = "two stable equilibrium points for lambda > lambda0 = 1";
            }
            break;

        case PartitionClass::I3:
            if (b != 0.0) {
                rep.ttype = TransitionType::Mixed;
                rep.bifurcation =
                    "sign-dependent basin split near u = 0 along the mode-0 direction; "
                    "escape side matches sign of b";
            } else {
                rep.ttype = TransitionType::Continuous;
                rep.bifurcation =
                    "S2 attractor for lambda > lambda0 = 1 containing two stable "
                    "equilibria and an unstable periodic orbit";
            }
            break;

        case PartitionClass::I2: {
            const SingleHopfNumbers n = single_hopf_numbers(ell, sigma, b);
            rep.ttype = classify_single_hopf(n.P);
            rep.numbers = n;
            rep.bifurcation = rep.ttype == TransitionType::Continuous
                                  ? "stable periodic orbit for lambda > lambda0"
                                  : "unstable periodic orbit for lambda < lambda0";
            break;
        }

        case PartitionClass::I4: {
            const DoubleHopfNumbers n = double_hopf_numbers(ell, sigma, b);
            rep.numbers = n;
            if (n.k == 1) {
                if (std::abs(n.eta3) <= kDegeneracyTol)
                    throw DegenerateTransitionNumber("classify: eta3 = 0 at k = 1");
                rep.ttype = n.eta3 < 0.0 ? TransitionType::Continuous
                                         : TransitionType::Catastrophic;
            } else {
                rep.ttype = eta_table_k2(n.eta1, n.eta2, n.eta3);
            }
            switch (rep.ttype) {
                case TransitionType::Continuous:
                    rep.bifurcation =
                        "S3 attractor for lambda > lambda0 (two periodic orbits and an "
                        "invariant torus)";
                    break;
                case TransitionType::Catastrophic:
                    rep.bifurcation =
                        "trajectories leave every small neighborhood of u = 0 for "
                        "lambda > lambda0";
                    break;
                case TransitionType::Mixed:
                    rep.bifurcation = "coexisting attracting and escaping sets near u = 0";
                    break;
            }
            break;
        }
    }
    return rep;
}

double lyapunov_number_2pi(double sigma, double b) {
    const double b2 = b * b;
    return std::numbers::pi * (2.0 * b2 + b2 / (9.0 + 4.0 * sigma * sigma) - 1.5);
}

double eta2_value(double ell, double sigma, double b, Eta2Convention convention) {
    const CriticalAnalysis ca = analyze(ell);
    if (ca.partition_class != PartitionClass::I4 || ca.k < 2)
        throw WrongClass("eta2_value: requires I4 with k >= 2");

    const double kk = static_cast<double>(ca.k);
    const double rho = 2.0 * std::numbers::pi / ell;
    const double r2 = rho * rho;
    const double re = (2.0 * kk * kk - 2.0) * r2 - (kk * kk * kk * kk - 1.0) * r2 * r2;
    const double coeff = convention == Eta2Convention::Derived3k2Plus3k
                             ? 3.0 * kk * kk + 3.0 * kk
                             : kk * kk + 3.0 * kk;
    const double im = sigma * coeff * rho * rho * rho;
    const double b2 = b * b;
    return 4.0 * b2 / (1.0 - ca.lambda0) + 4.0 * b2 * re / (re * re + im * im) - 6.0;
}

}  // namespace sh3
