#pragma once

#include <string>

namespace kpgm {

/// Physical constants of one diatomic system in natural units.
///
/// The potential is the Kratzer well plus a screened generalized Morse term,
///   V(r) = -2 De (re/r - re^2/(2 r^2)) + D (1 - b e^{-alpha r} / (1 - e^{-alpha r}))^2.
struct MoleculeSpec {
    std::string name;
    double mu = 1.0;       ///< reduced mass
    double hbar = 1.0;
    double De = 0.0;       ///< Kratzer dissociation energy
    double re = 1.0;       ///< equilibrium bond length
    double D = 0.0;        ///< Morse-part strength
    double b = 0.0;        ///< Morse shape parameter
    double alpha = 1.0;    ///< screening parameter (inverse length)
    double k_boltz = 1.0;

    /// Throws DomainError naming the first violated constraint.
    void validate() const;

    friend bool operator==(const MoleculeSpec&, const MoleculeSpec&) = default;
};

struct QuantumNumbers {
    int n = 0;
    int ell = 0;

    friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;
};

/// Dimensionless couplings of the exponentially mapped radial equation.
///
/// With s = e^{-alpha r} the Greene-Aldrich form of the radial equation reads
///   psi'' + psi'/s + [-(xi2 + K) s^2 + (2 xi2 + L) s - (xi2 + C)] psi / (s^2 (1-s)^2) = 0
/// where K = A+B+C+F+G+4 lambda_cent and L = A+2C+F.
struct DimensionlessSet {
    double A = 0.0;
    double B = 0.0;
    double C = 0.0;
    double F = 0.0;
    double G = 0.0;
    double lambda_cent = 0.0;  ///< ell (ell + 1)
    double eta = 0.5;
    double delta = 1.0;        ///< always 1/2 + eta

    double mu = 1.0;
    double hbar = 1.0;
    double alpha = 1.0;

    /// alpha^2 hbar^2 / (2 mu): converts the dimensionless couplings back to energy.
    double energy_scale() const { return alpha * alpha * hbar * hbar / (2.0 * mu); }

    /// xi^2 = -2 mu E / (alpha^2 hbar^2).
    double xi2_of(double energy) const { return -energy / energy_scale(); }

    /// sqrt(C + xi^2(E)); DomainError when E lies above the asymptote D.
    double gamma_of(double energy) const;

    double s2_coefficient() const { return A + B + C + F + G + 4.0 * lambda_cent; }
    double s1_coefficient() const { return A + 2.0 * C + F; }
};

/// Parametric Nikiforov-Uvarov constants for one trial energy.
struct NUCoefficients {
    double c1 = 1.0, c2 = 1.0, c3 = 1.0;
    double c4 = 0.0, c5 = -0.5, c6 = 0.0;
    double c7 = 0.0, c8 = 0.0, c9 = 0.0;
    double c10 = 0.0, c11 = 0.0, c12 = 0.0, c13 = 0.0;
    double omega1 = 0.0, omega2 = 0.0, omega3 = 0.0;
};

struct InverseRApprox {
    double inv_r;   ///< approximates 1/r
    double inv_r2;  ///< approximates 1/r^2, equal to inv_r^2
};

double potential(double r, const MoleculeSpec& spec);

/// Greene-Aldrich replacement for 1/r and 1/r^2 with the prefactors 2 alpha and 4 alpha^2.
InverseRApprox greene_aldrich_inverse_r(double r, double alpha);

DimensionlessSet map_dimensionless(const MoleculeSpec& spec, int ell);

/// Omega and c coefficients at energy E, following the standard parametric chain
/// c4 = (1-c1)/2, c5 = (c2-2c3)/2, c6 = c5^2 + Omega1, c7 = 2c4c5 - Omega2,
/// c8 = c4^2 + Omega3, c9 = c3c7 + c3^2c8 + c6, ...
/// Throws DomainError when c8 or c9 is negative (E above the asymptote).
NUCoefficients nu_coefficients(const DimensionlessSet& dimless, double energy);

/// The r-space potential whose radial equation maps exactly onto the
/// Greene-Aldrich equation under s = e^{-alpha r}:
///   (hbar^2 alpha^2 / 2mu) [K s^2 - L s + C] / (1-s)^2.
double effective_potential_approx(double r, const MoleculeSpec& spec, int ell);
double effective_potential_approx(double r, const DimensionlessSet& dimless);

}  // namespace kpgm
