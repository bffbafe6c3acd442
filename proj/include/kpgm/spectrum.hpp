#pragma once

#include <optional>

#include "kpgm/model.hpp"

namespace kpgm {

/// Coefficients of the simplified level formula E(n) = Q1 - Q2 (rho + Q3/rho)^2, rho = n + Delta.
struct ThermoCoeffs {
    double Q1 = 0.0;
    double Q2 = 0.0;
    double Q3 = 0.0;
    double Delta = 1.0;
    double n_max = 0.0;     ///< stationary point of E(n), clamped at 0
    bool interior = false;  ///< true when the stationary point lies at n > 0
};

struct NMax {
    double value = 0.0;
    bool interior = false;
    double numeric_root = 0.0;  ///< bisection root of the finite-difference dE/dn (0 when not interior)
};

/// Closed-form energy in its printed form:
///   E = -(alpha^2 hbar^2 / 2mu) [((n^2+n+1/2) + (2n+1) eta - A - 2F) / ((2n+1) + 2 eta)]^2 - G.
double energy(const QuantumNumbers& nq, const MoleculeSpec& spec);

ThermoCoeffs thermo_coefficients(const MoleculeSpec& spec, int ell);

/// Q1 - Q2 [(n+Delta) + Q3/(n+Delta)]^2.
double energy_simplified(double n, const ThermoCoeffs& coeffs);

/// Same quantity written as -[Q2 rho^2 + Q2 Q3^2 / rho^2] - [2 Q2 Q3 - Q1].
double energy_expanded(double n, const ThermoCoeffs& coeffs);

/// dE/dn of energy_simplified, analytic.
double energy_simplified_slope(double n, const ThermoCoeffs& coeffs);

/// max(0, sqrt|Q3| - Delta), verified against a bisection root of a
/// five-point finite-difference dE/dn. Throws ConvergenceError if they
/// differ by more than 1e-8.
NMax compute_n_max(const ThermoCoeffs& coeffs);

enum class NuBranch { Decaying, Growing };

/// Standard parametric quantization condition
///   c2 n - (2n+1) c5 + (2n+1)(sqrt c9 + c3 sqrt c8) + n(n-1) c3 + c7 + 2 c3 c8 + 2 sqrt(c8 c9).
/// Growing flips the sign of sqrt(c8).
double nu_condition_residual(double energy, int n, const DimensionlessSet& dimless,
                             NuBranch branch = NuBranch::Decaying);

/// Root in E of the decaying-branch residual, found by bisection below the asymptote.
/// Empty when level n is not bound.
std::optional<double> nu_condition_root(int n, const DimensionlessSet& dimless);

}  // namespace kpgm
