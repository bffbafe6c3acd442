#pragma once

#include <functional>
#include <vector>

#include "kpgm/model.hpp"
#include "kpgm/specfun.hpp"
#include "kpgm/spectrum.hpp"

namespace kpgm {

using RealFn = std::function<double(double)>;

/// Uniform radial grid, end points included.
struct GridSpec {
    double r_min = 0.0;
    double r_max = 0.0;
    int count = 0;

    void validate() const;
    double step() const { return (r_max - r_min) / (count - 1); }
};

/// Adaptive Gauss-Kronrod (15-point rule); b may be +infinity.
/// Throws QuadratureError when the error estimate exceeds tol relative
/// (tol absolute for results near zero).
double quad_adaptive(const RealFn& f, double a, double b, double tol = 1e-10);

/// Adaptive Simpson with Richardson correction.
double adaptive_simpson(const RealFn& f, double a, double b, double tol = 1e-12);

/// 20-point Gauss-Legendre on each of `panels` equal sub-intervals.
double gauss_legendre_composite(const RealFn& f, double a, double b, int panels);

struct Estimate {
    double value = 0.0;
    double error = 0.0;
};

/// Ridders' extrapolation of central differences (first or second derivative).
Estimate derivative(const RealFn& f, double x, int order, double h0);

struct FdSpectrum {
    std::vector<double> energies;  ///< h^2-extrapolated
    std::vector<double> errors;    ///< difference between the two extrapolations
    std::vector<double> orders;    ///< observed convergence order per level
    std::vector<std::vector<double>> raw;  ///< per grid level, coarse to fine
};

/// Lowest `count_states` eigenvalues of -(hbar^2/2mu) psi'' + V psi = E psi with
/// Dirichlet ends, on grids of count, 2count-1 and 4count-3 points. Levels are
/// extracted by Sturm-sequence bisection. Throws ConvergenceError when the two
/// Richardson estimates differ by more than rel_tol.
FdSpectrum fd_eigensolve(const RealFn& veff, const GridSpec& grid, double mu, double hbar,
                         int count_states, double rel_tol = 1e-6);

/// r_min = 1e-3/alpha; r_max where the effective potential is within 1e-8 of
/// its asymptote, but at least 60/alpha.
GridSpec default_fd_grid(const DimensionlessSet& dimless, int count = 4000);

/// Explicit finite sum for P_n^{(a,b)}(x) in 50-digit arithmetic; n <= 15.
double jacobi_sum_oracle(int n, double a, double b, double x);

/// Maclaurin series of erf in 50-digit arithmetic; |z| <= 4.
Complex erf_series_oracle(Complex z);

/// w(z) = e^{-z^2} (1 - erf(-iz)) from the same series, 50-digit arithmetic; |z| <= 4.
Complex faddeeva_series_oracle(Complex z);

/// Stirling series after upward recursion, 50-digit arithmetic.
double ln_gamma_oracle(double x);

/// The potential evaluated in 50-digit arithmetic.
double potential_oracle(double r, const MoleculeSpec& spec);

/// Level sum in 50-digit arithmetic.
double partition_direct_oracle(double beta, const ThermoCoeffs& coeffs);

}  // namespace kpgm
