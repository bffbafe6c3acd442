#include "kpgm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kpgm/errors.hpp"

namespace kpgm {

double energy(const QuantumNumbers& nq, const MoleculeSpec& spec) {
    if (nq.n < 0 || nq.ell < 0) throw DomainError("energy: quantum numbers must be >= 0");
    spec.validate();
    const DimensionlessSet d = map_dimensionless(spec, nq.ell);
    const double n = nq.n;
    const double a2h2 = spec.alpha * spec.alpha * spec.hbar * spec.hbar;
    const double morse_linear = 8.0 * spec.mu * spec.D * spec.b / a2h2;
    const double morse_tail = 2.0 * spec.mu * spec.D * spec.b * spec.b / a2h2;
    const double num = (n * n + n + 0.5) + (2.0 * n + 1.0) * d.eta - d.A - morse_linear;
    const double den = (2.0 * n + 1.0) + 2.0 * d.eta;
    const double ratio = num / den;
    return -d.energy_scale() * ratio * ratio - morse_tail;
}

ThermoCoeffs thermo_coefficients(const MoleculeSpec& spec, int ell) {
    if (ell < 0) throw DomainError("thermo_coefficients: ell must be >= 0");
    spec.validate();
    const double mu = spec.mu;
    const double a2h2 = spec.alpha * spec.alpha * spec.hbar * spec.hbar;
    const double l2 = static_cast<double>(ell) * (ell + 1);
    const double b2 = spec.b * spec.b;
    ThermoCoeffs c;
    c.Q1 = -2.0 * mu * spec.D * b2 / a2h2;
    c.Q2 = a2h2 / (8.0 * mu);
    c.Q3 = -mu * spec.De * spec.re * spec.re / (2.0 * a2h2) - mu * spec.D * b2 / (8.0 * a2h2) -
           l2 / 4.0 - 4.0 * mu * spec.De / a2h2;
    const double radicand = 1.0 + 2.0 * mu * spec.De * spec.re * spec.re / a2h2 +
                            mu * spec.D * b2 / (2.0 * a2h2) + l2;
    c.Delta = 0.5 + 0.5 * std::sqrt(radicand);
    const double stationary = std::sqrt(std::abs(c.Q3)) - c.Delta;
    c.interior = stationary > 0.0;
    c.n_max = c.interior ? stationary : 0.0;
    return c;
}

double energy_simplified(double n, const ThermoCoeffs& c) {
    const double rho = n + c.Delta;
    if (!(rho > 0.0)) throw DomainError("energy_simplified: n + Delta must be > 0");
    const double bracket = rho + c.Q3 / rho;
    return c.Q1 - c.Q2 * bracket * bracket;
}

double energy_expanded(double n, const ThermoCoeffs& c) {
    const double rho = n + c.Delta;
    if (!(rho > 0.0)) throw DomainError("energy_expanded: n + Delta must be > 0");
    return -(c.Q2 * rho * rho + c.Q2 * c.Q3 * c.Q3 / (rho * rho)) - (2.0 * c.Q2 * c.Q3 - c.Q1);
}

double energy_simplified_slope(double n, const ThermoCoeffs& c) {
    const double rho = n + c.Delta;
    if (!(rho > 0.0)) throw DomainError("energy_simplified_slope: n + Delta must be > 0");
    return -2.0 * c.Q2 * (rho + c.Q3 / rho) * (1.0 - c.Q3 / (rho * rho));
}

namespace {

double fd_slope(double n, const ThermoCoeffs& c) {
    const double h = 1e-4 * std::max(1.0, std::abs(n + c.Delta));
    return (energy_simplified(n - 2 * h, c) - 8.0 * energy_simplified(n - h, c) +
            8.0 * energy_simplified(n + h, c) - energy_simplified(n + 2 * h, c)) /
           (12.0 * h);
}

}  // namespace

NMax compute_n_max(const ThermoCoeffs& c) {
    if (!(c.Q2 > 0.0)) throw DomainError("compute_n_max: Q2 must be > 0");
    NMax out;
    const double stationary = std::sqrt(std::abs(c.Q3)) - c.Delta;
    if (!(stationary > 0.0)) return out;
    out.value = stationary;
    out.interior = true;

    // dE/dn > 0 below the stationary point and < 0 above it.
    double lo = 0.5 * stationary;
    double hi = 2.0 * stationary + 1.0;
    if (!(fd_slope(lo, c) > 0.0) || !(fd_slope(hi, c) < 0.0)) {
        throw ConvergenceError("compute_n_max: dE/dn does not change sign on the bracket");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (fd_slope(mid, c) > 0.0) lo = mid;
        else hi = mid;
    }
    out.numeric_root = 0.5 * (lo + hi);
    if (std::abs(out.numeric_root - out.value) > 1e-8) {
        throw ConvergenceError("compute_n_max: analytic and numeric stationary points differ by " +
                               std::to_string(std::abs(out.numeric_root - out.value)));
    }
    return out;
}

double nu_condition_residual(double energy, int n, const DimensionlessSet& dimless, NuBranch branch) {
    if (n < 0) throw DomainError("nu_condition_residual: n must be >= 0");
    const NUCoefficients c = nu_coefficients(dimless, energy);
    const double sign = branch == NuBranch::Decaying ? 1.0 : -1.0;
    const double sq8 = sign * std::sqrt(c.c8);
    const double sq9 = std::sqrt(c.c9);
    const double m = 2.0 * n + 1.0;
    return c.c2 * n - m * c.c5 + m * (sq9 + c.c3 * sq8) + n * (n - 1.0) * c.c3 + c.c7 +
           2.0 * c.c3 * c.c8 + 2.0 * sq8 * sq9;
}

std::optional<double> nu_condition_root(int n, const DimensionlessSet& dimless) {
    const double scale = dimless.energy_scale();
    // asymptote of the effective potential, nudged down so that c8 stays >= 0 after rounding
    const double top = scale * dimless.C - 8.0 * std::numeric_limits<double>::epsilon() *
                                               std::max(scale * dimless.C, scale);
    auto residual = [&](double e) { return nu_condition_residual(e, n, dimless); };
    if (!(residual(top) < 0.0)) return std::nullopt;
    double hi = top;
    double step = scale;
    double lo = top - step;
    int expand = 0;
    while (!(residual(lo) > 0.0)) {
        hi = lo;
        step *= 2.0;
        lo = top - step;
        if (++expand > 200) throw ConvergenceError("nu_condition_root: no sign change below asymptote");
    }
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (residual(mid) > 0.0) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace kpgm
