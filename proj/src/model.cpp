#include "kpgm/model.hpp"

#include <cmath>
#include <string>

#include "kpgm/errors.hpp"

namespace kpgm {

namespace {

constexpr double kDenominatorFloor = 1e-14;

// 1 - e^{-alpha r} without cancellation for small alpha r.
double one_minus_s(double r, double alpha) { return -std::expm1(-alpha * r); }

void require_positive(double value, const char* key) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw DomainError(std::string(key) + " must be > 0");
    }
}

}  // namespace

void MoleculeSpec::validate() const {
    require_positive(mu, "mu");
    require_positive(re, "re");
    require_positive(alpha, "alpha");
    require_positive(hbar, "hbar");
    require_positive(k_boltz, "k_boltz");
    if (!(De >= 0.0) || !std::isfinite(De)) throw DomainError("De must be >= 0");
    if (!(D >= 0.0) || !std::isfinite(D)) throw DomainError("D must be >= 0");
    if (!std::isfinite(b)) throw DomainError("b must be finite");
}

double DimensionlessSet::gamma_of(double energy) const {
    const double radicand = C + xi2_of(energy);
    if (radicand < 0.0) {
        throw DomainError("gamma: energy above the asymptote of the effective potential");
    }
    return std::sqrt(radicand);
}

double potential(double r, const MoleculeSpec& spec) {
    if (!(r > 0.0)) throw DomainError("potential: r must be > 0");
    const double denom = one_minus_s(r, spec.alpha);
    if (std::abs(denom) < kDenominatorFloor) {
        throw DomainError("potential: 1 - exp(-alpha r) underflows");
    }
    const double s = std::exp(-spec.alpha * r);
    const double x = spec.re / r;
    const double kratzer = -2.0 * spec.De * (x - 0.5 * x * x);
    const double bracket = 1.0 - spec.b * s / denom;
    return kratzer + spec.D * bracket * bracket;
}

InverseRApprox greene_aldrich_inverse_r(double r, double alpha) {
    if (!(r > 0.0)) throw DomainError("greene_aldrich_inverse_r: r must be > 0");
    if (!(alpha > 0.0)) throw DomainError("greene_aldrich_inverse_r: alpha must be > 0");
    const double denom = one_minus_s(r, alpha);
    const double s = std::exp(-alpha * r);
    const double ratio = s / denom;
    return {2.0 * alpha * ratio, 4.0 * alpha * alpha * ratio * ratio};
}

DimensionlessSet map_dimensionless(const MoleculeSpec& spec, int ell) {
    spec.validate();
    if (ell < 0) throw DomainError("ell must be >= 0");

    const double a2h2 = spec.alpha * spec.alpha * spec.hbar * spec.hbar;
    DimensionlessSet d;
    d.A = 8.0 * spec.mu * spec.De * spec.re / (spec.alpha * spec.hbar * spec.hbar);
    d.B = 8.0 * spec.mu * spec.De * spec.re * spec.re / a2h2;
    d.C = 2.0 * spec.mu * spec.D / a2h2;
    d.F = 4.0 * spec.mu * spec.D * spec.b / a2h2;
    d.G = 2.0 * spec.mu * spec.D * spec.b * spec.b / a2h2;
    d.lambda_cent = static_cast<double>(ell) * (ell + 1);
    d.eta = std::sqrt(0.25 + d.B + d.G + 4.0 * d.lambda_cent);
    d.delta = 0.5 + d.eta;
    d.mu = spec.mu;
    d.hbar = spec.hbar;
    d.alpha = spec.alpha;
    return d;
}

NUCoefficients nu_coefficients(const DimensionlessSet& dimless, double energy) {
    const double xi2 = dimless.xi2_of(energy);

    NUCoefficients k;
    k.omega1 = xi2 + dimless.s2_coefficient();
    k.omega2 = 2.0 * xi2 + dimless.s1_coefficient();
    k.omega3 = xi2 + dimless.C;

    k.c1 = k.c2 = k.c3 = 1.0;
    k.c4 = 0.5 * (1.0 - k.c1);
    k.c5 = 0.5 * (k.c2 - 2.0 * k.c3);
    k.c6 = k.c5 * k.c5 + k.omega1;
    k.c7 = 2.0 * k.c4 * k.c5 - k.omega2;
    k.c8 = k.c4 * k.c4 + k.omega3;
    // c9 is energy independent: xi2 cancels between c6, c7 and c8.
    k.c9 = k.c3 * k.c7 + k.c3 * k.c3 * k.c8 + k.c6;
    if (k.c8 < 0.0) throw DomainError("nu_coefficients: c8 < 0, energy above the asymptote D");
    if (k.c9 < 0.0) throw DomainError("nu_coefficients: c9 < 0");

    const double r8 = std::sqrt(k.c8);
    const double r9 = std::sqrt(k.c9);
    k.c10 = k.c1 + 2.0 * k.c4 + 2.0 * r8;
    k.c11 = k.c2 - 2.0 * k.c5 + 2.0 * (r9 + k.c3 * r8);
    k.c12 = k.c4 + r8;
    k.c13 = k.c5 - (r9 + k.c3 * r8);
    return k;
}

double effective_potential_approx(double r, const DimensionlessSet& dimless) {
    if (!(r > 0.0)) throw DomainError("effective_potential_approx: r must be > 0");
    const double denom = one_minus_s(r, dimless.alpha);
    if (std::abs(denom) < kDenominatorFloor) {
        throw DomainError("effective_potential_approx: 1 - exp(-alpha r) underflows");
    }
    const double s = std::exp(-dimless.alpha * r);
    const double bracket =
        (dimless.s2_coefficient() * s - dimless.s1_coefficient()) * s + dimless.C;
    return dimless.energy_scale() * bracket / (denom * denom);
}

double effective_potential_approx(double r, const MoleculeSpec& spec, int ell) {
    return effective_potential_approx(r, map_dimensionless(spec, ell));
}

}  // namespace kpgm
