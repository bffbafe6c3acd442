#include "kpgm/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "kpgm/errors.hpp"
#include "kpgm/oracles.hpp"
#include "parallel.hpp"

namespace kpgm {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kPi = std::numbers::pi;
constexpr double kMaxExp = 709.0;
constexpr double kIntegralTol = 1e-9;

// Terms of the closed antiderivative with the common factor e^{sigma} removed:
// em = e^{-sigma} erfc(u-), ep = e^{-sigma} e^{4ac} erfc(u+), m = e^{-u-^2 - sigma}.
struct ClosedTerms {
    double beta = 0.0;
    double lam = 0.0;
    double sigma = 0.0;
    double es = 1.0;  // e^{-sigma}
    Complex a, c, ac;
    Complex m, em, ep;
    Complex z2, z3, z4;
    Complex log_z;
};

void check_closed_args(double beta, const ThermoCoeffs& k, double lam) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("closed path: beta must be > 0");
    if (!(lam > 0.0) || !std::isfinite(lam)) throw DomainError("closed path: lam must be > 0");
    if (k.Q2 == 0.0) throw DomainError("closed path: Q2 must be nonzero");
}

Complex wrap_imag(Complex z) { return {z.real(), std::remainder(z.imag(), 2.0 * kPi)}; }

ClosedTerms closed_terms(double beta, const ThermoCoeffs& k, double lam) {
    check_closed_args(beta, k, lam);
    ClosedTerms t;
    t.beta = beta;
    t.lam = lam;
    t.a = std::sqrt(Complex(-beta * k.Q2, 0.0));
    t.c = std::sqrt(Complex(-beta * k.Q2 * k.Q3 * k.Q3, 0.0));
    t.ac = t.a * t.c;
    const Complex um = lam * t.a - t.c / lam;
    const Complex up = lam * t.a + t.c / lam;
    const Complex log_m = -um * um;
    t.sigma = std::max(0.0, log_m.real());
    t.es = std::exp(-t.sigma);
    t.m = std::exp(log_m - t.sigma);
    // up^2 - um^2 = 4ac exactly, so both terms share the exponent log_m - sigma
    t.em = exp_scaled_erfc(Complex(-t.sigma, 0.0), um, log_m - t.sigma);
    t.ep = exp_scaled_erfc(4.0 * t.ac - t.sigma, up, log_m - t.sigma);
    t.z2 = t.em + t.ep - 2.0 * t.es;
    t.z3 = t.em - t.ep - 2.0 * t.es;
    t.z4 = 4.0 * lam * t.a * t.m;
    if (t.z2 == 0.0) throw OverflowError("closed path: erfc combination vanishes");
    t.log_z = wrap_imag(std::log(kSqrtPi) - beta * k.Q1 + 2.0 * beta * k.Q2 * k.Q3 - 2.0 * t.ac +
                        t.sigma + std::log(-t.z2) - std::log(4.0 * t.a));
    return t;
}

// 2 beta Q1 - 4 beta Q2 Q3 + 1
double energy_bracket(double beta, const ThermoCoeffs& k) {
    return 2.0 * beta * k.Q1 - 4.0 * beta * k.Q2 * k.Q3 + 1.0;
}

Complex entropy_numerator(const ClosedTerms& t, const ThermoCoeffs& k) {
    const Complex z10 = 4.0 * kSqrtPi * t.ac * t.em + 4.0 * t.lam * t.a * t.m -
                        8.0 * kSqrtPi * t.ac * t.es;
    const Complex z11 = 4.0 * kSqrtPi * t.ac * t.ep;
    return z10 - z11 + kSqrtPi * t.z2 * energy_bracket(t.beta, k);
}

Complex printed_heat_capacity_terms(const ClosedTerms& t, const ThermoCoeffs& k, double k_boltz) {
    if (t.c == 0.0) throw DomainError("heat_capacity: closed form divides by sqrt(-beta Q2 Q3^2), Q3 = 0");
    const double beta = t.beta;
    const double lam = t.lam;
    const Complex a4 = 4.0 * lam * lam * t.a + t.c;
    const Complex z5_shifted = t.m * a4 - 8.0 * kSqrtPi * lam * t.ac * t.ep;  // e^{2ac} zeta5
    const Complex z6 = (t.c - 4.0 * lam * lam * t.a) * t.m + 16.0 * kSqrtPi * lam * t.ac * t.es;
    const Complex z7_shifted = z5_shifted * t.em + z6 * t.ep - 2.0 * t.m * a4 * t.es;  // e^{2ac} zeta7
    const Complex z8 = 4.0 * kSqrtPi * beta * beta * k.Q2 * k.Q2 *
                       (k.Q3 * k.Q3 * z7_shifted - std::pow(lam, 4) * t.z2 * t.c * t.m);
    const Complex z9 = 2.0 * beta * lam * lam * k.Q2 * t.c * t.m *
                       (4.0 * lam * t.a * t.m - kSqrtPi * t.z2);
    const Complex z22 = t.z2 * t.z2;
    return k_boltz * beta * beta * (-kPi * lam * z22 * t.ac + z8 - z9) /
           (2.0 * kPi * beta * beta * lam * z22 * t.ac);
}

void require_finite(Complex z, const char* what) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw OverflowError(std::string(what) + ": result not representable");
    }
}

std::vector<double> level_energies(const ThermoCoeffs& k) {
    const int top = static_cast<int>(std::floor(k.n_max));
    std::vector<double> levels;
    for (int n = 0; n <= top; ++n) levels.push_back(energy_simplified(n, k));
    if (levels.empty()) throw DomainError("partition_direct: no levels");
    return levels;
}

ThermoPoint finish_point(ThermoPoint p, double log_z, double mean, double var, double k_boltz) {
    if (log_z > kMaxExp) throw OverflowError("partition function exceeds double range");
    p.Z = Complex(std::exp(log_z), 0.0);
    p.U = mean;
    p.C = k_boltz * p.beta * p.beta * var;
    p.S = k_boltz * (log_z + p.beta * mean);
    p.F = -log_z / p.beta;
    return p;
}

}  // namespace

std::string to_string(ThermoPath path) {
    switch (path) {
        case ThermoPath::Direct: return "direct";
        case ThermoPath::Integral: return "integral";
        case ThermoPath::Closed: return "closed";
    }
    return "direct";
}

ThermoPath parse_thermo_path(const std::string& name) {
    if (name == "direct") return ThermoPath::Direct;
    if (name == "integral") return ThermoPath::Integral;
    if (name == "closed") return ThermoPath::Closed;
    throw DomainError("unknown thermo path '" + name + "'");
}

double partition_direct(double beta, const MoleculeSpec& spec, int ell) {
    return partition_direct(beta, thermo_coefficients(spec, ell));
}

double partition_direct(double beta, const ThermoCoeffs& coeffs) {
    if (!(beta > 0.0)) throw DomainError("partition_direct: beta must be > 0");
    double sum = 0.0;
    for (double e : level_energies(coeffs)) sum += std::exp(-beta * e);
    if (!std::isfinite(sum)) throw OverflowError("partition_direct: sum exceeds double range");
    return sum;
}

ThermoPoint thermo_direct(double beta, const ThermoCoeffs& coeffs, double k_boltz) {
    if (!(beta > 0.0)) throw DomainError("thermo_direct: beta must be > 0");
    const auto levels = level_energies(coeffs);
    const double e0 = *std::min_element(levels.begin(), levels.end());
    double z = 0.0;
    double first = 0.0;
    for (double e : levels) {
        const double w = std::exp(-beta * (e - e0));
        z += w;
        first += w * e;
    }
    const double mean = first / z;
    double var = 0.0;
    for (double e : levels) var += std::exp(-beta * (e - e0)) * (e - mean) * (e - mean);
    var /= z;
    ThermoPoint p;
    p.beta = beta;
    p.lam = coeffs.n_max;
    p.path = ThermoPath::Direct;
    return finish_point(p, -beta * e0 + std::log(z), mean, var, k_boltz);
}

double partition_integral(double beta, const ThermoCoeffs& coeffs) {
    if (!(beta > 0.0)) throw DomainError("partition_integral: beta must be > 0");
    if (coeffs.n_max <= 0.0) return 0.0;
    return quad_adaptive([&](double n) { return std::exp(-beta * energy_simplified(n, coeffs)); },
                         0.0, coeffs.n_max, kIntegralTol);
}

ThermoPoint thermo_integral(double beta, const ThermoCoeffs& coeffs, double k_boltz) {
    if (!(beta > 0.0)) throw DomainError("thermo_integral: beta must be > 0");
    if (!(coeffs.n_max > 0.0)) throw DomainError("thermo_integral: n_max must be > 0");
    const double e0 = std::min(energy_simplified(0.0, coeffs), energy_simplified(coeffs.n_max, coeffs));
    auto weight = [&](double n) { return std::exp(-beta * (energy_simplified(n, coeffs) - e0)); };
    const double z = quad_adaptive(weight, 0.0, coeffs.n_max, kIntegralTol);
    const double mean = quad_adaptive([&](double n) { return weight(n) * energy_simplified(n, coeffs); },
                                      0.0, coeffs.n_max, kIntegralTol) / z;
    const double var = quad_adaptive(
                           [&](double n) {
                               const double d = energy_simplified(n, coeffs) - mean;
                               return weight(n) * d * d;
                           },
                           0.0, coeffs.n_max, kIntegralTol) / z;
    ThermoPoint p;
    p.beta = beta;
    p.lam = coeffs.n_max;
    p.path = ThermoPath::Integral;
    return finish_point(p, -beta * e0 + std::log(z), mean, var, k_boltz);
}

Complex log_partition_closed(double beta, const ThermoCoeffs& coeffs, double lam) {
    return closed_terms(beta, coeffs, lam).log_z;
}

Complex partition_closed(double beta, const ThermoCoeffs& coeffs, double lam) {
    const Complex log_z = log_partition_closed(beta, coeffs, lam);
    if (log_z.real() > kMaxExp) throw OverflowError("partition_closed: |Z| exceeds double range");
    return std::exp(log_z);
}

Complex partition_closed_unscaled(double beta, const ThermoCoeffs& k, double lam) {
    check_closed_args(beta, k, lam);
    const Complex a = std::sqrt(Complex(-beta * k.Q2, 0.0));
    const Complex c = std::sqrt(Complex(-beta * k.Q2 * k.Q3 * k.Q3, 0.0));
    const Complex zeta1 = kSqrtPi * std::exp(-beta * k.Q1 + 2.0 * beta * k.Q2 * k.Q3 - 2.0 * a * c);
    const Complex result = zeta1 / (4.0 * a) *
                           (1.0 + erf_complex(lam * a - c / lam) -
                            std::exp(4.0 * a * c) * erfc_complex(lam * a + c / lam));
    require_finite(result, "partition_closed_unscaled");
    return result;
}

double closed_integrand(double beta, const ThermoCoeffs& k, double lam) {
    if (!(lam > 0.0)) throw DomainError("closed_integrand: lam must be > 0");
    const double exponent = beta * (2.0 * k.Q2 * k.Q3 - k.Q1) +
                            beta * (k.Q2 * lam * lam + k.Q2 * k.Q3 * k.Q3 / (lam * lam));
    if (exponent > kMaxExp) throw OverflowError("closed_integrand: exceeds double range");
    return std::exp(exponent);
}

Complex mean_energy(double beta, const ThermoCoeffs& coeffs, double lam) {
    const ClosedTerms t = closed_terms(beta, coeffs, lam);
    const Complex u = (kSqrtPi * t.z2 * energy_bracket(beta, coeffs) + t.z4 +
                       4.0 * kSqrtPi * t.ac * t.z3) /
                      (2.0 * kSqrtPi * beta * t.z2);
    require_finite(u, "mean_energy");
    return u;
}

Complex heat_capacity(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz) {
    const Complex c = -printed_heat_capacity_terms(closed_terms(beta, coeffs, lam), coeffs, k_boltz);
    require_finite(c, "heat_capacity");
    return c;
}

Complex entropy(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz) {
    const ClosedTerms t = closed_terms(beta, coeffs, lam);
    const Complex s = k_boltz * (t.log_z + entropy_numerator(t, coeffs) / (2.0 * kSqrtPi * t.z2));
    require_finite(s, "entropy");
    return s;
}

Complex free_energy(double beta, const ThermoCoeffs& coeffs, double lam) {
    return -log_partition_closed(beta, coeffs, lam) / beta;
}

ThermoPoint thermo_closed(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz) {
    ThermoPoint p;
    p.beta = beta;
    p.lam = lam;
    p.path = ThermoPath::Closed;
    p.Z = partition_closed(beta, coeffs, lam);
    p.U = mean_energy(beta, coeffs, lam).real();
    p.C = heat_capacity(beta, coeffs, lam, k_boltz).real();
    p.S = entropy(beta, coeffs, lam, k_boltz).real();
    p.F = free_energy(beta, coeffs, lam).real();
    return p;
}

namespace printed {

Complex mean_energy(double beta, const ThermoCoeffs& k, double lam) {
    const ClosedTerms t = closed_terms(beta, k, lam);
    if (t.c == 0.0) throw DomainError("printed mean_energy: divides by sqrt(-beta Q2 Q3^2), Q3 = 0");
    const Complex num = t.c * (kSqrtPi * t.z2 * (2.0 * beta * k.Q1 + 1.0) + t.z4) + t.z2 * t.c -
                        4.0 * kSqrtPi * beta * t.z3 * k.Q2 * k.Q3 * k.Q3 * t.a;
    return num / (2.0 * kSqrtPi * beta * t.z2 * t.c);
}

Complex heat_capacity(double beta, const ThermoCoeffs& k, double lam, double k_boltz) {
    return printed_heat_capacity_terms(closed_terms(beta, k, lam), k, k_boltz);
}

Complex entropy(double beta, const ThermoCoeffs& k, double lam, double k_boltz) {
    const ClosedTerms t = closed_terms(beta, k, lam);
    return k_boltz * (t.log_z + entropy_numerator(t, k) / (2.0 * kSqrtPi * t.z3));
}

Complex free_energy(double beta, const ThermoCoeffs& k, double lam) {
    const ClosedTerms t = closed_terms(beta, k, lam);
    if (t.sigma > kMaxExp) throw OverflowError("printed free_energy: zeta2 exceeds double range");
    const Complex inner = -beta * k.Q1 + 2.0 * beta * k.Q2 * k.Q3 - 2.0 * t.ac;
    return kSqrtPi * std::exp(t.sigma) * t.z2 * inner / (4.0 * beta * t.a);
}

}  // namespace printed

std::vector<ThermoPoint> sweep_thermo(const MoleculeSpec& spec, int ell,
                                      const std::vector<double>& betas, ThermoPath path,
                                      std::optional<double> lam_override, unsigned threads) {
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0) || (i > 0 && !(betas[i] > betas[i - 1]))) {
            throw DomainError("sweep_thermo: beta values must be positive and increasing");
        }
    }
    const ThermoCoeffs coeffs = thermo_coefficients(spec, ell);
    const double lam = lam_override.value_or(coeffs.n_max);
    if (path == ThermoPath::Closed && !(lam > 0.0)) {
        throw DomainError("sweep_thermo: closed path needs lam > 0 (n_max is 0; set lam)");
    }
    std::vector<ThermoPoint> rows(betas.size());
    detail::parallel_for(betas.size(), threads, [&](std::size_t i) {
        switch (path) {
            case ThermoPath::Direct: rows[i] = thermo_direct(betas[i], coeffs, spec.k_boltz); break;
            case ThermoPath::Integral: rows[i] = thermo_integral(betas[i], coeffs, spec.k_boltz); break;
            case ThermoPath::Closed: rows[i] = thermo_closed(betas[i], coeffs, lam, spec.k_boltz); break;
        }
    });
    return rows;
}

std::vector<ThermoPoint> sweep_thermo_lambda(const MoleculeSpec& spec, int ell, double beta,
                                             const std::vector<double>& lams, unsigned threads) {
    const ThermoCoeffs coeffs = thermo_coefficients(spec, ell);
    std::vector<ThermoPoint> rows(lams.size());
    detail::parallel_for(lams.size(), threads, [&](std::size_t i) {
        rows[i] = thermo_closed(beta, coeffs, lams[i], spec.k_boltz);
    });
    return rows;
}

}  // namespace kpgm
