#include "kpgm/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "kpgm/errors.hpp"
#include "parallel.hpp"
#include "kpgm/oracles.hpp"
#include "kpgm/specfun.hpp"
#include "kpgm/spectrum.hpp"

namespace kpgm {

namespace {

constexpr double kMaxLogNorm = 700.0;
constexpr double kNormTol = 1e-10;

double state_energy(QuantumNumbers nq, const MoleculeSpec& spec, const DimensionlessSet& d,
                    EnergySource source) {
    if (source == EnergySource::Printed) return energy(nq, spec);
    const auto root = nu_condition_root(nq.n, d);
    if (!root) throw DomainError("wavefunction: level " + std::to_string(nq.n) + " is not bound");
    return *root;
}

}  // namespace

double log_normalization_constant(int n, double gamma, double delta, double alpha) {
    if (n < 0) throw DomainError("normalization_constant: n must be >= 0");
    if (!(alpha > 0.0)) throw DomainError("normalization_constant: alpha must be > 0");
    const double gd = 2.0 * gamma + 2.0 * delta;
    const double args[] = {gd + n, gd + 2.0 * n, 2.0 * gamma + n, 2.0 * delta + n + 1.0};
    for (double a : args) {
        if (!(a > 0.0)) throw DomainError("normalization_constant: Gamma argument <= 0");
    }
    const double log_sq = std::log(2.0 * alpha) + ln_gamma(n + 1.0) + ln_gamma(args[0]) +
                          ln_gamma(args[1]) - gd * std::numbers::ln2 - ln_gamma(args[2]) -
                          ln_gamma(args[3]);
    return 0.5 * log_sq;
}

double normalization_constant(int n, double gamma, double delta, double alpha) {
    const double log_n = log_normalization_constant(n, gamma, delta, alpha);
    if (std::abs(log_n) > kMaxLogNorm) {
        throw OverflowError("normalization_constant: result out of range");
    }
    return std::exp(log_n);
}

RadialState::RadialState(QuantumNumbers nq, const MoleculeSpec& spec, NormMode mode,
                         EnergySource source)
    : nq_(nq), alpha_(spec.alpha) {
    if (nq.n < 0 || nq.ell < 0) throw DomainError("RadialState: quantum numbers must be >= 0");
    spec.validate();
    const DimensionlessSet d = map_dimensionless(spec, nq.ell);
    energy_ = state_energy(nq, spec, d, source);
    gamma_ = d.gamma_of(energy_);
    if (!(gamma_ > 0.0)) throw DomainError("RadialState: gamma must be > 0 for a bound state");
    delta_ = d.delta;
    const double s_peak = gamma_ / (gamma_ + delta_);
    r_peak_ = -std::log(s_peak) / alpha_;
    log_peak_ = gamma_ * std::log(s_peak) + delta_ * std::log1p(-s_peak);
    log_norm_ = mode == NormMode::Closed ? log_normalization_constant(nq.n, gamma_, delta_, alpha_)
                                         : -log_quadrature_norm();
}

double RadialState::log_envelope(double r) const {
    if (!(r > 0.0)) throw DomainError("wavefunction: r must be > 0");
    const double ar = alpha_ * r;
    return -gamma_ * ar + delta_ * std::log(-std::expm1(-ar));
}

double RadialState::polynomial(double r) const {
    return jacobi(nq_.n, 2.0 * gamma_, 2.0 * delta_ - 1.0, 1.0 - 2.0 * std::exp(-alpha_ * r));
}

double RadialState::shape(double r) const { return std::exp(log_envelope(r)) * polynomial(r); }

double RadialState::operator()(double r) const {
    return std::exp(log_norm_ + log_envelope(r)) * polynomial(r);
}

double RadialState::density(double r) const {
    const double psi = (*this)(r);
    return psi * psi;
}

double RadialState::closed_constant() const {
    return normalization_constant(nq_.n, gamma_, delta_, alpha_);
}

double RadialState::log_quadrature_norm() const {
    auto integrand = [this](double r) {
        if (r <= 0.0) return 0.0;
        const double v = std::exp(log_envelope(r) - log_peak_) * polynomial(r);
        return v * v;
    };
    const double knee = r_peak_ + (nq_.n + 1.0) * 4.0 / (alpha_ * std::min(gamma_, 1.0));
    const double inf = std::numeric_limits<double>::infinity();
    const double total = quad_adaptive(integrand, 0.0, r_peak_, kNormTol) +
                         quad_adaptive(integrand, r_peak_, knee, kNormTol) +
                         quad_adaptive(integrand, knee, inf, kNormTol);
    return log_peak_ + 0.5 * std::log(total);
}

double RadialState::quadrature_norm() const { return std::exp(log_quadrature_norm()); }

double numeric_norm(QuantumNumbers nq, const MoleculeSpec& spec, EnergySource source) {
    return 1.0 / RadialState(nq, spec, NormMode::Quadrature, source).norm();
}

double wavefunction_value(double r, QuantumNumbers nq, const MoleculeSpec& spec, NormMode mode) {
    return RadialState(nq, spec, mode)(r);
}

double probability_density(double r, QuantumNumbers nq, const MoleculeSpec& spec, NormMode mode) {
    return RadialState(nq, spec, mode).density(r);
}

std::vector<RadialSample> sample_states(const std::vector<double>& grid,
                                        const std::vector<QuantumNumbers>& states,
                                        const MoleculeSpec& spec, NormMode mode,
                                        EnergySource source, unsigned threads) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0) || (i > 0 && !(grid[i] > grid[i - 1]))) {
            throw DomainError("sample_states: grid must be positive and strictly increasing");
        }
    }
    std::vector<RadialSample> rows(grid.size() * states.size());
    auto fill = [&](std::size_t k) {
        const RadialState state(states[k], spec, mode, source);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double psi = state(grid[i]);
            rows[k * grid.size() + i] = {states[k].n, states[k].ell, grid[i], psi, psi * psi};
        }
    };
    detail::parallel_for(states.size(), threads, fill);
    return rows;
}

std::vector<double> default_figure_grid(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("default_figure_grid: alpha must be > 0");
    constexpr int kLog = 100;
    constexpr int kLinear = 500;
    std::vector<double> grid;
    grid.reserve(kLog + kLinear);
    const double lo = std::log(0.01);
    for (int i = 0; i < kLog; ++i) grid.push_back(std::exp(lo - lo * i / (kLog - 1)) / alpha);
    for (int i = 1; i <= kLinear; ++i) grid.push_back((1.0 + 14.0 * i / kLinear) / alpha);
    return grid;
}

}  // namespace kpgm
