#pragma once

#include <cmath>
#include <vector>

#include "kpgm/model.hpp"

namespace kpgm {

enum class NormMode { Quadrature, Closed };

/// Which energy fixes gamma: the printed closed form or the root of the NU condition.
enum class EnergySource { Printed, NuCondition };

struct RadialSample {
    int n = 0;
    int ell = 0;
    double r = 0.0;
    double psi = 0.0;
    double rho = 0.0;
};

/// sqrt(2 alpha n! G(2g+2d+n) G(2g+2d+2n) / (2^{2g+2d} G(2g+n) G(2d+n+1))), in log space.
double log_normalization_constant(int n, double gamma, double delta, double alpha);
double normalization_constant(int n, double gamma, double delta, double alpha);

/// One bound state s^gamma (1-s)^delta P_n^{(2gamma, 2delta-1)}(1-2s), s = e^{-alpha r},
/// with gamma evaluated at the state's own energy.
class RadialState {
public:
    RadialState(QuantumNumbers nq, const MoleculeSpec& spec, NormMode mode = NormMode::Quadrature,
                EnergySource source = EnergySource::Printed);

    QuantumNumbers quantum_numbers() const { return nq_; }
    double energy() const { return energy_; }
    double gamma() const { return gamma_; }
    double delta() const { return delta_; }
    double alpha() const { return alpha_; }

    /// Un-normalized shape. Underflows for stiff potentials; operator() does not.
    double shape(double r) const;
    /// Normalized amplitude, evaluated in log space.
    double operator()(double r) const;
    double density(double r) const;

    /// Constant actually applied to the shape.
    double norm() const { return std::exp(log_norm_); }
    double log_norm() const { return log_norm_; }
    double closed_constant() const;
    /// sqrt of the integral of shape^2 over (0, inf).
    double quadrature_norm() const;
    double log_quadrature_norm() const;
    /// Location of the envelope maximum.
    double peak() const { return r_peak_; }

private:
    double log_envelope(double r) const;
    double polynomial(double r) const;

    QuantumNumbers nq_;
    double energy_ = 0.0;
    double gamma_ = 0.0;
    double delta_ = 0.0;
    double alpha_ = 1.0;
    double log_norm_ = 0.0;
    double log_peak_ = 0.0;
    double r_peak_ = 0.0;
};

/// sqrt of the integral of the un-normalized shape squared; QuadratureError below 1e-10.
double numeric_norm(QuantumNumbers nq, const MoleculeSpec& spec,
                    EnergySource source = EnergySource::Printed);

double wavefunction_value(double r, QuantumNumbers nq, const MoleculeSpec& spec,
                          NormMode mode = NormMode::Quadrature);
double probability_density(double r, QuantumNumbers nq, const MoleculeSpec& spec,
                           NormMode mode = NormMode::Quadrature);

/// State-major table. Work is split across `threads` workers; row order does not depend on it.
std::vector<RadialSample> sample_states(const std::vector<double>& grid,
                                        const std::vector<QuantumNumbers>& states,
                                        const MoleculeSpec& spec,
                                        NormMode mode = NormMode::Quadrature,
                                        EnergySource source = EnergySource::Printed,
                                        unsigned threads = 1);

/// 600 points on [0.01, 15]/alpha: 100 log-spaced up to 1/alpha, then linear.
std::vector<double> default_figure_grid(double alpha);

}  // namespace kpgm
