#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kpgm/model.hpp"
#include "kpgm/specfun.hpp"
#include "kpgm/spectrum.hpp"

namespace kpgm {

enum class ThermoPath { Direct, Integral, Closed };

std::string to_string(ThermoPath path);
/// Throws DomainError on an unknown name.
ThermoPath parse_thermo_path(const std::string& name);

/// One row of a thermodynamic sweep. On the closed path U, C, S and F hold
/// real parts; F is -ln|Z|/beta there.
struct ThermoPoint {
    double beta = 0.0;
    double lam = 0.0;
    ThermoPath path = ThermoPath::Direct;
    Complex Z{0.0, 0.0};
    double U = 0.0;
    double C = 0.0;
    double S = 0.0;
    double F = 0.0;
};

/// Sum of e^{-beta E_n} over n = 0 .. floor(n_max) using the simplified level formula.
double partition_direct(double beta, const MoleculeSpec& spec, int ell);
double partition_direct(double beta, const ThermoCoeffs& coeffs);

/// Exact thermodynamics of the finite level set: U = <E>, C = k beta^2 Var E,
/// S = k (ln Z + beta U), F = -ln Z / beta. Evaluated with a shifted exponent.
ThermoPoint thermo_direct(double beta, const ThermoCoeffs& coeffs, double k_boltz = 1.0);

/// Integral of e^{-beta E(n)} over n in (0, n_max); QuadratureError below 1e-9 relative.
double partition_integral(double beta, const ThermoCoeffs& coeffs);
/// Same moments as thermo_direct with the sum replaced by the integral.
ThermoPoint thermo_integral(double beta, const ThermoCoeffs& coeffs, double k_boltz = 1.0);

/// Closed antiderivative over (0, lam), with a = sqrt(-beta Q2), c = sqrt(-beta Q2 Q3^2) (principal roots):
///   Z = zeta1/(4a) [1 + erf(lam a - c/lam) - e^{4ac} erfc(lam a + c/lam)],
///   zeta1 = sqrt(pi) exp(-beta Q1 + 2 beta Q2 Q3 - 2ac).
/// Evaluated through e^{-sigma}-scaled erfc products; OverflowError if ln Z leaves range.
Complex partition_closed(double beta, const ThermoCoeffs& coeffs, double lam);
/// Principal log of partition_closed, computed without forming Z.
Complex log_partition_closed(double beta, const ThermoCoeffs& coeffs, double lam);
/// The same expression with plain complex erf/erfc and no scaling.
Complex partition_closed_unscaled(double beta, const ThermoCoeffs& coeffs, double lam);

/// e^{beta(2 Q2 Q3 - Q1)} e^{beta (Q2 lam^2 + Q2 Q3^2 / lam^2)}: the lam-derivative of partition_closed.
double closed_integrand(double beta, const ThermoCoeffs& coeffs, double lam);

/// -d ln Z / d beta on the closed path.
Complex mean_energy(double beta, const ThermoCoeffs& coeffs, double lam);
/// k beta^2 d^2 ln Z / d beta^2 on the closed path. DomainError when Q3 = 0.
Complex heat_capacity(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz = 1.0);
/// k ln Z - k beta d ln Z / d beta on the closed path.
Complex entropy(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz = 1.0);
/// -Log Z / beta on the closed path.
Complex free_energy(double beta, const ThermoCoeffs& coeffs, double lam);

ThermoPoint thermo_closed(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz = 1.0);

/// Closed forms exactly as printed, kept for auditing against the functions above.
namespace printed {
Complex mean_energy(double beta, const ThermoCoeffs& coeffs, double lam);
Complex heat_capacity(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz = 1.0);
Complex entropy(double beta, const ThermoCoeffs& coeffs, double lam, double k_boltz = 1.0);
Complex free_energy(double beta, const ThermoCoeffs& coeffs, double lam);
}  // namespace printed

/// One point per beta on the chosen path. lam defaults to n_max on the closed path.
std::vector<ThermoPoint> sweep_thermo(const MoleculeSpec& spec, int ell,
                                      const std::vector<double>& betas, ThermoPath path,
                                      std::optional<double> lam_override = std::nullopt,
                                      unsigned threads = 1);

/// Closed path at fixed beta, one point per lam.
std::vector<ThermoPoint> sweep_thermo_lambda(const MoleculeSpec& spec, int ell, double beta,
                                             const std::vector<double>& lams, unsigned threads = 1);

}  // namespace kpgm
