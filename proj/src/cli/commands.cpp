#include "kpgm/cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <thread>

#include "kpgm/errors.hpp"
#include "kpgm/spectrum.hpp"
#include "kpgm/thermo.hpp"
#include "kpgm/validation.hpp"
#include "kpgm/version.hpp"
#include "kpgm/wavefunction.hpp"

namespace kpgm::cli {

namespace {

using Cell = Table::Cell;

std::vector<double> linear(double lo, double hi, int points) {
    std::vector<double> out;
    for (int i = 0; i < points; ++i) out.push_back(lo + (hi - lo) * i / (points - 1));
    return out;
}

std::vector<double> sample_linear(double lo, double hi, int points) {
    return points == 1 ? std::vector<double>{lo} : linear(lo, hi, points);
}

}  // namespace

CommandResult cmd_energies(const RunConfig& config, unsigned) {
    CommandResult result;
    Table& t = result.table;
    t.columns = {"n", "ell", "E_eq13", "E_eq23", "nu_residual"};
    t.meta.emplace_back("ell", std::to_string(config.ell));
    const DimensionlessSet d = map_dimensionless(config.molecule, config.ell);
    const ThermoCoeffs coeffs = thermo_coefficients(config.molecule, config.ell);
    for (int n : config.states) {
        const double e13 = energy({n, config.ell}, config.molecule);
        const double e23 = energy_simplified(n, coeffs);
        const double residual = nu_condition_residual(e13, n, d);
        t.rows.push_back({Cell(static_cast<long long>(n)), Cell(static_cast<long long>(config.ell)), Cell(e13),
                          Cell(e23), Cell(residual)});
    }
    return result;
}

CommandResult cmd_wavefunction(const RunConfig& config, unsigned threads) {
    CommandResult result;
    Table& t = result.table;
    t.columns = {"n", "ell", "r", "psi", "rho"};
    const std::vector<double> grid = config.r_points
                                         ? linear(*config.r_min, *config.r_max, *config.r_points)
                                         : default_figure_grid(config.molecule.alpha);
    std::vector<QuantumNumbers> states;
    for (int n : config.states) states.push_back({n, config.ell});
    t.meta.emplace_back("norm", config.norm == NormMode::Quadrature ? "quadrature" : "closed");
    t.meta.emplace_back("energy", config.energy == EnergySource::Printed ? "printed" : "nu");
    for (const auto& nq : states) {
        const RadialState s(nq, config.molecule, config.norm, config.energy);
        t.meta.emplace_back("state_" + std::to_string(nq.n),
                            "E=" + format_double(s.energy()) + " gamma=" + format_double(s.gamma()) +
                                " delta=" + format_double(s.delta()) + " log_norm=" + format_double(s.log_norm()));
    }
    for (const auto& row : sample_states(grid, states, config.molecule, config.norm, config.energy, threads)) {
        t.rows.push_back({Cell(static_cast<long long>(row.n)), Cell(static_cast<long long>(row.ell)), Cell(row.r),
                          Cell(row.psi), Cell(row.rho)});
    }
    return result;
}

CommandResult cmd_thermo(const RunConfig& config, unsigned threads) {
    CommandResult result;
    Table& t = result.table;
    t.columns = {"beta", "lam", "path", "Z_re", "Z_im", "U", "C", "S", "F"};
    const ThermoCoeffs coeffs = thermo_coefficients(config.molecule, config.ell);
    std::vector<ThermoPoint> points;
    if (config.sweep == SweepAxis::Beta) {
        points = sweep_thermo(config.molecule, config.ell, beta_grid(config), config.path, config.lam, threads);
    } else {
        points = sweep_thermo_lambda(config.molecule, config.ell, config.beta, lam_grid(config), threads);
    }
    t.meta.emplace_back("path", to_string(config.path));
    t.meta.emplace_back("sweep", config.sweep == SweepAxis::Beta ? "beta" : "lam");
    if (config.sweep == SweepAxis::Beta) {
        t.meta.emplace_back("lam", format_double(config.lam.value_or(coeffs.n_max)));
    } else {
        t.meta.emplace_back("beta", format_double(config.beta));
    }
    t.meta.emplace_back("n_max", format_double(coeffs.n_max));
    for (const auto& p : points) {
        t.rows.push_back({Cell(p.beta), Cell(p.lam), Cell(to_string(p.path)), Cell(p.Z.real()), Cell(p.Z.imag()),
                          Cell(p.U), Cell(p.C), Cell(p.S), Cell(p.F)});
    }
    return result;
}

CommandResult cmd_validate(const RunConfig& config, unsigned threads) {
    ValidationInput in;
    in.spec = config.molecule;
    in.ell = config.ell;
    in.states = config.states;
    in.betas = sample_linear(config.beta_min, config.beta_max, config.beta_steps == 1 ? 1 : 20);
    in.lams = sample_linear(config.lam_min, config.lam_max, config.lam_steps == 1 ? 1 : 10);
    in.lam = config.lam.value_or(0.0);
    in.corrupt_q2_sign = config.corrupt_q2_sign;
    in.threads = threads;
    const std::vector<Check> checks = run_validation(in);

    CommandResult result;
    Table& t = result.table;
    t.columns = {"check", "kind", "status", "measured", "threshold", "detail"};
    int hard_failures = 0;
    int soft_failures = 0;
    for (const auto& c : checks) {
        const bool skipped = c.detail.rfind("skipped", 0) == 0;
        if (!c.passed) ++(c.hard ? hard_failures : soft_failures);
        t.rows.push_back({Cell(c.name), Cell(std::string(c.hard ? "hard" : "soft")),
                          Cell(std::string(skipped ? "skip" : c.passed ? "pass" : "fail")), Cell(c.measured),
                          Cell(c.threshold), Cell(c.detail)});
    }
    t.meta.emplace_back("checks", std::to_string(checks.size()));
    t.meta.emplace_back("hard_failures", std::to_string(hard_failures));
    t.meta.emplace_back("soft_failures", std::to_string(soft_failures));
    result.ok = hard_failures == 0;
    return result;
}

unsigned thread_budget(const char* env_value) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (env_value == nullptr || *env_value == '\0') return hw;
    unsigned cap = 0;
    const char* end = env_value + std::strlen(env_value);
    auto [ptr, ec] = std::from_chars(env_value, end, cap);
    if (ec != std::errc() || ptr != end || cap == 0) {
        throw ValidationError("KPGM_THREADS", "KPGM_THREADS must be a positive integer");
    }
    return std::min(hw, cap);
}

int run(const Invocation& inv, std::ostream& stdout_stream, std::ostream& err) {
    using Handler = CommandResult (*)(const RunConfig&, unsigned);
    Handler handler = nullptr;
    if (inv.command == "energies") handler = cmd_energies;
    else if (inv.command == "wavefunction") handler = cmd_wavefunction;
    else if (inv.command == "thermo") handler = cmd_thermo;
    else if (inv.command == "validate") handler = cmd_validate;
    else {
        err << "error: unknown command '" << inv.command << "'\n";
        return kExitUsage;
    }

    RunConfig config;
    try {
        config = parse_config(inv.config_text);
        if (inv.format) config.format = *inv.format;
        if (inv.out) config.output = *inv.out;
    } catch (const ParseError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ValidationError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitUsage;
    }

    const Provenance prov{inv.command, config_hash(config)};
    if (inv.dry_run) {
        stdout_stream << "# kpgm " << kVersion << " " << inv.command << " (dry run)\n"
                      << "# config_hash = " << prov.config_hash << "\n"
                      << serialize_config(config);
        return kExitOk;
    }

    CommandResult result;
    try {
        result = handler(config, inv.threads);
    } catch (const std::exception& e) {
        err << "computation failed: " << e.what() << "\n";
        return kExitFailure;
    }

    std::ofstream file;
    std::ostream* out = &stdout_stream;
    if (!config.output.empty() && config.output != "-") {
        file.open(config.output, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << config.output << "' for writing\n";
            return kExitUsage;
        }
        out = &file;
    }
    if (config.format == OutputFormat::Csv) write_csv(*out, result.table, prov);
    else write_json(*out, result.table, prov);
    out->flush();
    if (!*out) {
        err << "error: write failed\n";
        return kExitFailure;
    }
    if (!result.ok) {
        err << "validation: hard checks failed\n";
        return kExitFailure;
    }
    return kExitOk;
}

}  // namespace kpgm::cli
