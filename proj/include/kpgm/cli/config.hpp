#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpgm/model.hpp"
#include "kpgm/thermo.hpp"
#include "kpgm/wavefunction.hpp"

namespace kpgm::cli {

/// Malformed line; carries the 1-based line number.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Well-formed but invalid configuration; carries the offending key.
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string key, const std::string& what)
        : std::runtime_error(what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

enum class OutputFormat { Csv, Json };
enum class SweepAxis { Beta, Lam };

struct RunConfig {
    MoleculeSpec molecule;
    int ell = 0;
    std::vector<int> states{0};

    double beta_min = 0.1;
    double beta_max = 2.0;
    int beta_steps = 50;
    double lam_min = 0.5;
    double lam_max = 8.0;
    int lam_steps = 50;
    std::optional<double> lam;  ///< cutoff for beta sweeps; n_max when unset
    double beta = 1.0;          ///< fixed beta for lam sweeps
    SweepAxis sweep = SweepAxis::Beta;
    ThermoPath path = ThermoPath::Direct;

    NormMode norm = NormMode::Quadrature;
    EnergySource energy = EnergySource::Printed;
    std::optional<double> r_min;  ///< wavefunction grid; the default figure grid when unset
    std::optional<double> r_max;
    std::optional<int> r_points;

    bool corrupt_q2_sign = false;  ///< validate negative control

    std::string output;
    OutputFormat format = OutputFormat::Csv;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Line-oriented `key = value` text, `#` starts a comment. De, re, D, b and alpha are required.
RunConfig parse_config(const std::string& text);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

/// FNV-1a of the canonical form without `output` and `format`, as 16 hex digits.
std::string config_hash(const RunConfig& config);

std::vector<double> beta_grid(const RunConfig& config);
std::vector<double> lam_grid(const RunConfig& config);

std::string to_string(OutputFormat format);
OutputFormat parse_format(const std::string& name);

}  // namespace kpgm::cli
