#include "kpgm/cli/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "kpgm/cli/format.hpp"
#include "kpgm/errors.hpp"

namespace kpgm::cli {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value, int line) {
    double out = 0.0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, "'" + key + "' expects a number, got '" + value + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& value, int line) {
    int out = 0;
    const char* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, "'" + key + "' expects an integer, got '" + value + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& value, int line) {
    if (value == "true") return true;
    if (value == "false") return false;
    throw ParseError(line, "'" + key + "' expects true or false, got '" + value + "'");
}

std::vector<int> to_int_list(const std::string& key, const std::string& value, int line) {
    std::vector<int> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(to_int(key, trim(item), line));
    if (out.empty()) throw ParseError(line, "'" + key + "' expects a comma-separated list");
    return out;
}

template <class Enum>
Enum to_enum(const std::string& key, const std::string& value, int line,
             std::initializer_list<std::pair<const char*, Enum>> options) {
    std::string names;
    for (const auto& [name, e] : options) {
        if (value == name) return e;
        names += names.empty() ? name : std::string("|") + name;
    }
    throw ParseError(line, "'" + key + "' expects one of " + names + ", got '" + value + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, int)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"name", [](RunConfig& c, const std::string& v, int) { c.molecule.name = v; }},
        {"mu", [](RunConfig& c, const std::string& v, int l) { c.molecule.mu = to_double("mu", v, l); }},
        {"hbar", [](RunConfig& c, const std::string& v, int l) { c.molecule.hbar = to_double("hbar", v, l); }},
        {"De", [](RunConfig& c, const std::string& v, int l) { c.molecule.De = to_double("De", v, l); }},
        {"re", [](RunConfig& c, const std::string& v, int l) { c.molecule.re = to_double("re", v, l); }},
        {"D", [](RunConfig& c, const std::string& v, int l) { c.molecule.D = to_double("D", v, l); }},
        {"b", [](RunConfig& c, const std::string& v, int l) { c.molecule.b = to_double("b", v, l); }},
        {"alpha", [](RunConfig& c, const std::string& v, int l) { c.molecule.alpha = to_double("alpha", v, l); }},
        {"k_boltz", [](RunConfig& c, const std::string& v, int l) { c.molecule.k_boltz = to_double("k_boltz", v, l); }},
        {"ell", [](RunConfig& c, const std::string& v, int l) { c.ell = to_int("ell", v, l); }},
        {"states", [](RunConfig& c, const std::string& v, int l) { c.states = to_int_list("states", v, l); }},
        {"beta_min", [](RunConfig& c, const std::string& v, int l) { c.beta_min = to_double("beta_min", v, l); }},
        {"beta_max", [](RunConfig& c, const std::string& v, int l) { c.beta_max = to_double("beta_max", v, l); }},
        {"beta_steps", [](RunConfig& c, const std::string& v, int l) { c.beta_steps = to_int("beta_steps", v, l); }},
        {"lam_min", [](RunConfig& c, const std::string& v, int l) { c.lam_min = to_double("lam_min", v, l); }},
        {"lam_max", [](RunConfig& c, const std::string& v, int l) { c.lam_max = to_double("lam_max", v, l); }},
        {"lam_steps", [](RunConfig& c, const std::string& v, int l) { c.lam_steps = to_int("lam_steps", v, l); }},
        {"lam", [](RunConfig& c, const std::string& v, int l) { c.lam = to_double("lam", v, l); }},
        {"beta", [](RunConfig& c, const std::string& v, int l) { c.beta = to_double("beta", v, l); }},
        {"sweep", [](RunConfig& c, const std::string& v, int l) {
             c.sweep = to_enum<SweepAxis>("sweep", v, l, {{"beta", SweepAxis::Beta}, {"lam", SweepAxis::Lam}});
         }},
        {"path", [](RunConfig& c, const std::string& v, int l) {
             c.path = to_enum<ThermoPath>("path", v, l,
                              {{"direct", ThermoPath::Direct}, {"integral", ThermoPath::Integral},
                               {"closed", ThermoPath::Closed}});
         }},
        {"norm", [](RunConfig& c, const std::string& v, int l) {
             c.norm = to_enum<NormMode>("norm", v, l, {{"quadrature", NormMode::Quadrature}, {"closed", NormMode::Closed}});
         }},
        {"energy", [](RunConfig& c, const std::string& v, int l) {
             c.energy = to_enum<EnergySource>("energy", v, l,
                                {{"printed", EnergySource::Printed}, {"nu", EnergySource::NuCondition}});
         }},
        {"r_min", [](RunConfig& c, const std::string& v, int l) { c.r_min = to_double("r_min", v, l); }},
        {"r_max", [](RunConfig& c, const std::string& v, int l) { c.r_max = to_double("r_max", v, l); }},
        {"r_points", [](RunConfig& c, const std::string& v, int l) { c.r_points = to_int("r_points", v, l); }},
        {"corrupt_q2_sign", [](RunConfig& c, const std::string& v, int l) {
             c.corrupt_q2_sign = to_bool("corrupt_q2_sign", v, l);
         }},
        {"output", [](RunConfig& c, const std::string& v, int) { c.output = v; }},
        {"format", [](RunConfig& c, const std::string& v, int l) {
             c.format = to_enum<OutputFormat>("format", v, l, {{"csv", OutputFormat::Csv}, {"json", OutputFormat::Json}});
         }},
    };
    return table;
}

void require(bool ok, const std::string& key, const std::string& message) {
    if (!ok) throw ValidationError(key, message);
}

void validate(const RunConfig& c) {
    try {
        c.molecule.validate();
    } catch (const DomainError& e) {
        const std::string what = e.what();
        throw ValidationError(what.substr(0, what.find(' ')), what);
    }
    require(c.ell >= 0, "ell", "ell must be >= 0");
    require(!c.states.empty(), "states", "states must not be empty");
    for (int n : c.states) require(n >= 0, "states", "states must be >= 0");
    require(c.beta_min > 0.0, "beta_min", "beta_min must be > 0");
    require(c.beta_max >= c.beta_min, "beta_max", "beta_max must be >= beta_min");
    require(c.beta_steps >= 1, "beta_steps", "beta_steps must be >= 1");
    require(c.beta_steps == 1 || c.beta_max > c.beta_min, "beta_max",
            "beta_max must exceed beta_min when beta_steps > 1");
    require(c.lam_min > 0.0, "lam_min", "lam_min must be > 0");
    require(c.lam_max >= c.lam_min, "lam_max", "lam_max must be >= lam_min");
    require(c.lam_steps >= 1, "lam_steps", "lam_steps must be >= 1");
    require(c.lam_steps == 1 || c.lam_max > c.lam_min, "lam_max",
            "lam_max must exceed lam_min when lam_steps > 1");
    require(!c.lam || *c.lam > 0.0, "lam", "lam must be > 0");
    require(c.beta > 0.0, "beta", "beta must be > 0");
    require(c.sweep == SweepAxis::Beta || c.path == ThermoPath::Closed, "sweep",
            "sweep = lam requires path = closed");
    const bool any_grid = c.r_min || c.r_max || c.r_points;
    require(!any_grid || (c.r_min && c.r_max && c.r_points), any_grid && !c.r_min ? "r_min" : "r_max",
            "r_min, r_max and r_points must be given together");
    if (any_grid) {
        require(*c.r_min > 0.0, "r_min", "r_min must be > 0");
        require(*c.r_max > *c.r_min, "r_max", "r_max must exceed r_min");
        require(*c.r_points >= 2, "r_points", "r_points must be >= 2");
    }
}

std::string serialize(const RunConfig& c, bool with_io) {
    std::string out;
    auto line = [&](const std::string& key, const std::string& value) {
        out += key + " = " + value + "\n";
    };
    auto num = [](double v) { return format_double(v); };
    if (!c.molecule.name.empty()) line("name", c.molecule.name);
    line("mu", num(c.molecule.mu));
    line("hbar", num(c.molecule.hbar));
    line("De", num(c.molecule.De));
    line("re", num(c.molecule.re));
    line("D", num(c.molecule.D));
    line("b", num(c.molecule.b));
    line("alpha", num(c.molecule.alpha));
    line("k_boltz", num(c.molecule.k_boltz));
    line("ell", std::to_string(c.ell));
    std::string states;
    for (int n : c.states) states += (states.empty() ? "" : ",") + std::to_string(n);
    line("states", states);
    line("beta_min", num(c.beta_min));
    line("beta_max", num(c.beta_max));
    line("beta_steps", std::to_string(c.beta_steps));
    line("lam_min", num(c.lam_min));
    line("lam_max", num(c.lam_max));
    line("lam_steps", std::to_string(c.lam_steps));
    if (c.lam) line("lam", num(*c.lam));
    line("beta", num(c.beta));
    line("sweep", c.sweep == SweepAxis::Beta ? "beta" : "lam");
    line("path", to_string(c.path));
    line("norm", c.norm == NormMode::Quadrature ? "quadrature" : "closed");
    line("energy", c.energy == EnergySource::Printed ? "printed" : "nu");
    if (c.r_min) line("r_min", num(*c.r_min));
    if (c.r_max) line("r_max", num(*c.r_max));
    if (c.r_points) line("r_points", std::to_string(*c.r_points));
    line("corrupt_q2_sign", c.corrupt_q2_sign ? "true" : "false");
    if (with_io) {
        if (!c.output.empty()) line("output", c.output);
        line("format", to_string(c.format));
    }
    return out;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> out;
    if (steps == 1) return {lo};
    for (int i = 0; i < steps; ++i) out.push_back(lo + (hi - lo) * i / (steps - 1));
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig config;
    std::set<std::string> seen;
    std::stringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(line_no, "missing key before '='");
        if (value.empty()) throw ParseError(line_no, "missing value for '" + key + "'");
        const auto it = setters().find(key);
        if (it == setters().end()) {
            throw ValidationError(key, "unknown key '" + key + "' (line " + std::to_string(line_no) + ")");
        }
        if (!seen.insert(key).second) throw ParseError(line_no, "duplicate key '" + key + "'");
        it->second(config, value, line_no);
    }
    std::string missing;
    for (const char* key : {"De", "re", "D", "b", "alpha"}) {
        if (!seen.count(key)) missing += missing.empty() ? key : std::string(", ") + key;
    }
    if (!missing.empty()) {
        throw ValidationError(missing.substr(0, missing.find(',')), "missing required keys: " + missing);
    }
    validate(config);
    return config;
}

std::string serialize_config(const RunConfig& config) { return serialize(config, true); }

std::string config_hash(const RunConfig& config) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : serialize(config, false)) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::vector<double> beta_grid(const RunConfig& c) { return linspace(c.beta_min, c.beta_max, c.beta_steps); }
std::vector<double> lam_grid(const RunConfig& c) { return linspace(c.lam_min, c.lam_max, c.lam_steps); }

std::string to_string(OutputFormat format) { return format == OutputFormat::Csv ? "csv" : "json"; }

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ValidationError("format", "format must be csv or json, got '" + name + "'");
}

}  // namespace kpgm::cli
