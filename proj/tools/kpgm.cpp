#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kpgm/cli/commands.hpp"
#include "kpgm/version.hpp"

int main(int argc, char** argv) {
    using namespace kpgm::cli;
    CLI::App app{"Kratzer plus generalized Morse model: energies, wavefunctions, thermodynamics"};
    app.set_version_flag("--version", kpgm::kVersion);
    app.require_subcommand(1, 1);

    std::string config_path;
    std::string out_path;
    std::string format;
    bool dry_run = false;

    const std::pair<const char*, const char*> commands[] = {
        {"energies", "Closed-form, simplified and NU-condition energies per state"},
        {"wavefunction", "Radial wavefunction and probability density samples"},
        {"thermo", "Partition function and thermodynamic functions over a beta or lam sweep"},
        {"validate", "Run the oracle checks and write a report"},
    };
    for (const auto& [name, help] : commands) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("--config", config_path, "Config file (key = value lines)")->required();
        sub->add_option("--out", out_path, "Output file; '-' or unset writes to stdout");
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_flag("--dry-run", dry_run, "Echo the parsed configuration and exit");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    Invocation inv;
    inv.command = app.get_subcommands().front()->get_name();
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot read config '" << config_path << "'\n";
        return kExitUsage;
    }
    std::stringstream text;
    text << in.rdbuf();
    inv.config_text = text.str();
    if (!out_path.empty()) inv.out = out_path;
    if (!format.empty()) inv.format = parse_format(format);
    inv.dry_run = dry_run;
    try {
        inv.threads = thread_budget(std::getenv("KPGM_THREADS"));
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return run(inv, std::cout, std::cerr);
}
