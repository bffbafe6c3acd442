#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "kpgm/cli/commands.hpp"
#include "kpgm/cli/config.hpp"
#include "kpgm/cli/format.hpp"
#include "kpgm/version.hpp"
#include "test_common.hpp"

using namespace kpgm;
using namespace kpgm::cli;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string preset(const std::string& name) { return read_file(std::string(KPGM_SOURCE_DIR) + "/presets/" + name); }

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') out.push_back(line);
    }
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string cell;
    while (std::getline(in, cell, ',')) out.push_back(cell);
    return out;
}

struct Captured {
    int code;
    std::string out;
    std::string err;
};

Captured invoke(const std::string& command, const std::string& config, bool dry_run = false,
                std::optional<OutputFormat> format = std::nullopt) {
    Invocation inv;
    inv.command = command;
    inv.config_text = config;
    inv.dry_run = dry_run;
    inv.format = format;
    std::ostringstream out, err;
    const int code = run(inv, out, err);
    return {code, out.str(), err.str()};
}

const char* kMinimal = "De = 0\nre = 1\nD = 0\nb = 0\nalpha = 1\n";

}  // namespace

TEST(Config, DefaultsApply) {
    const RunConfig c = parse_config(kMinimal);
    EXPECT_EQ(c.molecule.mu, 1.0);
    EXPECT_EQ(c.molecule.hbar, 1.0);
    EXPECT_EQ(c.molecule.k_boltz, 1.0);
    EXPECT_EQ(c.ell, 0);
    EXPECT_EQ(c.path, ThermoPath::Direct);
    EXPECT_EQ(c.norm, NormMode::Quadrature);
}

TEST(Config, EmptyFileListsMissingKeys) {
    try {
        parse_config("# nothing here\n\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.key(), "De");
        EXPECT_NE(std::string(e.what()).find("missing required keys: De, re, D, b, alpha"), std::string::npos);
    }
}

TEST(Config, NegativeAlphaNamesKey) {
    try {
        parse_config("De = 1\nre = 1\nD = 0\nb = 0\nalpha = -1\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.key(), "alpha");
        EXPECT_STREQ(e.what(), "alpha must be > 0");
    }
}

TEST(Config, UnknownKeyRejected) {
    try {
        parse_config(std::string(kMinimal) + "temperature = 300\n");
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_EQ(e.key(), "temperature");
    }
}

TEST(Config, ParseErrorsCarryLineNumber) {
    const std::pair<std::string, int> cases[] = {
        {"De = 1\nre 1\n", 2},
        {"De = 1\n\n# c\nre = abc\n", 4},
        {"De = 1\nDe = 2\n", 2},
        {"De = 1\nstates = 0,x\n", 2},
        {"= 3\n", 1},
        {"De =\n", 1},
        {"De = 1\nsweep = sideways\n", 2},
    };
    for (const auto& [text, line] : cases) {
        try {
            parse_config(text);
            FAIL() << text;
        } catch (const ParseError& e) {
            EXPECT_EQ(e.line(), line) << text;
        }
    }
}

TEST(Config, CommentsAndWhitespace) {
    const RunConfig c = parse_config("  De = 2   # trailing\n#full line\nre=1\nD = 0\nb = 0\nalpha = 0.5\nstates = 0, 2 ,3\n");
    EXPECT_EQ(c.molecule.De, 2.0);
    EXPECT_EQ(c.molecule.alpha, 0.5);
    EXPECT_EQ(c.states, (std::vector<int>{0, 2, 3}));
}

TEST(Config, SemanticChecks) {
    EXPECT_THROW(parse_config(std::string(kMinimal) + "sweep = lam\n"), ValidationError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "r_min = 0.1\n"), ValidationError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "beta_min = 2\nbeta_max = 1\n"), ValidationError);
    EXPECT_THROW(parse_config(std::string(kMinimal) + "states = 0,-1\n"), ValidationError);
}

TEST(Config, SerializationRoundTrip) {
    for (const char* name : {"reference.conf", "null.conf", "lih_illustrative.conf"}) {
        const RunConfig c = parse_config(preset(name));
        EXPECT_EQ(parse_config(serialize_config(c)), c) << name;
    }
    RunConfig c = parse_config(preset("reference.conf"));
    c.r_min = 0.1;
    c.r_max = 20.0;
    c.r_points = 11;
    c.lam = 1.0 / 3.0;
    c.path = ThermoPath::Closed;
    c.sweep = SweepAxis::Lam;
    c.format = OutputFormat::Json;
    c.output = "out.json";
    EXPECT_EQ(parse_config(serialize_config(c)), c);
}

TEST(Config, HashIgnoresOutputAndFormat) {
    RunConfig a = parse_config(preset("reference.conf"));
    RunConfig b = a;
    b.output = "elsewhere.csv";
    b.format = OutputFormat::Json;
    EXPECT_EQ(config_hash(a), config_hash(b));
    b.molecule.D = 0.5000001;
    EXPECT_NE(config_hash(a), config_hash(b));
    EXPECT_EQ(config_hash(a).size(), 16u);
}

TEST(Config, Grids) {
    RunConfig c = parse_config(kMinimal);
    c.beta_min = 0.1;
    c.beta_max = 2.0;
    c.beta_steps = 50;
    const auto g = beta_grid(c);
    ASSERT_EQ(g.size(), 50u);
    EXPECT_EQ(g.front(), 0.1);
    EXPECT_EQ(g.back(), 2.0);
}

TEST(Format, ShortestRoundTrip) {
    EXPECT_EQ(format_double(0.1), "0.1");
    EXPECT_EQ(format_double(-2.0), "-2");
    EXPECT_EQ(format_double(1e300), "1e+300");
    EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "nan");
    EXPECT_EQ(format_double(INFINITY), "inf");
    EXPECT_EQ(format_double(-INFINITY), "-inf");
    auto gen = kpgm::test::rng(53);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int i = 0; i < 1000; ++i) {
        const double v = std::ldexp(mant(gen), expo(gen));
        const std::string s = format_double(v);
        double back = 0.0;
        std::from_chars(s.data(), s.data() + s.size(), back);
        EXPECT_EQ(back, v) << s;
    }
}

TEST(Format, CsvHeaderAndRows) {
    Table t;
    t.columns = {"a", "b", "c"};
    t.meta = {{"note", "x"}};
    t.rows = {{1LL, 0.5, std::string("s")}};
    std::ostringstream out;
    write_csv(out, t, {"energies", "0123456789abcdef"});
    EXPECT_EQ(out.str(), std::string("# kpgm ") + kVersion +
                             " energies\n# config_hash = 0123456789abcdef\n# note = x\na,b,c\n1,0.5,s\n");
}

TEST(Format, JsonCarriesProvenance) {
    Table t;
    t.columns = {"x", "y"};
    t.rows = {{0.25, std::numeric_limits<double>::quiet_NaN()}};
    std::ostringstream out;
    write_json(out, t, {"thermo", "abc"});
    const auto j = nlohmann::ordered_json::parse(out.str());
    EXPECT_EQ(j.begin().key(), "kpgm");
    EXPECT_EQ(j["kpgm"]["version"], kVersion);
    EXPECT_EQ(j["kpgm"]["config_hash"], "abc");
    EXPECT_EQ(j["rows"][0]["x"], 0.25);
    EXPECT_TRUE(j["rows"][0]["y"].is_null());
}

TEST(Commands, EnergiesNullCoupling) {
    RunConfig c = parse_config(std::string(kMinimal) + "states = 0,1,2\n");
    const CommandResult r = cmd_energies(c);
    EXPECT_EQ(r.table.columns, (std::vector<std::string>{"n", "ell", "E_eq13", "E_eq23", "nu_residual"}));
    ASSERT_EQ(r.table.rows.size(), 3u);
    const double expected[] = {-0.125, -0.5, -1.125};
    for (int n = 0; n < 3; ++n) EXPECT_DOUBLE_EQ(std::get<double>(r.table.rows[n][2]), expected[n]);
}

TEST(Commands, WavefunctionRowCount) {
    RunConfig c = parse_config(std::string(kMinimal) + "states = 0,1,2,3\nr_min = 0.01\nr_max = 20\nr_points = 500\n");
    const CommandResult r = cmd_wavefunction(c);
    EXPECT_EQ(r.table.columns, (std::vector<std::string>{"n", "ell", "r", "psi", "rho"}));
    EXPECT_EQ(r.table.rows.size(), 2000u);
    c.r_min.reset();
    c.r_max.reset();
    c.r_points.reset();
    EXPECT_EQ(cmd_wavefunction(c).table.rows.size(), 2400u);
}

TEST(Commands, ThermoDirectZIncreasesInEmittedData) {
    const auto cap = invoke("thermo", preset("reference.conf"));
    ASSERT_EQ(cap.code, kExitOk) << cap.err;
    const auto lines = data_lines(cap.out);
    EXPECT_EQ(lines.front(), "beta,lam,path,Z_re,Z_im,U,C,S,F");
    double prev = 0.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const double z = std::stod(split(lines[i])[3]);
        EXPECT_GT(z, prev);
        prev = z;
    }
}

TEST(Commands, ThermoLambdaSweep) {
    const auto cap = invoke("thermo", preset("reference.conf") + "path = closed\nsweep = lam\nbeta = 0.5\n");
    ASSERT_EQ(cap.code, kExitOk) << cap.err;
    EXPECT_EQ(data_lines(cap.out).size(), 21u);
}

TEST(Commands, ValidateNullCouplingPasses) {
    const CommandResult r = cmd_validate(parse_config(preset("null.conf")));
    EXPECT_TRUE(r.ok);
}

TEST(Commands, ValidateNegativeControlFails) {
    const auto cap = invoke("validate", preset("reference.conf") + "corrupt_q2_sign = true\n");
    EXPECT_EQ(cap.code, kExitFailure);
    bool found = false;
    for (const auto& line : data_lines(cap.out)) {
        if (line.rfind("antiderivative,hard,fail", 0) == 0) found = true;
    }
    EXPECT_TRUE(found);
}

TEST(Run, ExitCodes) {
    EXPECT_EQ(invoke("energies", "De = 1\n").code, kExitUsage);
    EXPECT_EQ(invoke("energies", "garbage\n").code, kExitUsage);
    EXPECT_EQ(invoke("nonsense", kMinimal).code, kExitUsage);
    EXPECT_EQ(invoke("energies", kMinimal).code, kExitOk);
    // closed path with n_max = 0 and no lam: computation failure
    EXPECT_EQ(invoke("thermo", std::string(kMinimal) + "path = closed\n").code, kExitFailure);
}

TEST(Run, ConfigErrorMessageNamesLine) {
    const auto cap = invoke("energies", "De = 1\nre = x\n");
    EXPECT_NE(cap.err.find("line 2"), std::string::npos);
}

TEST(Run, DryRunEchoesCanonicalConfig) {
    const auto cap = invoke("energies", preset("reference.conf"), true);
    ASSERT_EQ(cap.code, kExitOk);
    EXPECT_EQ(cap.out.rfind("# kpgm ", 0), 0u);
    const RunConfig parsed = parse_config(cap.out);
    EXPECT_EQ(parsed, parse_config(preset("reference.conf")));
}

TEST(Run, Deterministic) {
    for (const char* cmd : {"energies", "wavefunction", "thermo", "validate"}) {
        const auto a = invoke(cmd, preset("reference.conf"));
        const auto b = invoke(cmd, preset("reference.conf"));
        EXPECT_EQ(a.out, b.out) << cmd;
    }
}

TEST(Run, EveryOutputHasProvenanceHeader) {
    const std::string hash = config_hash(parse_config(preset("reference.conf")));
    for (const char* cmd : {"energies", "wavefunction", "thermo", "validate"}) {
        const auto cap = invoke(cmd, preset("reference.conf"));
        EXPECT_EQ(cap.out.rfind(std::string("# kpgm ") + kVersion + " " + cmd + "\n# config_hash = " + hash, 0), 0u) << cmd;
        const auto js = invoke(cmd, preset("reference.conf"), false, OutputFormat::Json);
        EXPECT_EQ(nlohmann::json::parse(js.out)["kpgm"]["config_hash"], hash);
    }
}

TEST(Run, GoldenFiles) {
    const std::string dir = std::string(KPGM_SOURCE_DIR) + "/tests/golden/";
    for (const char* cmd : {"energies", "wavefunction", "thermo", "validate"}) {
        const auto cap = invoke(cmd, read_file(dir + "reference.conf"));
        EXPECT_EQ(cap.out, read_file(dir + cmd + "_reference.csv")) << cmd;
    }
}

TEST(ThreadBudget, EnvironmentCap) {
    const unsigned hw = thread_budget(nullptr);
    EXPECT_GE(hw, 1u);
    EXPECT_EQ(thread_budget("1"), 1u);
    EXPECT_EQ(thread_budget("100000"), hw);
    EXPECT_THROW(thread_budget("0"), ValidationError);
    EXPECT_THROW(thread_budget("two"), ValidationError);
    EXPECT_THROW(thread_budget("-3"), ValidationError);
}
