#include <gtest/gtest.h>

#include <algorithm>

#include "kpgm/validation.hpp"
#include "test_common.hpp"

using namespace kpgm;

namespace {

ValidationInput input_for(const MoleculeSpec& spec) {
    ValidationInput in;
    in.spec = spec;
    for (int i = 0; i < 20; ++i) in.betas.push_back(0.1 + 1.9 * i / 19.0);
    for (int i = 0; i < 10; ++i) in.lams.push_back(0.5 + 7.5 * i / 9.0);
    return in;
}

const Check& find(const std::vector<Check>& checks, const std::string& name) {
    auto it = std::find_if(checks.begin(), checks.end(), [&](const Check& c) { return c.name == name; });
    if (it == checks.end()) throw std::runtime_error("missing check " + name);
    return *it;
}

}  // namespace

TEST(Validation, NullCouplingHardChecksPass) {
    ValidationInput in = input_for(kpgm::test::null_spec());
    in.states = {0, 1, 2, 3};
    in.lam = 1.0;
    for (const Check& c : run_validation(in)) {
        if (c.hard && !c.detail.starts_with("skipped")) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    }
}

TEST(Validation, ReferenceSpecHardChecksPass) {
    ValidationInput in = input_for(kpgm::test::reference_spec());
    in.states = {0, 1};
    const auto checks = run_validation(in);
    for (const Check& c : checks) {
        if (c.hard && !c.detail.starts_with("skipped")) EXPECT_TRUE(c.passed) << c.name << " " << c.detail;
    }
    EXPECT_FALSE(find(checks, "nu_root_vs_closed[n=0]").passed);
    EXPECT_FALSE(find(checks, "nu_root_vs_closed[n=0]").hard);
    EXPECT_LE(find(checks, "fd_vs_nu_root[n=0]").measured, 1e-9);
}

TEST(Validation, CorruptedQ2FailsAntiderivative) {
    ValidationInput in = input_for(kpgm::test::reference_spec());
    in.states = {0};
    in.corrupt_q2_sign = true;
    const Check& c = find(run_validation(in), "antiderivative");
    EXPECT_TRUE(c.hard);
    EXPECT_FALSE(c.passed);
}

TEST(Validation, SpecialFunctionOracles) {
    EXPECT_LE(jacobi_oracle_deviation(), 1e-10);
    EXPECT_LE(faddeeva_oracle_deviation(99, 200, 3.0), 1e-10);
    EXPECT_LE(ln_gamma_recursion_deviation(), 1e-13);
    EXPECT_LE(ln_gamma_oracle_deviation(), 1e-13);
}

TEST(Validation, NullCouplingStatesAreNotOrthogonal) {
    // finding: each null-coupling state carries its own gamma, so they solve different equations
    const RadialState a({0, 0}, kpgm::test::null_spec());
    const RadialState b({1, 0}, kpgm::test::null_spec());
    EXPECT_GT(std::abs(overlap(a, b)), 0.5);
    EXPECT_NEAR(overlap(a, a), 1.0, 1e-9);
}
