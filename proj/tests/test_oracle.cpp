#include "hardline/constructions.hpp"
#include "hardline/oracle.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hardline;
using hardline::testing::Gen;
using R = Rational;

namespace {

ConstructionParams<R> params(unsigned n)
{
    ConstructionParams<R> p;
    p.n = n;
    p.samples = 0;
    return p;
}

}  // namespace

TEST(Oracle, TwoBodyExchange)
{
    const PhaseState<double> s{0.0, {0.0, 1.0}, {1.0, 0.0}};
    const auto log = oracle_simulate(s, MassVector<double>({1.0, 1.0}));
    ASSERT_EQ(log.events.size(), 1u);
    EXPECT_NEAR(log.events[0].time, 1.0, 1e-9);
    EXPECT_NEAR(log.final_state.v[0], 0.0, 1e-12);
    EXPECT_NEAR(log.final_state.v[1], 1.0, 1e-12);
    EXPECT_EQ(log.termination, Termination::FreeState);
}

TEST(Oracle, UnequalMasses)
{
    const PhaseState<double> s{0.0, {0.0, 2.0}, {1.0, -1.0}};
    const auto log = oracle_simulate(s, MassVector<double>({1.0, 3.0}));
    ASSERT_EQ(log.events.size(), 1u);
    EXPECT_NEAR(log.events[0].time, 1.0, 1e-9);
    // v1' = ((1 - 3) * 1 + 2 * 3 * (-1)) / 4 = -2, v2' = ((3 - 1) * (-1) + 2 * 1) / 4 = 0
    EXPECT_NEAR(log.final_state.v[0], -2.0, 1e-12);
    EXPECT_NEAR(log.final_state.v[1], 0.0, 1e-12);
}

TEST(Oracle, AlreadyFree)
{
    const PhaseState<double> s{0.0, {0.0, 1.0, 2.0}, {-1.0, 0.0, 1.0}};
    EXPECT_TRUE(oracle_simulate(s, MassVector<double>({1.0, 1.0, 1.0})).events.empty());
    EXPECT_EQ(auto_step(s), 1.0 / 128.0);
}

TEST(Oracle, BudgetExhaustion)
{
    const PhaseState<double> s{0.0, {0.0, 100.0}, {1.0, 0.0}};
    OracleConfig config;
    config.dt = 1e-3;
    config.max_steps = 10;
    try {
        oracle_simulate(s, MassVector<double>({1.0, 1.0}), config);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Oracle);
    }
}

TEST(Oracle, AgreesWithEngineOnRandomInstances)
{
    Gen gen(101);
    int compared = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 5));
        const auto state = gen.state(n);
        const MassVector<R> masses(gen.masses(n));
        const auto exact = simulate(state, masses);
        if (exact.termination != Termination::FreeState)
            continue;
        const auto brute = oracle_simulate(convert<double>(state), convert<double>(masses));
        EXPECT_EQ(brute.pair_sequence(), exact.pair_sequence()) << "trial " << trial;
        for (std::size_t k = 0; k < n; ++k)
            EXPECT_NEAR(brute.final_state.v[k], exact.final_state.v[k].to_double(), 1e-8);
        ++compared;
    }
    EXPECT_GE(compared, 45);
}

TEST(Oracle, ConvergesUnderStepHalving)
{
    const auto result = build_case3(params(4));
    const auto s = convert<double>(result.state);
    const auto m = convert<double>(result.masses);
    OracleConfig coarse;
    coarse.dt = auto_step(s);
    OracleConfig fine = coarse;
    fine.dt = coarse.dt / 2;
    const auto a = oracle_simulate(s, m, coarse);
    const auto b = oracle_simulate(s, m, fine);
    ASSERT_EQ(a.pair_sequence(), b.pair_sequence());
    const auto exact = simulate(result.state, result.masses);
    for (std::size_t e = 0; e < a.events.size(); ++e) {
        const double t = exact.events[e].time.to_double();
        EXPECT_NEAR(a.events[e].time, t, 1e-7 * (1 + std::abs(t)));
        EXPECT_NEAR(b.events[e].time, t, 1e-7 * (1 + std::abs(t)));
    }
}

TEST(Oracle, CountsConstructions)
{
    const auto c1 = build_case1(params(6));
    EXPECT_EQ(count_collisions(oracle_simulate(convert<double>(c1.state), convert<double>(c1.masses))), 5u);
    // Larger Case-3 systems span too many time scales for a fixed step.
    const auto c3 = build_case3(params(4));
    EXPECT_EQ(count_collisions(oracle_simulate(convert<double>(c3.state), convert<double>(c3.masses))), 10u);
}

TEST(Audit, IdenticalLogs)
{
    const auto result = build_case1(params(5));
    const auto log = simulate(result.state, result.masses);
    const auto report = audit(log, log, 0.0);
    EXPECT_TRUE(report.count_match);
    EXPECT_TRUE(report.sequence_match);
    EXPECT_FALSE(report.first_divergence);
    EXPECT_EQ(report.momentum_drift, 0.0);
    EXPECT_EQ(report.energy_drift, 0.0);
}

TEST(Audit, ExactAgainstOracle)
{
    const auto result = build_case1(params(5));
    const auto exact = simulate(result.state, result.masses);
    const auto brute = oracle_simulate(convert<double>(result.state), convert<double>(result.masses));
    const auto report = audit(exact, brute, 1e-12);
    EXPECT_TRUE(report.count_match);
    EXPECT_TRUE(report.sequence_match);
    EXPECT_LT(report.momentum_drift, 1e-9);
    EXPECT_LT(report.energy_drift, 1e-9);
}

TEST(Audit, FirstDivergence)
{
    const MassVector<R> m({R(1), R(1), R(1)});
    const PhaseState<R> s{R(0), {R(0), R(1), R(3)}, {R(1), R(0), R(-1)}};
    const auto a = simulate(s, m);
    PhaseState<R> t = s;
    t.q[2] = R(5, 2);
    EXPECT_THROW(audit(a, simulate(t, m), 1e-12), Error);

    auto b = a;
    ASSERT_GE(b.events.size(), 2u);
    b.events[1].pair = 1 - b.events[1].pair;
    const auto report = audit(a, b, 0.0);
    EXPECT_TRUE(report.count_match);
    EXPECT_FALSE(report.sequence_match);
    ASSERT_TRUE(report.first_divergence);
    EXPECT_EQ(*report.first_divergence, 2u);
}

TEST(Drift, ExactModeIsZero)
{
    Gen gen(102);
    for (int trial = 0; trial < 30; ++trial) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 6));
        const auto log = simulate(gen.state(n), MassVector<R>(gen.masses(n)));
        EXPECT_EQ(momentum_drift(log), R(0));
        EXPECT_EQ(energy_drift(log), R(0));
        EXPECT_EQ(relative_energy_drift(log), 0.0);
    }
}

TEST(Drift, FloatModeIsSmall)
{
    const auto result = build_case3(params(6));
    const auto log = simulate(convert<double>(result.state), convert<double>(result.masses));
    EXPECT_LE(relative_momentum_drift(log), 1e-9);
    EXPECT_LE(relative_energy_drift(log), 1e-9);
}

TEST(Sequence, Verify)
{
    const auto result = build_case1(params(4));
    const auto log = simulate(result.state, result.masses);
    EXPECT_TRUE(verify_sequence(log, {0, 1, 2}));
    EXPECT_FALSE(verify_sequence(log, {0, 2, 1}));
}

TEST(Decoupling, HoldsOnEngineLogs)
{
    Gen gen(103);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 6));
        const auto log = simulate(gen.state(n), MassVector<R>(gen.masses(n)));
        if (log.termination == Termination::FreeState)
            EXPECT_TRUE(decoupling_holds(log));
    }
}

TEST(Decoupling, DetectsTamperedFinalState)
{
    const MassVector<R> m({R(1), R(1), R(1)});
    const PhaseState<R> s{R(0), {R(0), R(1), R(2)}, {R(-1), R(0), R(1)}};
    auto log = simulate(s, m);
    EXPECT_TRUE(decoupling_holds(log));
    log.final_state.v[2] = R(-2);
    EXPECT_FALSE(decoupling_holds(log));
}
