#include "hardline/constructions.hpp"
#include "hardline/massmap.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

using namespace hardline;
using R = Rational;

namespace {

PhaseState<R> u3()
{
    return {R(0), {R(0), R(1), R(3)}, {R(1), R(0), R(-1)}};
}

SweepSpec fixed_spec(unsigned grid)
{
    SweepSpec spec;
    spec.n = 3;
    spec.grid = grid;
    spec.fixed_state = u3();
    spec.threads = 2;
    return spec;
}

ConstructionParams<R> params(unsigned n)
{
    ConstructionParams<R> p;
    p.n = n;
    p.samples = 0;
    return p;
}

}  // namespace

TEST(Classify, Examples)
{
    const SimConfig<R> config;
    EXPECT_EQ(classify(MassVector<R>({R(1), R(1), R(1)}), u3(), config).cls, CountClass::Quadratic);

    const auto c1 = build_case1(params(4));
    const auto under = classify(c1.masses, c1.state, config);
    EXPECT_EQ(under.count, 3u);
    EXPECT_EQ(under.cls, CountClass::UnderQuadratic);

    const auto c3 = build_case3(params(4));
    const auto over = classify(c3.masses, c3.state, config);
    EXPECT_EQ(over.count, 10u);
    EXPECT_EQ(over.cls, CountClass::OverQuadratic);
}

TEST(Classify, CapIsUnclassified)
{
    SimConfig<R> config;
    config.max_events = 1;
    const auto c = classify(MassVector<R>({R(1), R(1), R(1)}), u3(), config);
    EXPECT_EQ(c.cls, CountClass::Unclassified);
    EXPECT_EQ(c.termination, Termination::EventCapReached);
}

TEST(CountClassNames, RoundTrip)
{
    for (auto cls : {CountClass::UnderQuadratic, CountClass::Quadratic, CountClass::OverQuadratic, CountClass::Unclassified})
        EXPECT_EQ(parse_count_class(to_string(cls)), cls);
    for (auto f : {StateFamily::Fixed, StateFamily::Case1, StateFamily::Case3})
        EXPECT_EQ(parse_state_family(to_string(f)), f);
    EXPECT_EQ(parse_state_family("case3"), StateFamily::Case3);
    EXPECT_THROW(parse_state_family("bogus"), Error);
}

TEST(Grid, ValuesAndRefinement)
{
    const R eps(2, 5);
    EXPECT_EQ(grid_value(eps, 3, 0), R(4, 5));
    EXPECT_EQ(grid_value(eps, 3, 1), R(1));
    EXPECT_EQ(grid_value(eps, 3, 2), R(6, 5));
    for (unsigned g : {2u, 5u, 41u})
        for (unsigned i = 0; i < g; ++i)
            EXPECT_EQ(grid_value(eps, refined_grid(g), 2 * i + 1), grid_value(eps, g, i));
}

TEST(Grid, MassesFromRatios)
{
    const auto m = masses_from_ratios({R(2), R(1, 4)});
    // 1, 2, 1/2 -> scale 2 / (1/2 + 2) = 4/5
    EXPECT_EQ(m, (std::vector<R>{R(4, 5), R(8, 5), R(2, 5)}));
}

TEST(Sweep, TwoParticlesAlwaysOnce)
{
    SweepSpec spec;
    spec.n = 2;
    spec.axes = {0, 0};
    spec.grid = 9;
    spec.fixed_state = PhaseState<R>{R(0), {R(0), R(1)}, {R(1), R(0)}};
    const auto result = sweep(spec);
    ASSERT_EQ(result.cells.size(), 81u);
    for (const auto& cell : result.cells)
        EXPECT_EQ(cell.result.count, 1u);
    EXPECT_EQ(result.histogram.at(1), 81u);
    EXPECT_EQ(result.class_totals.at(CountClass::Quadratic), 81u);
}

TEST(Sweep, HistogramCoversClassifiedCells)
{
    const auto result = sweep(fixed_spec(9));
    std::size_t histogram_total = 0;
    for (const auto& [count, cells] : result.histogram)
        histogram_total += cells;
    std::size_t class_total = 0;
    for (const auto& [cls, cells] : result.class_totals)
        class_total += cells;
    EXPECT_EQ(class_total, 81u);
    const std::size_t unclassified =
        result.class_totals.count(CountClass::Unclassified) ? result.class_totals.at(CountClass::Unclassified) : 0;
    EXPECT_EQ(histogram_total + unclassified, 81u);
}

TEST(Sweep, DiagonalIsQuadraticForEqualMassU3)
{
    const auto result = sweep(fixed_spec(9));
    const auto diag = result.diagonal();
    ASSERT_TRUE(diag);
    EXPECT_EQ(diag->axis1_ratio, R(1));
    EXPECT_EQ(diag->axis2_ratio, R(1));
    EXPECT_EQ(diag->result.count, 3u);
    EXPECT_EQ(diag->result.cls, CountClass::Quadratic);
    EXPECT_FALSE(sweep(fixed_spec(8)).diagonal());
}

TEST(Sweep, DeterministicAcrossThreadCounts)
{
    auto spec = fixed_spec(11);
    spec.threads = 1;
    const auto a = sweep(spec);
    spec.threads = 4;
    const auto b = sweep(spec);
    EXPECT_EQ(a.cells, b.cells);
    EXPECT_EQ(a.histogram, b.histogram);
}

TEST(Sweep, RefinementKeepsCoarseCells)
{
    const auto coarse = sweep(fixed_spec(5));
    const auto fine = sweep(fixed_spec(refined_grid(5)));
    for (unsigned i = 0; i < 5; ++i)
        for (unsigned j = 0; j < 5; ++j)
            EXPECT_EQ(fine.at(2 * i + 1, 2 * j + 1).result.count, coarse.at(i, j).result.count);
}

TEST(Sweep, FloatModeMatchesExactAwayFromTies)
{
    auto spec = fixed_spec(7);
    const auto exact = sweep(spec);
    spec.mode = ArithmeticMode::Float64;
    spec.tie_tolerance = 1e-12;
    const auto fp = sweep(spec);
    for (std::size_t k = 0; k < exact.cells.size(); ++k)
        if (exact.cells[k].result.cls != CountClass::Unclassified)
            EXPECT_EQ(fp.cells[k].result.count, exact.cells[k].result.count);
}

TEST(Sweep, Case3FamilyBaseline)
{
    SweepSpec spec;
    spec.n = 4;
    spec.grid = 3;
    spec.axes = {1, 2};
    spec.family = StateFamily::Case3;
    spec.epsilon = R(1, 2);
    const auto result = sweep(spec);
    const auto built = build_case3(params(4));
    EXPECT_EQ(result.state, built.state);
    EXPECT_EQ(result.baseline_ratios[0], built.masses[1] / built.masses[0]);
}

TEST(Sweep, ValidationNamesField)
{
    const auto field_of = [](const SweepSpec& spec) {
        try {
            validate(spec);
        } catch (const Error& e) {
            EXPECT_EQ(e.kind(), ErrorKind::Domain);
            return e.field();
        }
        return std::string("<none>");
    };
    auto spec = fixed_spec(5);
    EXPECT_EQ(field_of(spec), "<none>");
    spec.n = 1;
    EXPECT_EQ(field_of(spec), "n");
    spec = fixed_spec(5);
    spec.epsilon = R(1);
    EXPECT_EQ(field_of(spec), "epsilon");
    spec = fixed_spec(5);
    spec.grid = 1;
    EXPECT_EQ(field_of(spec), "grid");
    spec = fixed_spec(5);
    spec.axes = {0, 2};
    EXPECT_EQ(field_of(spec), "axes");
    spec = fixed_spec(5);
    spec.axes = {1, 1};
    EXPECT_EQ(field_of(spec), "axes");
    spec = fixed_spec(5);
    spec.fixed_state.reset();
    EXPECT_EQ(field_of(spec), "state");
    spec = fixed_spec(5);
    spec.tie_tolerance = 1e-9;
    EXPECT_EQ(field_of(spec), "tie_tolerance");
}
