#include "hardline/massmap.hpp"

#include "hardline/constructions.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace hardline {

std::string_view to_string(CountClass cls)
{
    switch (cls) {
    case CountClass::UnderQuadratic: return "UnderQuadratic";
    case CountClass::Quadratic: return "Quadratic";
    case CountClass::OverQuadratic: return "OverQuadratic";
    case CountClass::Unclassified: return "Unclassified";
    }
    return "?";
}

CountClass parse_count_class(std::string_view text)
{
    for (auto c : {CountClass::UnderQuadratic, CountClass::Quadratic, CountClass::OverQuadratic, CountClass::Unclassified})
        if (text == to_string(c))
            return c;
    throw Error(ErrorKind::Domain, "unknown count class '" + std::string(text) + "'");
}

std::string_view to_string(StateFamily family)
{
    switch (family) {
    case StateFamily::Fixed: return "FixedState";
    case StateFamily::Case1: return "Case1Family";
    case StateFamily::Case3: return "Case3Family";
    }
    return "?";
}

StateFamily parse_state_family(std::string_view text)
{
    if (text == "FixedState" || text == "fixed")
        return StateFamily::Fixed;
    if (text == "Case1Family" || text == "case1")
        return StateFamily::Case1;
    if (text == "Case3Family" || text == "case3")
        return StateFamily::Case3;
    throw Error(ErrorKind::Domain, "unknown state family '" + std::string(text) + "'");
}

template <Scalar T>
Classification classify(const MassVector<T>& masses, const PhaseState<T>& state, const SimConfig<T>& config)
{
    const auto log = simulate(state, masses, config);
    Classification out;
    out.count = log.events.size();
    out.termination = log.termination;
    if (log.termination != Termination::FreeState) {
        out.cls = CountClass::Unclassified;
        return out;
    }
    const auto quadratic = binomial(static_cast<unsigned>(masses.size()), 2);
    if (out.count < quadratic)
        out.cls = CountClass::UnderQuadratic;
    else if (out.count == quadratic)
        out.cls = CountClass::Quadratic;
    else
        out.cls = CountClass::OverQuadratic;
    return out;
}

template Classification classify<Rational>(const MassVector<Rational>&, const PhaseState<Rational>&, const SimConfig<Rational>&);
template Classification classify<double>(const MassVector<double>&, const PhaseState<double>&, const SimConfig<double>&);

void validate(const SweepSpec& spec)
{
    const auto fail = [](const std::string& field, const std::string& why) {
        throw Error(ErrorKind::Domain, field + ": " + why, field);
    };
    if (spec.n < 2)
        fail("n", "must be at least 2");
    if (!(spec.epsilon > Rational(0)) || !(spec.epsilon < Rational(1)))
        fail("epsilon", "must lie in (0, 1)");
    if (spec.grid < 2)
        fail("grid", "resolution must be at least 2");
    const std::size_t ratios = spec.n - 1;
    for (std::size_t a : spec.axes)
        if (a >= ratios)
            fail("axes", "ratio index " + std::to_string(a + 1) + " out of range 1.." + std::to_string(ratios));
    if (ratios >= 2 && spec.axes[0] == spec.axes[1])
        fail("axes", "the two axes must differ");
    if (spec.family == StateFamily::Fixed) {
        if (!spec.fixed_state)
            fail("state", "FixedState family needs a state");
        if (spec.fixed_state->size() != spec.n)
            fail("state", "state has " + std::to_string(spec.fixed_state->size()) + " particles, expected n");
        validate_state(*spec.fixed_state);
    }
    if (spec.tie_tolerance < 0.0)
        fail("tie_tolerance", "must be non-negative");
    if (spec.mode == ArithmeticMode::ExactRational && spec.tie_tolerance != 0.0)
        fail("tie_tolerance", "must be 0 in exact mode");
}

Rational grid_value(const Rational& epsilon, unsigned grid, unsigned i)
{
    return Rational(1) - epsilon + Rational(2) * epsilon * Rational(static_cast<long>(i) + 1) / Rational(static_cast<long>(grid) + 1);
}

unsigned refined_grid(unsigned grid)
{
    return 2 * grid + 1;
}

std::vector<Rational> masses_from_ratios(const std::vector<Rational>& ratios)
{
    std::vector<Rational> m{Rational(1)};
    for (const auto& r : ratios)
        m.push_back(m.back() * r);
    const auto [lo, hi] = std::minmax_element(m.begin(), m.end());
    const Rational scale = Rational(2) / (*lo + *hi);
    for (auto& x : m)
        x *= scale;
    return m;
}

std::optional<SweepCell> SweepResult::diagonal() const
{
    if (spec.grid % 2 == 0)
        return std::nullopt;
    const unsigned mid = spec.grid / 2;
    return at(mid, mid);
}

namespace {

struct Baseline {
    PhaseState<Rational> state;
    std::vector<Rational> ratios;
};

Baseline baseline_for(const SweepSpec& spec)
{
    if (spec.family == StateFamily::Fixed)
        return {*spec.fixed_state, std::vector<Rational>(spec.n - 1, Rational(1))};

    ConstructionParams<Rational> params;
    params.n = spec.n;
    params.epsilon = spec.epsilon;
    params.samples = 0;
    const auto built = build(spec.family == StateFamily::Case1 ? CaseTag::Case1 : CaseTag::Case3, params);
    std::vector<Rational> ratios;
    for (std::size_t k = 1; k < built.n(); ++k)
        ratios.push_back(built.masses[k] / built.masses[k - 1]);
    return {built.state, ratios};
}

Classification run_cell(const SweepSpec& spec, const std::vector<Rational>& masses, const PhaseState<Rational>& state)
{
    if (spec.mode == ArithmeticMode::ExactRational) {
        SimConfig<Rational> config{Rational(0), spec.max_events, spec.triple_policy};
        return classify(MassVector<Rational>(masses), state, config);
    }
    SimConfig<double> config{spec.tie_tolerance, spec.max_events, spec.triple_policy};
    return classify(convert<double>(MassVector<Rational>(masses)), convert<double>(state), config);
}

}  // namespace

SweepResult sweep(const SweepSpec& spec)
{
    validate(spec);
    const Baseline base = baseline_for(spec);

    SweepResult result;
    result.spec = spec;
    result.state = base.state;
    result.baseline_ratios = base.ratios;

    const std::size_t total = static_cast<std::size_t>(spec.grid) * spec.grid;
    result.cells.resize(total);
    for (unsigned i = 0; i < spec.grid; ++i) {
        for (unsigned j = 0; j < spec.grid; ++j) {
            SweepCell& cell = result.cells[static_cast<std::size_t>(i) * spec.grid + j];
            cell.i = i;
            cell.j = j;
            cell.axis1_ratio = grid_value(spec.epsilon, spec.grid, i);
            cell.axis2_ratio = grid_value(spec.epsilon, spec.grid, j);
            std::vector<Rational> ratios = base.ratios;
            ratios[spec.axes[0]] = cell.axis1_ratio;
            if (ratios.size() >= 2)
                ratios[spec.axes[1]] = cell.axis2_ratio;
            cell.masses = masses_from_ratios(ratios);
            for (const auto& m : cell.masses)
                cell.in_band = cell.in_band && m > Rational(1) - spec.epsilon && m < Rational(1) + spec.epsilon;
        }
    }

    unsigned workers = spec.threads ? spec.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (std::size_t idx = next++; idx < total; idx = next++) {
            try {
                SweepCell& cell = result.cells[idx];
                cell.result = run_cell(spec, cell.masses, base.state);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w)
        pool.emplace_back(work);
    work();
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);

    for (const auto& cell : result.cells) {
        ++result.class_totals[cell.result.cls];
        if (cell.result.cls != CountClass::Unclassified)
            ++result.histogram[cell.result.count];
        if (!cell.in_band)
            ++result.out_of_band;
    }
    return result;
}

}  // namespace hardline
