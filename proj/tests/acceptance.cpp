// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include "hardline/bounds.hpp"
#include "hardline/constructions.hpp"
#include "hardline/io.hpp"
#include "hardline/massmap.hpp"
#include "hardline/oracle.hpp"

#include "generators.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

using namespace hardline;
using hardline::testing::Gen;
using R = Rational;

namespace {

constexpr double float_drift_tol = 1e-9;      // relative momentum / energy drift in Float64 reruns
constexpr unsigned u_states_per_n = 200;
constexpr unsigned certify_samples = 100;
const R certify_radius(1, 64);
constexpr unsigned oracle_instances = 50;
constexpr unsigned lemma_states = 100;
constexpr unsigned bound_samples = 50;
constexpr unsigned sweep_grid = 41;
const R sweep_epsilon(2, 5);
constexpr unsigned u3_scan = 64;

struct Criterion {
    bool ok = true;
    std::ostringstream detail;

    void fail(const std::string& why)
    {
        if (ok)
            detail << why;
        ok = false;
    }
};

std::vector<EventLog<R>> conservation_logs;

ConstructionParams<R> params(unsigned n, unsigned samples = 0)
{
    ConstructionParams<R> p;
    p.n = n;
    p.epsilon = R(1, 2);
    p.samples = samples;
    return p;
}

EventLog<R> run(const ConstructionResult<R>& c)
{
    auto log = simulate(c.state, c.masses);
    conservation_logs.push_back(log);
    return log;
}

void criterion1(Criterion& c)
{
    for (unsigned n = 2; n <= 8; ++n) {
        const auto log = run(build_case1(params(n)));
        std::vector<std::size_t> staircase;
        for (std::size_t p = 0; p + 1 < n; ++p)
            staircase.push_back(p);
        if (log.events.size() != n - 1 || log.pair_sequence() != staircase)
            c.fail("n=" + std::to_string(n) + ": " + std::to_string(log.events.size()) + " events");
    }
    c.detail << (c.ok ? "n=2..8 exact, n-1 events in staircase order" : "");
}

void criterion2(Criterion& c)
{
    Gen gen(2024);
    SimConfig<R> exchange;
    exchange.triple_policy = TriplePolicy::EqualMassExchange;
    std::size_t states = 0;
    for (unsigned n = 2; n <= 8; ++n) {
        const MassVector<R> equal(std::vector<R>(n, R(1)));
        for (unsigned s = 0; s < u_states_per_n; ++s) {
            const auto log = simulate(gen.u_state(n), equal, exchange);
            conservation_logs.push_back(log);
            ++states;
            if (log.events.size() != binomial(n, 2) || log.termination != Termination::FreeState)
                c.fail("U(" + std::to_string(n) + ") state " + std::to_string(s) + ": " + std::to_string(log.events.size()) +
                       " events");
        }
    }
    R smallest(1);
    for (unsigned n = 2; n <= 8; ++n) {
        auto p = params(n, 16);
        p.seed = n;
        const auto built = build_case2(p);
        run(built);
        if (!(built.certified_radius > R(0)))
            c.fail("build_case2 n=" + std::to_string(n) + " has no certified radius");
        else if (built.certified_radius < smallest)
            smallest = built.certified_radius;
    }
    if (c.ok)
        c.detail << states << " equal-mass U(n) states give C(n,2); build_case2 n=2..8 radius >= " << smallest;
}

/// Stage sizes read back from the exported polylines: a stage opens at the
/// first collision time of each newly engaged particle.
std::vector<std::size_t> stages_from_csv(const std::string& csv, std::size_t n)
{
    std::map<std::size_t, std::vector<double>> times;
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::size_t particle = 0;
        double t = 0;
        double q = 0;
        char c1 = 0;
        char c2 = 0;
        std::istringstream row(line);
        row >> particle >> c1 >> t >> c2 >> q;
        times[particle].push_back(t);
    }
    std::vector<double> all;
    std::vector<double> first;
    for (std::size_t k = 1; k <= n; ++k) {
        const auto& ts = times[k];
        for (std::size_t v = 1; v + 1 < ts.size(); ++v)
            all.push_back(ts[v]);
        if (ts.size() > 2 && k >= 2)
            first.push_back(ts[1]);
    }
    std::sort(first.begin(), first.end());
    std::vector<std::size_t> stages;
    for (std::size_t s = 0; s < first.size(); ++s) {
        const double lo = first[s];
        const double hi = s + 1 < first.size() ? first[s + 1] : std::numeric_limits<double>::infinity();
        std::size_t vertices = 0;
        for (double t : all)
            vertices += (t >= lo && t < hi) ? 1 : 0;
        stages.push_back(vertices / 2);
    }
    return stages;
}

void criterion3(Criterion& c)
{
    for (unsigned n = 3; n <= 7; ++n) {
        const auto log = run(build_case3(params(n)));
        if (log.events.size() != binomial(n + 1, 3)) {
            c.fail("n=" + std::to_string(n) + ": " + std::to_string(log.events.size()) + " events");
            continue;
        }
        std::vector<std::size_t> expected;
        for (unsigned k = 2; k <= n; ++k)
            expected.push_back((k - 1) + binomial(k - 1, 2));
        const auto from_csv = stages_from_csv(space_time_csv(log), n);
        if (from_csv != expected || stage_counts(log) != expected)
            c.fail("n=" + std::to_string(n) + ": stage sizes differ from (k-1) + C(k-1,2)");
    }
    if (c.ok)
        c.detail << "n=3..7 give C(n+1,3) events (n=7: 56); CSV stages 1,3,6,10,15,21";
}

void criterion4(Criterion& c)
{
    for (auto tag : {CaseTag::Case1, CaseTag::Case2, CaseTag::Case3}) {
        auto p = params(4);
        p.seed = 4;
        const auto built = build(tag, p);
        run(built);
        const R rho = certify_open(built, certify_samples, certify_radius, 44);
        c.detail << to_string(tag) << " rho=" << rho << " ";
        if (!(rho > R(0)))
            c.fail(std::string(to_string(tag)) + " not certified ");
    }
}

void criterion5(Criterion& c)
{
    double worst = 0.0;
    for (const auto& log : conservation_logs) {
        if (momentum_drift(log) != R(0) || energy_drift(log) != R(0))
            c.fail("nonzero exact drift ");
        const auto fp = simulate(convert<double>(log.initial), convert<double>(log.masses));
        worst = std::max({worst, relative_momentum_drift(fp), relative_energy_drift(fp)});
    }
    if (worst > float_drift_tol)
        c.fail("Float64 relative drift " + format_double(worst));
    if (c.ok)
        c.detail << conservation_logs.size() << " logs, exact drift 0, Float64 max relative drift " << format_double(worst);
}

void criterion6(Criterion& c)
{
    Gen gen(606);
    unsigned compared = 0;
    unsigned skipped = 0;
    while (compared < oracle_instances) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 5));
        const auto state = gen.state(n);
        const MassVector<R> masses(gen.masses(n));
        const auto exact = simulate(state, masses);
        if (exact.termination != Termination::FreeState) {
            ++skipped;
            continue;
        }
        const auto brute = oracle_simulate(convert<double>(state), convert<double>(masses));
        if (brute.pair_sequence() != exact.pair_sequence())
            c.fail("instance " + std::to_string(compared) + " differs ");
        ++compared;
    }
    if (c.ok)
        c.detail << compared << " instances identical (" << skipped << " triple-collision draws skipped)";
}

void criterion7(Criterion& c)
{
    Gen gen(707);
    for (unsigned k = 1; k <= 12; ++k) {
        const R hi = R(static_cast<long>(k) + 1) / R(static_cast<long>(k));
        for (unsigned s = 0; s < bound_samples; ++s) {
            const R x = gen.interior(R(1), hi);
            const R f = f_k(x, k);
            if (!(g_k(x, k) > f && f > x))
                c.fail("ordering fails at k=" + std::to_string(k) + " ");
            if (f_k(x, k + 1) != f_step(f) || g_k(x, k + 1) != g_step(g_k(x, k)))
                c.fail("composition fails at k=" + std::to_string(k) + " ");
        }
    }
    for (unsigned k = 1; k <= 10; ++k) {
        const auto p = coincidence_point<R>(k);
        if (f_k(p.x, k) != p.value || g_k(p.x, k) != p.value)
            c.fail("coincidence fails at k=" + std::to_string(k) + " ");
    }
    if (c.ok)
        c.detail << "k=1..12 ordering and composition, k=1..10 coincidence, all exact";
}

void criterion8(Criterion& c)
{
    Gen gen(808);
    std::size_t least_margin = std::numeric_limits<std::size_t>::max();
    for (unsigned s = 0; s < lemma_states; ++s) {
        const auto n = static_cast<std::size_t>(gen.integer(2, 6));
        const auto log = simulate(gen.u_state(n), MassVector<R>(gen.masses(n)));
        if (log.termination != Termination::FreeState || log.events.size() < n - 1)
            c.fail("state " + std::to_string(s) + " (n=" + std::to_string(n) + "): " + std::to_string(log.events.size()) +
                   " events ");
        else
            least_margin = std::min(least_margin, log.events.size() - (n - 1));
    }
    if (c.ok)
        c.detail << lemma_states << " states, count >= n-1 (smallest excess " << least_margin << ")";
}

std::size_t class_total(const SweepResult& r, CountClass cls)
{
    const auto it = r.class_totals.find(cls);
    return it == r.class_totals.end() ? 0 : it->second;
}

void criterion9(Criterion& c)
{
    SweepSpec spec;
    spec.n = 3;
    spec.epsilon = sweep_epsilon;
    spec.grid = sweep_grid;
    spec.triple_policy = TriplePolicy::EqualMassExchange;
    spec.fixed_state = PhaseState<R>{R(0), {R(0), R(1), R(2)}, {R(2), R(1), R(0)}};
    const auto base = sweep(spec);
    const auto diag = base.diagonal();
    const bool diag_ok = diag && diag->result.cls == CountClass::Quadratic;
    c.detail << "q=(0,1,2) v=(2,1,0): diagonal " << (diag ? to_string(diag->result.cls) : "missing") << ", under "
             << class_total(base, CountClass::UnderQuadratic) << ", over " << class_total(base, CountClass::OverQuadratic)
             << ", unclassified " << class_total(base, CountClass::Unclassified) << "; ";

    bool found = diag_ok && class_total(base, CountClass::UnderQuadratic) > 0 &&
                 class_total(base, CountClass::OverQuadratic) > 0;
    Gen gen(909);
    std::size_t best_under = 0;
    std::size_t best_over = 0;
    spec.triple_policy = TriplePolicy::Error;
    for (unsigned s = 0; s < u3_scan && !found; ++s) {
        spec.fixed_state = gen.u_state(3);
        const auto r = sweep(spec);
        const auto d = r.diagonal();
        const std::size_t under = class_total(r, CountClass::UnderQuadratic);
        const std::size_t over = class_total(r, CountClass::OverQuadratic);
        best_under = std::max(best_under, under);
        best_over = std::max(best_over, over);
        found = d && d->result.cls == CountClass::Quadratic && under > 0 && over > 0;
    }
    c.detail << u3_scan << " seeded U(3) states: max under " << best_under << ", max over " << best_over;
    if (!found)
        c.fail("");
    c.detail << (found ? ", both classes found" : ", never both in one sweep");
}

}  // namespace

int main()
{
    using Clock = std::chrono::steady_clock;
    const std::vector<std::pair<const char*, void (*)(Criterion&)>> criteria{
        {"Case-1 counts", criterion1},      {"Case-2 counts", criterion2},       {"Case-3 counts", criterion3},
        {"openness surrogate", criterion4}, {"conservation", criterion5},        {"oracle equivalence", criterion6},
        {"bound functions", criterion7},    {"decreasing velocities", criterion8}, {"sweep sanity", criterion9},
    };
    int failures = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        Criterion c;
        const auto start = Clock::now();
        try {
            criteria[k].second(c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::printf("%s %zu %s (%.1fs): %s\n", c.ok ? "PASS" : "FAIL", k + 1, criteria[k].first, secs,
                    c.detail.str().c_str());
        std::fflush(stdout);
        failures += c.ok ? 0 : 1;
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
