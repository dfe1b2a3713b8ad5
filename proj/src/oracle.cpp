#include "hardline/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace hardline {

namespace {

struct StepViolation {};

double gap_after(const PhaseState<double>& s, std::size_t k, double h)
{
    return (s.q[k + 1] + s.v[k + 1] * h) - (s.q[k] + s.v[k] * h);
}

/// Bisects [0, h] for the first time the gap of pair k is non-positive.
double localize(const PhaseState<double>& s, std::size_t k, double h, unsigned depth)
{
    double lo = 0.0;
    double hi = h;
    for (unsigned i = 0; i < depth; ++i) {
        const double mid = lo + (hi - lo) / 2.0;
        if (gap_after(s, k, mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return hi;
}

EventLog<double> run_fixed_step(const PhaseState<double>& state, const MassVector<double>& masses,
                                const OracleConfig& config, double h)
{
    EventLog<double> log{masses, state, {}, state, Termination::FreeState};
    PhaseState<double>& cur = log.final_state;
    const std::size_t n = state.size();
    const double resolution = std::ldexp(h, 2 - static_cast<int>(config.refinement_depth));

    std::size_t steps = 0;
    while (!is_free(cur)) {
        if (++steps > config.max_steps)
            throw Error(ErrorKind::Oracle, "oracle step budget exhausted (" + std::to_string(config.max_steps) + " steps)");
        if (config.t_max > 0.0 && cur.t0 - state.t0 > config.t_max)
            throw Error(ErrorKind::Oracle, "oracle passed t_max before reaching a free state");

        std::vector<std::size_t> crossed;
        for (std::size_t k = 0; k + 1 < n; ++k)
            if (cur.v[k] > cur.v[k + 1] && gap_after(cur, k, h) <= 0.0)
                crossed.push_back(k);
        if (crossed.empty()) {
            for (std::size_t k = 0; k < n; ++k)
                cur.q[k] += cur.v[k] * h;
            cur.t0 += h;
            continue;
        }

        std::vector<double> when;
        for (std::size_t k : crossed)
            when.push_back(localize(cur, k, h, config.refinement_depth));
        const double first = *std::min_element(when.begin(), when.end());
        std::vector<std::size_t> group;
        for (std::size_t j = 0; j < crossed.size(); ++j)
            if (when[j] - first <= resolution)
                group.push_back(crossed[j]);
        for (std::size_t j = 1; j < group.size(); ++j)
            if (group[j] == group[j - 1] + 1)
                throw StepViolation{};  // unresolved contact of three particles

        for (std::size_t k = 0; k < n; ++k)
            cur.q[k] += cur.v[k] * first;
        cur.t0 += first;
        for (std::size_t k : group) {
            const double meet = (cur.q[k] + cur.q[k + 1]) / 2.0;
            cur.q[k] = meet;
            cur.q[k + 1] = meet;
            CollisionEvent<double> e;
            e.time = cur.t0;
            e.pair = k;
            e.v_pre = {cur.v[k], cur.v[k + 1]};
            const auto [left, right] = collide_pair(masses[k], masses[k + 1], cur.v[k], cur.v[k + 1]);
            cur.v[k] = left;
            cur.v[k + 1] = right;
            e.v_post = {left, right};
            e.ordinal = log.events.size() + 1;
            log.events.push_back(e);
        }
    }
    return log;
}

template <Scalar T>
std::vector<double> as_doubles(std::span<const T> xs)
{
    std::vector<double> out;
    for (const auto& x : xs)
        out.push_back(to_double(x));
    return out;
}

bool close(const std::vector<double>& a, const std::vector<double>& b, double tol)
{
    if (a.size() != b.size())
        return false;
    for (std::size_t k = 0; k < a.size(); ++k)
        if (std::fabs(a[k] - b[k]) > tol)
            return false;
    return true;
}

}  // namespace

double auto_step(const PhaseState<double>& state)
{
    if (state.size() < 2)
        return 1.0;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < state.size(); ++k)
        min_gap = std::min(min_gap, state.q[k + 1] - state.q[k]);
    const auto [lo, hi] = std::minmax_element(state.v.begin(), state.v.end());
    const double spread = *hi - *lo;
    if (!(spread > 0.0) || !(min_gap > 0.0))
        return 1.0;
    return min_gap / (64.0 * spread);
}

EventLog<double> oracle_simulate(const PhaseState<double>& state, const MassVector<double>& masses,
                                 const OracleConfig& config)
{
    validate_state(state);
    if (state.size() != masses.size())
        throw Error(ErrorKind::Domain, "state and masses differ in length");
    if (config.dt < 0.0 || config.refinement_depth == 0)
        throw Error(ErrorKind::Domain, "oracle needs dt >= 0 and refinement_depth >= 1");

    double h = config.dt > 0.0 ? config.dt : auto_step(state);
    for (unsigned halving = 0; halving <= config.max_halvings; ++halving, h /= 2.0) {
        try {
            return run_fixed_step(state, masses, config, h);
        } catch (const StepViolation&) {
        }
    }
    throw Error(ErrorKind::Oracle, "oracle could not separate simultaneous crossings after " +
                                       std::to_string(config.max_halvings) + " halvings of dt");
}

template <Scalar T>
T momentum_drift(const EventLog<T>& log)
{
    return abs(T(total_momentum<T>(log.masses, log.final_state.v) - total_momentum<T>(log.masses, log.initial.v)));
}

template <Scalar T>
T energy_drift(const EventLog<T>& log)
{
    return abs(T(kinetic_energy<T>(log.masses, log.final_state.v) - kinetic_energy<T>(log.masses, log.initial.v)));
}

template <Scalar T>
double relative_momentum_drift(const EventLog<T>& log)
{
    T scale = T(0);
    for (std::size_t k = 0; k < log.n(); ++k)
        scale = scale + abs(T(log.masses[k] * log.initial.v[k]));
    const double drift = to_double(momentum_drift(log));
    return scale == T(0) ? drift : drift / to_double(scale);
}

template <Scalar T>
double relative_energy_drift(const EventLog<T>& log)
{
    const T scale = kinetic_energy<T>(log.masses, log.initial.v);
    const double drift = to_double(energy_drift(log));
    return scale == T(0) ? drift : drift / to_double(scale);
}

template <Scalar A, Scalar B>
AuditReport audit(const EventLog<A>& log_a, const EventLog<B>& log_b, double tol)
{
    if (log_a.n() != log_b.n())
        throw Error(ErrorKind::Domain, "audit: logs have different particle counts");
    if (!close(as_doubles<A>(log_a.masses.values()), as_doubles<B>(log_b.masses.values()), tol))
        throw Error(ErrorKind::Domain, "audit: logs have different masses");
    if (!close(as_doubles<A>(log_a.initial.q), as_doubles<B>(log_b.initial.q), tol) ||
        !close(as_doubles<A>(log_a.initial.v), as_doubles<B>(log_b.initial.v), tol))
        throw Error(ErrorKind::Domain, "audit: logs start from different states");

    AuditReport report;
    report.momentum_drift = std::max(to_double(momentum_drift(log_a)), to_double(momentum_drift(log_b)));
    report.energy_drift = std::max(to_double(energy_drift(log_a)), to_double(energy_drift(log_b)));
    report.count_match = log_a.events.size() == log_b.events.size();

    const auto seq_a = log_a.pair_sequence();
    const auto seq_b = log_b.pair_sequence();
    report.sequence_match = seq_a == seq_b;
    if (!report.sequence_match) {
        const auto [ia, ib] = std::mismatch(seq_a.begin(), seq_a.end(), seq_b.begin(), seq_b.end());
        report.first_divergence = static_cast<std::size_t>(ia - seq_a.begin()) + 1;
    }
    return report;
}

template <Scalar T>
bool decoupling_holds(const EventLog<T>& log)
{
    std::vector<bool> seen(log.n() > 0 ? log.n() - 1 : 0, false);
    for (const auto& e : log.events)
        seen[e.pair] = true;
    for (std::size_t k = 0; k < seen.size(); ++k)
        if (!seen[k] && log.final_state.v[k + 1] < log.final_state.v[k])
            return false;
    return true;
}

#define HARDLINE_INSTANTIATE(T)                                       \
    template T momentum_drift<T>(const EventLog<T>&);                 \
    template T energy_drift<T>(const EventLog<T>&);                   \
    template double relative_momentum_drift<T>(const EventLog<T>&);   \
    template double relative_energy_drift<T>(const EventLog<T>&);     \
    template bool decoupling_holds<T>(const EventLog<T>&);

HARDLINE_INSTANTIATE(Rational)
HARDLINE_INSTANTIATE(double)

#undef HARDLINE_INSTANTIATE

template AuditReport audit<Rational, Rational>(const EventLog<Rational>&, const EventLog<Rational>&, double);
template AuditReport audit<Rational, double>(const EventLog<Rational>&, const EventLog<double>&, double);
template AuditReport audit<double, Rational>(const EventLog<double>&, const EventLog<Rational>&, double);
template AuditReport audit<double, double>(const EventLog<double>&, const EventLog<double>&, double);

}  // namespace hardline
