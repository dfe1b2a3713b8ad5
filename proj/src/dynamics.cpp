#include "hardline/dynamics.hpp"

#include <algorithm>
#include <string>

namespace hardline {

std::string_view to_string(ArithmeticMode mode)
{
    return mode == ArithmeticMode::ExactRational ? "exact" : "float";
}

ArithmeticMode parse_arithmetic_mode(std::string_view text)
{
    if (text == "exact" || text == "rational")
        return ArithmeticMode::ExactRational;
    if (text == "float" || text == "double")
        return ArithmeticMode::Float64;
    throw Error(ErrorKind::Domain, "unknown arithmetic mode '" + std::string(text) + "'");
}

std::uint64_t binomial(unsigned n, unsigned k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (unsigned i = 1; i <= k; ++i)
        result = result * (n - k + i) / i;
    return result;
}

std::size_t default_event_cap(std::size_t n)
{
    return static_cast<std::size_t>(4 * binomial(static_cast<unsigned>(n + 1), 3) + 16);
}

std::string_view to_string(Termination termination)
{
    switch (termination) {
    case Termination::FreeState: return "FreeState";
    case Termination::EventCapReached: return "EventCapReached";
    case Termination::TripleCollisionError: return "TripleCollisionError";
    }
    return "?";
}

Termination parse_termination(std::string_view text)
{
    if (text == "FreeState")
        return Termination::FreeState;
    if (text == "EventCapReached")
        return Termination::EventCapReached;
    if (text == "TripleCollisionError")
        return Termination::TripleCollisionError;
    throw Error(ErrorKind::Domain, "unknown termination '" + std::string(text) + "'");
}

std::string_view to_string(TriplePolicy policy)
{
    return policy == TriplePolicy::Error ? "error" : "exchange";
}

TriplePolicy parse_triple_policy(std::string_view text)
{
    if (text == "error" || text == "Error")
        return TriplePolicy::Error;
    if (text == "exchange" || text == "EqualMassExchange")
        return TriplePolicy::EqualMassExchange;
    throw Error(ErrorKind::Domain, "unknown triple policy '" + std::string(text) + "'");
}

template <Scalar T>
MassVector<T>::MassVector(std::vector<T> masses) : m_(std::move(masses))
{
    if (m_.size() < 2)
        throw Error(ErrorKind::Domain, "need at least two masses");
    for (const auto& m : m_)
        if (!(m > T(0)))
            throw Error(ErrorKind::Domain, "masses must be positive");
}

template <Scalar T>
void validate_state(const PhaseState<T>& state)
{
    if (state.q.size() != state.v.size())
        throw Error(ErrorKind::Domain, "positions and velocities differ in length");
    for (std::size_t k = 0; k + 1 < state.q.size(); ++k)
        if (!(state.q[k] < state.q[k + 1]))
            throw Error(ErrorKind::Domain, "positions must be strictly increasing");
}

template <Scalar T>
std::vector<std::size_t> EventLog<T>::pair_sequence() const
{
    std::vector<std::size_t> out;
    out.reserve(events.size());
    for (const auto& e : events)
        out.push_back(e.pair);
    return out;
}

template <Scalar T>
std::pair<T, T> collide_pair(const T& m_i, const T& m_j, const T& v_i, const T& v_j)
{
    if (!(m_i > T(0)) || !(m_j > T(0)))
        throw Error(ErrorKind::Domain, "collide_pair needs positive masses");
    const T total = m_i + m_j;
    T left = ((m_i - m_j) * v_i + T(2) * m_j * v_j) / total;
    T right = ((m_j - m_i) * v_j + T(2) * m_i * v_i) / total;
    return {std::move(left), std::move(right)};
}

template <Scalar T>
std::vector<T> velocity_differences(std::span<const T> v)
{
    std::vector<T> out;
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        out.push_back(v[k + 1] - v[k]);
    return out;
}

template <Scalar T>
std::vector<T> delta_transform(std::span<const T> deltas, std::size_t i, const MassVector<T>& m)
{
    if (deltas.size() + 1 != m.size())
        throw Error(ErrorKind::Domain, "delta_transform: deltas must have length n - 1");
    if (i >= deltas.size())
        throw Error(ErrorKind::Domain, "delta_transform: pair index out of range");

    std::vector<T> out(deltas.begin(), deltas.end());
    const T total = m[i] + m[i + 1];
    const T d = deltas[i];
    out[i] = -d;
    if (i > 0)
        out[i - 1] = deltas[i - 1] + T(2) * m[i + 1] / total * d;
    if (i + 1 < deltas.size())
        out[i + 1] = deltas[i + 1] + T(2) * m[i] / total * d;
    return out;
}

template <Scalar T>
std::optional<PendingEvent<T>> next_event(const PhaseState<T>& state, const SimConfig<T>& config)
{
    std::optional<T> best;
    std::vector<std::pair<std::size_t, T>> candidates;
    for (std::size_t k = 0; k + 1 < state.size(); ++k) {
        if (!(state.v[k] > state.v[k + 1]))
            continue;
        T gap = state.q[k + 1] - state.q[k];
        if (gap < T(0))
            gap = T(0);  // float round-off at contact
        T dt = gap / (state.v[k] - state.v[k + 1]);
        if (!best || dt < *best)
            best = dt;
        candidates.emplace_back(k, std::move(dt));
    }
    if (!best)
        return std::nullopt;

    PendingEvent<T> out{state.t0 + *best, *best, {}};
    for (const auto& [k, t] : candidates) {
        if constexpr (is_exact_v<T>) {
            if (t == *best)
                out.pairs.push_back(k);
        } else {
            if (t - *best <= config.tie_tolerance)
                out.pairs.push_back(k);
        }
    }
    return out;
}

template <Scalar T>
PhaseState<T> advance(const PhaseState<T>& state, const T& dt)
{
    if (dt < T(0))
        throw Error(ErrorKind::Domain, "advance needs dt >= 0");
    PhaseState<T> out;
    out.t0 = state.t0 + dt;
    out.v = state.v;
    out.q.reserve(state.q.size());
    for (std::size_t k = 0; k < state.q.size(); ++k)
        out.q.push_back(state.q[k] + state.v[k] * dt);

    for (std::size_t k = 0; k + 1 < out.q.size(); ++k) {
        if constexpr (is_exact_v<T>) {
            if (out.q[k] > out.q[k + 1])
                throw Error(ErrorKind::Internal, "advance crossed a collision");
        } else {
            const double scale = 1.0 + std::max(std::fabs(out.q[k]), std::fabs(out.q[k + 1])) +
                                 std::fabs(state.v[k] * dt) + std::fabs(state.v[k + 1] * dt);
            if (out.q[k] - out.q[k + 1] > 1e-9 * scale)
                throw Error(ErrorKind::Internal, "advance crossed a collision");
        }
    }
    return out;
}

template <Scalar T>
bool is_free(std::span<const T> v)
{
    for (std::size_t k = 0; k + 1 < v.size(); ++k)
        if (v[k] > v[k + 1])
            return false;
    return true;
}

namespace {

/// Runs of consecutive pair indices; each run is one cluster of particles in contact.
std::vector<std::pair<std::size_t, std::size_t>> clusters(const std::vector<std::size_t>& pairs)
{
    std::vector<std::pair<std::size_t, std::size_t>> runs;
    for (std::size_t p : pairs) {
        if (!runs.empty() && runs.back().second + 1 == p)
            runs.back().second = p;
        else
            runs.emplace_back(p, p);
    }
    return runs;
}

template <Scalar T>
void apply_collision(PhaseState<T>& state, const MassVector<T>& m, std::size_t p, std::vector<CollisionEvent<T>>& events)
{
    CollisionEvent<T> e;
    e.time = state.t0;
    e.pair = p;
    e.v_pre = {state.v[p], state.v[p + 1]};
    auto [left, right] = collide_pair(m[p], m[p + 1], state.v[p], state.v[p + 1]);
    state.v[p] = left;
    state.v[p + 1] = right;
    e.v_post = {std::move(left), std::move(right)};
    e.ordinal = events.size() + 1;
    events.push_back(std::move(e));
}

}  // namespace

template <Scalar T>
EventLog<T> simulate(const PhaseState<T>& state, const MassVector<T>& masses, const SimConfig<T>& config)
{
    validate_state(state);
    if (state.size() != masses.size())
        throw Error(ErrorKind::Domain, "state and masses differ in length");
    if (config.tie_tolerance < T(0))
        throw Error(ErrorKind::Domain, "tie tolerance must be non-negative");
    if constexpr (is_exact_v<T>) {
        if (config.tie_tolerance != T(0))
            throw Error(ErrorKind::Domain, "tie tolerance must be zero in exact mode");
    }
    const std::size_t cap = config.max_events ? config.max_events : default_event_cap(masses.size());

    EventLog<T> log{masses, state, {}, state, Termination::FreeState};
    PhaseState<T>& current = log.final_state;

    while (true) {
        auto pending = next_event(current, config);
        if (!pending) {
            log.termination = Termination::FreeState;
            break;
        }
        if (log.events.size() >= cap) {
            log.termination = Termination::EventCapReached;
            break;
        }

        const auto runs = clusters(pending->pairs);
        bool triple_blocked = false;
        for (const auto& [first, last] : runs) {
            if (first == last)
                continue;
            if (config.triple_policy == TriplePolicy::Error) {
                triple_blocked = true;
                break;
            }
            for (std::size_t k = first + 1; k <= last + 1; ++k)
                if (masses[k] != masses[first])
                    triple_blocked = true;
        }
        if (triple_blocked) {
            log.termination = Termination::TripleCollisionError;
            break;
        }

        current = advance(current, pending->dt);
        current.t0 = pending->time;
        bool capped = false;
        for (const auto& [first, last] : runs) {
            if (first == last) {
                apply_collision(current, masses, first, log.events);
                continue;
            }
            // Equal masses in contact: binary exchanges, lowest approaching pair first,
            // until the cluster separates. Leaves the velocity multiset unchanged.
            while (!capped) {
                std::optional<std::size_t> approaching;
                for (std::size_t p = first; p <= last; ++p) {
                    if (current.v[p] > current.v[p + 1]) {
                        approaching = p;
                        break;
                    }
                }
                if (!approaching)
                    break;
                if (log.events.size() >= cap) {
                    capped = true;
                    break;
                }
                apply_collision(current, masses, *approaching, log.events);
            }
        }
        if (capped) {
            log.termination = Termination::EventCapReached;
            break;
        }
    }
    return log;
}

template <Scalar T>
PhaseState<T> replay(const EventLog<T>& log)
{
    PhaseState<T> state = log.initial;
    for (const auto& e : log.events) {
        state = advance(state, T(e.time - state.t0));
        auto [left, right] = collide_pair(log.masses[e.pair], log.masses[e.pair + 1], state.v[e.pair], state.v[e.pair + 1]);
        state.v[e.pair] = std::move(left);
        state.v[e.pair + 1] = std::move(right);
    }
    return state;
}

template <Scalar T>
T total_momentum(const MassVector<T>& m, std::span<const T> v)
{
    T sum = T(0);
    for (std::size_t k = 0; k < v.size(); ++k)
        sum = sum + m[k] * v[k];
    return sum;
}

template <Scalar T>
T kinetic_energy(const MassVector<T>& m, std::span<const T> v)
{
    T sum = T(0);
    for (std::size_t k = 0; k < v.size(); ++k)
        sum = sum + m[k] * v[k] * v[k];
    return sum / T(2);
}

template <Scalar T>
PhaseState<T> mirror(const PhaseState<T>& s)
{
    PhaseState<T> out;
    out.t0 = s.t0;
    for (auto it = s.q.rbegin(); it != s.q.rend(); ++it)
        out.q.push_back(-*it);
    for (auto it = s.v.rbegin(); it != s.v.rend(); ++it)
        out.v.push_back(-*it);
    return out;
}

template <Scalar T>
MassVector<T> mirror(const MassVector<T>& m)
{
    return MassVector<T>(std::vector<T>(m.values().rbegin(), m.values().rend()));
}

#define HARDLINE_INSTANTIATE(T)                                                                            \
    template class MassVector<T>;                                                                          \
    template struct EventLog<T>;                                                                           \
    template void validate_state<T>(const PhaseState<T>&);                                                 \
    template std::pair<T, T> collide_pair<T>(const T&, const T&, const T&, const T&);                      \
    template std::vector<T> velocity_differences<T>(std::span<const T>);                                   \
    template std::vector<T> delta_transform<T>(std::span<const T>, std::size_t, const MassVector<T>&);     \
    template std::optional<PendingEvent<T>> next_event<T>(const PhaseState<T>&, const SimConfig<T>&);      \
    template PhaseState<T> advance<T>(const PhaseState<T>&, const T&);                                     \
    template bool is_free<T>(std::span<const T>);                                                          \
    template EventLog<T> simulate<T>(const PhaseState<T>&, const MassVector<T>&, const SimConfig<T>&);     \
    template PhaseState<T> replay<T>(const EventLog<T>&);                                                  \
    template T total_momentum<T>(const MassVector<T>&, std::span<const T>);                                \
    template T kinetic_energy<T>(const MassVector<T>&, std::span<const T>);                                \
    template PhaseState<T> mirror<T>(const PhaseState<T>&);                                                \
    template MassVector<T> mirror<T>(const MassVector<T>&);

HARDLINE_INSTANTIATE(Rational)
HARDLINE_INSTANTIATE(double)

#undef HARDLINE_INSTANTIATE

}  // namespace hardline
