#pragma once

// Exact event-driven evolution of point particles on a line with elastic
// two-body collisions.
//
// Indexing: particles are 0-based. A pair index p names the adjacent pair
// (p, p + 1). External formats (JSON, CSV, CLI) use 1-based numbering.

#include "hardline/error.hpp"
#include "hardline/scalar.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace hardline {

std::uint64_t binomial(unsigned n, unsigned k);

/// Positive masses m_1..m_n, n >= 2.
template <Scalar T>
class MassVector {
public:
    explicit MassVector(std::vector<T> masses);

    std::size_t size() const noexcept { return m_.size(); }
    const T& operator[](std::size_t k) const { return m_[k]; }
    std::span<const T> values() const noexcept { return m_; }
    auto begin() const noexcept { return m_.begin(); }
    auto end() const noexcept { return m_.end(); }

    friend bool operator==(const MassVector&, const MassVector&) = default;

private:
    std::vector<T> m_;
};

/// Positions and velocities at reference time t0.
template <Scalar T>
struct PhaseState {
    T t0{};
    std::vector<T> q;
    std::vector<T> v;

    std::size_t size() const noexcept { return q.size(); }
    friend bool operator==(const PhaseState&, const PhaseState&) = default;
};

/// Throws DomainError unless q and v have the same length and q is strictly increasing.
template <Scalar T>
void validate_state(const PhaseState<T>& state);

template <Scalar T>
struct CollisionEvent {
    T time{};
    std::size_t pair = 0;
    std::array<T, 2> v_pre{};
    std::array<T, 2> v_post{};
    std::size_t ordinal = 0;  // 1-based collision counter

    friend bool operator==(const CollisionEvent&, const CollisionEvent&) = default;
};

enum class Termination { FreeState, EventCapReached, TripleCollisionError };
enum class TriplePolicy { Error, EqualMassExchange };

std::string_view to_string(Termination termination);
Termination parse_termination(std::string_view text);
std::string_view to_string(TriplePolicy policy);
TriplePolicy parse_triple_policy(std::string_view text);

template <Scalar T>
struct EventLog {
    MassVector<T> masses;
    PhaseState<T> initial;
    std::vector<CollisionEvent<T>> events;
    PhaseState<T> final_state;
    Termination termination = Termination::FreeState;

    std::size_t n() const noexcept { return masses.size(); }
    std::vector<std::size_t> pair_sequence() const;

    friend bool operator==(const EventLog&, const EventLog&) = default;
};

template <Scalar T>
T default_tie_tolerance()
{
    if constexpr (is_exact_v<T>)
        return T(0);
    else
        return 1e-12;
}

/// 4 * C(n+1, 3) + 16.
std::size_t default_event_cap(std::size_t n);

template <Scalar T>
struct SimConfig {
    T tie_tolerance = default_tie_tolerance<T>();  // must be 0 in exact mode
    std::size_t max_events = 0;                    // 0 selects default_event_cap(n)
    TriplePolicy triple_policy = TriplePolicy::Error;
};

template <Scalar T>
struct PendingEvent {
    T time;
    T dt;                            // time - t0, kept separately to avoid cancellation
    std::vector<std::size_t> pairs;  // ascending
};

/// Post-collision velocities of an elastic collision between masses m_i, m_j.
template <Scalar T>
std::pair<T, T> collide_pair(const T& m_i, const T& m_j, const T& v_i, const T& v_j);

/// Adjacent differences v_{k+1} - v_k; negative means the pair approaches.
template <Scalar T>
std::vector<T> velocity_differences(std::span<const T> v);

/// Updates adjacent velocity differences through a collision of pair i
/// without touching the velocities themselves.
template <Scalar T>
std::vector<T> delta_transform(std::span<const T> deltas, std::size_t i, const MassVector<T>& m);

/// Earliest future collision time and every pair that attains it (exactly, or
/// within the tie tolerance for doubles). Empty when no pair approaches.
template <Scalar T>
std::optional<PendingEvent<T>> next_event(const PhaseState<T>& state, const SimConfig<T>& config);

/// Free flight by dt >= 0. Throws Internal if the flight crosses a collision.
template <Scalar T>
PhaseState<T> advance(const PhaseState<T>& state, const T& dt);

template <Scalar T>
bool is_free(std::span<const T> v);

template <Scalar T>
bool is_free(const PhaseState<T>& state)
{
    return is_free<T>(std::span<const T>(state.v));
}

template <Scalar T>
EventLog<T> simulate(const PhaseState<T>& state, const MassVector<T>& masses, const SimConfig<T>& config = {});

/// Re-applies the logged collisions to the initial state.
template <Scalar T>
PhaseState<T> replay(const EventLog<T>& log);

template <Scalar T>
T total_momentum(const MassVector<T>& m, std::span<const T> v);

template <Scalar T>
T kinetic_energy(const MassVector<T>& m, std::span<const T> v);

template <Scalar To, Scalar From>
MassVector<To> convert(const MassVector<From>& m)
{
    std::vector<To> out;
    out.reserve(m.size());
    for (const auto& x : m)
        out.push_back(scalar_cast<To>(x));
    return MassVector<To>(std::move(out));
}

template <Scalar To, Scalar From>
PhaseState<To> convert(const PhaseState<From>& s)
{
    PhaseState<To> out;
    out.t0 = scalar_cast<To>(s.t0);
    for (const auto& x : s.q)
        out.q.push_back(scalar_cast<To>(x));
    for (const auto& x : s.v)
        out.v.push_back(scalar_cast<To>(x));
    return out;
}

/// Mirror image x -> -x: particle order, positions and velocities reversed.
template <Scalar T>
PhaseState<T> mirror(const PhaseState<T>& s);

template <Scalar T>
MassVector<T> mirror(const MassVector<T>& m);

}  // namespace hardline
