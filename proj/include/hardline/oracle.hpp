#pragma once

// Fixed-step reference integrator and cross-checks for event logs.
//
// The oracle never solves for collision times. It moves every particle by dt,
// looks for adjacent pairs whose order flipped, and bisects inside the step to
// localize the contact. Agreement with the event-driven engine is therefore
// independent evidence.

#include "hardline/dynamics.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hardline {

struct OracleConfig {
    double dt = 0.0;                // 0: min gap / (64 * max relative speed)
    double t_max = 0.0;             // 0: no time limit, only max_steps
    unsigned refinement_depth = 40;
    unsigned max_halvings = 12;
    std::size_t max_steps = 20'000'000;
};

/// Step size used when OracleConfig::dt is 0.
double auto_step(const PhaseState<double>& state);

/// Throws Error(Oracle) if no step size down to dt / 2^max_halvings separates
/// the crossings, or if max_steps / t_max run out before the state is free.
EventLog<double> oracle_simulate(const PhaseState<double>& state, const MassVector<double>& masses,
                                 const OracleConfig& config = {});

template <Scalar T>
std::size_t count_collisions(const EventLog<T>& log)
{
    return log.events.size();
}

template <Scalar T>
bool verify_sequence(const EventLog<T>& log, const std::vector<std::size_t>& expected)
{
    return log.pair_sequence() == expected;
}

/// |P(final) - P(initial)| and |E(final) - E(initial)|, exact zero in exact mode.
template <Scalar T>
T momentum_drift(const EventLog<T>& log);
template <Scalar T>
T energy_drift(const EventLog<T>& log);

/// Drift divided by the larger of sum |m v| (momentum) or E (energy) at t0.
template <Scalar T>
double relative_momentum_drift(const EventLog<T>& log);
template <Scalar T>
double relative_energy_drift(const EventLog<T>& log);

struct AuditReport {
    double momentum_drift = 0.0;  // max over both logs
    double energy_drift = 0.0;
    bool count_match = false;
    bool sequence_match = false;
    std::optional<std::size_t> first_divergence;  // 1-based ordinal

    friend bool operator==(const AuditReport&, const AuditReport&) = default;
};

/// Compares two logs of the same system. Masses and initial states must agree
/// within `tol` (as doubles), otherwise Error(Domain).
template <Scalar A, Scalar B>
AuditReport audit(const EventLog<A>& log_a, const EventLog<B>& log_b, double tol);

/// If pair (k, k+1) never collides, the final state must have v_{k+1} >= v_k.
/// Returns false on the first pair that breaks this.
template <Scalar T>
bool decoupling_holds(const EventLog<T>& log);

}  // namespace hardline
