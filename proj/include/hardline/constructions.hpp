#pragma once

// Builders for mass vectors and initial states with a prescribed number of
// collisions near the equal-mass diagonal:
//
//   Case1             n - 1 collisions, sequence (1,2), (2,3), ..., (n-1,n)
//   Case2             C(n,2) collisions, masses perturbed off the diagonal
//   Case3             C(n+1,3) collisions, increasing masses
//   Case3Alternating  C(n+1,3) collisions, V-shaped masses grown on both ends
//
// Cases 1 and 3 are inductive: the (k-1)-particle system is simulated to find
// its last collision time T and the furthest excursion Q of its outer
// particle, and particle k is placed beyond both.

#include "hardline/dynamics.hpp"

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace hardline {

enum class CaseTag { Case1, Case2, Case3, Case3Alternating };

std::string_view to_string(CaseTag tag);
CaseTag parse_case_tag(std::string_view text);  // also accepts "1", "2", "3", "3alt"

template <Scalar T>
struct ConstructionParams {
    unsigned n = 2;
    T epsilon = ratio<T>(1, 2);
    /// Seed ratio r = m_2 / m_1; chosen from n and epsilon when absent.
    std::optional<T> seed_ratio;
    /// Case 1: each ratio is 1 + theta * (f(previous ratio) - 1), theta in (0, 1).
    T theta = ratio<T>(1, 2);
    /// Case 3: the new particle must close in at least kappa times faster than
    /// any relative velocity in the settled system. Doubled on failure.
    T kappa = T(8);
    unsigned max_kappa_doublings = 96;
    /// Placement margin beyond the excursion bound, relative to the system's extent.
    T slack = ratio<T>(1, 16);
    /// Perturbation samples used for the certified radius; 0 skips certification.
    unsigned samples = 16;
    T initial_radius = ratio<T>(1, 64);
    std::uint64_t seed = 0;
};

template <Scalar T>
struct ConstructionResult {
    CaseTag case_tag = CaseTag::Case1;
    ConstructionParams<T> params;  // seed_ratio resolved
    MassVector<T> masses;
    PhaseState<T> state;
    std::uint64_t predicted_count = 0;
    std::optional<std::vector<std::size_t>> expected_sequence;  // 0-based pair indices
    T certified_radius{};

    std::size_t n() const noexcept { return masses.size(); }
};

template <Scalar T>
struct Interval {
    T lo;
    T hi;
    bool empty() const { return !(lo < hi); }
};

/// Admissible initial velocities of the new particle n in Case 1, given the
/// last three masses, the initial velocity of particle n-1 (v_prev) and the
/// velocity of particle n-2 just before its collision with n-1 (v_prevprev).
/// An empty interval means the mass condition is violated.
template <Scalar T>
Interval<T> case1_velocity_interval(std::span<const T> masses, const T& v_prev, const T& v_prevprev);

/// Interval endpoints (lower/upper) of the neighbourhoods used by the Case-1
/// position bound. Indices are relative to the new particle n.
template <Scalar T>
struct PlacementBounds {
    T q_prev_upper;       // upper end for q_{n-1}
    T q_prev_lower;       // lower end for q_{n-1}
    T q_prevprev_lower;   // lower end for q_{n-2}
    T v_prevprev_lower;   // lower end for v_{n-2} before its collision with n-1
    T v_prev_upper;       // upper end for v_{n-1}
    T v_prev_lower;       // lower end for v_{n-1}
    T v_new_upper;        // upper end for v_n
};

/// Lower bound for q_n so that particle n meets n-1 only after n-2 has.
template <Scalar T>
T case1_position_bound(const PlacementBounds<T>& b);

/// m_c <= m_b (m_b + m_a) / (3 m_a - m_b) with 3 m_a > m_b, strict when `strict`.
template <Scalar T>
bool case1_mass_condition(const T& m_a, const T& m_b, const T& m_c, bool strict = true);

/// 4 m_a m_c > (m_a + m_b)(m_b + m_c); symmetric in m_a and m_c.
template <Scalar T>
bool case3_mass_condition(const T& m_a, const T& m_b, const T& m_c);

/// ratio < (1 + epsilon)^(1/(n-1)), decided exactly in exact mode.
template <Scalar T>
bool below_delta(const T& ratio, const T& epsilon, unsigned n);

/// Default seed ratio for the case, strictly inside the admissible range.
template <Scalar T>
T default_seed_ratio(CaseTag tag, unsigned n, const T& epsilon);

template <Scalar T>
ConstructionResult<T> build_case1(const ConstructionParams<T>& params);

/// Case 2 draws its U(n) state and mass perturbation from params.seed.
template <Scalar T>
ConstructionResult<T> build_case2(const ConstructionParams<T>& params);

template <Scalar T>
ConstructionResult<T> build_case3(const ConstructionParams<T>& params);

template <Scalar T>
ConstructionResult<T> build_case3_alternating(const ConstructionParams<T>& params);

template <Scalar T>
ConstructionResult<T> build(CaseTag tag, const ConstructionParams<T>& params);

/// Simulates the result at its center; throws Inconsistency if the count (or
/// the expected sequence, when present) is not reproduced.
template <Scalar T>
EventLog<T> verify_construction(const ConstructionResult<T>& result);

/// Largest radius rho / 2^j such that `samples` uniform perturbations of
/// masses, positions and velocities in the sup-norm ball all reproduce the
/// predicted count. rho = 0 only verifies the center.
template <Scalar T>
T certify_open(const ConstructionResult<T>& result, unsigned samples, const T& rho, std::uint64_t seed = 0);

/// Number of events per inductive stage: a stage begins whenever a collision
/// involves a particle outside the contiguous block touched so far.
template <Scalar T>
std::vector<std::size_t> stage_counts(const EventLog<T>& log);

}  // namespace hardline
