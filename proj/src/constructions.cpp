#include "hardline/constructions.hpp"

#include "hardline/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <string>

namespace hardline {

std::string_view to_string(CaseTag tag)
{
    switch (tag) {
    case CaseTag::Case1: return "Case1";
    case CaseTag::Case2: return "Case2";
    case CaseTag::Case3: return "Case3";
    case CaseTag::Case3Alternating: return "Case3Alternating";
    }
    return "?";
}

CaseTag parse_case_tag(std::string_view text)
{
    if (text == "1" || text == "Case1")
        return CaseTag::Case1;
    if (text == "2" || text == "Case2")
        return CaseTag::Case2;
    if (text == "3" || text == "Case3")
        return CaseTag::Case3;
    if (text == "3alt" || text == "Case3Alternating")
        return CaseTag::Case3Alternating;
    throw Error(ErrorKind::Domain, "unknown case '" + std::string(text) + "' (expected 1, 2, 3 or 3alt)");
}

namespace {

[[noreturn]] void construction_error(const std::string& message)
{
    throw Error(ErrorKind::Construction, message);
}

template <Scalar T>
std::string describe(const T& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

template <Scalar T>
T max_of(const T& a, const T& b)
{
    return a < b ? b : a;
}

template <Scalar T>
T sqrt_approx(const T& x)
{
    if constexpr (is_exact_v<T>)
        return Rational::from_double(std::sqrt(x.to_double()));
    else
        return std::sqrt(x);
}

template <Scalar T>
void validate_params(const ConstructionParams<T>& p, unsigned min_n)
{
    if (p.n < min_n)
        throw Error(ErrorKind::Domain, "construction needs n >= " + std::to_string(min_n));
    if (!(p.epsilon > T(0)))
        throw Error(ErrorKind::Domain, "epsilon must be positive");
    if (!(p.theta > T(0) && p.theta < T(1)))
        throw Error(ErrorKind::Domain, "theta must lie in (0, 1)");
    if (!(p.kappa > T(1)))
        throw Error(ErrorKind::Domain, "kappa must exceed 1");
    if (!(p.slack > T(0)))
        throw Error(ErrorKind::Domain, "slack must be positive");
    if (p.initial_radius < T(0))
        throw Error(ErrorKind::Domain, "initial radius must be non-negative");
}

/// Largest position of `particle` over [t0, last event time].
template <Scalar T>
T max_excursion(const EventLog<T>& log, std::size_t particle)
{
    T pos = log.initial.q[particle];
    T vel = log.initial.v[particle];
    T t = log.initial.t0;
    T best = pos;
    for (const auto& e : log.events) {
        pos = pos + vel * (e.time - t);
        t = e.time;
        best = max_of(best, pos);
        if (e.pair == particle)
            vel = e.v_post[0];
        else if (e.pair + 1 == particle)
            vel = e.v_post[1];
    }
    return best;
}

template <Scalar T>
T last_event_time(const EventLog<T>& log)
{
    return log.events.empty() ? log.initial.t0 : log.events.back().time;
}

/// Position for a particle moving with `velocity` that stays strictly right of
/// `excursion` over [0, horizon].
template <Scalar T>
T place_beyond(const T& excursion, const T& horizon, const T& velocity, const T& extent, const T& slack)
{
    const T base = max_of(excursion, excursion - velocity * horizon);
    const T margin = slack * max_of(T(1), extent);
    return pick_interior(base + margin, base + T(2) * margin);
}

/// Rounds down onto a coarse dyadic grid so exact numbers stay short.
template <Scalar T>
T round_down_simple(const T& x)
{
    if constexpr (is_exact_v<T>) {
        const Rational scale(1024);
        return ((x * scale).floor() - Rational(1)) / scale;
    } else {
        return x;
    }
}

template <Scalar T>
bool ratio_representable(const T& ratio, const T& epsilon, unsigned n)
{
    return ratio > T(1) && below_delta(ratio, epsilon, n);
}

template <Scalar T>
std::vector<T> initial_pair_velocities()
{
    return {T(1), T(0)};
}

template <Scalar T>
PhaseState<T> two_particle_state()
{
    return PhaseState<T>{T(0), {T(0), T(1)}, {T(1), T(0)}};
}

template <Scalar T>
MassVector<T> head(const std::vector<T>& m, std::size_t count)
{
    return MassVector<T>(std::vector<T>(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(count)));
}

template <Scalar T>
T resolve_seed_ratio(CaseTag tag, const ConstructionParams<T>& p)
{
    if (!p.seed_ratio)
        return default_seed_ratio(tag, p.n, p.epsilon);
    const T& r = *p.seed_ratio;
    const T upper = T(static_cast<long>(p.n + 1)) / T(static_cast<long>(p.n));
    if (!(r > T(1) && r < upper))
        throw Error(ErrorKind::Domain, "seed ratio must lie in (1, (n+1)/n)");
    return r;
}

/// Ratio for the next Case-3 mass: near the geometric midpoint of
/// (max(f(x), f_{k-2}(r), 1), g_{k-2}(r)), k = resulting particle count.
template <Scalar T>
T case3_next_ratio(const T& outer_ratio, unsigned k, const T& r)
{
    T lo = max_of(f_step(outer_ratio), f_k(r, k - 2));
    lo = max_of(lo, T(1));
    const T hi = g_k(r, k - 2);
    if (!(lo < hi))
        construction_error("no admissible mass ratio: f bound " + describe(lo) + " >= g bound " + describe(hi));
    T target = sqrt_approx(T(lo * hi));
    if (!(target > lo && target < hi))
        target = lo + (hi - lo) / T(2);
    return pick_near(target, lo, hi);
}

template <Scalar T>
std::vector<T> case3_base_suffix_check_masses(const std::vector<T>& m)
{
    return m;
}

/// Adds one particle on the right of a settled Case-3 system so that it
/// triggers a cascade to the left end followed by C(k-1, 2) further collisions.
template <Scalar T>
PhaseState<T> append_case3_particle(const std::vector<T>& masses, const PhaseState<T>& state, const ConstructionParams<T>& p)
{
    const std::size_t k = state.size();  // particles before the append
    const MassVector<T> old_masses = head(masses, k);
    const MassVector<T> new_masses = head(masses, k + 1);
    const auto log = simulate(state, old_masses, SimConfig<T>{});
    if (log.termination != Termination::FreeState)
        construction_error("sub-system did not settle");

    const T horizon = last_event_time(log);
    const T excursion = max_excursion(log, k - 1);
    const auto& settled = log.final_state.v;
    T spread = T(0);
    for (const auto& d : velocity_differences<T>(settled))
        spread = max_of(spread, abs(d));
    if (spread == T(0))
        spread = T(1);

    const std::uint64_t before = binomial(static_cast<unsigned>(k + 1), 3);
    const std::uint64_t target = binomial(static_cast<unsigned>(k + 2), 3);
    T kappa = p.kappa;
    for (unsigned attempt = 0; attempt <= p.max_kappa_doublings; ++attempt, kappa = kappa * T(2)) {
        const T v_new = round_down_simple(T(settled[k - 1] - kappa * spread));
        const T q_new = place_beyond(excursion, horizon, v_new, T(excursion - state.q[0]), p.slack);

        PhaseState<T> candidate = state;
        candidate.q.push_back(q_new);
        candidate.v.push_back(v_new);
        const auto full = simulate(candidate, new_masses, SimConfig<T>{});
        if (full.termination != Termination::FreeState || full.events.size() != target)
            continue;

        // The suffix must open with the new pair, reach particle 0 exactly once,
        // and otherwise stay among particles 1..k.
        const auto& ev = full.events;
        if (ev[before].pair != k - 1)
            continue;
        std::size_t touches_first = 0;
        for (std::size_t e = before; e < ev.size(); ++e)
            if (ev[e].pair == 0)
                ++touches_first;
        if (touches_first != 1)
            continue;
        return candidate;
    }
    construction_error("velocity search exhausted for particle " + std::to_string(k + 1) +
                       " after " + std::to_string(p.max_kappa_doublings) + " doublings of kappa");
}

template <Scalar T>
ConstructionResult<T> finish(CaseTag tag, ConstructionParams<T> params, const T& r, MassVector<T> masses,
                             PhaseState<T> state, std::uint64_t predicted,
                             std::optional<std::vector<std::size_t>> expected)
{
    params.seed_ratio = r;
    ConstructionResult<T> result{tag, params, std::move(masses), std::move(state), predicted, std::move(expected), T(0)};
    verify_construction(result);
    if (params.samples > 0)
        result.certified_radius = certify_open(result, params.samples, params.initial_radius, params.seed);
    return result;
}

/// Uniform draw from {-2^20, ..., 2^20} / 2^20.
template <Scalar T>
T unit_draw(std::mt19937_64& rng)
{
    constexpr std::int64_t scale = std::int64_t{1} << 20;
    std::uniform_int_distribution<std::int64_t> dist(-scale, scale);
    return ratio<T>(dist(rng), scale);
}

template <Scalar T>
bool reproduces(const MassVector<T>& m, const PhaseState<T>& s, std::uint64_t count)
{
    const auto log = simulate(s, m, SimConfig<T>{});
    return log.termination == Termination::FreeState && log.events.size() == count;
}

}  // namespace

template <Scalar T>
Interval<T> case1_velocity_interval(std::span<const T> masses, const T& v_prev, const T& v_prevprev)
{
    if (masses.size() < 3)
        throw Error(ErrorKind::Domain, "case1_velocity_interval needs at least three masses");
    if (!(v_prevprev > v_prev))
        throw Error(ErrorKind::Domain, "case1_velocity_interval needs v_prevprev > v_prev");
    const std::size_t n = masses.size();
    const T& a = masses[n - 3];
    const T& b = masses[n - 2];
    const T& c = masses[n - 1];
    const T two_sum = T(2) * (a + b);
    const T lo = ((T(3) * b - a) / two_sum + b / (T(2) * c)) * v_prev +
                 ((T(3) * a - b) / two_sum - b / (T(2) * c)) * v_prevprev;
    return {lo, v_prev};
}

template <Scalar T>
T case1_position_bound(const PlacementBounds<T>& b)
{
    const T closing = b.v_prevprev_lower - b.v_prev_upper;
    if (closing == T(0))
        throw Error(ErrorKind::Construction, "case1_position_bound: zero closing speed");
    return (b.q_prev_upper - b.q_prevprev_lower) / closing * (b.v_prev_lower - b.v_new_upper) + b.q_prev_lower;
}

template <Scalar T>
bool case1_mass_condition(const T& m_a, const T& m_b, const T& m_c, bool strict)
{
    if (!(T(3) * m_a > m_b))
        return false;
    const T bound = m_b * (m_b + m_a) / (T(3) * m_a - m_b);
    return strict ? m_c < bound : m_c <= bound;
}

template <Scalar T>
bool case3_mass_condition(const T& m_a, const T& m_b, const T& m_c)
{
    return T(4) * m_a * m_c > (m_a + m_b) * (m_b + m_c);
}

template <Scalar T>
bool below_delta(const T& ratio, const T& epsilon, unsigned n)
{
    if (n < 2)
        throw Error(ErrorKind::Domain, "below_delta needs n >= 2");
    if constexpr (is_exact_v<T>) {
        if (ratio.sign() <= 0)
            return true;
        return pow(ratio, n - 1) < Rational(1) + epsilon;
    } else {
        return ratio < std::pow(1.0 + epsilon, 1.0 / static_cast<double>(n - 1));
    }
}

template <Scalar T>
T default_seed_ratio(CaseTag tag, unsigned n, const T& epsilon)
{
    if (n < 2)
        throw Error(ErrorKind::Domain, "default_seed_ratio needs n >= 2");
    const double delta_minus_one = std::expm1(std::log1p(to_double(epsilon)) / static_cast<double>(n - 1));
    double room = std::min(1.0 / static_cast<double>(n), delta_minus_one);
    if (tag == CaseTag::Case3 || tag == CaseTag::Case3Alternating)
        room /= std::ldexp(1.0, static_cast<int>(n >= 2 ? n - 2 : 0));
    if (!(room > 0.0))
        construction_error("epsilon too small to seed a mass ratio");

    T r;
    if constexpr (is_exact_v<T>) {
        r = Rational(1) + simplest_between(Rational::from_double(0.45 * room), Rational::from_double(0.55 * room));
    } else {
        r = 1.0 + 0.5 * room;
        if (!(r > 1.0))
            construction_error("epsilon too small for Float64 mass ratios; use exact mode");
    }
    return r;
}

template <Scalar T>
ConstructionResult<T> build_case1(const ConstructionParams<T>& params)
{
    validate_params(params, 2);
    const unsigned n = params.n;
    const T r = resolve_seed_ratio(CaseTag::Case1, params);
    if (!ratio_representable(r, params.epsilon, n))
        construction_error("seed ratio outside (1, delta); choose a smaller r or use exact mode");

    std::vector<T> m{T(1), r};
    for (std::size_t k = 2; k < n; ++k) {
        const T prev = m[k - 1] / m[k - 2];
        const T next = T(1) + params.theta * (f_step(prev) - T(1));
        if (!ratio_representable(next, params.epsilon, n))
            construction_error("mass ratio not representable strictly inside (1, delta); use exact mode");
        m.push_back(m[k - 1] * next);
        if (!case1_mass_condition(m[k - 2], m[k - 1], m[k]))
            construction_error("Case-1 mass condition lost to rounding; use exact mode");
    }

    PhaseState<T> state = two_particle_state<T>();
    for (std::size_t k = 2; k < n; ++k) {
        const auto log = simulate(state, head(m, k), SimConfig<T>{});
        if (log.termination != Termination::FreeState || log.events.size() != k - 1)
            construction_error("Case-1 sub-system lost its collision sequence");
        const auto& last = log.events.back();
        const T v_prev = state.v[k - 1];
        const T v_prevprev = last.v_pre[0];
        const auto window = case1_velocity_interval<T>(std::span<const T>(m.data(), k + 1), v_prev, v_prevprev);
        if (window.empty())
            construction_error("empty Case-1 velocity interval for particle " + std::to_string(k + 1));
        const T v_new = pick_interior(window.lo, window.hi);
        if (!(v_new > window.lo && v_new < window.hi))
            construction_error("Case-1 velocity interval too narrow for Float64; use exact mode");

        const T excursion = max_excursion(log, k - 1);
        const T q_new = place_beyond(excursion, last.time, v_new, T(excursion - state.q[0]), params.slack);
        state.q.push_back(q_new);
        state.v.push_back(v_new);
    }

    std::vector<std::size_t> expected;
    for (std::size_t p = 0; p + 1 < n; ++p)
        expected.push_back(p);
    return finish(CaseTag::Case1, params, r, MassVector<T>(m), state, n - 1, std::move(expected));
}

template <Scalar T>
ConstructionResult<T> build_case2(const ConstructionParams<T>& params)
{
    validate_params(params, 2);
    const unsigned n = params.n;
    const std::uint64_t target = binomial(n, 2);
    std::mt19937_64 rng(params.seed);
    constexpr std::int64_t grain = std::int64_t{1} << 16;
    std::uniform_int_distribution<std::int64_t> jitter(0, grain - 1);

    // A generic member of U(n): increasing positions, decreasing velocities.
    PhaseState<T> state;
    state.t0 = T(0);
    T q = T(0);
    for (unsigned k = 0; k < n; ++k) {
        state.q.push_back(q);
        q = q + ratio<T>(grain + 2 * jitter(rng), 2 * grain);
    }
    T v = T(0);
    state.v.resize(n);
    for (unsigned k = n; k-- > 0;) {
        state.v[k] = v;
        v = v + ratio<T>(grain + 2 * jitter(rng), 2 * grain);
    }

    const MassVector<T> equal(std::vector<T>(n, T(1)));
    if (!reproduces(equal, state, target))
        construction_error("sampled U(n) state does not give C(n,2) collisions at equal masses");

    const auto probes_pass = [&](const T& radius) {
        for (unsigned k = 0; k < n; ++k) {
            for (int sign : {-1, 1}) {
                std::vector<T> m(n, T(1));
                m[k] = T(1) + T(sign) * radius;
                if (!reproduces(MassVector<T>(m), state, target))
                    return false;
            }
        }
        return true;
    };

    T radius = params.epsilon / T(2);
    constexpr unsigned max_halvings = 48;
    for (unsigned attempt = 0; attempt < max_halvings; ++attempt, radius = radius / T(2)) {
        if (!probes_pass(T(radius * ratio<T>(15, 16))))
            continue;
        std::vector<T> m;
        for (unsigned k = 0; k < n; ++k)
            m.push_back(T(1) + radius / T(2) * unit_draw<T>(rng));
        MassVector<T> masses(m);
        if (!reproduces(masses, state, target))
            continue;
        ConstructionParams<T> resolved = params;
        return finish(CaseTag::Case2, resolved, T(1), std::move(masses), state, target, std::nullopt);
    }
    construction_error("Case-2 probes failed down to mass radius " + describe(radius));
}

template <Scalar T>
ConstructionResult<T> build_case3(const ConstructionParams<T>& params)
{
    validate_params(params, 2);
    const unsigned n = params.n;
    const T r = resolve_seed_ratio(CaseTag::Case3, params);

    std::vector<T> m{T(1), r};
    for (unsigned k = 3; k <= n; ++k) {
        const T next = case3_next_ratio(T(m[k - 2] / m[k - 3]), k, r);
        if (!ratio_representable(next, params.epsilon, n))
            construction_error("Case-3 mass ratio " + describe(next) + " not below delta; use a smaller seed ratio");
        m.push_back(m[k - 2] * next);
        if (!case3_mass_condition(m[k - 3], m[k - 2], m[k - 1]))
            construction_error("Case-3 mass condition lost to rounding; use exact mode");
    }
    if (!ratio_representable(r, params.epsilon, n))
        construction_error("seed ratio not below delta");

    PhaseState<T> state = two_particle_state<T>();
    for (unsigned k = 2; k < n; ++k)
        state = append_case3_particle(m, state, params);

    return finish(CaseTag::Case3, params, r, MassVector<T>(m), state, binomial(n + 1, 3), std::nullopt);
}

template <Scalar T>
ConstructionResult<T> build_case3_alternating(const ConstructionParams<T>& params)
{
    validate_params(params, 3);
    const unsigned n = params.n;
    const T r = resolve_seed_ratio(CaseTag::Case3Alternating, params);

    // Start descending, (r, 1), so the lightest particle sits second from the left.
    std::vector<T> m{r, T(1)};
    PhaseState<T> state = two_particle_state<T>();
    for (unsigned k = 3; k <= n; ++k) {
        const std::size_t last = m.size() - 1;
        const T right = m[last] * case3_next_ratio(T(m[last] / m[last - 1]), k, r);
        const T left = m[0] * case3_next_ratio(T(m[0] / m[1]), k, r);

        const auto spread_with = [&](const T& extra) {
            T lo = extra;
            T hi = extra;
            for (const auto& x : m) {
                lo = x < lo ? x : lo;
                hi = max_of(hi, x);
            }
            return hi - lo;
        };

        if (spread_with(left) < spread_with(right)) {
            std::vector<T> mirrored(m.rbegin(), m.rend());
            mirrored.push_back(left);
            PhaseState<T> grown = append_case3_particle(mirrored, mirror(state), params);
            state = mirror(grown);
            m.insert(m.begin(), left);
        } else {
            std::vector<T> grown_masses = m;
            grown_masses.push_back(right);
            state = append_case3_particle(grown_masses, state, params);
            m = std::move(grown_masses);
        }
    }

    for (const auto& x : m)
        if (!(x > T(1) - params.epsilon && x < T(1) + params.epsilon))
            construction_error("alternating masses left (1 - epsilon, 1 + epsilon)");

    return finish(CaseTag::Case3Alternating, params, r, MassVector<T>(m), state, binomial(n + 1, 3), std::nullopt);
}

template <Scalar T>
ConstructionResult<T> build(CaseTag tag, const ConstructionParams<T>& params)
{
    switch (tag) {
    case CaseTag::Case1: return build_case1(params);
    case CaseTag::Case2: return build_case2(params);
    case CaseTag::Case3: return build_case3(params);
    case CaseTag::Case3Alternating: return build_case3_alternating(params);
    }
    throw Error(ErrorKind::Domain, "unknown case");
}

template <Scalar T>
EventLog<T> verify_construction(const ConstructionResult<T>& result)
{
    auto log = simulate(result.state, result.masses, SimConfig<T>{});
    if (log.termination != Termination::FreeState || log.events.size() != result.predicted_count)
        throw Error(ErrorKind::Inconsistency, "construction yields " + std::to_string(log.events.size()) +
                                                  " collisions (" + std::string(to_string(log.termination)) +
                                                  "), predicted " + std::to_string(result.predicted_count));
    if (result.expected_sequence && log.pair_sequence() != *result.expected_sequence)
        throw Error(ErrorKind::Inconsistency, "construction reproduces the count but not the expected sequence");
    return log;
}

template <Scalar T>
T certify_open(const ConstructionResult<T>& result, unsigned samples, const T& rho, std::uint64_t seed)
{
    verify_construction(result);
    if (rho < T(0))
        throw Error(ErrorKind::Domain, "certify_open needs rho >= 0");
    if (rho == T(0) || samples == 0)
        return T(0);

    const std::size_t n = result.n();
    const T& eps = result.params.epsilon;
    const T mass_lo = T(1) - eps + eps / T(1 << 20);
    const T mass_hi = T(1) + eps - eps / T(1 << 20);

    constexpr unsigned max_halvings = 80;
    T radius = rho;
    for (unsigned level = 0; level < max_halvings; ++level, radius = radius / T(2)) {
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * (level + 1)));
        bool all_pass = true;
        for (unsigned s = 0; s < samples && all_pass; ++s) {
            std::vector<T> m;
            for (std::size_t k = 0; k < n; ++k) {
                T x = result.masses[k] + radius * unit_draw<T>(rng);
                x = x < mass_lo ? mass_lo : x;
                x = x > mass_hi ? mass_hi : x;
                m.push_back(x);
            }
            PhaseState<T> s_state = result.state;
            for (auto& q : s_state.q)
                q = q + radius * unit_draw<T>(rng);
            for (auto& v : s_state.v)
                v = v + radius * unit_draw<T>(rng);
            bool ordered = true;
            for (std::size_t k = 0; k + 1 < n; ++k)
                ordered = ordered && s_state.q[k] < s_state.q[k + 1];
            if (!ordered || !(m[0] > T(0))) {
                all_pass = false;
                break;
            }
            all_pass = reproduces(MassVector<T>(m), s_state, result.predicted_count);
        }
        if (all_pass)
            return radius;
    }
    construction_error("no certified radius found above " + describe(radius));
}

template <Scalar T>
std::vector<std::size_t> stage_counts(const EventLog<T>& log)
{
    std::vector<std::size_t> counts;
    std::size_t lo = 0;
    std::size_t hi = 0;
    for (const auto& e : log.events) {
        const std::size_t a = e.pair;
        const std::size_t b = e.pair + 1;
        if (counts.empty()) {
            lo = a;
            hi = b;
            counts.push_back(1);
            continue;
        }
        if (a >= lo && b <= hi) {
            ++counts.back();
            continue;
        }
        lo = std::min(lo, a);
        hi = std::max(hi, b);
        counts.push_back(1);
    }
    return counts;
}

#define HARDLINE_INSTANTIATE(T)                                                                         \
    template Interval<T> case1_velocity_interval<T>(std::span<const T>, const T&, const T&);            \
    template T case1_position_bound<T>(const PlacementBounds<T>&);                                      \
    template bool case1_mass_condition<T>(const T&, const T&, const T&, bool);                          \
    template bool case3_mass_condition<T>(const T&, const T&, const T&);                                \
    template bool below_delta<T>(const T&, const T&, unsigned);                                         \
    template T default_seed_ratio<T>(CaseTag, unsigned, const T&);                                      \
    template ConstructionResult<T> build_case1<T>(const ConstructionParams<T>&);                        \
    template ConstructionResult<T> build_case2<T>(const ConstructionParams<T>&);                        \
    template ConstructionResult<T> build_case3<T>(const ConstructionParams<T>&);                        \
    template ConstructionResult<T> build_case3_alternating<T>(const ConstructionParams<T>&);            \
    template ConstructionResult<T> build<T>(CaseTag, const ConstructionParams<T>&);                     \
    template EventLog<T> verify_construction<T>(const ConstructionResult<T>&);                          \
    template T certify_open<T>(const ConstructionResult<T>&, unsigned, const T&, std::uint64_t);        \
    template std::vector<std::size_t> stage_counts<T>(const EventLog<T>&);

HARDLINE_INSTANTIATE(Rational)
HARDLINE_INSTANTIATE(double)

#undef HARDLINE_INSTANTIATE

}  // namespace hardline
