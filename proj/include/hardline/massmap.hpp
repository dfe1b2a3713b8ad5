#pragma once

// Two-axis sweeps of adjacent mass ratios around the equal-mass diagonal.
//
// Ratio coordinate j is m_{j+2} / m_{j+1} (0-based j). A cell fixes the two
// swept ratios, keeps the others at the family's baseline, builds the masses
// by cumulative product from m_1 = 1 and rescales them so min + max = 2.

#include "hardline/dynamics.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace hardline {

enum class CountClass { UnderQuadratic, Quadratic, OverQuadratic, Unclassified };

std::string_view to_string(CountClass cls);
CountClass parse_count_class(std::string_view text);

struct Classification {
    std::size_t count = 0;
    CountClass cls = CountClass::Unclassified;
    Termination termination = Termination::FreeState;

    friend bool operator==(const Classification&, const Classification&) = default;
};

/// Count relative to C(n,2); anything but a free final state is Unclassified.
template <Scalar T>
Classification classify(const MassVector<T>& masses, const PhaseState<T>& state, const SimConfig<T>& config);

enum class StateFamily { Fixed, Case1, Case3 };

std::string_view to_string(StateFamily family);
StateFamily parse_state_family(std::string_view text);

struct SweepSpec {
    unsigned n = 3;
    Rational epsilon = Rational(2, 5);
    std::array<std::size_t, 2> axes{0, 1};
    unsigned grid = 41;
    StateFamily family = StateFamily::Fixed;
    std::optional<PhaseState<Rational>> fixed_state;  // required for Fixed
    ArithmeticMode mode = ArithmeticMode::ExactRational;
    double tie_tolerance = 0.0;  // Float64 only
    std::size_t max_events = 0;
    TriplePolicy triple_policy = TriplePolicy::Error;
    unsigned threads = 0;  // 0: hardware concurrency

    friend bool operator==(const SweepSpec&, const SweepSpec&) = default;
};

/// Throws Error(Domain) naming the first invalid field.
void validate(const SweepSpec& spec);

/// The i-th of `grid` equally spaced interior points of (1 - eps, 1 + eps).
Rational grid_value(const Rational& epsilon, unsigned grid, unsigned i);

/// Resolution whose points include every point of `grid`.
unsigned refined_grid(unsigned grid);

struct SweepCell {
    unsigned i = 0;  // axis-1 index
    unsigned j = 0;  // axis-2 index
    Rational axis1_ratio;
    Rational axis2_ratio;
    std::vector<Rational> masses;
    bool in_band = true;  // every mass in (1 - eps, 1 + eps)
    Classification result;

    friend bool operator==(const SweepCell&, const SweepCell&) = default;
};

struct SweepResult {
    SweepSpec spec;
    PhaseState<Rational> state;  // the state every cell starts from
    std::vector<Rational> baseline_ratios;
    std::vector<SweepCell> cells;  // row-major: index i * grid + j
    std::map<std::size_t, std::size_t> histogram;  // count -> cells (classified cells only)
    std::map<CountClass, std::size_t> class_totals;
    std::size_t out_of_band = 0;

    const SweepCell& at(unsigned i, unsigned j) const { return cells.at(static_cast<std::size_t>(i) * spec.grid + j); }
    /// Cell at ratio 1 on both axes, present when the grid is odd.
    std::optional<SweepCell> diagonal() const;
};

/// Masses for the given full ratio vector, scaled so min + max = 2.
std::vector<Rational> masses_from_ratios(const std::vector<Rational>& ratios);

SweepResult sweep(const SweepSpec& spec);

}  // namespace hardline
