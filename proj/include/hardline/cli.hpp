#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace hardline::cli {

/// Parsed command line. Numeric overrides stay as text so exact mode can read
/// "0.1" as 1/10 rather than the nearest double.
struct Invocation {
    std::string subcommand;  // simulate | construct | certify | sweep | plot-data
    std::string in;
    std::string out;
    std::optional<std::string> case_tag;
    std::optional<unsigned> n;
    std::optional<std::string> epsilon;
    std::uint64_t seed = 0;
    std::optional<std::string> mode;
    std::optional<double> tie_tol;
    std::optional<std::size_t> max_events;
    std::optional<std::string> triple_policy;
    std::optional<unsigned> grid;
    std::optional<std::string> axes;  // "1,2"
    std::optional<std::string> family;
    std::optional<unsigned> threads;
    std::optional<unsigned> samples;
    std::optional<std::string> rho;
    std::optional<std::string> horizon;
    std::optional<std::string> theta;
    std::optional<std::string> kappa;
    std::optional<std::string> r;
};

/// Exit codes: 0 success, 1 module error, 2 usage error, 3 the simulation
/// ended without reaching a free state (log still written).
int run(const Invocation& invocation, std::ostream& out, std::ostream& err);

/// Parses argv and runs; usage errors are printed by the parser.
int main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hardline::cli
