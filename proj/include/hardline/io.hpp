#pragma once

// JSON and CSV forms of logs, constructions, audits and sweeps.
//
// Exact values are written as "p/q" strings and Float64 values as JSON
// numbers; readers infer the mode from the type of the first mass. Pair and
// particle numbers are 1-based in every external format.

#include "hardline/constructions.hpp"
#include "hardline/dynamics.hpp"
#include "hardline/massmap.hpp"
#include "hardline/oracle.hpp"

#include "json.hpp"

#include <optional>
#include <string>

namespace hardline {

using json = nlohmann::ordered_json;

template <Scalar T>
json encode_scalar(const T& x);

/// Strings are parsed as rationals (or decimals), numbers are taken as is.
template <Scalar T>
T decode_scalar(const json& j, const std::string& field);

/// Mode of a document with a "masses" array: strings mean exact.
ArithmeticMode detect_mode(const json& doc);

template <Scalar T>
json encode(const PhaseState<T>& state);
/// Positions must increase strictly, or weakly when `strict` is false (final
/// states sit at a contact).
template <Scalar T>
PhaseState<T> decode_state(const json& j, const std::string& field, bool strict = true);

template <Scalar T>
MassVector<T> decode_masses(const json& j, const std::string& field);

template <Scalar T>
json encode(const EventLog<T>& log);
template <Scalar T>
EventLog<T> decode_event_log(const json& j);

template <Scalar T>
json encode(const ConstructionResult<T>& result);
template <Scalar T>
ConstructionResult<T> decode_construction(const json& j);

json encode(const AuditReport& report);
AuditReport decode_audit_report(const json& j);

json encode(const SweepSpec& spec);
SweepSpec decode_sweep_spec(const json& j);

/// Summary document: histogram, class totals and the diagonal cell.
json sweep_summary(const SweepResult& result);
/// Columns axis1_ratio, axis2_ratio, count, class; one row per cell, row-major.
std::string sweep_csv(const SweepResult& result);

/// Polyline vertices of every particle: start, each collision it takes part
/// in, and the horizon (default: t0 + 1.25 * (last event time - t0)).
/// Columns particle_index, t, q.
template <Scalar T>
std::string space_time_csv(const EventLog<T>& log, std::optional<T> horizon = std::nullopt);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

json parse_document(const std::string& text, const std::string& source);
std::string dump_document(const json& doc);

std::string read_file(const std::string& path);
/// Writes to a temporary file next to `path`, then renames it into place.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace hardline
