#include "hardline/io.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace hardline {

namespace {

[[noreturn]] void schema_error(const std::string& field, const std::string& why)
{
    throw Error(ErrorKind::Schema, (field.empty() ? std::string("document") : field) + ": " + why, field);
}

std::string child(const std::string& path, const std::string& key)
{
    return path.empty() ? key : path + "." + key;
}

std::string element(const std::string& path, std::size_t k)
{
    return path + "[" + std::to_string(k) + "]";
}

const json& member(const json& j, const std::string& key, const std::string& path)
{
    if (!j.is_object())
        schema_error(path, "expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        schema_error(child(path, key), "missing field");
    return *it;
}

const json* optional_member(const json& j, const std::string& key)
{
    const auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

const json& array_member(const json& j, const std::string& key, const std::string& path)
{
    const json& a = member(j, key, path);
    if (!a.is_array())
        schema_error(child(path, key), "expected an array");
    return a;
}

std::uint64_t decode_unsigned(const json& j, const std::string& field)
{
    if (j.is_number_unsigned())
        return j.get<std::uint64_t>();
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    schema_error(field, "expected a non-negative integer");
}

std::string decode_string(const json& j, const std::string& field)
{
    if (!j.is_string())
        schema_error(field, "expected a string");
    return j.get<std::string>();
}

template <class F>
auto rethrow_as_schema(const std::string& field, F&& f) -> decltype(f())
{
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Schema)
            throw;
        schema_error(field, e.what());
    }
}

template <Scalar T>
std::vector<T> decode_vector(const json& j, const std::string& field)
{
    if (!j.is_array())
        schema_error(field, "expected an array");
    std::vector<T> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(decode_scalar<T>(j[k], element(field, k)));
    return out;
}

template <Scalar T>
json encode_vector(const std::vector<T>& xs)
{
    json out = json::array();
    for (const auto& x : xs)
        out.push_back(encode_scalar(x));
    return out;
}

template <Scalar T>
json encode_pair(const std::array<T, 2>& xs)
{
    return json::array({encode_scalar(xs[0]), encode_scalar(xs[1])});
}

template <Scalar T>
std::array<T, 2> decode_pair(const json& j, const std::string& field)
{
    if (!j.is_array() || j.size() != 2)
        schema_error(field, "expected an array of two values");
    return {decode_scalar<T>(j[0], element(field, 0)), decode_scalar<T>(j[1], element(field, 1))};
}

json encode_sequence(const std::vector<std::size_t>& pairs)
{
    json out = json::array();
    for (std::size_t p : pairs)
        out.push_back(p + 1);
    return out;
}

std::vector<std::size_t> decode_sequence(const json& j, const std::string& field, std::size_t n)
{
    if (!j.is_array())
        schema_error(field, "expected an array");
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        const auto p = decode_unsigned(j[k], element(field, k));
        if (p < 1 || p + 1 > n)
            schema_error(element(field, k), "pair index out of range 1.." + std::to_string(n - 1));
        out.push_back(static_cast<std::size_t>(p - 1));
    }
    return out;
}

}  // namespace

template <Scalar T>
json encode_scalar(const T& x)
{
    if constexpr (is_exact_v<T>)
        return x.str();
    else
        return x;
}

template <Scalar T>
T decode_scalar(const json& j, const std::string& field)
{
    if (j.is_string()) {
        const auto text = j.get<std::string>();
        const Rational r = rethrow_as_schema(field, [&] { return Rational::parse(text); });
        if constexpr (is_exact_v<T>)
            return r;
        else
            return r.to_double();
    }
    if (j.is_number_integer() || j.is_number_unsigned()) {
        if constexpr (is_exact_v<T>) {
            if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
                return Rational::parse(j.dump());
            return Rational(j.get<std::int64_t>());
        } else {
            return j.get<double>();
        }
    }
    if (j.is_number_float()) {
        if constexpr (is_exact_v<T>)
            return rethrow_as_schema(field, [&] { return Rational::from_decimal_double(j.get<double>()); });
        else
            return j.get<double>();
    }
    schema_error(field, "expected a number or a \"p/q\" string");
}

ArithmeticMode detect_mode(const json& doc)
{
    const json& masses = array_member(doc, "masses", "");
    if (masses.empty())
        schema_error("masses", "expected at least two masses");
    if (masses[0].is_string())
        return ArithmeticMode::ExactRational;
    if (masses[0].is_number())
        return ArithmeticMode::Float64;
    schema_error("masses[0]", "expected a number or a \"p/q\" string");
}

template <Scalar T>
json encode(const PhaseState<T>& state)
{
    json out = json::object();
    out["t0"] = encode_scalar(state.t0);
    out["q"] = encode_vector(state.q);
    out["v"] = encode_vector(state.v);
    return out;
}

template <Scalar T>
PhaseState<T> decode_state(const json& j, const std::string& field, bool strict)
{
    PhaseState<T> s;
    const json* t0 = j.is_object() ? optional_member(j, "t0") : nullptr;
    s.t0 = t0 ? decode_scalar<T>(*t0, child(field, "t0")) : T(0);
    s.q = decode_vector<T>(array_member(j, "q", field), child(field, "q"));
    s.v = decode_vector<T>(array_member(j, "v", field), child(field, "v"));
    if (s.q.size() != s.v.size())
        schema_error(child(field, "v"), "length differs from q");
    // Float64 contacts can be out of order by round-off, so only exact final states are checked.
    const bool check = strict || is_exact_v<T>;
    for (std::size_t k = 0; check && k + 1 < s.q.size(); ++k)
        if (strict ? !(s.q[k] < s.q[k + 1]) : s.q[k + 1] < s.q[k])
            schema_error(element(child(field, "q"), k + 1), strict ? "positions must be strictly increasing" : "positions must be non-decreasing");
    return s;
}

template <Scalar T>
MassVector<T> decode_masses(const json& j, const std::string& field)
{
    auto values = decode_vector<T>(j, field);
    if (values.size() < 2)
        schema_error(field, "expected at least two masses");
    for (std::size_t k = 0; k < values.size(); ++k)
        if (!(values[k] > T(0)))
            schema_error(element(field, k), "masses must be positive");
    return MassVector<T>(std::move(values));
}

template <Scalar T>
json encode(const EventLog<T>& log)
{
    json out = json::object();
    out["n"] = log.n();
    out["masses"] = encode_vector(std::vector<T>(log.masses.begin(), log.masses.end()));
    out["initial"] = encode(log.initial);
    json events = json::array();
    for (const auto& e : log.events) {
        json ev = json::object();
        ev["t"] = encode_scalar(e.time);
        ev["pair"] = e.pair + 1;
        ev["v_pre"] = encode_pair(e.v_pre);
        ev["v_post"] = encode_pair(e.v_post);
        events.push_back(std::move(ev));
    }
    out["events"] = std::move(events);
    out["final"] = encode(log.final_state);
    out["termination"] = std::string(to_string(log.termination));
    return out;
}

template <Scalar T>
EventLog<T> decode_event_log(const json& j)
{
    auto masses = decode_masses<T>(member(j, "masses", ""), "masses");
    const auto n = decode_unsigned(member(j, "n", ""), "n");
    if (n != masses.size())
        schema_error("n", "does not match the number of masses");
    EventLog<T> log{masses, decode_state<T>(member(j, "initial", ""), "initial"), {}, {}, Termination::FreeState};
    log.final_state = decode_state<T>(member(j, "final", ""), "final", false);
    if (log.initial.size() != n)
        schema_error("initial.q", "expected " + std::to_string(n) + " particles");
    if (log.final_state.size() != n)
        schema_error("final.q", "expected " + std::to_string(n) + " particles");

    const json& events = array_member(j, "events", "");
    for (std::size_t k = 0; k < events.size(); ++k) {
        const std::string path = element("events", k);
        CollisionEvent<T> e;
        e.time = decode_scalar<T>(member(events[k], "t", path), child(path, "t"));
        const auto pair = decode_unsigned(member(events[k], "pair", path), child(path, "pair"));
        if (pair < 1 || pair + 1 > n)
            schema_error(child(path, "pair"), "pair index out of range 1.." + std::to_string(n - 1));
        e.pair = static_cast<std::size_t>(pair - 1);
        e.v_pre = decode_pair<T>(member(events[k], "v_pre", path), child(path, "v_pre"));
        e.v_post = decode_pair<T>(member(events[k], "v_post", path), child(path, "v_post"));
        e.ordinal = k + 1;
        if (!log.events.empty() && e.time < log.events.back().time)
            schema_error(child(path, "t"), "event times must be non-decreasing");
        log.events.push_back(std::move(e));
    }
    const auto termination = decode_string(member(j, "termination", ""), "termination");
    log.termination = rethrow_as_schema("termination", [&] { return parse_termination(termination); });
    return log;
}

template <Scalar T>
json encode(const ConstructionResult<T>& result)
{
    const auto& p = result.params;
    json out = json::object();
    out["case_tag"] = std::string(to_string(result.case_tag));
    out["n"] = result.n();
    out["epsilon"] = encode_scalar(p.epsilon);
    json params = json::object();
    params["r"] = p.seed_ratio ? encode_scalar(*p.seed_ratio) : json(nullptr);
    params["theta"] = encode_scalar(p.theta);
    params["kappa"] = encode_scalar(p.kappa);
    params["seed"] = p.seed;
    params["slack"] = encode_scalar(p.slack);
    params["samples"] = p.samples;
    params["initial_radius"] = encode_scalar(p.initial_radius);
    params["max_kappa_doublings"] = p.max_kappa_doublings;
    out["params"] = std::move(params);
    out["masses"] = encode_vector(std::vector<T>(result.masses.begin(), result.masses.end()));
    out["state"] = encode(result.state);
    out["predicted_count"] = result.predicted_count;
    if (result.expected_sequence)
        out["expected_sequence"] = encode_sequence(*result.expected_sequence);
    out["certified_radius"] = encode_scalar(result.certified_radius);
    return out;
}

template <Scalar T>
ConstructionResult<T> decode_construction(const json& j)
{
    const auto tag_text = decode_string(member(j, "case_tag", ""), "case_tag");
    const CaseTag tag = rethrow_as_schema("case_tag", [&] { return parse_case_tag(tag_text); });
    auto masses = decode_masses<T>(member(j, "masses", ""), "masses");
    const auto n = decode_unsigned(member(j, "n", ""), "n");
    if (n != masses.size())
        schema_error("n", "does not match the number of masses");

    ConstructionParams<T> p;
    p.n = static_cast<unsigned>(n);
    p.epsilon = decode_scalar<T>(member(j, "epsilon", ""), "epsilon");
    if (const json* params = optional_member(j, "params")) {
        if (!params->is_object())
            schema_error("params", "expected an object");
        if (const json* x = optional_member(*params, "r"))
            p.seed_ratio = decode_scalar<T>(*x, "params.r");
        if (const json* x = optional_member(*params, "theta"))
            p.theta = decode_scalar<T>(*x, "params.theta");
        if (const json* x = optional_member(*params, "kappa"))
            p.kappa = decode_scalar<T>(*x, "params.kappa");
        if (const json* x = optional_member(*params, "seed"))
            p.seed = decode_unsigned(*x, "params.seed");
        if (const json* x = optional_member(*params, "slack"))
            p.slack = decode_scalar<T>(*x, "params.slack");
        if (const json* x = optional_member(*params, "samples"))
            p.samples = static_cast<unsigned>(decode_unsigned(*x, "params.samples"));
        if (const json* x = optional_member(*params, "initial_radius"))
            p.initial_radius = decode_scalar<T>(*x, "params.initial_radius");
        if (const json* x = optional_member(*params, "max_kappa_doublings"))
            p.max_kappa_doublings = static_cast<unsigned>(decode_unsigned(*x, "params.max_kappa_doublings"));
    }

    ConstructionResult<T> result{tag, p, std::move(masses), decode_state<T>(member(j, "state", ""), "state"),
                                 decode_unsigned(member(j, "predicted_count", ""), "predicted_count"),
                                 std::nullopt, T(0)};
    if (result.state.size() != n)
        schema_error("state.q", "expected " + std::to_string(n) + " particles");
    if (const json* seq = optional_member(j, "expected_sequence"))
        result.expected_sequence = decode_sequence(*seq, "expected_sequence", n);
    if (const json* radius = optional_member(j, "certified_radius"))
        result.certified_radius = decode_scalar<T>(*radius, "certified_radius");
    return result;
}

json encode(const AuditReport& report)
{
    json out = json::object();
    out["momentum_drift"] = report.momentum_drift;
    out["energy_drift"] = report.energy_drift;
    out["count_match"] = report.count_match;
    out["sequence_match"] = report.sequence_match;
    out["first_divergence"] = report.first_divergence ? json(*report.first_divergence) : json(nullptr);
    return out;
}

AuditReport decode_audit_report(const json& j)
{
    const auto boolean = [&](const char* key) {
        const json& b = member(j, key, "");
        if (!b.is_boolean())
            schema_error(key, "expected true or false");
        return b.get<bool>();
    };
    const auto number = [&](const char* key) {
        const json& x = member(j, key, "");
        if (!x.is_number())
            schema_error(key, "expected a number");
        return x.get<double>();
    };
    AuditReport r;
    r.momentum_drift = number("momentum_drift");
    r.energy_drift = number("energy_drift");
    r.count_match = boolean("count_match");
    r.sequence_match = boolean("sequence_match");
    if (const json* d = optional_member(j, "first_divergence"))
        r.first_divergence = static_cast<std::size_t>(decode_unsigned(*d, "first_divergence"));
    return r;
}

json encode(const SweepSpec& spec)
{
    json out = json::object();
    out["n"] = spec.n;
    out["epsilon"] = spec.epsilon.str();
    out["axes"] = json::array({spec.axes[0] + 1, spec.axes[1] + 1});
    out["grid"] = spec.grid;
    out["state_family"] = std::string(to_string(spec.family));
    if (spec.fixed_state)
        out["state"] = encode(*spec.fixed_state);
    json config = json::object();
    config["mode"] = std::string(to_string(spec.mode));
    config["tie_tolerance"] = spec.tie_tolerance;
    config["max_events"] = spec.max_events;
    config["triple_policy"] = std::string(to_string(spec.triple_policy));
    out["config"] = std::move(config);
    out["threads"] = spec.threads;
    return out;
}

SweepSpec decode_sweep_spec(const json& j)
{
    SweepSpec spec;
    spec.n = static_cast<unsigned>(decode_unsigned(member(j, "n", ""), "n"));
    spec.epsilon = decode_scalar<Rational>(member(j, "epsilon", ""), "epsilon");
    if (const json* axes = optional_member(j, "axes")) {
        if (!axes->is_array() || axes->size() != 2)
            schema_error("axes", "expected two ratio indices");
        for (std::size_t k = 0; k < 2; ++k) {
            const auto a = decode_unsigned((*axes)[k], element("axes", k));
            if (a < 1)
                schema_error(element("axes", k), "ratio indices are 1-based");
            spec.axes[k] = static_cast<std::size_t>(a - 1);
        }
    } else if (spec.n == 2) {
        spec.axes = {0, 0};
    }
    if (const json* grid = optional_member(j, "grid"))
        spec.grid = static_cast<unsigned>(decode_unsigned(*grid, "grid"));
    if (const json* family = optional_member(j, "state_family")) {
        const auto text = decode_string(*family, "state_family");
        spec.family = rethrow_as_schema("state_family", [&] { return parse_state_family(text); });
    }
    if (const json* state = optional_member(j, "state"))
        spec.fixed_state = decode_state<Rational>(*state, "state");
    if (const json* config = optional_member(j, "config")) {
        if (!config->is_object())
            schema_error("config", "expected an object");
        if (const json* mode = optional_member(*config, "mode")) {
            const auto text = decode_string(*mode, "config.mode");
            spec.mode = rethrow_as_schema("config.mode", [&] { return parse_arithmetic_mode(text); });
        }
        if (const json* tol = optional_member(*config, "tie_tolerance")) {
            if (!tol->is_number())
                schema_error("config.tie_tolerance", "expected a number");
            spec.tie_tolerance = tol->get<double>();
        } else if (spec.mode == ArithmeticMode::Float64) {
            spec.tie_tolerance = default_tie_tolerance<double>();
        }
        if (const json* cap = optional_member(*config, "max_events"))
            spec.max_events = static_cast<std::size_t>(decode_unsigned(*cap, "config.max_events"));
        if (const json* policy = optional_member(*config, "triple_policy")) {
            const auto text = decode_string(*policy, "config.triple_policy");
            spec.triple_policy = rethrow_as_schema("config.triple_policy", [&] { return parse_triple_policy(text); });
        }
    }
    if (const json* threads = optional_member(j, "threads"))
        spec.threads = static_cast<unsigned>(decode_unsigned(*threads, "threads"));
    try {
        validate(spec);
    } catch (const Error& e) {
        schema_error(e.field().empty() ? std::string("state") : e.field(), e.what());
    }
    return spec;
}

json sweep_summary(const SweepResult& result)
{
    const auto& spec = result.spec;
    json out = json::object();
    out["n"] = spec.n;
    out["epsilon"] = spec.epsilon.str();
    out["axes"] = json::array({spec.axes[0] + 1, spec.axes[1] + 1});
    out["grid"] = spec.grid;
    out["state_family"] = std::string(to_string(spec.family));
    out["mode"] = std::string(to_string(spec.mode));
    out["state"] = encode(result.state);
    out["baseline_ratios"] = encode_vector(result.baseline_ratios);
    out["cells"] = result.cells.size();
    json histogram = json::object();
    for (const auto& [count, cells] : result.histogram)
        histogram[std::to_string(count)] = cells;
    out["histogram"] = std::move(histogram);
    json classes = json::object();
    for (auto cls : {CountClass::UnderQuadratic, CountClass::Quadratic, CountClass::OverQuadratic, CountClass::Unclassified}) {
        const auto it = result.class_totals.find(cls);
        classes[std::string(to_string(cls))] = it == result.class_totals.end() ? 0 : it->second;
    }
    out["classes"] = std::move(classes);
    out["out_of_band"] = result.out_of_band;
    if (const auto d = result.diagonal()) {
        json cell = json::object();
        cell["axis1_ratio"] = d->axis1_ratio.str();
        cell["axis2_ratio"] = d->axis2_ratio.str();
        cell["count"] = d->result.count;
        cell["class"] = std::string(to_string(d->result.cls));
        cell["termination"] = std::string(to_string(d->result.termination));
        out["diagonal"] = std::move(cell);
    } else {
        out["diagonal"] = nullptr;
    }
    return out;
}

std::string sweep_csv(const SweepResult& result)
{
    std::string out = "axis1_ratio,axis2_ratio,count,class\n";
    for (const auto& cell : result.cells) {
        out += format_double(cell.axis1_ratio.to_double());
        out += ',';
        out += format_double(cell.axis2_ratio.to_double());
        out += ',';
        out += std::to_string(cell.result.count);
        out += ',';
        out += to_string(cell.result.cls);
        out += '\n';
    }
    return out;
}

template <Scalar T>
std::string space_time_csv(const EventLog<T>& log, std::optional<T> horizon)
{
    const T& t0 = log.initial.t0;
    const T last = log.events.empty() ? t0 : log.events.back().time;
    const T end = horizon ? *horizon : (log.events.empty() ? T(t0 + T(1)) : T(t0 + (last - t0) * ratio<T>(5, 4)));
    if (end < last)
        throw Error(ErrorKind::Domain, "plot horizon lies before the last collision");

    const std::size_t n = log.n();
    std::vector<std::vector<std::pair<T, T>>> vertices(n);
    std::vector<T> pos = log.initial.q;
    std::vector<T> vel = log.initial.v;
    std::vector<T> since(n, t0);
    for (std::size_t k = 0; k < n; ++k)
        vertices[k].emplace_back(t0, pos[k]);
    for (const auto& e : log.events) {
        for (std::size_t side = 0; side < 2; ++side) {
            const std::size_t k = e.pair + side;
            pos[k] = pos[k] + vel[k] * (e.time - since[k]);
            since[k] = e.time;
            vertices[k].emplace_back(e.time, pos[k]);
            vel[k] = e.v_post[side];
        }
    }

    std::string out = "particle_index,t,q\n";
    for (std::size_t k = 0; k < n; ++k) {
        vertices[k].emplace_back(end, pos[k] + vel[k] * (end - since[k]));
        for (const auto& [t, q] : vertices[k]) {
            out += std::to_string(k + 1);
            out += ',';
            out += format_double(to_double(t));
            out += ',';
            out += format_double(to_double(q));
            out += '\n';
        }
    }
    return out;
}

std::string format_double(double x)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc{})
        throw Error(ErrorKind::Internal, "double formatting failed");
    return std::string(buf, end);
}

json parse_document(const std::string& text, const std::string& source)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Schema, source + ": invalid JSON: " + e.what());
    }
}

std::string dump_document(const json& doc)
{
    return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorKind::Io, "cannot open '" + tmp.string() + "' for writing");
        out << content;
        out.flush();
        if (!out)
            throw Error(ErrorKind::Io, "failed writing '" + tmp.string() + "'");
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(ErrorKind::Io, "cannot move output into place at '" + path + "'");
    }
}

#define HARDLINE_INSTANTIATE(T)                                                             \
    template json encode_scalar<T>(const T&);                                               \
    template T decode_scalar<T>(const json&, const std::string&);                           \
    template json encode<T>(const PhaseState<T>&);                                          \
    template PhaseState<T> decode_state<T>(const json&, const std::string&, bool);                \
    template MassVector<T> decode_masses<T>(const json&, const std::string&);               \
    template json encode<T>(const EventLog<T>&);                                            \
    template EventLog<T> decode_event_log<T>(const json&);                                  \
    template json encode<T>(const ConstructionResult<T>&);                                  \
    template ConstructionResult<T> decode_construction<T>(const json&);                     \
    template std::string space_time_csv<T>(const EventLog<T>&, std::optional<T>);

HARDLINE_INSTANTIATE(Rational)
HARDLINE_INSTANTIATE(double)

#undef HARDLINE_INSTANTIATE

}  // namespace hardline
