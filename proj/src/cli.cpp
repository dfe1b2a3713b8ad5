#include "hardline/cli.hpp"

#include "hardline/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <sstream>

namespace hardline::cli {

namespace {

ArithmeticMode resolve_mode(const Invocation& inv, const json* doc)
{
    if (inv.mode)
        return parse_arithmetic_mode(*inv.mode);
    if (const char* env = std::getenv("HARDLINE_MODE"); env && *env)
        return parse_arithmetic_mode(env);
    if (doc && doc->is_object() && doc->contains("masses"))
        return detect_mode(*doc);
    return ArithmeticMode::ExactRational;
}

template <Scalar T>
T parse_value(const std::string& text, const std::string& flag)
{
    try {
        return scalar_cast<T>(Rational::parse(text));
    } catch (const Error& e) {
        throw Error(ErrorKind::Domain, "--" + flag + ": " + e.what(), flag);
    }
}

json load(const Invocation& inv)
{
    if (inv.in.empty())
        throw Error(ErrorKind::Domain, inv.subcommand + " needs --in", "in");
    return parse_document(read_file(inv.in), inv.in);
}

void emit(const Invocation& inv, const std::string& content, std::ostream& out)
{
    if (inv.out.empty())
        out << content;
    else
        write_file_atomic(inv.out, content);
}

std::string error_document(ErrorKind kind, const std::string& message, const std::string& field)
{
    json doc = json::object();
    doc["error"] = std::string(to_string(kind));
    doc["message"] = message;
    doc["field"] = field.empty() ? json(nullptr) : json(field);
    return doc.dump() + "\n";
}

template <Scalar T>
SimConfig<T> sim_config(const Invocation& inv)
{
    SimConfig<T> config;
    if (inv.tie_tol)
        config.tie_tolerance = scalar_cast<T>(*inv.tie_tol);
    if (inv.max_events)
        config.max_events = *inv.max_events;
    if (inv.triple_policy)
        config.triple_policy = parse_triple_policy(*inv.triple_policy);
    return config;
}

template <Scalar T>
int simulate_command(const Invocation& inv, const json& doc, std::ostream& out, std::ostream& err)
{
    const auto masses = decode_masses<T>(doc.contains("masses") ? doc["masses"] : json(), "masses");
    const char* key = doc.contains("state") ? "state" : "initial";
    if (!doc.contains(key))
        throw Error(ErrorKind::Schema, "state: missing field", "state");
    const auto state = decode_state<T>(doc[key], key);
    if (state.size() != masses.size())
        throw Error(ErrorKind::Schema, std::string(key) + ".q: expected one position per mass", std::string(key) + ".q");

    const auto log = simulate(state, masses, sim_config<T>(inv));
    emit(inv, dump_document(encode(log)), out);
    if (log.termination != Termination::FreeState) {
        json doc_err = json::object();
        doc_err["error"] = std::string(to_string(log.termination));
        doc_err["message"] = "simulation stopped after " + std::to_string(log.events.size()) + " events";
        doc_err["field"] = nullptr;
        err << doc_err.dump() << "\n";
        return 3;
    }
    return 0;
}

template <Scalar T>
int construct_command(const Invocation& inv, std::ostream& out)
{
    if (!inv.case_tag)
        throw Error(ErrorKind::Domain, "construct needs --case", "case");
    if (!inv.n)
        throw Error(ErrorKind::Domain, "construct needs --n", "n");
    ConstructionParams<T> p;
    p.n = *inv.n;
    p.seed = inv.seed;
    if (inv.epsilon)
        p.epsilon = parse_value<T>(*inv.epsilon, "epsilon");
    if (inv.theta)
        p.theta = parse_value<T>(*inv.theta, "theta");
    if (inv.kappa)
        p.kappa = parse_value<T>(*inv.kappa, "kappa");
    if (inv.r)
        p.seed_ratio = parse_value<T>(*inv.r, "r");
    if (inv.samples)
        p.samples = *inv.samples;
    if (inv.rho)
        p.initial_radius = parse_value<T>(*inv.rho, "rho");
    const auto result = build(parse_case_tag(*inv.case_tag), p);
    emit(inv, dump_document(encode(result)), out);
    return 0;
}

template <Scalar T>
int certify_command(const Invocation& inv, const json& doc, std::ostream& out)
{
    auto result = decode_construction<T>(doc);
    const unsigned samples = inv.samples.value_or(100);
    const T rho = inv.rho ? parse_value<T>(*inv.rho, "rho") : result.params.initial_radius;
    result.certified_radius = certify_open(result, samples, rho, inv.seed);
    result.params.samples = samples;
    result.params.initial_radius = rho;
    result.params.seed = inv.seed;
    emit(inv, dump_document(encode(result)), out);
    return 0;
}

std::array<std::size_t, 2> parse_axes(const std::string& text)
{
    std::array<std::size_t, 2> axes{};
    char comma = 0;
    long a = 0;
    long b = 0;
    std::istringstream in(text);
    if (!(in >> a >> comma >> b) || comma != ',' || a < 1 || b < 1 || !(in >> std::ws).eof())
        throw Error(ErrorKind::Domain, "--axes: expected two 1-based ratio indices like 1,2", "axes");
    axes[0] = static_cast<std::size_t>(a - 1);
    axes[1] = static_cast<std::size_t>(b - 1);
    return axes;
}

int sweep_command(const Invocation& inv)
{
    if (inv.out.empty())
        throw Error(ErrorKind::Domain, "sweep needs --out PREFIX", "out");
    SweepSpec spec;
    spec.fixed_state.reset();
    if (!inv.in.empty())
        spec = decode_sweep_spec(load(inv));
    if (inv.n)
        spec.n = *inv.n;
    if (inv.epsilon)
        spec.epsilon = parse_value<Rational>(*inv.epsilon, "epsilon");
    if (inv.grid)
        spec.grid = *inv.grid;
    if (inv.axes)
        spec.axes = parse_axes(*inv.axes);
    else if (inv.in.empty() && spec.n == 2)
        spec.axes = {0, 0};
    if (inv.family)
        spec.family = parse_state_family(*inv.family);
    if (inv.mode || std::getenv("HARDLINE_MODE"))
        spec.mode = resolve_mode(inv, nullptr);
    if (spec.mode == ArithmeticMode::Float64 && spec.tie_tolerance == 0.0)
        spec.tie_tolerance = default_tie_tolerance<double>();
    if (spec.mode == ArithmeticMode::ExactRational)
        spec.tie_tolerance = 0.0;
    if (inv.tie_tol)
        spec.tie_tolerance = *inv.tie_tol;
    if (inv.max_events)
        spec.max_events = *inv.max_events;
    if (inv.triple_policy)
        spec.triple_policy = parse_triple_policy(*inv.triple_policy);
    if (inv.threads)
        spec.threads = *inv.threads;

    const auto result = sweep(spec);
    write_file_atomic(inv.out + ".csv", sweep_csv(result));
    write_file_atomic(inv.out + ".json", dump_document(sweep_summary(result)));
    return 0;
}

template <Scalar T>
int plot_command(const Invocation& inv, const json& doc, std::ostream& out)
{
    const auto log = decode_event_log<T>(doc);
    std::optional<T> horizon;
    if (inv.horizon)
        horizon = parse_value<T>(*inv.horizon, "horizon");
    emit(inv, space_time_csv(log, horizon), out);
    return 0;
}

template <Scalar T>
int dispatch(const Invocation& inv, const json* doc, std::ostream& out, std::ostream& err)
{
    if (inv.subcommand == "simulate")
        return simulate_command<T>(inv, *doc, out, err);
    if (inv.subcommand == "construct")
        return construct_command<T>(inv, out);
    if (inv.subcommand == "certify")
        return certify_command<T>(inv, *doc, out);
    if (inv.subcommand == "plot-data")
        return plot_command<T>(inv, *doc, out);
    throw Error(ErrorKind::Domain, "unknown subcommand '" + inv.subcommand + "'");
}

}  // namespace

int run(const Invocation& inv, std::ostream& out, std::ostream& err)
{
    try {
        if (inv.subcommand == "sweep")
            return sweep_command(inv);
        std::optional<json> doc;
        if (inv.subcommand != "construct")
            doc = load(inv);
        const json* d = doc ? &*doc : nullptr;
        if (resolve_mode(inv, d) == ArithmeticMode::ExactRational)
            return dispatch<Rational>(inv, d, out, err);
        return dispatch<double>(inv, d, out, err);
    } catch (const Error& e) {
        err << error_document(e.kind(), e.what(), e.field());
    } catch (const std::exception& e) {
        err << error_document(ErrorKind::Internal, e.what(), "");
    }
    return 1;
}

int main(int argc, char** argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact collision counting for point particles on a line", "hardline"};
    app.require_subcommand(1);
    app.fallthrough();

    Invocation inv;
    app.add_option("--in", inv.in, "Input JSON");
    app.add_option("--out", inv.out, "Output file (sweep: path prefix); stdout when absent");
    app.add_option("--case", inv.case_tag, "Construction: 1, 2, 3 or 3alt");
    app.add_option("--n", inv.n, "Number of particles");
    app.add_option("--epsilon", inv.epsilon, "Half-width of the mass band around 1");
    app.add_option("--seed", inv.seed, "Seed for sampling");
    app.add_option("--mode", inv.mode, "exact | float (default: $HARDLINE_MODE, else exact)");
    app.add_option("--tie-tol", inv.tie_tol, "Float64 tie tolerance");
    app.add_option("--max-events", inv.max_events, "Event cap");
    app.add_option("--triple-policy", inv.triple_policy, "error | exchange");
    app.add_option("--grid", inv.grid, "Sweep resolution per axis");
    app.add_option("--axes", inv.axes, "Two 1-based ratio indices, e.g. 1,2");
    app.add_option("--family", inv.family, "Sweep state family: fixed | case1 | case3");
    app.add_option("--threads", inv.threads, "Sweep worker threads (0: all cores)");
    app.add_option("--samples", inv.samples, "Perturbation samples");
    app.add_option("--rho", inv.rho, "Initial perturbation radius");
    app.add_option("--horizon", inv.horizon, "Plot horizon time");
    app.add_option("--theta", inv.theta, "Case 1 ratio interpolation in (0, 1)");
    app.add_option("--kappa", inv.kappa, "Case 3 dominance factor");
    app.add_option("--r", inv.r, "Seed ratio m2/m1");

    app.add_subcommand("simulate", "Run the event-driven engine on {masses, state}");
    app.add_subcommand("construct", "Build a certified instance");
    app.add_subcommand("certify", "Recompute the certified radius of a construction");
    app.add_subcommand("sweep", "Classify collision counts over a grid of mass ratios");
    app.add_subcommand("plot-data", "Export space-time polylines of an event log");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    inv.subcommand = app.get_subcommands().front()->get_name();
    return run(inv, out, err);
}

}  // namespace hardline::cli
