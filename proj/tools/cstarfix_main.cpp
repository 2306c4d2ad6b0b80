// Command-line front end: loads a catalog scenario (plus optional parameter
// overrides or a JSON config file), runs axiom verification, certification,
// or a solver, and writes machine-readable records next to a one-line-per-run
// summary. Summary goes to stdout, records to --out, diagnostics to stderr.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cstarfix/catalog.hpp"
#include "cstarfix/solvers.hpp"
#include "cstarfix/trace_io.hpp"

namespace {

using nlohmann::json;
using namespace cstarfix;

/// A user-facing configuration mistake: reported as a diagnostic, exit 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::string scenario;
    std::vector<std::string> cli_params;  // raw key=value strings
    std::map<std::string, double> config_params;
    std::string solver = "picard";
    std::vector<std::uint64_t> seeds;
    std::uint64_t samples = 2000;
    double epsilon = 1e-10;
    std::uint64_t max_iter = 100000;
    std::string mode;     // "", "strict", "symmetrized"
    std::string variant;  // "", "proof", "displayed"
    std::string out_path;
    std::string format = "jsonl";
};

// ---------------------------------------------------------------------------
// Config handling
// ---------------------------------------------------------------------------

std::map<std::string, double> parse_cli_params(const std::vector<std::string>& raw) {
    std::map<std::string, double> out;
    for (const std::string& item : raw) {
        const std::size_t eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--param expects key=value, got '" + item + "'");
        const std::string key = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        char* end = nullptr;
        const double value = std::strtod(text.c_str(), &end);
        if (text.empty() || end != text.c_str() + text.size())
            throw ConfigError("--param " + key + ": '" + text + "' is not a number");
        out[key] = value;
    }
    return out;
}

/// Loads the JSON config file and fills every option the command line left
/// untouched. Unknown keys are rejected by name; parse errors surface with
/// the byte position the parser reports.
void merge_config(const CLI::App* cmd, Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw ConfigError("cannot open config file '" + opt.config_path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw ConfigError("config: root must be an object");
        static const std::set<std::string> allowed = {
            "command", "scenario", "parameters", "solver", "stop",
            "seeds",   "samples",  "mode",       "variant", "output_path",
            "format"};
        for (const auto& [key, value] : doc.items())
            if (!allowed.count(key)) throw ConfigError("config: unknown key '" + key + "'");

        if (doc.contains("command")) {
            const auto name = doc["command"].get<std::string>();
            if (name != cmd->get_name())
                throw ConfigError("config: command '" + name + "' does not match '" +
                                  cmd->get_name() + "'");
        }
        const auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };
        if (doc.contains("scenario") && unset("--scenario"))
            opt.scenario = doc["scenario"].get<std::string>();
        if (doc.contains("solver") && unset("--solver"))
            opt.solver = doc["solver"].get<std::string>();
        if (doc.contains("samples") && unset("--samples"))
            opt.samples = doc["samples"].get<std::uint64_t>();
        if (doc.contains("mode") && unset("--mode"))
            opt.mode = doc["mode"].get<std::string>();
        if (doc.contains("variant") && unset("--variant"))
            opt.variant = doc["variant"].get<std::string>();
        if (doc.contains("output_path") && unset("--out"))
            opt.out_path = doc["output_path"].get<std::string>();
        if (doc.contains("format") && unset("--format"))
            opt.format = doc["format"].get<std::string>();
        if (doc.contains("seeds") && unset("--seed")) {
            if (!doc["seeds"].is_array()) throw ConfigError("config: seeds must be an array");
            for (const auto& s : doc["seeds"]) {
                if (!s.is_number_integer() || s.get<std::int64_t>() < 0)
                    throw ConfigError("config: seeds must be non-negative integers");
                opt.seeds.push_back(s.get<std::uint64_t>());
            }
        }
        if (doc.contains("stop")) {
            const json& stop = doc["stop"];
            if (!stop.is_object()) throw ConfigError("config: stop must be an object");
            for (const auto& [key, value] : stop.items())
                if (key != "epsilon" && key != "max_iterations")
                    throw ConfigError("config: unknown key 'stop." + key + "'");
            if (stop.contains("epsilon") && unset("--epsilon"))
                opt.epsilon = stop["epsilon"].get<double>();
            if (stop.contains("max_iterations") && unset("--max-iter"))
                opt.max_iter = stop["max_iterations"].get<std::uint64_t>();
        }
        if (doc.contains("parameters")) {
            const json& params = doc["parameters"];
            if (!params.is_object())
                throw ConfigError("config: parameters must be an object");
            for (const auto& [key, value] : params.items()) {
                if (!value.is_number())
                    throw ConfigError("config: parameter '" + key + "' must be a number");
                opt.config_params[key] = value.get<double>();
            }
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Shared pieces
// ---------------------------------------------------------------------------

std::string point_text(const Point& p, const MetricSpaceInstance& space) {
    return point_field(p, space).text;
}

std::string diag_text(const AlgebraElement& a) {
    // Keep a diagonal element's component order; matrices show their spectrum.
    const std::vector<double> values =
        a.descriptor().kind == AlgebraKind::DiagonalReal ? a.diag() : spectrum(a);
    std::string out = "(";
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ", ";
        out += format_double(values[i]);
    }
    return out + ")";
}

ContractionSpec adjusted_spec(const CatalogEntry& entry, const Options& opt) {
    ContractionSpec spec = entry.spec;
    if (opt.mode == "strict") spec = spec.with_mode(ComparisonMode::Strict);
    else if (opt.mode == "symmetrized") spec = spec.with_mode(ComparisonMode::Symmetrized);
    else if (!opt.mode.empty()) throw ConfigError("unknown mode '" + opt.mode + "'");
    if (opt.variant == "proof") spec = spec.with_variant(ReichVariant::AsProof);
    else if (opt.variant == "displayed") spec = spec.with_variant(ReichVariant::AsDisplayed);
    else if (!opt.variant.empty()) throw ConfigError("unknown variant '" + opt.variant + "'");
    return spec;
}

struct Sink {
    std::ofstream stream;
    std::optional<TraceWriter> writer;

    void open(const Options& opt) {
        TraceFormat format;
        if (opt.format == "jsonl") format = TraceFormat::Jsonl;
        else if (opt.format == "csv") format = TraceFormat::Csv;
        else throw ConfigError("unknown format '" + opt.format + "'");
        stream.open(opt.out_path, std::ios::binary);
        if (!stream) throw ConfigError("cannot open output file '" + opt.out_path + "'");
        writer.emplace(stream, format);
    }

    void write_all(const std::vector<Record>& records) {
        if (!writer) return;
        for (const Record& rec : records) writer->write(rec);
    }

    /// IO failures must not pass silently: a full disk is a failed run.
    void finish() {
        if (!writer) return;
        stream.flush();
        if (!stream) throw ConfigError("write to output file failed");
    }
};

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

int run_verify_axioms(const CatalogEntry& entry, const Options& opt, Sink& sink) {
    bool clean = true;
    for (std::uint64_t seed : opt.seeds) {
        const AxiomReport report = verify_axioms(entry.space, opt.samples, seed);
        sink.write_all(records_from(report, entry.space, seed));
        std::cout << "verify-axioms " << entry.name << " seed " << seed << ": "
                  << (report.all_pass() ? "pass" : "fail") << " ("
                  << report.samples_tested << " samples, "
                  << (report.exhaustive ? "exhaustive" : "sampled") << ")";
        bool first = true;
        for (const ViolationWitness* w : report.violations()) {
            std::cout << (first ? " violated: " : ", ") << w->axiom;
            first = false;
        }
        std::cout << "\n";
        clean = clean && report.all_pass();
    }
    return clean ? 0 : 2;
}

int run_certify(const CatalogEntry& entry, const ContractionSpec& spec,
                const Options& opt, Sink& sink) {
    bool clean = true;
    for (std::uint64_t seed : opt.seeds) {
        (void)verify_axioms(entry.space, opt.samples, seed);
        const Certificate cert = certify(spec, entry.t, entry.space, opt.samples, seed);
        sink.write_all(records_from(cert, entry.space, seed));
        std::cout << "certify " << entry.name << " seed " << seed
                  << ": all_hold=" << (cert.all_hold ? "true" : "false")
                  << " pairs=" << cert.pairs_tested << " vacuous=" << cert.vacuous_pairs
                  << " violations=" << cert.violations.size()
                  << " ill_posed=" << cert.ill_posed.size()
                  << (cert.exhaustive ? " exhaustive" : "")
                  << (cert.axiom_warning ? " axiom_warning" : "") << "\n";
        clean = clean && cert.all_hold;
    }
    return clean ? 0 : 2;
}

/// Draws the run's start from the scenario window. The gated solvers only
/// accept starts with d(x0, Tx0) under the unit, so for those the draw
/// repeats until a compliant start appears.
Point pick_start(const CatalogEntry& entry, SolverKind kind, std::mt19937_64& rng) {
    const bool gated = kind == SolverKind::Reich || kind == SolverKind::Weak;
    const AlgebraElement unit = AlgebraElement::unit(entry.space.algebra());
    for (int tries = 0; tries < 200; ++tries) {
        const Point x0 = entry.space.domain().sample_point(rng);
        if (!gated) return x0;
        const Point tx0 = entry.t.apply_checked(x0);
        if (leq(entry.space.distance(x0, tx0), unit).holds()) return x0;
    }
    return entry.default_start;  // the gate will judge it and report precisely
}

int run_solve(const CatalogEntry& entry, const ContractionSpec& spec, const Options& opt,
              Sink& sink) {
    SolverKind kind;
    if (opt.solver == "picard") kind = SolverKind::Picard;
    else if (opt.solver == "alternating") kind = SolverKind::Alternating;
    else if (opt.solver == "r-interpolative") kind = SolverKind::RInterpolative;
    else if (opt.solver == "reich") kind = SolverKind::Reich;
    else if (opt.solver == "weak") kind = SolverKind::Weak;
    else throw ConfigError("unknown solver '" + opt.solver + "'");

    if (kind == SolverKind::Alternating && !entry.s)
        throw ConfigError("scenario '" + entry.name + "' carries no second map");
    if (kind == SolverKind::RInterpolative && (!entry.r || !entry.r_solve))
        throw ConfigError("scenario '" + entry.name + "' carries no auxiliary map");

    const StopRule stop{opt.epsilon, opt.max_iter};
    bool all_converged = true;
    for (std::uint64_t seed : opt.seeds) {
        std::mt19937_64 rng(seed);
        const Point x0 = pick_start(entry, kind, rng);
        SolveResult result;
        switch (kind) {
            case SolverKind::Picard:
                result = picard_solve(entry.space, entry.t, x0, spec, stop);
                break;
            case SolverKind::Alternating:
                result = alternating_solve(entry.space, entry.t, *entry.s, x0, spec, stop);
                break;
            case SolverKind::RInterpolative:
                result = r_interpolative_solve(entry.space, entry.t, *entry.r,
                                               entry.r_solve, x0, spec, stop);
                break;
            case SolverKind::Reich:
                result = reich_solve(entry.space, entry.t, x0, spec, stop);
                break;
            case SolverKind::Weak:
                result = weak_solve(entry.space, entry.t, x0, spec, stop);
                break;
        }
        sink.write_all(records_from(result, entry.space, seed));
        std::cout << "solve " << entry.name << " [" << opt.solver << "] seed " << seed
                  << ": " << to_string(result.status)
                  << " iterations=" << result.iterations
                  << " residual=" << format_double(result.residual);
        if (result.fixed_point)
            std::cout << " fixed_point=" << point_text(*result.fixed_point, entry.space);
        if (result.exit_point)
            std::cout << " escaped_at=" << point_text(*result.exit_point, entry.space);
        std::cout << "\n";
        all_converged = all_converged && result.status == SolveStatus::Converged;
    }
    return all_converged ? 0 : 2;
}

int run_fixed_points(const CatalogEntry& entry, Sink& sink) {
    const std::vector<Point> fixed = brute_force_fixed_points(entry.space, entry.t);
    std::vector<Record> records;
    for (std::size_t i = 0; i < fixed.size(); ++i)
        records.push_back(Record{{"record", text_field("fixed_point")},
                                 {"index", integer_field(i)},
                                 {"point", point_field(fixed[i], entry.space)}});
    records.push_back(Record{{"record", text_field("summary")},
                             {"status", text_field("ok")},
                             {"count", integer_field(fixed.size())}});
    sink.write_all(records);
    std::cout << "fixed-points " << entry.name << ": " << fixed.size() << " found";
    for (const Point& p : fixed) std::cout << " " << point_text(p, entry.space);
    std::cout << "\n";
    return 0;
}

/// Runs both shipped showcase scenarios end to end: axiom verification with
/// its witness, certification (which still holds, under an axiom warning),
/// and the iteration that leaves the domain on its first application.
int run_demo(Sink& sink) {
    for (const char* name : {"paper_example_kannan", "paper_example_r_interpolative"}) {
        const CatalogEntry entry = catalog_build(name);
        std::cout << "=== " << entry.name << " ===\n";
        std::cout << "note: " << entry.notes << "\n";

        const AxiomReport report = verify_axioms(entry.space, 2000, 1);
        sink.write_all(records_from(report, entry.space, 1));
        std::cout << "axiom check: " << (report.all_pass() ? "pass" : "fail") << "\n";
        for (const ViolationWitness* w : report.violations()) {
            std::cout << "  " << w->axiom << " axiom violated at (";
            for (std::size_t i = 0; i < w->points.size(); ++i)
                std::cout << (i ? ", " : "") << point_text(w->points[i], entry.space);
            std::cout << ")";
            if (!w->values.empty()) std::cout << ": d = " << diag_text(w->values[0]);
            std::cout << "\n    " << w->detail << "\n";
        }

        const Certificate cert = certify(entry.spec, entry.t, entry.space, 400, 1);
        sink.write_all(records_from(cert, entry.space, 1));
        std::cout << "certify: all_hold=" << (cert.all_hold ? "true" : "false")
                  << " over " << cert.pairs_tested << " pairs"
                  << (cert.axiom_warning ? " (axiom_warning: the metric is defective)"
                                         : "")
                  << "\n";

        SolveResult run;
        if (entry.r && entry.r_solve)
            run = r_interpolative_solve(entry.space, entry.t, *entry.r, entry.r_solve,
                                        entry.default_start, entry.spec);
        else
            run = picard_solve(entry.space, entry.t, entry.default_start, entry.spec);
        sink.write_all(records_from(run, entry.space, 1));
        std::cout << "iteration from " << point_text(entry.default_start, entry.space)
                  << ": " << to_string(run.status);
        if (run.status == SolveStatus::DomainExit)
            std::cout << " at iteration " << run.iterations << ", exit point "
                      << point_text(*run.exit_point, entry.space);
        if (run.fixed_point)
            std::cout << ", fixed point " << point_text(*run.fixed_point, entry.space);
        std::cout << "\n\n";
    }
    std::cout << "demo: both defects are detected and reported; exit is informational.\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point laboratory for algebra-valued metrics"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* cmd, bool with_solver) {
        cmd->add_option("--config", opt.config_path, "JSON config file; flags win");
        cmd->add_option("--scenario", opt.scenario, "catalog entry name");
        cmd->add_option("--param", opt.cli_params, "scenario parameter key=value");
        cmd->add_option("--seed", opt.seeds, "run seed (repeatable)");
        cmd->add_option("--samples", opt.samples, "sample count for checks");
        cmd->add_option("--epsilon", opt.epsilon, "stop threshold on the step norm");
        cmd->add_option("--max-iter", opt.max_iter, "iteration budget");
        cmd->add_option("--mode", opt.mode, "strict|symmetrized");
        cmd->add_option("--variant", opt.variant, "proof|displayed");
        cmd->add_option("--out", opt.out_path, "record file path");
        cmd->add_option("--format", opt.format, "jsonl|csv");
        if (with_solver)
            cmd->add_option("--solver", opt.solver,
                            "picard|alternating|r-interpolative|reich|weak");
    };
    add_common(app.add_subcommand("verify-axioms", "check the metric axioms by sampling"),
               false);
    add_common(app.add_subcommand("certify", "evaluate the contraction condition"),
               false);
    add_common(app.add_subcommand("solve", "iterate to a fixed point"), true);
    add_common(app.add_subcommand("fixed-points", "enumerate fixed points exhaustively"),
               false);
    add_common(app.add_subcommand("demo", "run both shipped showcase scenarios"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const CLI::App* active = app.get_subcommands().front();
    const std::string command = active->get_name();
    try {
        merge_config(active, opt);
        if (opt.seeds.empty()) opt.seeds.push_back(1);

        Sink sink;
        if (command == "demo") {
            if (active->count("--scenario") || !opt.scenario.empty())
                throw ConfigError("demo runs fixed scenarios; drop --scenario");
            if (!opt.out_path.empty()) sink.open(opt);
            const int code = run_demo(sink);
            sink.finish();
            return code;
        }

        if (opt.scenario.empty()) throw ConfigError(command + " requires --scenario");
        if (opt.out_path.empty()) throw ConfigError(command + " requires --out");
        if (opt.samples == 0) throw ConfigError("--samples must be at least 1");

        std::map<std::string, double> params = opt.config_params;
        for (const auto& [key, value] : parse_cli_params(opt.cli_params))
            params[key] = value;

        const CatalogEntry entry = catalog_build(opt.scenario, params);
        const ContractionSpec spec = adjusted_spec(entry, opt);
        sink.open(opt);

        int code = 1;
        if (command == "verify-axioms") code = run_verify_axioms(entry, opt, sink);
        else if (command == "certify") code = run_certify(entry, spec, opt, sink);
        else if (command == "solve") code = run_solve(entry, spec, opt, sink);
        else if (command == "fixed-points") code = run_fixed_points(entry, sink);
        sink.finish();
        return code;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
