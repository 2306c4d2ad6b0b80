// End-to-end acceptance checks: one line of output per criterion, exit code
// equal to the number of failures. The CLI binary path arrives as argv[1];
// the two CLI-facing criteria shell out to it.
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cstarfix/catalog.hpp"
#include "cstarfix/solvers.hpp"
#include "cstarfix/trace_io.hpp"

using namespace cstarfix;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
    std::printf("%s criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

void criterion(int id, const std::function<std::pair<bool, std::string>()>& body) {
    try {
        const auto [ok, detail] = body();
        report(id, ok, detail);
    } catch (const std::exception& e) {
        report(id, false, std::string("exception: ") + e.what());
    }
}

double displacement(const MetricSpaceInstance& space, const SelfMap& map, const Point& z) {
    return norm(space.distance(z, map.apply_checked(z)));
}

std::string run_and_capture(const std::string& command) {
    FILE* pipe = ::popen(command.c_str(), "r");
    if (!pipe) return {};
    std::string out;
    char buffer[4096];
    while (std::size_t n = std::fread(buffer, 1, sizeof buffer, pipe)) out.append(buffer, n);
    ::pclose(pipe);
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string quoted(const std::string& s) { return "'" + s + "'"; }

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";

    // 1: scalar geometric envelope along the whole run.
    criterion(1, [] {
        const CatalogEntry entry = catalog_build("affine_scalar", {{"a", 0.5}, {"b", 1.0}});
        const ContractionSpec spec = ContractionSpec::interpolative_kannan(0.5, 0.5);
        const SolveResult run =
            picard_solve(entry.space, entry.t, Point::scalar(10.0), spec);
        bool ok = run.status == SolveStatus::Converged && run.residual <= 1e-9 &&
                  run.iterations <= 60 && !run.bound_checks.empty();
        double worst_slack = 0.0;
        for (const OrderResult& check : run.bound_checks) {
            const double slack = check.witness_eigenvalue.value_or(0.0);
            worst_slack = std::min(worst_slack, slack);
            ok = ok && check.holds() && slack >= -1e-12;
        }
        std::ostringstream detail;
        detail << "scalar affine run: residual=" << run.residual << " iterations="
               << run.iterations << " envelope checks=" << run.bound_checks.size()
               << " worst slack=" << worst_slack;
        return std::make_pair(ok, detail.str());
    });

    // 2: the same run under a genuine 2x2 matrix order.
    criterion(2, [] {
        const CatalogEntry entry = catalog_build("matrix_scaled_affine");
        const ContractionSpec spec = ContractionSpec::interpolative_kannan(0.5, 0.5);
        const SolveResult run =
            picard_solve(entry.space, entry.t, Point::scalar(10.0), spec);
        bool ok = run.status == SolveStatus::Converged && run.bound_checks.size() >= 30;
        for (const OrderResult& check : run.bound_checks) ok = ok && check.holds();
        std::ostringstream detail;
        detail << "matrix-order run: " << run.bound_checks.size()
               << " comparisons, all " << (ok ? "hold" : "do NOT hold");
        return std::make_pair(ok, detail.str());
    });

    // 3: one hundred starts agree on a single fixed point.
    criterion(3, [] {
        const CatalogEntry entry = catalog_build("affine_scalar");
        const UniquenessReport probe = uniqueness_probe(
            entry.space, entry.t, SolverKind::Picard, std::nullopt, 100, 17);
        const bool ok = probe.unique && probe.max_spread <= 1e-8 &&
                        probe.converged_runs == 100;
        std::ostringstream detail;
        detail << "uniqueness probe: unique=" << (probe.unique ? "true" : "false")
               << " converged=" << probe.converged_runs
               << " max_spread=" << probe.max_spread;
        return std::make_pair(ok, detail.str());
    });

    // 4: the shipped pair of affine maps shares one fixed point.
    criterion(4, [] {
        const CatalogEntry entry = catalog_build("affine_pair");
        std::mt19937_64 rng(23);
        bool ok = true;
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const Point x0 = entry.space.domain().sample_point(rng);
            const SolveResult run =
                alternating_solve(entry.space, entry.t, *entry.s, x0, entry.spec);
            if (run.status != SolveStatus::Converged) {
                ok = false;
                continue;
            }
            const double rt = displacement(entry.space, entry.t, *run.fixed_point);
            const double rs = displacement(entry.space, *entry.s, *run.fixed_point);
            worst = std::max({worst, rt, rs});
            ok = ok && rt <= 1e-8 && rs <= 1e-8;
        }
        std::ostringstream detail;
        detail << "alternating runs from 20 starts: worst displacement=" << worst;
        return std::make_pair(ok, detail.str());
    });

    // 5: solving through the auxiliary map lands on 1.
    criterion(5, [] {
        const CatalogEntry entry = catalog_build("r_interpolative_positive");
        const SolveResult run =
            r_interpolative_solve(entry.space, entry.t, *entry.r, entry.r_solve,
                                  entry.default_start, entry.spec);
        if (run.status != SolveStatus::Converged)
            return std::make_pair(false, std::string("did not converge"));
        const Point& v = *run.fixed_point;
        const double gap =
            norm(entry.space.distance(entry.r->apply_checked(v), entry.t.apply_checked(v)));
        const bool ok = std::abs(v.scalar_value() - 1.0) <= 1e-8 && gap <= 1e-8;
        std::ostringstream detail;
        detail << "auxiliary-map chain: v=" << v.scalar_value() << " gap=" << gap;
        return std::make_pair(ok, detail.str());
    });

    // 6: the start gate rejects displacement 2I and accepts a compliant start.
    criterion(6, [] {
        const CatalogEntry entry = catalog_build("reich_halving");
        bool rejected = false;
        try {
            (void)reich_solve(entry.space, entry.t, Point::scalar(4.0), entry.spec);
        } catch (const PreconditionFailedError&) {
            rejected = true;
        }
        const SolveResult run =
            reich_solve(entry.space, entry.t, Point::scalar(1.0), entry.spec);
        bool ok = rejected && run.status == SolveStatus::Converged &&
                  !run.bound_checks.empty();
        for (const OrderResult& check : run.bound_checks) ok = ok && check.holds();
        std::ostringstream detail;
        detail << "gate rejected d=2I start: " << (rejected ? "yes" : "no")
               << "; compliant run envelope checks=" << run.bound_checks.size();
        return std::make_pair(ok, detail.str());
    });

    // 7: step norms never grow along fifty-step weak-solve traces.
    criterion(7, [] {
        const CatalogEntry entry = catalog_build("corollary_linear", {{"k", 0.5}});
        std::mt19937_64 rng(7);
        std::size_t monotonicity_failures = 0;
        bool ok = true;
        for (int i = 0; i < 10; ++i) {
            const Point x0 = entry.space.domain().sample_point(rng);
            const SolveResult run =
                weak_solve(entry.space, entry.t, x0, entry.spec, StopRule{1e-300, 50});
            ok = ok && run.trace.step_norms.size() == 50;
            for (const OrderResult& check : run.bound_checks)
                if (!check.holds()) ++monotonicity_failures;
        }
        std::ostringstream detail;
        detail << "10 fifty-step traces: monotonicity failures=" << monotonicity_failures;
        return std::make_pair(ok && monotonicity_failures == 0, detail.str());
    });

    // 8: exhaustive certification and solves agree with brute force.
    criterion(8, [] {
        bool ok = true;
        std::ostringstream detail;
        for (std::uint64_t table_seed : {7, 1, 2, 3, 4}) {
            const CatalogEntry entry = catalog_build(
                "finite_random_12", {{"seed", static_cast<double>(table_seed)}});
            (void)verify_axioms(entry.space, 1000, 11);
            const Certificate cert =
                certify(entry.spec, entry.t, entry.space, 144, table_seed);
            ok = ok && cert.exhaustive;

            std::size_t violating = 0;
            for (int i = 0; i < 12; ++i)
                for (int j = 0; j < 12; ++j) {
                    const ConditionEvaluation ev =
                        evaluate_condition(entry.spec, entry.t, Point::finite(i),
                                           Point::finite(j), entry.space);
                    if (!ev.vacuous && !ev.holds()) ++violating;
                }
            ok = ok && (cert.all_hold == (violating == 0)) &&
                 cert.violations.size() == violating;

            const std::vector<Point> truth =
                brute_force_fixed_points(entry.space, entry.t);
            for (int i = 0; i < 12; ++i) {
                const SolveResult run = picard_solve(entry.space, entry.t,
                                                     Point::finite(i), {},
                                                     StopRule{0.25, 60});
                if (run.status != SolveStatus::Converged) continue;
                bool member = false;
                for (const Point& p : truth) member = member || (p == *run.fixed_point);
                ok = ok && member;
            }
        }
        detail << "5 seeded tables: exhaustive certificates match replay, converged "
                  "points match brute force: "
               << (ok ? "yes" : "no");
        return std::make_pair(ok, detail.str());
    });

    // 9: the shipped defective showcase is detected, and the demo says so.
    criterion(9, [&cli] {
        const CatalogEntry entry = catalog_build("paper_example_kannan");
        const AxiomReport report = verify_axioms(entry.space, 2000, 99);
        bool ok = report.identity.has_value();
        if (ok) {
            const ViolationWitness& w = *report.identity;
            ok = w.points.size() >= 2 && w.points[0] == Point::scalar(3.0) &&
                 w.points[1] == Point::scalar(3.0) && !w.values.empty() &&
                 w.values[0].diag() == std::vector<double>{36.0, 0.0};
        }
        const SolveResult run = picard_solve(entry.space, entry.t, entry.default_start);
        ok = ok && run.status == SolveStatus::DomainExit && run.iterations == 1;

        if (cli.empty()) return std::make_pair(false, std::string("no CLI path given"));
        const std::string demo_out = run_and_capture(quoted(cli) + " demo 2>/dev/null");
        const bool witness_shown =
            demo_out.find("identity axiom violated at (3, 3): d = (36, 0)") !=
            std::string::npos;
        const bool exit_shown =
            demo_out.find("DomainExit at iteration 1") != std::string::npos;
        ok = ok && witness_shown && exit_shown;
        std::ostringstream detail;
        detail << "identity witness d(3,3)=(36,0) and first-step domain exit: library "
               << (ok ? "and demo output agree" : "or demo output MISSING");
        return std::make_pair(ok, detail.str());
    });

    // 10: the algebra kernel's power, monotonicity, and order properties.
    criterion(10, [] {
        std::mt19937_64 rng(2024);
        int round_trip_failures = 0;
        for (int i = 0; i < 500; ++i) {
            const int n = 1 + static_cast<int>(rng() % 6);
            const auto desc = AlgebraDescriptor::hermitian_matrix(n);
            const AlgebraElement a = random_positive(desc, rng, 1.0 + (i % 3));
            const double beta = 0.25 + 0.125 * (i % 5);
            const AlgebraElement rt = frac_power(frac_power(a, beta), 1.0 / beta);
            if (norm(subtract(rt, a)) > 1e-10 * std::max(1.0, norm(a)))
                ++round_trip_failures;
        }

        int monotonicity_failures = 0;
        for (int i = 0; i < 1000; ++i) {
            const int n = 1 + static_cast<int>(rng() % 6);
            const auto desc = AlgebraDescriptor::hermitian_matrix(n);
            const AlgebraElement a = random_positive(desc, rng);
            const AlgebraElement b = add(a, random_positive(desc, rng));
            for (const double beta : {0.25, 0.5, 0.75})
                if (!leq(frac_power(a, beta), frac_power(b, beta)).holds())
                    ++monotonicity_failures;
        }

        int order_failures = 0;
        for (int i = 0; i < 1000; ++i) {
            const int n = 1 + static_cast<int>(rng() % 6);
            const auto desc = (i % 2) ? AlgebraDescriptor::hermitian_matrix(n)
                                      : AlgebraDescriptor::diagonal_real(n);
            const AlgebraElement a = random_positive(desc, rng);
            const AlgebraElement bump = scale(AlgebraElement::unit(desc), 0.01);
            const AlgebraElement b = add(add(a, random_positive(desc, rng)), bump);
            const AlgebraElement c = add(b, random_positive(desc, rng));
            const bool reflexive = leq(a, a).holds();
            const bool forward = leq(a, b).holds() && leq(b, c).holds();
            const bool transitive = leq(a, c).holds();
            const bool antisymmetric = !leq(b, a).holds();
            if (!(reflexive && forward && transitive && antisymmetric)) ++order_failures;
        }

        std::ostringstream detail;
        detail << "power round trips failed=" << round_trip_failures
               << ", monotonicity failed=" << monotonicity_failures
               << ", order-law failed=" << order_failures;
        return std::make_pair(round_trip_failures == 0 && monotonicity_failures == 0 &&
                                  order_failures == 0,
                              detail.str());
    });

    // 11: the CLI is byte-deterministic for a fixed config.
    criterion(11, [&cli] {
        if (cli.empty()) return std::make_pair(false, std::string("no CLI path given"));
        const std::string tag = std::to_string(::getpid());
        const std::string out_path = "/tmp/cstarfix_accept_" + tag + ".jsonl";
        const std::string config_path = "/tmp/cstarfix_accept_" + tag + ".json";
        {
            std::ofstream config(config_path);
            config << "{\"command\":\"certify\",\"scenario\":\"kannan_cubic\","
                      "\"samples\":500,\"seeds\":[3,4],\"output_path\":\""
                   << out_path << "\",\"format\":\"jsonl\"}";
        }
        const std::string command =
            quoted(cli) + " certify --config " + quoted(config_path) + " >/dev/null 2>&1";
        if (std::system(command.c_str()) != 0)
            return std::make_pair(false, std::string("first CLI run failed"));
        const std::string first = slurp(out_path);
        if (std::system(command.c_str()) != 0)
            return std::make_pair(false, std::string("second CLI run failed"));
        const std::string second = slurp(out_path);
        std::remove(out_path.c_str());
        std::remove(config_path.c_str());
        const bool ok = !first.empty() && first == second;
        std::ostringstream detail;
        detail << "two config-driven runs wrote " << first.size() << " bytes each, "
               << (ok ? "byte-identical" : "DIFFERENT");
        return std::make_pair(ok, detail.str());
    });

    std::printf("acceptance: %d/11 criteria passed\n", 11 - failures);
    return failures;
}
