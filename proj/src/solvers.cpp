#include "cstarfix/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

namespace cstarfix {

const char* to_string(SolveStatus status) noexcept {
    switch (status) {
        case SolveStatus::Converged: return "Converged";
        case SolveStatus::MaxIterations: return "MaxIterations";
        case SolveStatus::DomainExit: return "DomainExit";
        case SolveStatus::IllPosedOrder: return "IllPosedOrder";
    }
    return "?";
}

const char* to_string(SolverKind kind) noexcept {
    switch (kind) {
        case SolverKind::Picard: return "picard";
        case SolverKind::Alternating: return "alternating";
        case SolverKind::RInterpolative: return "r-interpolative";
        case SolverKind::Reich: return "reich";
        case SolverKind::Weak: return "weak";
    }
    return "?";
}

namespace {

void validate_stop(const StopRule& stop) {
    if (!(stop.step_norm_epsilon > 0.0))
        throw BadParametersError("the stop rule's epsilon must be positive");
    if (stop.max_iterations < 1)
        throw BadParametersError("the stop rule needs at least one iteration");
}

struct IterationCore {
    SolveStatus status = SolveStatus::MaxIterations;
    std::vector<Point> points;
    std::optional<Point> fixed_point;
    std::optional<Point> exit_point;
    double residual = 0.0;
    std::size_t iterations = 0;
};

/// The shared loop: probe first (so a fixed start never advances), then
/// advance and append. Domain escapes become a status with the partial trace;
/// the escaping image is appended so the trace shows where it went.
IterationCore run_iteration(const MetricSpaceInstance& space, const Point& x0,
                            const StopRule& stop,
                            const std::function<double(const Point&)>& probe,
                            const std::function<Point(const Point&, std::size_t)>& advance) {
    validate_stop(stop);
    if (!space.domain().contains(x0))
        throw DomainExitError("start " + to_string(x0) + " lies outside the space domain");

    IterationCore core;
    core.points.push_back(x0);
    Point x = x0;
    while (true) {
        double res = 0.0;
        try {
            res = probe(x);
        } catch (const DomainExitError&) {
            core.status = SolveStatus::DomainExit;
            core.exit_point = x;
            core.residual = std::numeric_limits<double>::infinity();
            break;
        }
        if (res <= stop.step_norm_epsilon) {
            core.status = SolveStatus::Converged;
            core.fixed_point = x;
            core.residual = res;
            break;
        }
        if (core.iterations == stop.max_iterations) {
            core.status = SolveStatus::MaxIterations;
            core.residual = res;
            break;
        }
        Point image = x;
        try {
            image = advance(x, core.iterations);
        } catch (const DomainExitError&) {
            core.status = SolveStatus::DomainExit;
            core.exit_point = x;
            core.residual = res;
            break;
        }
        ++core.iterations;
        core.points.push_back(image);
        if (!space.domain().contains(image)) {
            core.status = SolveStatus::DomainExit;
            core.exit_point = image;
            core.residual = res;
            break;
        }
        x = image;
    }
    return core;
}

double fit_geometric_rate(const std::vector<double>& step_norms) {
    const std::size_t n = step_norms.size();
    if (n < 2) return 0.0;
    std::vector<std::pair<double, double>> pts;  // (index, log step norm)
    for (std::size_t i = n / 2; i < n; ++i)
        if (step_norms[i] > 0.0) pts.emplace_back(static_cast<double>(i), std::log(step_norms[i]));
    if (pts.size() < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (const auto& [a, b] : pts) {
        mx += a;
        my += b;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (const auto& [a, b] : pts) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    if (sxx == 0.0) return 0.0;
    return std::exp(sxy / sxx);
}

SolveResult finish(const MetricSpaceInstance& space, IterationCore core) {
    SolveResult result;
    result.status = core.status;
    result.fixed_point = std::move(core.fixed_point);
    result.exit_point = std::move(core.exit_point);
    result.residual = core.residual;
    result.iterations = core.iterations;
    result.trace = make_record(space, std::move(core.points));
    result.empirical_rate = fit_geometric_rate(result.trace.step_norms);
    return result;
}

bool spec_has_scale(const std::optional<ContractionSpec>& spec) {
    return spec.has_value() && spec->kind() != ConditionKind::WeakReich;
}

void append_geometric_envelope_checks(SolveResult& result, double tau) {
    const auto& steps = result.trace.steps;
    for (std::size_t n = 1; n < steps.size(); ++n)
        result.bound_checks.push_back(
            leq(steps[n], scale(steps[0], std::pow(tau, static_cast<double>(n)))));
}

SolveResult picard_core(const MetricSpaceInstance& space, const SelfMap& t, const Point& x0,
                        const StopRule& stop) {
    auto probe = [&](const Point& x) { return norm(space.distance(x, t.apply_checked(x))); };
    auto advance = [&](const Point& x, std::size_t) { return t.apply_checked(x); };
    return finish(space, run_iteration(space, x0, stop, probe, advance));
}

void require_start_dominated_by_unit(const MetricSpaceInstance& space, const SelfMap& t,
                                     const Point& x0) {
    const AlgebraElement d0 = space.distance(x0, t.apply_checked(x0));
    const OrderResult gate = leq(d0, AlgebraElement::unit(space.algebra()));
    if (!gate.holds())
        throw PreconditionFailedError(
            std::string("the start's displacement must be dominated by the unit; verdict ") +
            to_string(gate.verdict) + " at " + to_string(x0));
}

}  // namespace

SolveResult picard_solve(const MetricSpaceInstance& space, const SelfMap& t, const Point& x0,
                         const std::optional<ContractionSpec>& spec, StopRule stop) {
    SolveResult result = picard_core(space, t, x0, stop);
    if (spec_has_scale(spec)) append_geometric_envelope_checks(result, spec->tau());
    return result;
}

SolveResult alternating_solve(const MetricSpaceInstance& space, const SelfMap& t,
                              const SelfMap& s, const Point& x0,
                              const std::optional<ContractionSpec>& spec, StopRule stop) {
    auto probe = [&](const Point& x) {
        const double via_t = norm(space.distance(x, t.apply_checked(x)));
        const double via_s = norm(space.distance(x, s.apply_checked(x)));
        return std::max(via_t, via_s);
    };
    auto advance = [&](const Point& x, std::size_t k) {
        // Even appends apply s (x1 = s x0), odd appends apply t.
        return (k % 2 == 0) ? s.apply_checked(x) : t.apply_checked(x);
    };
    SolveResult result = finish(space, run_iteration(space, x0, stop, probe, advance));
    if (spec_has_scale(spec)) append_geometric_envelope_checks(result, spec->tau());
    return result;
}

SolveResult r_interpolative_solve(const MetricSpaceInstance& space, const SelfMap& t,
                                  const SelfMap& r, const PointMap& r_solve, const Point& x0,
                                  const std::optional<ContractionSpec>& spec, StopRule stop) {
    if (!r_solve) throw BadParametersError("r_solve must be callable");
    std::vector<Point> images;  // t's image sequence, one entry per advance
    auto probe = [&](const Point& x) {
        return norm(space.distance(r.apply_checked(x), t.apply_checked(x)));
    };
    auto advance = [&](const Point& x, std::size_t k) {
        const Point y = t.apply_checked(x);
        const Point next = r_solve(y);
        if (k < 10) {
            const Point back = r.apply_checked(next);
            if (point_distance(back, y) > 1e-9)
                throw BadInverseError("r_solve is not a right inverse of '" + r.name + "' at " +
                                      to_string(y) + " (came back as " + to_string(back) + ")");
        }
        images.push_back(y);
        return next;
    };
    SolveResult result = finish(space, run_iteration(space, x0, stop, probe, advance));
    if (spec_has_scale(spec)) {
        for (std::size_t n = 1; n + 1 < images.size(); ++n)
            result.bound_checks.push_back(
                leq(space.distance(images[n + 1], images[n]),
                    scale(space.distance(images[n], images[n - 1]), spec->tau())));
    }
    return result;
}

SolveResult reich_solve(const MetricSpaceInstance& space, const SelfMap& t, const Point& x0,
                        const ContractionSpec& spec, StopRule stop) {
    if (spec.kind() != ConditionKind::ReichType)
        throw BadParametersError("reich_solve needs a ReichType spec");
    require_start_dominated_by_unit(space, t, x0);
    SolveResult result = picard_core(space, t, x0, stop);
    const AlgebraElement unit = AlgebraElement::unit(space.algebra());
    const double exponent_scale = 1.0 / (1.0 - spec.eta());
    const auto& steps = result.trace.steps;
    for (std::size_t n = 1; n < steps.size(); ++n)
        result.bound_checks.push_back(leq(
            steps[n],
            scale(unit, std::pow(spec.tau(), static_cast<double>(n) * exponent_scale))));
    return result;
}

SolveResult weak_solve(const MetricSpaceInstance& space, const SelfMap& t, const Point& x0,
                       const ContractionSpec& spec, StopRule stop) {
    if (spec.kind() != ConditionKind::WeakReich)
        throw BadParametersError("weak_solve needs a WeakReich spec");
    require_start_dominated_by_unit(space, t, x0);
    SolveResult result = picard_core(space, t, x0, stop);
    const auto& steps = result.trace.steps;
    for (std::size_t n = 1; n < steps.size(); ++n)
        result.bound_checks.push_back(leq(steps[n], steps[n - 1]));
    return result;
}

UniquenessReport uniqueness_probe(const MetricSpaceInstance& space, const SelfMap& t,
                                  SolverKind kind, const std::optional<ContractionSpec>& spec,
                                  std::size_t starts, std::uint64_t seed, StopRule stop) {
    if (starts < 2) throw BadParametersError("a uniqueness probe needs at least two starts");
    if (kind == SolverKind::RInterpolative)
        throw BadParametersError(
            "the probe cannot supply an inverse; run r_interpolative_solve directly");
    if ((kind == SolverKind::Reich || kind == SolverKind::Weak) && !spec.has_value())
        throw BadParametersError(std::string(to_string(kind)) + " solves need a spec");
    if (kind == SolverKind::Alternating &&
        (!spec.has_value() || spec->kind() != ConditionKind::KannanPair))
        throw BadParametersError("an alternating probe needs a two-map spec");

    std::mt19937_64 rng(seed);
    UniquenessReport report;
    std::vector<Point> limits;
    for (std::size_t i = 0; i < starts; ++i) {
        const Point start = space.domain().sample_point(rng);
        std::optional<SolveResult> run;
        try {
            switch (kind) {
                case SolverKind::Picard:
                    run = picard_solve(space, t, start, spec, stop);
                    break;
                case SolverKind::Alternating:
                    run = alternating_solve(space, t, spec->second_map(), start, spec, stop);
                    break;
                case SolverKind::Reich:
                    run = reich_solve(space, t, start, *spec, stop);
                    break;
                case SolverKind::Weak:
                    run = weak_solve(space, t, start, *spec, stop);
                    break;
                case SolverKind::RInterpolative:
                    break;  // rejected above
            }
        } catch (const PreconditionFailedError&) {
            ++report.failed_runs;
            continue;
        }
        if (run && run->status == SolveStatus::Converged)
            limits.push_back(*run->fixed_point);
        else
            ++report.failed_runs;
    }

    report.converged_runs = limits.size();
    for (std::size_t i = 0; i < limits.size(); ++i)
        for (std::size_t j = i + 1; j < limits.size(); ++j)
            report.max_spread = std::max(report.max_spread, point_distance(limits[i], limits[j]));
    std::vector<Point> representatives;
    for (const Point& p : limits) {
        const bool known = std::any_of(representatives.begin(), representatives.end(),
                                       [&](const Point& q) { return point_distance(p, q) <= 1e-7; });
        if (!known) representatives.push_back(p);
    }
    report.cluster_count = representatives.size();
    report.unique = !limits.empty() && report.max_spread <= 1e-7;
    return report;
}

std::vector<Point> brute_force_fixed_points(const MetricSpaceInstance& space, const SelfMap& t) {
    if (!space.domain().is_finite())
        throw BadParametersError("an exhaustive fixed-point scan needs a finite domain");
    std::vector<Point> out;
    const int n = space.domain().finite_size();
    for (int i = 0; i < n; ++i) {
        const Point p = Point::finite(i);
        if (t.apply_checked(p) == p) out.push_back(p);
    }
    return out;
}

}  // namespace cstarfix
