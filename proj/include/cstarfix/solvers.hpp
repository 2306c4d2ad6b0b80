#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cstarfix/contraction.hpp"

namespace cstarfix {

// ---------------------------------------------------------------------------
// Stop rules and results
// ---------------------------------------------------------------------------

struct StopRule {
    /// Convergence probe threshold: iteration stops once the probe value
    /// (a step or residual norm, per solver) drops to this or below.
    double step_norm_epsilon = 1e-10;
    std::size_t max_iterations = 100000;
};

/// IllPosedOrder is reserved for order breakdowns that prevent any verdict;
/// the shipped solvers record ill-posed envelope comparisons in bound_checks
/// and keep iterating instead of aborting.
enum class SolveStatus { Converged, MaxIterations, DomainExit, IllPosedOrder };

const char* to_string(SolveStatus status) noexcept;

enum class SolverKind { Picard, Alternating, RInterpolative, Reich, Weak };

const char* to_string(SolverKind kind) noexcept;

/// Outcome of one iterative solve. The trace always survives: a domain escape
/// is a status with the partial trace (including the escaping point), never an
/// exception that discards work already done.
struct SolveResult {
    SolveStatus status = SolveStatus::MaxIterations;
    std::optional<Point> fixed_point;  // set only on Converged
    SequenceRecord trace;
    /// Convergence probe value at the final point; infinity when the probe
    /// itself could not be evaluated there.
    double residual = 0.0;
    /// Geometric fit of the step norms over the last half of the trace:
    /// exp(least-squares slope of log step norms). Zero when underdetermined.
    double empirical_rate = 0.0;
    /// One order comparison per step index n >= 1; the envelope compared
    /// against depends on the solver (see each operation).
    std::vector<OrderResult> bound_checks;
    std::size_t iterations = 0;        // successful map applications
    std::optional<Point> exit_point;   // set only on DomainExit
};

// ---------------------------------------------------------------------------
// Solvers
// ---------------------------------------------------------------------------

/// Iterates x_{n+1} = T x_n from x0. The probe is the step norm
/// ||d(x, Tx)||, checked before appending, so a fixed start yields a trace of
/// length 1. When a spec with a scale factor is given, bound_checks compare
/// each step against the geometric envelope tau^n * d(x0, x1).
/// Throws DomainExitError only when x0 itself is outside the space.
[[nodiscard]] SolveResult picard_solve(const MetricSpaceInstance& space, const SelfMap& t,
                                       const Point& x0,
                                       const std::optional<ContractionSpec>& spec = {},
                                       StopRule stop = {});

/// Interleaves the two maps starting with s (x1 = s x0, x2 = t x1, ...). The
/// probe is the larger of ||d(x, Tx)|| and ||d(x, Sx)||, so convergence means
/// a common fixed point within tolerance. With s == t this reproduces
/// picard_solve exactly, trace included.
[[nodiscard]] SolveResult alternating_solve(const MetricSpaceInstance& space,
                                            const SelfMap& t, const SelfMap& s,
                                            const Point& x0,
                                            const std::optional<ContractionSpec>& spec = {},
                                            StopRule stop = {});

/// Iterates x_{n+1} = r_solve(T x_n), i.e. solves R x_{n+1} = T x_n through
/// the supplied right inverse, which is validated on the first 10 iterations:
/// R(r_solve(y)) must land within 1e-9 of y or BadInverseError is thrown.
/// The probe is ||d(Rx, Tx)||. When a spec with a scale factor is given,
/// bound_checks compare consecutive image steps:
/// d(Tx_{n+1}, Tx_n) against tau * d(Tx_n, Tx_{n-1}).
[[nodiscard]] SolveResult r_interpolative_solve(const MetricSpaceInstance& space,
                                                const SelfMap& t, const SelfMap& r,
                                                const PointMap& r_solve, const Point& x0,
                                                const std::optional<ContractionSpec>& spec = {},
                                                StopRule stop = {});

/// Picard iteration gated by the start condition leq(d(x0, Tx0), I): anything
/// but Holds is rejected with PreconditionFailedError. Requires a ReichType
/// spec; bound_checks compare each step against tau^{n/(1-eta)} * I.
[[nodiscard]] SolveResult reich_solve(const MetricSpaceInstance& space, const SelfMap& t,
                                      const Point& x0, const ContractionSpec& spec,
                                      StopRule stop = {});

/// Picard iteration under the same start gate as reich_solve. Requires a
/// WeakReich spec; bound_checks record the per-step monotone non-increase
/// leq(d(x_n, x_{n+1}), d(x_{n-1}, x_n)), failures included.
[[nodiscard]] SolveResult weak_solve(const MetricSpaceInstance& space, const SelfMap& t,
                                     const Point& x0, const ContractionSpec& spec,
                                     StopRule stop = {});

// ---------------------------------------------------------------------------
// Fixed-point surveys
// ---------------------------------------------------------------------------

struct UniquenessReport {
    bool unique = false;
    std::size_t cluster_count = 0;   // 1e-7-linkage clusters of converged limits
    double max_spread = 0.0;         // largest pairwise distance between limits
    std::size_t converged_runs = 0;
    std::size_t failed_runs = 0;     // non-converged or precondition-rejected
};

/// Runs the chosen solver from `starts` sampled start points (starts >= 2) and
/// clusters the converged limits. unique is true iff at least one run
/// converged and all converged limits lie within 1e-7 of each other.
/// Alternating consumes the condition's second map; RInterpolative is not
/// supported here because it needs an explicit inverse (BadParametersError).
[[nodiscard]] UniquenessReport uniqueness_probe(const MetricSpaceInstance& space,
                                                const SelfMap& t, SolverKind kind,
                                                const std::optional<ContractionSpec>& spec,
                                                std::size_t starts, std::uint64_t seed,
                                                StopRule stop = {});

/// Exhaustive fixed-point scan over a finite domain: returns every point p
/// with T(p) == p, in index order. BadParametersError on non-finite domains.
[[nodiscard]] std::vector<Point> brute_force_fixed_points(const MetricSpaceInstance& space,
                                                          const SelfMap& t);

}  // namespace cstarfix
