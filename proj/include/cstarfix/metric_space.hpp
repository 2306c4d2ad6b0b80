#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "cstarfix/algebra.hpp"
#include "cstarfix/errors.hpp"

namespace cstarfix {

// ---------------------------------------------------------------------------
// Points and domains
// ---------------------------------------------------------------------------

/// A domain point: either a Euclidean coordinate vector or an index into a
/// finite labeled set.
class Point {
public:
    static Point scalar(double x) { return Point(std::vector<double>{x}); }
    static Point euclidean(std::vector<double> coords) { return Point(std::move(coords)); }
    static Point finite(int index) { return Point(index); }

    [[nodiscard]] bool is_finite_index() const noexcept {
        return std::holds_alternative<int>(data_);
    }
    /// Finite-set index; throws Error for Euclidean points.
    [[nodiscard]] int index() const;
    /// Coordinate vector; throws Error for finite-set points.
    [[nodiscard]] const std::vector<double>& coords() const;
    /// Sole coordinate of a one-dimensional point; throws Error otherwise.
    [[nodiscard]] double scalar_value() const;

    friend bool operator==(const Point&, const Point&) = default;

private:
    explicit Point(std::vector<double> coords) : data_(std::move(coords)) {}
    explicit Point(int index) : data_(index) {}
    std::variant<std::vector<double>, int> data_;
};

/// A bare point transformation with no attached domain (unlike SelfMap).
using PointMap = std::function<Point(const Point&)>;

/// Euclidean distance between coordinate points; the discrete 0/1 distance
/// between finite-set points. Throws DescriptorMismatchError across kinds.
[[nodiscard]] double point_distance(const Point& a, const Point& b);

/// Compact rendering like "3.5", "(1, 2)", or "#4" for diagnostics.
[[nodiscard]] std::string to_string(const Point& p);

/// A connected region of R^dim given by a membership predicate and a sampler.
struct EuclideanRegion {
    int dim = 1;
    std::function<bool(const std::vector<double>&)> member;
    /// Produces member coordinates; output is validated on every draw.
    std::function<std::vector<double>(std::mt19937_64&)> sample;
    /// Canonical members checked before any random sampling so that witnesses
    /// are deterministic.
    std::vector<Point> probe_points;
    std::string description;
};

/// An explicit point set addressed by index.
struct FiniteSet {
    std::vector<std::string> labels;  // between 1 and 4096 entries
};

class DomainDescriptor {
public:
    static DomainDescriptor euclidean(EuclideanRegion region);
    static DomainDescriptor finite(std::vector<std::string> labels);

    [[nodiscard]] bool is_finite() const noexcept;
    [[nodiscard]] const EuclideanRegion& region() const;
    [[nodiscard]] const FiniteSet& finite_set() const;
    [[nodiscard]] int finite_size() const;

    /// Kind, shape, and membership check in one call.
    [[nodiscard]] bool contains(const Point& p) const;

    /// Draws a member point. Throws SamplerFailureError when the region's
    /// sampler emits a point that fails its own membership predicate.
    [[nodiscard]] Point sample_point(std::mt19937_64& rng) const;

    /// Probe points for Euclidean regions; empty for finite sets.
    [[nodiscard]] const std::vector<Point>& probes() const;

private:
    explicit DomainDescriptor(std::variant<EuclideanRegion, FiniteSet> data);
    std::variant<EuclideanRegion, FiniteSet> data_;
    std::vector<Point> no_probes_;
};

// ---------------------------------------------------------------------------
// Spaces and axiom reports
// ---------------------------------------------------------------------------

/// A single recorded axiom failure: the exact points involved and the metric
/// values that expose the failure.
struct ViolationWitness {
    std::string axiom;  // "identity", "symmetry", "triangle", "positivity"
    std::vector<Point> points;
    std::vector<AlgebraElement> values;
    std::string detail;
};

struct AxiomReport {
    std::size_t samples_tested = 0;
    bool exhaustive = false;
    std::optional<ViolationWitness> identity;
    std::optional<ViolationWitness> symmetry;
    std::optional<ViolationWitness> triangle;
    std::optional<ViolationWitness> positivity;

    [[nodiscard]] bool all_pass() const noexcept {
        return !identity && !symmetry && !triangle && !positivity;
    }
    /// Non-empty witnesses in fixed axiom order.
    [[nodiscard]] std::vector<const ViolationWitness*> violations() const;
};

/// A set of points together with a metric into the positive cone of one
/// algebra. Immutable after construction apart from the cached axiom report.
class MetricSpaceInstance {
public:
    using MetricFn = std::function<AlgebraElement(const Point&, const Point&)>;

    MetricSpaceInstance(DomainDescriptor domain, AlgebraDescriptor algebra,
                        MetricFn metric);

    /// Finite space with a fully tabulated metric, row-major by point index.
    static MetricSpaceInstance finite_table(std::vector<std::string> labels,
                                            AlgebraDescriptor algebra,
                                            std::vector<AlgebraElement> table);

    [[nodiscard]] const DomainDescriptor& domain() const noexcept { return domain_; }
    [[nodiscard]] const AlgebraDescriptor& algebra() const noexcept { return algebra_; }

    /// Metric evaluation; validates that the output lives in the declared
    /// algebra. Points are not domain-checked here: formal evaluation outside
    /// the domain is legitimate for diagnostics.
    [[nodiscard]] AlgebraElement distance(const Point& x, const Point& y) const;

    [[nodiscard]] const std::optional<AxiomReport>& axiom_report() const noexcept {
        return report_;
    }
    void store_axiom_report(AxiomReport report) const { report_ = std::move(report); }

private:
    DomainDescriptor domain_;
    AlgebraDescriptor algebra_;
    MetricFn metric_;
    mutable std::optional<AxiomReport> report_;
};

/// Samples (or exhausts, for finite sets of at most 64 points) the three
/// metric axioms plus positivity. Probe points are checked before random
/// draws. The report is stored into the instance and returned.
AxiomReport verify_axioms(const MetricSpaceInstance& space, std::size_t sample_count,
                          std::uint64_t seed);

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

/// An iterate sequence with its successive metric steps d(x_k, x_{k+1}).
struct SequenceRecord {
    std::vector<Point> points;
    std::vector<AlgebraElement> steps;
    std::vector<double> step_norms;
};

/// Builds the steps and their norms for a given point sequence.
[[nodiscard]] SequenceRecord make_record(const MetricSpaceInstance& space,
                                         std::vector<Point> points);

struct Lemma1Report {
    bool consistent = false;
    std::optional<std::size_t> first_failure;  // step index of the first broken ratio
    std::size_t midpoint = 0;                  // m at which tail_bound is evaluated
    double tail_bound = 0.0;                   // delta^m / (1 - delta) * ||step 0||
};

/// Geometric tail sum delta^m / (1 - delta) * norm(steps[0]) for an explicit m.
[[nodiscard]] double geometric_tail_bound(const SequenceRecord& record, double delta,
                                          std::size_t m);

/// Checks the step-domination chain leq(steps[n], delta * steps[n-1]) for every
/// n >= 1 and evaluates the geometric tail bound at the record's midpoint.
/// Requires at least two steps and delta in [0, 1).
[[nodiscard]] Lemma1Report lemma1_check(const SequenceRecord& record, double delta);

/// True when every tail pair (indices in the last quarter of the record) has
/// metric norm strictly below epsilon.
[[nodiscard]] bool is_cauchy_empirically(const MetricSpaceInstance& space,
                                         const SequenceRecord& record, double epsilon);

}  // namespace cstarfix
