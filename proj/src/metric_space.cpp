#include "cstarfix/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace cstarfix {

namespace {

std::string format_number(double x) {
    std::ostringstream os;
    os.precision(15);
    os << x;
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Points
// ---------------------------------------------------------------------------

int Point::index() const {
    if (!is_finite_index()) throw Error("index() on a Euclidean point");
    return std::get<int>(data_);
}

const std::vector<double>& Point::coords() const {
    if (is_finite_index()) throw Error("coords() on a finite-set point");
    return std::get<std::vector<double>>(data_);
}

double Point::scalar_value() const {
    const auto& c = coords();
    if (c.size() != 1) throw Error("scalar_value() on a point of dimension > 1");
    return c[0];
}

double point_distance(const Point& a, const Point& b) {
    if (a.is_finite_index() != b.is_finite_index())
        throw DescriptorMismatchError("point_distance across point kinds");
    if (a.is_finite_index()) return a.index() == b.index() ? 0.0 : 1.0;
    const auto& x = a.coords();
    const auto& y = b.coords();
    if (x.size() != y.size())
        throw DescriptorMismatchError("point_distance across dimensions");
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += (x[i] - y[i]) * (x[i] - y[i]);
    return std::sqrt(sum);
}

std::string to_string(const Point& p) {
    std::ostringstream os;
    os.precision(15);
    if (p.is_finite_index()) {
        os << "#" << p.index();
    } else if (p.coords().size() == 1) {
        os << p.coords()[0];
    } else {
        os << "(";
        for (std::size_t i = 0; i < p.coords().size(); ++i) {
            if (i) os << ", ";
            os << p.coords()[i];
        }
        os << ")";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

DomainDescriptor::DomainDescriptor(std::variant<EuclideanRegion, FiniteSet> data)
    : data_(std::move(data)) {}

DomainDescriptor DomainDescriptor::euclidean(EuclideanRegion region) {
    if (region.dim < 1) throw BadParametersError("Euclidean region dimension must be >= 1");
    if (!region.member || !region.sample)
        throw BadParametersError("Euclidean region needs a membership predicate and a sampler");
    for (const Point& p : region.probe_points) {
        if (p.is_finite_index() || static_cast<int>(p.coords().size()) != region.dim ||
            !region.member(p.coords()))
            throw BadParametersError("probe point is not a member of its own region");
    }
    return DomainDescriptor(std::move(region));
}

DomainDescriptor DomainDescriptor::finite(std::vector<std::string> labels) {
    if (labels.empty() || labels.size() > 4096)
        throw BadParametersError("finite domain needs between 1 and 4096 labels");
    return DomainDescriptor(FiniteSet{std::move(labels)});
}

bool DomainDescriptor::is_finite() const noexcept {
    return std::holds_alternative<FiniteSet>(data_);
}

const EuclideanRegion& DomainDescriptor::region() const {
    if (is_finite()) throw Error("region() on a finite domain");
    return std::get<EuclideanRegion>(data_);
}

const FiniteSet& DomainDescriptor::finite_set() const {
    if (!is_finite()) throw Error("finite_set() on a Euclidean domain");
    return std::get<FiniteSet>(data_);
}

int DomainDescriptor::finite_size() const {
    return static_cast<int>(finite_set().labels.size());
}

bool DomainDescriptor::contains(const Point& p) const {
    if (is_finite()) {
        if (!p.is_finite_index()) return false;
        return p.index() >= 0 && p.index() < finite_size();
    }
    const auto& r = std::get<EuclideanRegion>(data_);
    if (p.is_finite_index()) return false;
    if (static_cast<int>(p.coords().size()) != r.dim) return false;
    return r.member(p.coords());
}

Point DomainDescriptor::sample_point(std::mt19937_64& rng) const {
    if (is_finite()) {
        std::uniform_int_distribution<int> pick(0, finite_size() - 1);
        return Point::finite(pick(rng));
    }
    const auto& r = std::get<EuclideanRegion>(data_);
    std::vector<double> coords = r.sample(rng);
    if (static_cast<int>(coords.size()) != r.dim || !r.member(coords))
        throw SamplerFailureError("domain sampler produced a non-member point");
    return Point::euclidean(std::move(coords));
}

const std::vector<Point>& DomainDescriptor::probes() const {
    if (is_finite()) return no_probes_;
    return std::get<EuclideanRegion>(data_).probe_points;
}

// ---------------------------------------------------------------------------
// Spaces
// ---------------------------------------------------------------------------

MetricSpaceInstance::MetricSpaceInstance(DomainDescriptor domain, AlgebraDescriptor algebra,
                                         MetricFn metric)
    : domain_(std::move(domain)), algebra_(algebra), metric_(std::move(metric)) {
    algebra_.validate();
    if (!metric_) throw BadParametersError("metric function must be callable");
}

MetricSpaceInstance MetricSpaceInstance::finite_table(std::vector<std::string> labels,
                                                      AlgebraDescriptor algebra,
                                                      std::vector<AlgebraElement> table) {
    const std::size_t n = labels.size();
    if (table.size() != n * n)
        throw BadParametersError("finite metric table must have one entry per ordered pair");
    for (const AlgebraElement& e : table)
        if (!(e.descriptor() == algebra))
            throw DescriptorMismatchError("finite table entry disagrees with the space algebra");
    auto shared = std::make_shared<std::vector<AlgebraElement>>(std::move(table));
    auto lookup = [shared, n](const Point& x, const Point& y) -> AlgebraElement {
        return (*shared)[static_cast<std::size_t>(x.index()) * n + y.index()];
    };
    return MetricSpaceInstance(DomainDescriptor::finite(std::move(labels)), algebra,
                               std::move(lookup));
}

AlgebraElement MetricSpaceInstance::distance(const Point& x, const Point& y) const {
    AlgebraElement value = metric_(x, y);
    if (!(value.descriptor() == algebra_))
        throw DescriptorMismatchError("metric returned a value outside the space algebra");
    return value;
}

// ---------------------------------------------------------------------------
// Axiom verification
// ---------------------------------------------------------------------------

std::vector<const ViolationWitness*> AxiomReport::violations() const {
    std::vector<const ViolationWitness*> out;
    for (const auto* w : {&identity, &symmetry, &triangle, &positivity})
        if (w->has_value()) out.push_back(&w->value());
    return out;
}

namespace {

constexpr double kZeroNormThreshold = 1e-12;
constexpr double kPointCoincidence = 1e-9;

struct AxiomChecks {
    const MetricSpaceInstance& space;
    AxiomReport& rep;

    void single(const Point& x) {
        ++rep.samples_tested;
        const AlgebraElement v = space.distance(x, x);
        const double n = norm(v);
        if (n > kZeroNormThreshold && !rep.identity) {
            rep.identity = ViolationWitness{
                "identity", {x, x}, {v},
                "d(x,x) has norm " + format_number(n) + " at x = " + to_string(x)};
        }
    }

    void pair(const Point& x, const Point& y) {
        ++rep.samples_tested;
        const AlgebraElement dxy = space.distance(x, y);
        const AlgebraElement dyx = space.distance(y, x);
        const double nxy = norm(dxy);
        if (!rep.positivity && !is_positive(dxy)) {
            rep.positivity = ViolationWitness{
                "positivity", {x, y}, {dxy}, "d(x,y) is not a positive element"};
        }
        if (!rep.symmetry &&
            norm(subtract(dxy, dyx)) > kZeroNormThreshold * std::max(1.0, nxy)) {
            rep.symmetry = ViolationWitness{
                "symmetry", {x, y}, {dxy, dyx}, "d(x,y) and d(y,x) differ"};
        }
        if (!rep.identity && nxy <= kZeroNormThreshold &&
            point_distance(x, y) > kPointCoincidence) {
            rep.identity = ViolationWitness{
                "identity", {x, y}, {dxy},
                "d(x,y) vanishes for distinct points " + to_string(x) + " and " +
                    to_string(y)};
        }
    }

    void triple(const Point& x, const Point& u, const Point& y) {
        ++rep.samples_tested;
        const AlgebraElement lhs = space.distance(x, y);
        const AlgebraElement via1 = space.distance(x, u);
        const AlgebraElement via2 = space.distance(u, y);
        const OrderResult res = leq(lhs, add(via1, via2));
        if (!res.holds() && !rep.triangle) {
            std::string detail = "d(x,y) is not dominated by d(x,u) + d(u,y)";
            if (res.ill_posed()) detail += " (comparison ill posed)";
            if (res.witness_eigenvalue)
                detail += ", witness eigenvalue " + format_number(*res.witness_eigenvalue);
            rep.triangle = ViolationWitness{"triangle", {x, u, y}, {lhs, via1, via2}, detail};
        }
    }
};

}  // namespace

AxiomReport verify_axioms(const MetricSpaceInstance& space, std::size_t sample_count,
                          std::uint64_t seed) {
    if (sample_count < 1) throw BadParametersError("sample_count must be at least 1");
    const DomainDescriptor& dom = space.domain();
    AxiomReport rep;
    AxiomChecks checks{space, rep};
    std::mt19937_64 rng(seed);

    if (dom.is_finite() && dom.finite_size() <= 64) {
        rep.exhaustive = true;
        const int n = dom.finite_size();
        for (int i = 0; i < n; ++i) checks.single(Point::finite(i));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) checks.pair(Point::finite(i), Point::finite(j));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    checks.triple(Point::finite(i), Point::finite(j), Point::finite(k));
        space.store_axiom_report(rep);
        return rep;
    }

    const std::vector<Point>& probes = dom.probes();
    for (const Point& p : probes) checks.single(p);
    for (const Point& p : probes)
        for (const Point& q : probes) checks.pair(p, q);
    for (const Point& p : probes)
        for (const Point& q : probes)
            for (const Point& r : probes) checks.triple(p, q, r);

    for (std::size_t s = 0; s < sample_count; ++s) checks.single(dom.sample_point(rng));
    for (std::size_t s = 0; s < sample_count; ++s)
        checks.pair(dom.sample_point(rng), dom.sample_point(rng));
    for (std::size_t s = 0; s < sample_count; ++s)
        checks.triple(dom.sample_point(rng), dom.sample_point(rng), dom.sample_point(rng));

    space.store_axiom_report(rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Sequences
// ---------------------------------------------------------------------------

SequenceRecord make_record(const MetricSpaceInstance& space, std::vector<Point> points) {
    SequenceRecord rec;
    rec.points = std::move(points);
    if (rec.points.size() < 2) return rec;
    rec.steps.reserve(rec.points.size() - 1);
    rec.step_norms.reserve(rec.points.size() - 1);
    for (std::size_t k = 0; k + 1 < rec.points.size(); ++k) {
        rec.steps.push_back(space.distance(rec.points[k], rec.points[k + 1]));
        rec.step_norms.push_back(norm(rec.steps.back()));
    }
    return rec;
}

double geometric_tail_bound(const SequenceRecord& record, double delta, std::size_t m) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw BadParametersError("delta must lie in [0, 1)");
    if (record.step_norms.empty())
        throw BadParametersError("tail bound needs at least one recorded step");
    return std::pow(delta, static_cast<double>(m)) / (1.0 - delta) * record.step_norms[0];
}

Lemma1Report lemma1_check(const SequenceRecord& record, double delta) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw BadParametersError("delta must lie in [0, 1)");
    if (record.steps.size() < 2)
        throw BadParametersError("step-domination check needs at least two steps");

    Lemma1Report rep;
    rep.consistent = true;
    for (std::size_t n = 1; n < record.steps.size(); ++n) {
        const OrderResult res = leq(record.steps[n], scale(record.steps[n - 1], delta));
        if (!res.holds()) {
            rep.consistent = false;
            rep.first_failure = n;
            break;
        }
    }
    rep.midpoint = record.steps.size() / 2;
    rep.tail_bound = geometric_tail_bound(record, delta, rep.midpoint);
    return rep;
}

bool is_cauchy_empirically(const MetricSpaceInstance& space, const SequenceRecord& record,
                           double epsilon) {
    const std::size_t len = record.points.size();
    if (len < 2) return true;
    std::size_t tail_start = len - len / 4;
    tail_start = std::min(tail_start, len - 2);
    double worst = 0.0;
    for (std::size_t i = tail_start; i < len; ++i)
        for (std::size_t j = i + 1; j < len; ++j)
            worst = std::max(worst, norm(space.distance(record.points[i], record.points[j])));
    return worst < epsilon;
}

}  // namespace cstarfix
