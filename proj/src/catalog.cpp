#include "cstarfix/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <set>
#include <sstream>
#include <utility>

#include "cstarfix/errors.hpp"

namespace cstarfix {

std::string to_string(ExpectedOutcome outcome) {
    switch (outcome) {
        case ExpectedOutcome::CertifiesAndConverges: return "CertifiesAndConverges";
        case ExpectedOutcome::CertifiableDefect: return "CertifiableDefect";
        case ExpectedOutcome::ViolatesMetricAxiom: return "ViolatesMetricAxiom";
    }
    throw Error("unknown ExpectedOutcome");
}

namespace {

using Params = std::map<std::string, double>;

/// Reads parameters with per-entry defaults and rejects undeclared keys.
class ParamReader {
public:
    ParamReader(std::string entry, const Params& given)
        : entry_(std::move(entry)), given_(given) {}

    double get(const std::string& key, double fallback) {
        declared_.insert(key);
        const auto it = given_.find(key);
        if (it == given_.end()) return fallback;
        if (!std::isfinite(it->second))
            throw BadParametersError(entry_ + ": parameter '" + key + "' must be finite");
        return it->second;
    }

    /// Call after all get()s: any leftover key is a caller mistake.
    void finish() const {
        for (const auto& [key, value] : given_) {
            (void)value;
            if (declared_.find(key) == declared_.end())
                throw BadParametersError(entry_ + " does not accept parameter '" + key + "'");
        }
    }

private:
    std::string entry_;
    const Params& given_;
    std::set<std::string> declared_;
};

[[noreturn]] void reject(const std::string& entry, const std::string& why) {
    throw BadParametersError(entry + ": " + why);
}

std::uint64_t integral_seed(const std::string& entry, double value) {
    if (!(value >= 0) || value != std::floor(value) || value > 9.0e15)
        reject(entry, "seed must be a nonnegative integer");
    return static_cast<std::uint64_t>(value);
}

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

/// The whole real line; lo/hi only bound the sampling window.
DomainDescriptor line_domain(double lo, double hi, std::vector<double> probes) {
    EuclideanRegion region;
    region.dim = 1;
    region.member = [](const std::vector<double>&) { return true; };
    region.sample = [lo, hi](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(lo, hi);
        return std::vector<double>{u(rng)};
    };
    for (double p : probes) region.probe_points.push_back(Point::scalar(p));
    std::ostringstream os;
    os << "real line, sampled on (" << lo << ", " << hi << ")";
    region.description = os.str();
    return DomainDescriptor::euclidean(std::move(region));
}

/// Strict one-sided ray x > barrier; samples keep a safety margin.
DomainDescriptor ray_domain(double barrier, double sample_lo, double sample_hi,
                            std::vector<double> probes) {
    EuclideanRegion region;
    region.dim = 1;
    region.member = [barrier](const std::vector<double>& c) { return c[0] > barrier; };
    region.sample = [sample_lo, sample_hi](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(sample_lo, sample_hi);
        return std::vector<double>{u(rng)};
    };
    for (double p : probes) region.probe_points.push_back(Point::scalar(p));
    std::ostringstream os;
    os << "open ray (" << barrier << ", inf), sampled on (" << sample_lo << ", " << sample_hi
       << ")";
    region.description = os.str();
    return DomainDescriptor::euclidean(std::move(region));
}

DomainDescriptor plane_domain(double lo, double hi, std::vector<Point> probes) {
    EuclideanRegion region;
    region.dim = 2;
    region.member = [](const std::vector<double>&) { return true; };
    region.sample = [lo, hi](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(lo, hi);
        const double a = u(rng);
        const double b = u(rng);
        return std::vector<double>{a, b};
    };
    region.probe_points = std::move(probes);
    std::ostringstream os;
    os << "real plane, sampled on (" << lo << ", " << hi << ")^2";
    region.description = os.str();
    return DomainDescriptor::euclidean(std::move(region));
}

// ---------------------------------------------------------------------------
// Maps
// ---------------------------------------------------------------------------

DomainDescriptor whole_line() { return line_domain(-1e6, 1e6, {}); }

SelfMap affine_map(std::string name, double a, double b) {
    return SelfMap{std::move(name),
                   [a, b](const Point& p) { return Point::scalar(a * p.scalar_value() + b); },
                   whole_line()};
}

DomainDescriptor positive_ray() { return ray_domain(0.0, 0.01, 10.0, {}); }

SelfMap reciprocal_map() {
    return SelfMap{"reciprocal",
                   [](const Point& p) { return Point::scalar(1.0 / p.scalar_value()); },
                   positive_ray()};
}

SelfMap square_map() {
    return SelfMap{"square",
                   [](const Point& p) {
                       const double x = p.scalar_value();
                       return Point::scalar(x * x);
                   },
                   positive_ray()};
}

PointMap principal_root() {
    return [](const Point& p) { return Point::scalar(std::sqrt(p.scalar_value())); };
}

// ---------------------------------------------------------------------------
// Metrics
// ---------------------------------------------------------------------------

MetricSpaceInstance::MetricFn abs_diff_metric(AlgebraDescriptor alg) {
    return [alg](const Point& x, const Point& y) {
        return AlgebraElement::diagonal(alg,
                                        {std::abs(x.scalar_value() - y.scalar_value())});
    };
}

MetricSpaceInstance::MetricFn two_component_metric(AlgebraDescriptor alg, double c) {
    return [alg, c](const Point& x, const Point& y) {
        const double s = std::abs(x.scalar_value() - y.scalar_value());
        return AlgebraElement::diagonal(alg, {s, c * s});
    };
}

/// The displayed-defect metric ((x + y)^2, 0): never zero on the shipped ray.
MetricSpaceInstance::MetricFn sum_square_metric(AlgebraDescriptor alg) {
    return [alg](const Point& x, const Point& y) {
        const double s = x.scalar_value() + y.scalar_value();
        return AlgebraElement::diagonal(alg, {s * s, 0.0});
    };
}

AlgebraElement scaled_matrix(const AlgebraDescriptor& desc, double factor, double a11,
                             double a12, double a22) {
    using C = std::complex<double>;
    return AlgebraElement::matrix(
        desc, {C(factor * a11), C(factor * a12), C(factor * a12), C(factor * a22)});
}

MetricSpaceInstance::MetricFn matrix_scaled_metric(AlgebraDescriptor desc, double a11,
                                                   double a12, double a22) {
    return [desc, a11, a12, a22](const Point& x, const Point& y) {
        const double s = std::abs(x.scalar_value() - y.scalar_value());
        return scaled_matrix(desc, s, a11, a12, a22);
    };
}

/// |x1-y1| * A + |x2-y2| * B with non-commuting A, B.
MetricSpaceInstance::MetricFn two_block_metric(AlgebraDescriptor desc) {
    return [desc](const Point& x, const Point& y) {
        const auto& cx = x.coords();
        const auto& cy = y.coords();
        const AlgebraElement first =
            scaled_matrix(desc, std::abs(cx[0] - cy[0]), 2.0, 1.0, 2.0);
        const AlgebraElement second =
            scaled_matrix(desc, std::abs(cx[1] - cy[1]), 3.0, 0.0, 1.0);
        return add(first, second);
    };
}

// ---------------------------------------------------------------------------
// Entry builders
// ---------------------------------------------------------------------------

CatalogEntry build_affine_pair(const Params& params) {
    ParamReader reader("affine_pair", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    SelfMap t = affine_map("third_shift", 1.0 / 3.0, 2.0);
    SelfMap s = affine_map("quarter_shift", 0.25, 2.25);
    ContractionSpec spec = ContractionSpec::kannan_pair(0.75, 0.3, 0.3, s);
    MetricSpaceInstance space(line_domain(-50.0, 50.0, {30.0, 1.0}), alg,
                              abs_diff_metric(alg));
    return CatalogEntry{
        "affine_pair",
        std::move(space),
        std::move(t),
        std::move(s),
        {},
        nullptr,
        std::move(spec),
        ExpectedOutcome::CertifiableDefect,
        "the pair condition fails at wide separations (probe pair (30, 1) is a witness); "
        "the alternating iteration still reaches the common fixed point 3",
        true,
        Point::scalar(20.0),
        "Two affine maps sharing the fixed point 3. Alternating between them converges "
        "from every start, while certifying the published pair spec deterministically "
        "finds violations thanks to the pinned probe points."};
}

CatalogEntry build_affine_scalar(const Params& params) {
    ParamReader reader("affine_scalar", params);
    const double a = reader.get("a", 0.5);
    const double b = reader.get("b", 1.0);
    reader.finish();
    if (!(std::abs(a) < 1.0)) reject("affine_scalar", "requires |a| < 1");
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    MetricSpaceInstance space(line_domain(-100.0, 100.0, {10.0}), alg,
                              abs_diff_metric(alg));
    return CatalogEntry{
        "affine_scalar",
        std::move(space),
        affine_map("affine", a, b),
        {},
        {},
        nullptr,
        ContractionSpec::reich_type(0.9, 0.98, 0.01, 0.02),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::scalar(10.0),
        "Scalar affine contraction with fixed point b / (1 - a). The near-unit exponent "
        "split keeps certification margins above ten percent everywhere away from the "
        "vacuity cutoff."};
}

CatalogEntry build_altering_identity(const Params& params) {
    ParamReader reader("altering_identity", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    PositiveFunction doubling = [](const AlgebraElement& a) { return scale(a, 2.0); };
    PositiveFunction identity = [](const AlgebraElement& a) { return a; };
    ContractionSpec spec = ContractionSpec::weak_reich(0.9, 0.05, 0.05, doubling, "double",
                                                       identity, "identity", alg);
    MetricSpaceInstance space(line_domain(0.4, 1.6, {0.4, 1.6}), alg,
                              abs_diff_metric(alg));
    return CatalogEntry{
        "altering_identity",
        std::move(space),
        affine_map("two_fifths", 0.4, 0.0),
        {},
        {},
        nullptr,
        std::move(spec),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::scalar(1.5),
        "Weakly contractive showcase whose altering function is the identity, paired "
        "with a doubling comparison. The comparison product carries displacement "
        "factors that vanish at the stationary point, so the sampling window sits "
        "above it; the worst pair is the pinned window-corner probe pair, at a 14% "
        "margin. Samples from the shipped window satisfy the unit start gate."};
}

CatalogEntry build_altering_paper_piecewise(const Params& params) {
    ParamReader reader("altering_paper_piecewise", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(2);
    PositiveFunction triple = [](const AlgebraElement& a) { return scale(a, 3.0); };
    PositiveFunction kinked = [](const AlgebraElement& a) {
        std::vector<double> out;
        for (double u : a.diag()) out.push_back(u <= 1.0 ? u : u * u);
        return AlgebraElement::diagonal(a.descriptor(), std::move(out));
    };
    ContractionSpec spec = ContractionSpec::weak_reich(0.9, 0.05, 0.05, triple, "triple",
                                                       kinked, "piecewise_square", alg);
    MetricSpaceInstance space(line_domain(0.1, 0.5, {0.1, 0.5}), alg,
                              two_component_metric(alg, 0.5));
    return CatalogEntry{
        "altering_paper_piecewise",
        std::move(space),
        affine_map("two_fifths", 0.4, 0.0),
        {},
        {},
        nullptr,
        std::move(spec),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::scalar(0.45),
        "Ships the piecewise altering function that is linear up to 1 and squares each "
        "component beyond it. The window sits above the stationary point (where the "
        "comparison product would vanish) and keeps in-condition values below the "
        "kink; the kink itself is exercised by the altering-distance checks."};
}

CatalogEntry build_corollary_linear(const Params& params) {
    ParamReader reader("corollary_linear", params);
    const double k = reader.get("k", 0.5);
    reader.finish();
    if (!(k > 0.0 && k < 1.0)) reject("corollary_linear", "requires k in (0, 1)");
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    PositiveFunction identity = [](const AlgebraElement& a) { return a; };
    PositiveFunction shrink = [k](const AlgebraElement& a) { return scale(a, 1.0 - k); };
    ContractionSpec spec = ContractionSpec::weak_reich(0.9, 0.05, 0.05, identity,
                                                       "identity", shrink,
                                                       "one_minus_k_scale", alg);
    MetricSpaceInstance space(line_domain(0.4, 1.6, {0.4, 1.6}), alg,
                              abs_diff_metric(alg));
    return CatalogEntry{
        "corollary_linear",
        std::move(space),
        affine_map("shrink", 0.8 * k, 0.0),
        {},
        {},
        nullptr,
        std::move(spec),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::scalar(1.5),
        "With the altering function (1 - k) times the argument, the weak inequality "
        "reads d(Tx, Ty) <= k * P; the shipped map contracts at rate 0.8 k. The window "
        "sits above the stationary point so the displacement factors in P stay bounded "
        "away from zero, and the inequality then clears for every k in (0, 1), down to "
        "a 2% margin as k approaches 1. At the default k the whole sampling window "
        "passes the unit start gate."};
}

CatalogEntry build_finite_random_12(const Params& params) {
    ParamReader reader("finite_random_12", params);
    const std::uint64_t seed = integral_seed("finite_random_12", reader.get("seed", 7.0));
    reader.finish();

    constexpr int n = 12;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> weight(0.5, 2.5);
    // Symmetric two-component edge weights, zero diagonal.
    std::vector<std::array<double, 2>> table(n * n, {0.0, 0.0});
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int c = 0; c < 2; ++c) {
                const double w = weight(rng);
                table[i * n + j][c] = w;
                table[j * n + i][c] = w;
            }
    // Componentwise shortest-path closure enforces the triangle axiom. A single
    // pass can leave an entry one rounding step above a rebracketed path sum, so
    // iterate until a full pass changes nothing; the published table is then
    // bitwise idempotent under further closure.
    bool changed = true;
    while (changed) {
        changed = false;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int c = 0; c < 2; ++c) {
                        const double relaxed =
                            table[i * n + k][c] + table[k * n + j][c];
                        if (relaxed < table[i * n + j][c]) {
                            table[i * n + j][c] = relaxed;
                            changed = true;
                        }
                    }
    }
    std::vector<int> images(n);
    for (int i = 0; i < n; ++i) images[i] = static_cast<int>(rng() % n);

    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
    const auto alg = AlgebraDescriptor::diagonal_real(2);
    auto metric = [alg, table](const Point& x, const Point& y) {
        const auto& cell = table[static_cast<std::size_t>(x.index()) * n +
                                 static_cast<std::size_t>(y.index())];
        return AlgebraElement::diagonal(alg, {cell[0], cell[1]});
    };
    DomainDescriptor domain = DomainDescriptor::finite(std::move(labels));
    SelfMap t{"seeded_table",
              [images](const Point& p) { return Point::finite(images[p.index()]); }, domain};
    MetricSpaceInstance space(std::move(domain), alg, std::move(metric));
    return CatalogEntry{
        "finite_random_12",
        std::move(space),
        std::move(t),
        {},
        {},
        nullptr,
        ContractionSpec::tau_beta_eta_kannan(0.75, 0.4, 0.4),
        ExpectedOutcome::CertifiableDefect,
        "a seeded random table carries no contraction guarantee; the entry exists as an "
        "exhaustive oracle playground",
        true,
        Point::finite(0),
        "Twelve points with seeded random two-component distances repaired by "
        "shortest-path closure, plus a seeded self-map table. Small enough that "
        "certification and fixed-point search are exhaustive."};
}

CatalogEntry build_honest_r2(const Params& params) {
    ParamReader reader("honest_r2", params);
    const double c = reader.get("c", 0.5);
    reader.finish();
    if (!(c >= 0.01 && c <= 100.0)) reject("honest_r2", "requires c in [0.01, 100]");
    const auto alg = AlgebraDescriptor::diagonal_real(2);
    MetricSpaceInstance space(line_domain(-50.0, 50.0, {10.0}), alg,
                              two_component_metric(alg, c));
    return CatalogEntry{
        "honest_r2",
        std::move(space),
        affine_map("half_shift", 0.5, 1.0),
        {},
        {},
        nullptr,
        ContractionSpec::reich_type(0.9, 0.98, 0.01, 0.02),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::scalar(10.0),
        "The honest two-component counterpart of the displayed-defect showcase: "
        "d(x, y) = (|x - y|, c |x - y|) is a genuine metric into the two-dimensional "
        "diagonal algebra, and the affine map certifies and converges on it."};
}

CatalogEntry build_kannan_cubic(const Params& params) {
    ParamReader reader("kannan_cubic", params);
    reader.finish();
    constexpr int n = 81;
    std::vector<std::string> labels;
    std::vector<double> values;
    for (int i = 0; i < n; ++i) {
        labels.push_back("c" + std::to_string(i));
        const double base = i / 10.0;
        values.push_back(base * base * base);
    }
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    auto metric = [alg, values](const Point& x, const Point& y) {
        return AlgebraElement::diagonal(alg,
                                        {std::abs(values[x.index()] - values[y.index()])});
    };
    DomainDescriptor domain = DomainDescriptor::finite(std::move(labels));
    SelfMap t{"cube_collapse",
              [](const Point& p) { return Point::finite(p.index() >= 2 ? 1 : 0); }, domain};
    MetricSpaceInstance space(std::move(domain), alg, std::move(metric));
    return CatalogEntry{
        "kannan_cubic",
        std::move(space),
        std::move(t),
        {},
        {},
        nullptr,
        ContractionSpec::interpolative_kannan(0.75, 0.4),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::finite(80),
        "An 81-point lattice of cubes (i / 10)^3 whose two-level collapse map keeps "
        "every displacement bounded below, so the interpolative condition holds on all "
        "ordered pairs with at least a 63% margin. Orbits reach the fixed point in at "
        "most two applications."};
}

CatalogEntry build_matrix_scaled_affine(const Params& params) {
    ParamReader reader("matrix_scaled_affine", params);
    const double a = reader.get("a", 0.5);
    const double b = reader.get("b", 1.0);
    const double a11 = reader.get("a11", 2.0);
    const double a12 = reader.get("a12", 1.0);
    const double a22 = reader.get("a22", 2.0);
    reader.finish();
    if (!(std::abs(a) < 1.0)) reject("matrix_scaled_affine", "requires |a| < 1");
    if (!(a11 > 0.0 && a11 * a22 - a12 * a12 > 0.0))
        reject("matrix_scaled_affine", "the scaling matrix must be positive definite");
    const auto desc = AlgebraDescriptor::hermitian_matrix(2);
    MetricSpaceInstance space(line_domain(-100.0, 100.0, {10.0}), desc,
                              matrix_scaled_metric(desc, a11, a12, a22));
    return CatalogEntry{
        "matrix_scaled_affine",
        std::move(space),
        affine_map("affine", a, b),
        {},
        {},
        nullptr,
        ContractionSpec::reich_type(0.9, 0.98, 0.01, 0.02),
        ExpectedOutcome::CertifiesAndConverges,
        "",
        true,
        Point::scalar(10.0),
        "The scalar affine contraction measured through |x - y| times a fixed positive "
        "matrix, so every comparison is a genuine 2x2 ordering. All metric values "
        "commute, which keeps strict-mode products well posed."};
}

CatalogEntry build_noncommutative_affine(const Params& params) {
    ParamReader reader("noncommutative_affine", params);
    reader.finish();
    const auto desc = AlgebraDescriptor::hermitian_matrix(2);
    DomainDescriptor domain = plane_domain(
        -20.0, 20.0, {Point::euclidean({5.0, 1.0}), Point::euclidean({1.0, 4.0})});
    SelfMap t{"plane_affine",
              [](const Point& p) {
                  const auto& c = p.coords();
                  return Point::euclidean({c[0] / 2.0 + 1.0, c[1] / 2.0});
              },
              domain};
    MetricSpaceInstance space(std::move(domain), desc, two_block_metric(desc));
    return CatalogEntry{
        "noncommutative_affine",
        std::move(space),
        std::move(t),
        {},
        {},
        nullptr,
        ContractionSpec::reich_type(0.9, 0.98, 0.01, 0.02),
        ExpectedOutcome::CertifiableDefect,
        "raw products of the non-commuting metric values are not Hermitian, so "
        "strict-mode comparisons are ill-posed; the symmetrized mode certifies",
        true,
        Point::euclidean({15.0, -10.0}),
        "A plane contraction whose metric mixes two non-commuting positive matrices. "
        "Strict products fail the Hermitian check on essentially every sampled pair, "
        "while the symmetrized sandwich certifies with about a 24% eigenvalue margin."};
}

CatalogEntry build_paper_example_kannan(const Params& params) {
    ParamReader reader("paper_example_kannan", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(2);
    MetricSpaceInstance space(ray_domain(2.0, 2.001, 40.0, {3.0, 4.0}), alg,
                              sum_square_metric(alg));
    return CatalogEntry{
        "paper_example_kannan",
        std::move(space),
        reciprocal_map(),
        {},
        {},
        nullptr,
        ContractionSpec::interpolative_kannan(0.75, 0.4),
        ExpectedOutcome::ViolatesMetricAxiom,
        "the identity axiom fails: the self-distance at 3 is (36, 0)",
        false,
        Point::scalar(3.0),
        "Showcase kept verbatim with its defects: every self-distance of the displayed "
        "metric is positive, and the reciprocal map leaves the ray after one step. The "
        "published condition itself certifies with a wide margin."};
}

CatalogEntry build_paper_example_r_interpolative(const Params& params) {
    ParamReader reader("paper_example_r_interpolative", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(2);
    SelfMap r = square_map();
    ContractionSpec spec = ContractionSpec::r_interpolative(0.75, 0.4, r);
    MetricSpaceInstance space(ray_domain(2.0, 2.001, 40.0, {3.0, 4.0}), alg,
                              sum_square_metric(alg));
    return CatalogEntry{
        "paper_example_r_interpolative",
        std::move(space),
        reciprocal_map(),
        {},
        std::move(r),
        principal_root(),
        std::move(spec),
        ExpectedOutcome::CertifiableDefect,
        "the domain is not invariant: the chained iteration leaves the ray immediately",
        false,
        Point::scalar(3.0),
        "Companion showcase on the same defective ray: the condition measured through "
        "the squaring map certifies easily, but iterating x -> sqrt(1 / x) exits the "
        "domain at once. Its honest positive-ray counterpart converges instead."};
}

CatalogEntry build_r_interpolative_positive(const Params& params) {
    ParamReader reader("r_interpolative_positive", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    SelfMap r = square_map();
    ContractionSpec spec = ContractionSpec::r_interpolative(0.75, 0.5, r);
    MetricSpaceInstance space(ray_domain(0.0, 0.01, 10.0, {1.05, 0.7, 3.0}), alg,
                              abs_diff_metric(alg));
    return CatalogEntry{
        "r_interpolative_positive",
        std::move(space),
        reciprocal_map(),
        {},
        std::move(r),
        principal_root(),
        std::move(spec),
        ExpectedOutcome::CertifiableDefect,
        "the product condition degenerates where the two maps coincide (probe pair "
        "(1.05, 0.7) is a witness); the chained iteration still converges to 1",
        true,
        Point::scalar(3.0),
        "The honest positive-ray home for the reciprocal/square pair: x -> sqrt(1 / x) "
        "stays in the ray and converges to the common value 1, while certification "
        "fails deterministically near the coincidence point."};
}

CatalogEntry build_reich_halving(const Params& params) {
    ParamReader reader("reich_halving", params);
    reader.finish();
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    MetricSpaceInstance space(line_domain(-50.0, 50.0, {4.0, 1.0}), alg,
                              abs_diff_metric(alg));
    return CatalogEntry{
        "reich_halving",
        std::move(space),
        affine_map("half", 0.5, 0.0),
        {},
        {},
        nullptr,
        ContractionSpec::reich_type(0.6, 0.5, 0.4, 0.2),
        ExpectedOutcome::CertifiableDefect,
        "the product condition fails at mixed scales (probe pair (4, 1) is a witness); "
        "from unit-gated starts every geometric envelope check holds",
        true,
        Point::scalar(1.0),
        "The halving map under a three-factor product spec: certification fails on "
        "pinned witnesses, yet the gated iteration satisfies its tau^(n / (1 - eta)) "
        "step envelope at every index."};
}

struct Row {
    const char* name;
    CatalogEntry (*build)(const Params&);
};

// Kept sorted by name; catalog_list leans on this order.
constexpr Row kRows[] = {
    {"affine_pair", build_affine_pair},
    {"affine_scalar", build_affine_scalar},
    {"altering_identity", build_altering_identity},
    {"altering_paper_piecewise", build_altering_paper_piecewise},
    {"corollary_linear", build_corollary_linear},
    {"finite_random_12", build_finite_random_12},
    {"honest_r2", build_honest_r2},
    {"kannan_cubic", build_kannan_cubic},
    {"matrix_scaled_affine", build_matrix_scaled_affine},
    {"noncommutative_affine", build_noncommutative_affine},
    {"paper_example_kannan", build_paper_example_kannan},
    {"paper_example_r_interpolative", build_paper_example_r_interpolative},
    {"r_interpolative_positive", build_r_interpolative_positive},
    {"reich_halving", build_reich_halving},
};

}  // namespace

std::vector<std::string> catalog_list() {
    std::vector<std::string> names;
    for (const Row& row : kRows) names.emplace_back(row.name);
    return names;
}

CatalogEntry catalog_build(const std::string& name,
                           const std::map<std::string, double>& parameters) {
    for (const Row& row : kRows)
        if (name == row.name) return row.build(parameters);
    throw UnknownEntryError("no catalog entry named '" + name + "'");
}

}  // namespace cstarfix
