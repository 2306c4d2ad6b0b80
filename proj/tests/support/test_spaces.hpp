#pragma once

// Small space builders shared by the unit test suites. Catalog entries are the
// production counterparts; these stay independent so module tests do not lean
// on the code they help to validate.

#include <cmath>
#include <random>
#include <vector>

#include "cstarfix/metric_space.hpp"

namespace cstarfix::testsupport {

/// The real line with d(x,y) = |x-y| as a one-entry tuple, sampled uniformly
/// from [lo, hi].
inline MetricSpaceInstance scalar_line_space(double lo, double hi,
                                             std::vector<Point> probes = {}) {
    EuclideanRegion region;
    region.dim = 1;
    region.member = [](const std::vector<double>&) { return true; };
    region.sample = [lo, hi](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(lo, hi);
        return std::vector<double>{u(rng)};
    };
    region.probe_points = std::move(probes);
    region.description = "real line";
    const auto alg = AlgebraDescriptor::diagonal_real(1);
    auto metric = [alg](const Point& x, const Point& y) {
        return AlgebraElement::diagonal(alg, {std::abs(x.scalar_value() - y.scalar_value())});
    };
    return MetricSpaceInstance(DomainDescriptor::euclidean(std::move(region)), alg, metric);
}

/// Open ray (2, inf) carrying the two-entry premetric ((x+y)^2, 0): symmetric
/// and positive, but d(x,x) never vanishes, so the identity axiom fails. The
/// probe points 3 and 4 make the first witness deterministic.
inline MetricSpaceInstance sum_square_ray_space() {
    EuclideanRegion region;
    region.dim = 1;
    region.member = [](const std::vector<double>& c) { return c[0] > 2.0; };
    region.sample = [](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(2.001, 40.0);
        return std::vector<double>{u(rng)};
    };
    region.probe_points = {Point::scalar(3.0), Point::scalar(4.0)};
    region.description = "open ray (2, inf)";
    const auto alg = AlgebraDescriptor::diagonal_real(2);
    auto metric = [alg](const Point& x, const Point& y) {
        const double s = x.scalar_value() + y.scalar_value();
        return AlgebraElement::diagonal(alg, {s * s, 0.0});
    };
    return MetricSpaceInstance(DomainDescriptor::euclidean(std::move(region)), alg, metric);
}

/// The real line carrying the matrix-scaled metric d(x,y) = |x-y| * A with
/// A = [[2,1],[1,2]], a positive-definite 2x2 scale.
inline MetricSpaceInstance matrix_scaled_line_space(double lo, double hi) {
    EuclideanRegion region;
    region.dim = 1;
    region.member = [](const std::vector<double>&) { return true; };
    region.sample = [lo, hi](std::mt19937_64& rng) {
        std::uniform_real_distribution<double> u(lo, hi);
        return std::vector<double>{u(rng)};
    };
    region.description = "real line, matrix-scaled";
    const auto alg = AlgebraDescriptor::hermitian_matrix(2);
    auto metric = [alg](const Point& x, const Point& y) {
        const double g = std::abs(x.scalar_value() - y.scalar_value());
        using C = std::complex<double>;
        return AlgebraElement::matrix(alg, {C(2 * g, 0), C(g, 0), C(g, 0), C(2 * g, 0)});
    };
    return MetricSpaceInstance(DomainDescriptor::euclidean(std::move(region)), alg, metric);
}

}  // namespace cstarfix::testsupport
