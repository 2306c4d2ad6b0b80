#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cstarfix/contraction.hpp"
#include "cstarfix/metric_space.hpp"

namespace cstarfix {

/// What the pipeline verify_axioms -> certify -> solve is expected to report
/// for an entry built with its default parameters.
enum class ExpectedOutcome {
    CertifiesAndConverges,  // axioms pass, certificate all_hold, solver converges
    CertifiableDefect,      // runnable, but one documented step misbehaves
    ViolatesMetricAxiom,    // the displayed metric itself fails an axiom
};

[[nodiscard]] std::string to_string(ExpectedOutcome outcome);

/// A ready-made scenario: a space, its maps, a published contraction spec,
/// and the outcome the standard pipeline reproduces on it.
struct CatalogEntry {
    std::string name;
    MetricSpaceInstance space;
    SelfMap t;
    std::optional<SelfMap> s;  // partner map for pair conditions
    std::optional<SelfMap> r;  // comparison map for chained conditions
    PointMap r_solve;          // right inverse of r; null unless r is present
    ContractionSpec spec;
    ExpectedOutcome expected;
    std::string expected_detail;  // one-line defect / violation description
    /// False only for the showcase entries whose displayed metric is kept
    /// with its documented axiom defect instead of being repaired.
    bool valid_metric = true;
    Point default_start;
    std::string notes;
};

/// Sorted, deterministic list of every entry name.
[[nodiscard]] std::vector<std::string> catalog_list();

/// Builds one entry by name. Unknown names raise UnknownEntryError; unknown
/// parameter keys or out-of-range values raise BadParametersError. Every
/// parameter has a documented default, so an empty map always builds.
[[nodiscard]] CatalogEntry catalog_build(
    const std::string& name, const std::map<std::string, double>& parameters = {});

}  // namespace cstarfix
