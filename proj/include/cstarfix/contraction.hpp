#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cstarfix/metric_space.hpp"

namespace cstarfix {

// ---------------------------------------------------------------------------
// Self-maps
// ---------------------------------------------------------------------------

/// A named map of a domain into itself. The domain here is the map's own
/// region of definition; it may be wider than the metric space it is used on,
/// in which case a space-level escape is the solver's concern, not the map's.
struct SelfMap {
    std::string name;
    std::function<Point(const Point&)> apply;
    DomainDescriptor domain;

    /// Applies the map, insisting that both the input and the image lie in
    /// the map's domain. Throws DomainExitError otherwise.
    [[nodiscard]] Point apply_checked(const Point& x) const;
};

// ---------------------------------------------------------------------------
// Contraction conditions
// ---------------------------------------------------------------------------

enum class ConditionKind {
    InterpolativeKannan,  // d(Tx,Ty) <= tau * d(x,Tx)^beta * d(y,Ty)^(1-beta)
    TauBetaEtaKannan,     // d(Tx,Ty) <= tau * d(x,Tx)^beta * d(y,Ty)^eta
    KannanPair,           // d(Tx,Sy) <= tau * d(x,Tx)^beta * d(y,Sy)^eta
    RInterpolative,       // d(Tx,Ty) <= tau * d(Rx,Tx)^beta * d(Ry,Ty)^(1-beta)
    ReichType,            // d(Tx,Ty) <= tau * d(x,y)^alpha * M^beta * d(y,Ty)^eta
    WeakReich,            // phi(d(Tx,Ty)) <= phi(P) - psi(P), P the Reich product
};

const char* to_string(ConditionKind kind) noexcept;

/// How the middle factor M of Reich-style products is read: the displayed
/// inequality uses d(x,Ty), the proofs substitute d(x,Tx).
enum class ReichVariant { AsDisplayed, AsProof };

const char* to_string(ReichVariant variant) noexcept;

/// How interpolated products of possibly non-commuting positive elements are
/// assembled: Strict takes the raw product (and lets the order comparison
/// report IllPosed when the result is not Hermitian); Symmetrized builds the
/// Hermitian sandwich p1^(e1/2) ... pk^(ek) ... p1^(e1/2).
enum class ComparisonMode { Strict, Symmetrized };

const char* to_string(ComparisonMode mode) noexcept;

/// A map on the positive cone, used for the altering-distance and control
/// functions of weakly contractive conditions.
using PositiveFunction = std::function<AlgebraElement(const AlgebraElement&)>;

/// A contraction condition with pinned parameters. Construct through the
/// factories, which validate every exponent constraint.
class ContractionSpec {
public:
    static ContractionSpec interpolative_kannan(double tau, double beta);
    static ContractionSpec tau_beta_eta_kannan(double tau, double beta, double eta);
    static ContractionSpec kannan_pair(double tau, double beta, double eta, SelfMap s);
    static ContractionSpec r_interpolative(double tau, double beta, SelfMap r);
    static ContractionSpec reich_type(double tau, double alpha, double beta, double eta,
                                      ReichVariant variant = ReichVariant::AsProof);

    /// Weakly contractive Reich spec. Requires alpha + beta + eta = 1. Both
    /// functions are probed in the given algebra: they must map the zero
    /// element to zero and a unit-sized element away from zero.
    static ContractionSpec weak_reich(double alpha, double beta, double eta,
                                      PositiveFunction phi, std::string phi_name,
                                      PositiveFunction psi, std::string psi_name,
                                      const AlgebraDescriptor& probe_algebra,
                                      ReichVariant variant = ReichVariant::AsProof);

    [[nodiscard]] ConditionKind kind() const noexcept { return kind_; }
    [[nodiscard]] double tau() const noexcept { return tau_; }
    [[nodiscard]] double alpha() const noexcept { return alpha_; }
    [[nodiscard]] double beta() const noexcept { return beta_; }
    [[nodiscard]] double eta() const noexcept { return eta_; }
    [[nodiscard]] ReichVariant variant() const noexcept { return variant_; }
    [[nodiscard]] ComparisonMode mode() const noexcept { return mode_; }
    [[nodiscard]] double fixed_point_tolerance() const noexcept { return fp_tolerance_; }

    /// S for KannanPair, R for RInterpolative.
    [[nodiscard]] const SelfMap& second_map() const;
    [[nodiscard]] const PositiveFunction& phi() const;
    [[nodiscard]] const PositiveFunction& psi() const;

    [[nodiscard]] ContractionSpec with_mode(ComparisonMode mode) const;
    [[nodiscard]] ContractionSpec with_variant(ReichVariant variant) const;
    [[nodiscard]] ContractionSpec with_fixed_point_tolerance(double tol) const;

    /// One-line rendering like "InterpolativeKannan(tau=0.75, beta=0.4)".
    [[nodiscard]] std::string describe() const;

private:
    explicit ContractionSpec(ConditionKind kind) : kind_(kind) {}

    ConditionKind kind_;
    double tau_ = 0.0;
    double alpha_ = 0.0;
    double beta_ = 0.0;
    double eta_ = 0.0;
    ReichVariant variant_ = ReichVariant::AsProof;
    ComparisonMode mode_ = ComparisonMode::Strict;
    double fp_tolerance_ = 1e-9;
    std::optional<SelfMap> second_map_;
    PositiveFunction phi_;
    PositiveFunction psi_;
    std::string phi_name_;
    std::string psi_name_;
};

// ---------------------------------------------------------------------------
// Evaluation results
// ---------------------------------------------------------------------------

/// One condition check at an ordered pair. Vacuous pairs (either argument is
/// already a fixed point of its map, within the condition's tolerance) carry no
/// sides and no order: the conditions only quantify over moving points.
struct ConditionEvaluation {
    Point x;
    Point y;
    bool vacuous = false;
    std::optional<AlgebraElement> lhs;
    std::optional<AlgebraElement> rhs;
    std::optional<OrderResult> order;
    std::size_t pair_index = 0;

    [[nodiscard]] bool holds() const noexcept {
        return !vacuous && order.has_value() && order->holds();
    }
};

struct Certificate {
    std::size_t pairs_tested = 0;   // non-vacuous evaluations
    std::size_t vacuous_pairs = 0;  // skipped per the moving-point restriction
    bool exhaustive = false;
    bool all_hold = false;
    bool axiom_warning = false;  // the space's axiom report exists but failed
    std::vector<ConditionEvaluation> violations;
    std::vector<ConditionEvaluation> ill_posed;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Evaluates the condition's inequality at one ordered pair. Throws DomainExitError
/// when a map cannot be applied; propagates NotPositiveError from fractional
/// powers of non-positive metric values.
[[nodiscard]] ConditionEvaluation evaluate_condition(const ContractionSpec& spec,
                                                     const SelfMap& t, const Point& x,
                                                     const Point& y,
                                                     const MetricSpaceInstance& space);

/// Certifies the condition over ordered pairs: exhaustively for finite spaces
/// of at most 64 points, otherwise probe pairs first and then seeded samples.
/// Requires a stored axiom report on the space (PreconditionFailedError if
/// missing); a failed report only raises the certificate's warning flag.
[[nodiscard]] Certificate certify(const ContractionSpec& spec, const SelfMap& t,
                                  const MetricSpaceInstance& space,
                                  std::size_t sample_pairs, std::uint64_t seed);

/// Outcome of probing one candidate altering-distance function.
struct AlteringCheckReport {
    bool zero_at_zero = false;
    bool zero_only_at_zero = true;
    bool nondecreasing = true;
    bool continuous = true;
    std::size_t samples_tested = 0;
    std::string detail;  // first failure, empty when everything passed

    [[nodiscard]] bool all_pass() const noexcept {
        return zero_at_zero && zero_only_at_zero && nondecreasing && continuous;
    }
};

/// Checks the altering-distance contract for psi on the given algebra:
/// psi(0) = 0, psi(a) far from zero for norm(a) >= 1e-6, monotone on sampled
/// dominated pairs, and difference quotients that stay bounded under ten
/// halvings of the probe step (from each sampled base and each extra probe).
[[nodiscard]] AlteringCheckReport altering_distance_check(
    const PositiveFunction& psi, const AlgebraDescriptor& algebra, std::size_t samples,
    std::uint64_t seed, const std::vector<AlgebraElement>& extra_probes = {});

}  // namespace cstarfix
