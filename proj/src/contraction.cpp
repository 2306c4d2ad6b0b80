#include "cstarfix/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cstarfix {

// ---------------------------------------------------------------------------
// Self-maps
// ---------------------------------------------------------------------------

Point SelfMap::apply_checked(const Point& x) const {
    if (!apply) throw BadParametersError("self-map '" + name + "' has no callable body");
    if (!domain.contains(x))
        throw DomainExitError("self-map '" + name + "' applied outside its domain at " +
                              to_string(x));
    Point out = apply(x);
    if (!domain.contains(out))
        throw DomainExitError("self-map '" + name + "' maps " + to_string(x) +
                              " out of its domain to " + to_string(out));
    return out;
}

// ---------------------------------------------------------------------------
// Spec construction
// ---------------------------------------------------------------------------

const char* to_string(ConditionKind kind) noexcept {
    switch (kind) {
        case ConditionKind::InterpolativeKannan: return "InterpolativeKannan";
        case ConditionKind::TauBetaEtaKannan: return "TauBetaEtaKannan";
        case ConditionKind::KannanPair: return "KannanPair";
        case ConditionKind::RInterpolative: return "RInterpolative";
        case ConditionKind::ReichType: return "ReichType";
        case ConditionKind::WeakReich: return "WeakReich";
    }
    return "?";
}

const char* to_string(ReichVariant variant) noexcept {
    switch (variant) {
        case ReichVariant::AsDisplayed: return "AsDisplayed";
        case ReichVariant::AsProof: return "AsProof";
    }
    return "?";
}

const char* to_string(ComparisonMode mode) noexcept {
    switch (mode) {
        case ComparisonMode::Strict: return "Strict";
        case ComparisonMode::Symmetrized: return "Symmetrized";
    }
    return "?";
}

namespace {

void require_open_unit(const char* label, double v) {
    if (!(v > 0.0 && v < 1.0)) {
        std::ostringstream os;
        os << label << " must lie strictly between 0 and 1, got " << v;
        throw BadParametersError(os.str());
    }
}

void require_callable_map(const SelfMap& m) {
    if (!m.apply) throw BadParametersError("self-map '" + m.name + "' has no callable body");
}

void probe_positive_function(const PositiveFunction& f, const std::string& name,
                             const AlgebraDescriptor& algebra) {
    if (!f) throw BadParametersError("function '" + name + "' has no callable body");
    const AlgebraElement at_zero = f(AlgebraElement::zero(algebra));
    if (norm(at_zero) > 1e-12)
        throw BadParametersError("function '" + name + "' does not map zero to zero");
    const AlgebraElement at_unit = f(AlgebraElement::unit(algebra));
    if (norm(at_unit) < 1e-6)
        throw BadParametersError("function '" + name +
                                 "' collapses the unit element to zero");
}

}  // namespace

ContractionSpec ContractionSpec::interpolative_kannan(double tau, double beta) {
    require_open_unit("tau", tau);
    require_open_unit("beta", beta);
    ContractionSpec spec(ConditionKind::InterpolativeKannan);
    spec.tau_ = tau;
    spec.beta_ = beta;
    spec.eta_ = 1.0 - beta;
    return spec;
}

ContractionSpec ContractionSpec::tau_beta_eta_kannan(double tau, double beta, double eta) {
    require_open_unit("tau", tau);
    require_open_unit("beta", beta);
    require_open_unit("eta", eta);
    if (!(beta + eta < 1.0))
        throw BadParametersError("beta + eta must be strictly below 1");
    ContractionSpec spec(ConditionKind::TauBetaEtaKannan);
    spec.tau_ = tau;
    spec.beta_ = beta;
    spec.eta_ = eta;
    return spec;
}

ContractionSpec ContractionSpec::kannan_pair(double tau, double beta, double eta, SelfMap s) {
    require_callable_map(s);
    ContractionSpec spec = tau_beta_eta_kannan(tau, beta, eta);
    spec.kind_ = ConditionKind::KannanPair;
    spec.second_map_ = std::move(s);
    return spec;
}

ContractionSpec ContractionSpec::r_interpolative(double tau, double beta, SelfMap r) {
    require_open_unit("tau", tau);
    require_open_unit("beta", beta);
    require_callable_map(r);
    ContractionSpec spec(ConditionKind::RInterpolative);
    spec.tau_ = tau;
    spec.beta_ = beta;
    spec.eta_ = 1.0 - beta;
    spec.second_map_ = std::move(r);
    return spec;
}

ContractionSpec ContractionSpec::reich_type(double tau, double alpha, double beta,
                                            double eta, ReichVariant variant) {
    require_open_unit("tau", tau);
    require_open_unit("alpha", alpha);
    require_open_unit("beta", beta);
    require_open_unit("eta", eta);
    if (!(alpha + beta + eta > 1.0))
        throw BadParametersError("alpha + beta + eta must exceed 1");
    ContractionSpec spec(ConditionKind::ReichType);
    spec.tau_ = tau;
    spec.alpha_ = alpha;
    spec.beta_ = beta;
    spec.eta_ = eta;
    spec.variant_ = variant;
    return spec;
}

ContractionSpec ContractionSpec::weak_reich(double alpha, double beta, double eta,
                                            PositiveFunction phi, std::string phi_name,
                                            PositiveFunction psi, std::string psi_name,
                                            const AlgebraDescriptor& probe_algebra,
                                            ReichVariant variant) {
    require_open_unit("alpha", alpha);
    require_open_unit("beta", beta);
    require_open_unit("eta", eta);
    if (std::abs(alpha + beta + eta - 1.0) > 1e-12)
        throw BadParametersError("alpha + beta + eta must equal 1");
    probe_positive_function(phi, phi_name, probe_algebra);
    probe_positive_function(psi, psi_name, probe_algebra);
    ContractionSpec spec(ConditionKind::WeakReich);
    spec.alpha_ = alpha;
    spec.beta_ = beta;
    spec.eta_ = eta;
    spec.variant_ = variant;
    spec.phi_ = std::move(phi);
    spec.psi_ = std::move(psi);
    spec.phi_name_ = std::move(phi_name);
    spec.psi_name_ = std::move(psi_name);
    return spec;
}

const SelfMap& ContractionSpec::second_map() const {
    if (!second_map_) throw Error("this condition kind carries no second map");
    return *second_map_;
}

const PositiveFunction& ContractionSpec::phi() const {
    if (!phi_) throw Error("this condition kind carries no altering function");
    return phi_;
}

const PositiveFunction& ContractionSpec::psi() const {
    if (!psi_) throw Error("this condition kind carries no control function");
    return psi_;
}

ContractionSpec ContractionSpec::with_mode(ComparisonMode mode) const {
    ContractionSpec out = *this;
    out.mode_ = mode;
    return out;
}

ContractionSpec ContractionSpec::with_variant(ReichVariant variant) const {
    ContractionSpec out = *this;
    out.variant_ = variant;
    return out;
}

ContractionSpec ContractionSpec::with_fixed_point_tolerance(double tol) const {
    if (!(tol > 0.0) || !(tol <= 1e-2))
        throw BadParametersError("fixed-point tolerance must lie in (0, 1e-2]");
    ContractionSpec out = *this;
    out.fp_tolerance_ = tol;
    return out;
}

std::string ContractionSpec::describe() const {
    std::ostringstream os;
    os.precision(12);
    os << to_string(kind_) << "(";
    switch (kind_) {
        case ConditionKind::InterpolativeKannan:
            os << "tau=" << tau_ << ", beta=" << beta_;
            break;
        case ConditionKind::TauBetaEtaKannan:
            os << "tau=" << tau_ << ", beta=" << beta_ << ", eta=" << eta_;
            break;
        case ConditionKind::KannanPair:
            os << "tau=" << tau_ << ", beta=" << beta_ << ", eta=" << eta_
               << ", S=" << second_map_->name;
            break;
        case ConditionKind::RInterpolative:
            os << "tau=" << tau_ << ", beta=" << beta_ << ", R=" << second_map_->name;
            break;
        case ConditionKind::ReichType:
            os << "tau=" << tau_ << ", alpha=" << alpha_ << ", beta=" << beta_
               << ", eta=" << eta_ << ", " << to_string(variant_);
            break;
        case ConditionKind::WeakReich:
            os << "alpha=" << alpha_ << ", beta=" << beta_ << ", eta=" << eta_
               << ", phi=" << phi_name_ << ", psi=" << psi_name_ << ", "
               << to_string(variant_);
            break;
    }
    if (mode_ == ComparisonMode::Symmetrized) os << ", Symmetrized";
    os << ")";
    return os.str();
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

namespace {

struct Factor {
    AlgebraElement base;
    double exponent;
};

AlgebraElement sandwich_product(const std::vector<Factor>& factors, std::size_t i) {
    if (i + 1 == factors.size()) return frac_power(factors[i].base, factors[i].exponent);
    const AlgebraElement half = frac_power(factors[i].base, factors[i].exponent / 2.0);
    return multiply(half, multiply(sandwich_product(factors, i + 1), half));
}

AlgebraElement assemble_product(const std::vector<Factor>& factors, ComparisonMode mode) {
    if (mode == ComparisonMode::Symmetrized) return sandwich_product(factors, 0);
    AlgebraElement out = frac_power(factors[0].base, factors[0].exponent);
    for (std::size_t i = 1; i < factors.size(); ++i)
        out = multiply(out, frac_power(factors[i].base, factors[i].exponent));
    return out;
}

}  // namespace

ConditionEvaluation evaluate_condition(const ContractionSpec& spec, const SelfMap& t,
                                       const Point& x, const Point& y,
                                       const MetricSpaceInstance& space) {
    ConditionEvaluation ev{x, y, false, {}, {}, {}, 0};

    const Point tx = t.apply_checked(x);
    const SelfMap& y_map =
        (spec.kind() == ConditionKind::KannanPair) ? spec.second_map() : t;
    const Point yi = y_map.apply_checked(y);

    // The conditions quantify only over points their maps actually move.
    const double tol = spec.fixed_point_tolerance();
    if (point_distance(x, tx) <= tol || point_distance(y, yi) <= tol) {
        ev.vacuous = true;
        return ev;
    }

    const AlgebraElement lhs = space.distance(tx, yi);
    std::vector<Factor> factors;
    switch (spec.kind()) {
        case ConditionKind::InterpolativeKannan:
            factors = {{space.distance(x, tx), spec.beta()},
                       {space.distance(y, yi), 1.0 - spec.beta()}};
            break;
        case ConditionKind::TauBetaEtaKannan:
        case ConditionKind::KannanPair:
            factors = {{space.distance(x, tx), spec.beta()},
                       {space.distance(y, yi), spec.eta()}};
            break;
        case ConditionKind::RInterpolative: {
            const SelfMap& r = spec.second_map();
            const Point rx = r.apply_checked(x);
            const Point ry = r.apply_checked(y);
            factors = {{space.distance(rx, tx), spec.beta()},
                       {space.distance(ry, yi), 1.0 - spec.beta()}};
            break;
        }
        case ConditionKind::ReichType:
        case ConditionKind::WeakReich: {
            const AlgebraElement middle = (spec.variant() == ReichVariant::AsDisplayed)
                                              ? space.distance(x, yi)
                                              : space.distance(x, tx);
            factors = {{space.distance(x, y), spec.alpha()},
                       {middle, spec.beta()},
                       {space.distance(y, yi), spec.eta()}};
            break;
        }
    }

    const AlgebraElement product = assemble_product(factors, spec.mode());
    ev.lhs = lhs;
    if (spec.kind() == ConditionKind::WeakReich) {
        ev.rhs = subtract(spec.phi()(product), spec.psi()(product));
        ev.order = leq(spec.phi()(lhs), *ev.rhs);
    } else {
        ev.rhs = scale(product, spec.tau());
        ev.order = leq(lhs, *ev.rhs);
    }
    return ev;
}

Certificate certify(const ContractionSpec& spec, const SelfMap& t,
                    const MetricSpaceInstance& space, std::size_t sample_pairs,
                    std::uint64_t seed) {
    if (!space.axiom_report().has_value())
        throw PreconditionFailedError(
            "certify needs the space's axiom report; run verify_axioms first");

    Certificate cert;
    cert.axiom_warning = !space.axiom_report()->all_pass();
    std::mt19937_64 rng(seed);
    std::size_t next_index = 0;

    auto consider = [&](const Point& x, const Point& y) {
        ConditionEvaluation ev = evaluate_condition(spec, t, x, y, space);
        ev.pair_index = next_index++;
        if (ev.vacuous) {
            ++cert.vacuous_pairs;
            return;
        }
        ++cert.pairs_tested;
        switch (ev.order->verdict) {
            case OrderVerdict::Holds: break;
            case OrderVerdict::Fails: cert.violations.push_back(std::move(ev)); break;
            case OrderVerdict::IllPosed: cert.ill_posed.push_back(std::move(ev)); break;
        }
    };

    const DomainDescriptor& dom = space.domain();
    if (dom.is_finite() && dom.finite_size() <= 64) {
        cert.exhaustive = true;
        const int n = dom.finite_size();
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) consider(Point::finite(i), Point::finite(j));
    } else {
        for (const Point& p : dom.probes())
            for (const Point& q : dom.probes()) consider(p, q);
        for (std::size_t s = 0; s < sample_pairs; ++s) {
            const Point x = dom.sample_point(rng);
            const Point y = dom.sample_point(rng);
            consider(x, y);
        }
    }

    // Evaluation is sequential, so the lists are already in pair order; keep
    // the contract explicit in case the loop ever fans out.
    auto by_index = [](const ConditionEvaluation& a, const ConditionEvaluation& b) {
        return a.pair_index < b.pair_index;
    };
    std::sort(cert.violations.begin(), cert.violations.end(), by_index);
    std::sort(cert.ill_posed.begin(), cert.ill_posed.end(), by_index);
    cert.all_hold = cert.violations.empty() && cert.ill_posed.empty();
    return cert;
}

// ---------------------------------------------------------------------------
// Altering-distance checks
// ---------------------------------------------------------------------------

AlteringCheckReport altering_distance_check(const PositiveFunction& psi,
                                            const AlgebraDescriptor& algebra,
                                            std::size_t samples, std::uint64_t seed,
                                            const std::vector<AlgebraElement>& extra_probes) {
    if (!psi) throw BadParametersError("altering-distance check needs a callable function");
    algebra.validate();
    for (const AlgebraElement& p : extra_probes)
        if (!(p.descriptor() == algebra))
            throw DescriptorMismatchError("extra probe lives in a different algebra");

    AlteringCheckReport rep;
    std::mt19937_64 rng(seed);
    auto note = [&](const std::string& msg) {
        if (rep.detail.empty()) rep.detail = msg;
    };

    const AlgebraElement at_zero = psi(AlgebraElement::zero(algebra));
    rep.zero_at_zero = norm(at_zero) <= 1e-12;
    if (!rep.zero_at_zero) note("psi(0) is not zero");

    std::vector<AlgebraElement> bases;
    bases.reserve(samples);
    for (std::size_t s = 0; s < samples; ++s)
        bases.push_back(random_positive(algebra, rng, 2.0));

    for (const AlgebraElement& a : bases) {
        ++rep.samples_tested;
        const AlgebraElement bigger = add(a, random_positive(algebra, rng, 1.0));
        if (rep.nondecreasing && !leq(psi(a), psi(bigger)).holds()) {
            rep.nondecreasing = false;
            note("psi reverses the order at a sampled dominated pair");
        }
        if (rep.zero_only_at_zero && norm(a) >= 1e-6 && norm(psi(a)) <= 1e-15) {
            rep.zero_only_at_zero = false;
            note("psi vanishes on an element of norm " + std::to_string(norm(a)));
        }
    }

    // Continuity: difference quotients along the unit direction must not blow
    // up while the step is halved; a jump doubles the quotient per halving.
    std::vector<AlgebraElement> probes = extra_probes;
    const std::size_t continuity_bases = std::min<std::size_t>(bases.size(), 16);
    for (std::size_t i = 0; i < continuity_bases; ++i) probes.push_back(bases[i]);
    const AlgebraElement dir = AlgebraElement::unit(algebra);
    for (const AlgebraElement& a : probes) {
        ++rep.samples_tested;
        const AlgebraElement psi_a = psi(a);
        double prev = 0.0;
        for (int k = 1; k <= 10; ++k) {
            const double h = std::ldexp(1.0, -k);
            const double quotient = norm(subtract(psi(add(a, scale(dir, h))), psi_a)) / h;
            if (k > 1 && quotient > prev * 1.5 + 1e-9) {
                rep.continuous = false;
                note("difference quotient grows under step halving near a probe point");
                break;
            }
            prev = quotient;
        }
        if (!rep.continuous) break;
    }
    return rep;
}

}  // namespace cstarfix
