#include "cstarfix/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace cstarfix {

namespace {

using Complex = std::complex<double>;

std::string shape_string(const AlgebraDescriptor& d) {
    std::ostringstream os;
    os << to_string(d.kind) << "(" << d.dim << ")";
    return os.str();
}

void require_same_descriptor(const AlgebraElement& a, const AlgebraElement& b,
                             const char* op) {
    if (!(a.descriptor() == b.descriptor())) {
        throw DescriptorMismatchError(std::string(op) + ": operands live in " +
                                      shape_string(a.descriptor()) + " and " +
                                      shape_string(b.descriptor()));
    }
}

double frobenius(const std::vector<Complex>& m) {
    double sum = 0.0;
    for (const Complex& z : m) sum += std::norm(z);
    return std::sqrt(sum);
}

double off_diagonal_mass(const std::vector<Complex>& m, int n) {
    double sum = 0.0;
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
            if (p != q) sum += std::norm(m[p * n + q]);
    return std::sqrt(sum);
}

struct JacobiSystem {
    std::vector<double> values;    // ascending
    std::vector<Complex> vectors;  // row-major, eigenvector k in column k
};

/// Cyclic Jacobi eigensolver for Hermitian input (caller symmetrizes).
/// Sweeps rotate every off-diagonal pair per pass; each rotation factors the
/// pivot's phase out so the 2x2 subproblem is real symmetric. Converges when
/// the off-diagonal Frobenius mass drops to 1e-14 of the input's mass.
JacobiSystem jacobi_hermitian(std::vector<Complex> a, int n) {
    std::vector<Complex> v(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) v[i * n + i] = Complex(1.0, 0.0);

    const double total_mass = frobenius(a);
    const double threshold = 1e-14 * total_mass;
    const int max_sweeps = 80;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        if (off_diagonal_mass(a, n) <= threshold) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = a[p * n + q];
                const double b = std::abs(apq);
                if (b == 0.0) continue;
                const Complex phase = apq / b;  // apq = b * phase
                const double app = a[p * n + p].real();
                const double aqq = a[q * n + q].real();

                // Real rotation zeroing the phase-stripped pivot.
                const double theta = (aqq - app) / (2.0 * b);
                double t = 1.0;
                if (theta != 0.0) {
                    t = (theta > 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex w_qp = -s * std::conj(phase);
                const Complex w_qq = c * std::conj(phase);

                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex akp = a[k * n + p];
                    const Complex akq = a[k * n + q];
                    const Complex new_kp = c * akp + w_qp * akq;
                    const Complex new_kq = s * akp + w_qq * akq;
                    a[k * n + p] = new_kp;
                    a[k * n + q] = new_kq;
                    a[p * n + k] = std::conj(new_kp);
                    a[q * n + k] = std::conj(new_kq);
                }
                a[p * n + p] = Complex(app - t * b, 0.0);
                a[q * n + q] = Complex(aqq + t * b, 0.0);
                a[p * n + q] = Complex(0.0, 0.0);
                a[q * n + p] = Complex(0.0, 0.0);

                for (int k = 0; k < n; ++k) {
                    const Complex vkp = v[k * n + p];
                    const Complex vkq = v[k * n + q];
                    v[k * n + p] = c * vkp + w_qp * vkq;
                    v[k * n + q] = s * vkp + w_qq * vkq;
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        return a[lhs * n + lhs].real() < a[rhs * n + rhs].real();
    });

    JacobiSystem out;
    out.values.resize(n);
    out.vectors.assign(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int j = 0; j < n; ++j) {
        out.values[j] = a[order[j] * n + order[j]].real();
        for (int k = 0; k < n; ++k) out.vectors[k * n + j] = v[k * n + order[j]];
    }
    return out;
}

std::vector<Complex> hermitized(const std::vector<Complex>& m, int n) {
    std::vector<Complex> h(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            h[i * n + j] = 0.5 * (m[i * n + j] + std::conj(m[j * n + i]));
    return h;
}

double max_entry_modulus(const std::vector<Complex>& m) {
    double best = 0.0;
    for (const Complex& z : m) best = std::max(best, std::abs(z));
    return best;
}

void require_finite(double x) {
    if (!std::isfinite(x)) throw BadParametersError("element entry is not finite");
}

}  // namespace

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

const char* to_string(AlgebraKind kind) noexcept {
    switch (kind) {
        case AlgebraKind::DiagonalReal: return "DiagonalReal";
        case AlgebraKind::HermitianMatrix: return "HermitianMatrix";
    }
    return "?";
}

AlgebraDescriptor AlgebraDescriptor::diagonal_real(int m, double positivity_tol,
                                                   double hermitian_tol) {
    AlgebraDescriptor d{AlgebraKind::DiagonalReal, m, positivity_tol, hermitian_tol};
    d.validate();
    return d;
}

AlgebraDescriptor AlgebraDescriptor::hermitian_matrix(int n, double positivity_tol,
                                                      double hermitian_tol) {
    AlgebraDescriptor d{AlgebraKind::HermitianMatrix, n, positivity_tol, hermitian_tol};
    d.validate();
    return d;
}

void AlgebraDescriptor::validate() const {
    if (dim < 1) throw BadParametersError("algebra dimension must be at least 1");
    const bool pos_ok = positivity_tolerance >= 0.0 && positivity_tolerance <= 1e-6;
    const bool herm_ok = hermitian_tolerance >= 0.0 && hermitian_tolerance <= 1e-6;
    if (!pos_ok || !herm_ok)
        throw BadParametersError("algebra tolerances must lie in [0, 1e-6]");
}

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

AlgebraElement::AlgebraElement(AlgebraDescriptor desc, Payload data)
    : desc_(desc), data_(std::move(data)) {}

AlgebraElement AlgebraElement::diagonal(AlgebraDescriptor desc,
                                        std::vector<double> entries) {
    desc.validate();
    if (desc.kind != AlgebraKind::DiagonalReal)
        throw BadParametersError("diagonal payload requires a DiagonalReal descriptor");
    if (static_cast<int>(entries.size()) != desc.dim)
        throw BadParametersError("diagonal payload size does not match descriptor");
    for (double e : entries) require_finite(e);
    return AlgebraElement(desc, Payload(std::move(entries)));
}

AlgebraElement AlgebraElement::matrix(AlgebraDescriptor desc,
                                      std::vector<Complex> entries) {
    desc.validate();
    if (desc.kind != AlgebraKind::HermitianMatrix)
        throw BadParametersError("matrix payload requires a HermitianMatrix descriptor");
    if (entries.size() != static_cast<std::size_t>(desc.dim) * desc.dim)
        throw BadParametersError("matrix payload size does not match descriptor");
    for (const Complex& z : entries) {
        require_finite(z.real());
        require_finite(z.imag());
    }
    return AlgebraElement(desc, Payload(std::move(entries)));
}

AlgebraElement AlgebraElement::zero(const AlgebraDescriptor& desc) {
    if (desc.kind == AlgebraKind::DiagonalReal)
        return diagonal(desc, std::vector<double>(desc.dim, 0.0));
    return matrix(desc, std::vector<Complex>(static_cast<std::size_t>(desc.dim) * desc.dim,
                                             Complex(0.0, 0.0)));
}

AlgebraElement AlgebraElement::unit(const AlgebraDescriptor& desc) {
    if (desc.kind == AlgebraKind::DiagonalReal)
        return diagonal(desc, std::vector<double>(desc.dim, 1.0));
    std::vector<Complex> id(static_cast<std::size_t>(desc.dim) * desc.dim,
                            Complex(0.0, 0.0));
    for (int i = 0; i < desc.dim; ++i) id[i * desc.dim + i] = Complex(1.0, 0.0);
    return matrix(desc, std::move(id));
}

bool AlgebraElement::is_diagonal() const noexcept {
    return desc_.kind == AlgebraKind::DiagonalReal;
}

const std::vector<double>& AlgebraElement::diag() const {
    if (!is_diagonal()) throw Error("diag() on a matrix-kind element");
    return std::get<std::vector<double>>(data_);
}

const std::vector<Complex>& AlgebraElement::mat() const {
    if (is_diagonal()) throw Error("mat() on a diagonal-kind element");
    return std::get<std::vector<Complex>>(data_);
}

Complex AlgebraElement::at(int row, int col) const {
    if (row < 0 || col < 0 || row >= desc_.dim || col >= desc_.dim)
        throw Error("entry index out of range");
    if (is_diagonal()) {
        if (row != col) return Complex(0.0, 0.0);
        return Complex(diag()[row], 0.0);
    }
    return mat()[row * desc_.dim + col];
}

// ---------------------------------------------------------------------------
// Order results
// ---------------------------------------------------------------------------

const char* to_string(OrderVerdict verdict) noexcept {
    switch (verdict) {
        case OrderVerdict::Holds: return "Holds";
        case OrderVerdict::Fails: return "Fails";
        case OrderVerdict::IllPosed: return "IllPosed";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

AlgebraElement involution(const AlgebraElement& a) {
    if (a.is_diagonal()) return a;
    const int n = a.descriptor().dim;
    const auto& m = a.mat();
    std::vector<Complex> out(m.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[i * n + j] = std::conj(m[j * n + i]);
    return AlgebraElement::matrix(a.descriptor(), std::move(out));
}

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b, "multiply");
    if (a.is_diagonal()) {
        const auto& x = a.diag();
        const auto& y = b.diag();
        std::vector<double> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * y[i];
        return AlgebraElement::diagonal(a.descriptor(), std::move(out));
    }
    const int n = a.descriptor().dim;
    const auto& x = a.mat();
    const auto& y = b.mat();
    std::vector<Complex> out(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            const Complex xik = x[i * n + k];
            if (xik == Complex(0.0, 0.0)) continue;
            for (int j = 0; j < n; ++j) out[i * n + j] += xik * y[k * n + j];
        }
    return AlgebraElement::matrix(a.descriptor(), std::move(out));
}

AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b, "add");
    if (a.is_diagonal()) {
        const auto& x = a.diag();
        const auto& y = b.diag();
        std::vector<double> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
        return AlgebraElement::diagonal(a.descriptor(), std::move(out));
    }
    const auto& x = a.mat();
    const auto& y = b.mat();
    std::vector<Complex> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + y[i];
    return AlgebraElement::matrix(a.descriptor(), std::move(out));
}

AlgebraElement subtract(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b, "subtract");
    if (a.is_diagonal()) {
        const auto& x = a.diag();
        const auto& y = b.diag();
        std::vector<double> out(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
        return AlgebraElement::diagonal(a.descriptor(), std::move(out));
    }
    const auto& x = a.mat();
    const auto& y = b.mat();
    std::vector<Complex> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] - y[i];
    return AlgebraElement::matrix(a.descriptor(), std::move(out));
}

AlgebraElement scale(const AlgebraElement& a, double factor) {
    require_finite(factor);
    if (a.is_diagonal()) {
        std::vector<double> out(a.diag());
        for (double& e : out) e *= factor;
        return AlgebraElement::diagonal(a.descriptor(), std::move(out));
    }
    std::vector<Complex> out(a.mat());
    for (Complex& z : out) z *= factor;
    return AlgebraElement::matrix(a.descriptor(), std::move(out));
}

// ---------------------------------------------------------------------------
// Spectral operations
// ---------------------------------------------------------------------------

double norm(const AlgebraElement& a) {
    if (a.is_diagonal()) {
        double best = 0.0;
        for (double e : a.diag()) best = std::max(best, std::abs(e));
        return best;
    }
    // Largest singular value via the spectrum of a* a, valid for any square
    // matrix, Hermitian or not.
    const int n = a.descriptor().dim;
    const auto& m = a.mat();
    std::vector<Complex> gram(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (int k = 0; k < n; ++k) sum += std::conj(m[k * n + i]) * m[k * n + j];
            gram[i * n + j] = sum;
        }
    const JacobiSystem sys = jacobi_hermitian(hermitized(gram, n), n);
    const double top = sys.values.empty() ? 0.0 : sys.values.back();
    return std::sqrt(std::max(top, 0.0));
}

double hermitian_defect(const AlgebraElement& a) {
    if (a.is_diagonal()) return 0.0;
    const int n = a.descriptor().dim;
    const auto& m = a.mat();
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(m[i * n + j] - std::conj(m[j * n + i])));
    return worst / std::max(1.0, max_entry_modulus(m));
}

EigenSystem hermitian_eigensystem(const AlgebraElement& a) {
    const int n = a.descriptor().dim;
    if (a.is_diagonal()) {
        EigenSystem sys;
        sys.values = a.diag();
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int l, int r) { return sys.values[l] < sys.values[r]; });
        std::vector<double> sorted(n);
        sys.vectors.assign(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
        for (int j = 0; j < n; ++j) {
            sorted[j] = sys.values[order[j]];
            sys.vectors[order[j] * n + j] = Complex(1.0, 0.0);
        }
        sys.values = std::move(sorted);
        return sys;
    }
    const double defect = hermitian_defect(a);
    if (defect > a.descriptor().hermitian_tolerance) {
        std::ostringstream os;
        os << "element is not Hermitian: relative defect " << defect << " exceeds "
           << a.descriptor().hermitian_tolerance;
        throw NotHermitianError(os.str());
    }
    const JacobiSystem sys = jacobi_hermitian(hermitized(a.mat(), n), n);
    return EigenSystem{sys.values, sys.vectors};
}

std::vector<double> spectrum(const AlgebraElement& a) {
    return hermitian_eigensystem(a).values;
}

bool is_positive(const AlgebraElement& a) {
    const double tol = a.descriptor().positivity_tolerance;
    if (a.is_diagonal()) {
        double max_abs = 0.0;
        for (double e : a.diag()) max_abs = std::max(max_abs, std::abs(e));
        const double floor = -tol * std::max(1.0, max_abs);
        for (double e : a.diag())
            if (e < floor) return false;
        return true;
    }
    if (hermitian_defect(a) > a.descriptor().hermitian_tolerance) return false;
    const std::vector<double> eig = spectrum(a);
    const double scale = std::max(std::abs(eig.front()), std::abs(eig.back()));
    return eig.front() >= -tol * std::max(1.0, scale);
}

OrderResult leq(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_descriptor(a, b, "leq");
    const AlgebraElement diff = subtract(b, a);
    const double tol = a.descriptor().positivity_tolerance;

    OrderResult result;
    if (diff.is_diagonal()) {
        result.hermitian_defect = 0.0;
        double max_abs = 0.0;
        double min_entry = diff.diag().empty() ? 0.0 : diff.diag().front();
        for (double e : diff.diag()) {
            max_abs = std::max(max_abs, std::abs(e));
            min_entry = std::min(min_entry, e);
        }
        result.witness_eigenvalue = min_entry;
        result.verdict = (min_entry >= -tol * std::max(1.0, max_abs))
                             ? OrderVerdict::Holds
                             : OrderVerdict::Fails;
        return result;
    }

    const double defect = hermitian_defect(diff);
    result.hermitian_defect = defect;
    const int n = diff.descriptor().dim;
    const JacobiSystem sys = jacobi_hermitian(hermitized(diff.mat(), n), n);
    result.witness_eigenvalue = sys.values.front();
    if (defect > diff.descriptor().hermitian_tolerance) {
        result.verdict = OrderVerdict::IllPosed;
        return result;
    }
    const double scale = std::max(std::abs(sys.values.front()), std::abs(sys.values.back()));
    result.verdict = (sys.values.front() >= -tol * std::max(1.0, scale))
                         ? OrderVerdict::Holds
                         : OrderVerdict::Fails;
    return result;
}

AlgebraElement frac_power(const AlgebraElement& a, double exponent) {
    if (!(exponent > 0.0) || !std::isfinite(exponent))
        throw BadParametersError("frac_power exponent must be positive and finite");
    if (!is_positive(a))
        throw NotPositiveError("frac_power requires a positive element");

    if (a.is_diagonal()) {
        std::vector<double> out(a.diag());
        for (double& e : out) e = std::pow(std::max(e, 0.0), exponent);
        return AlgebraElement::diagonal(a.descriptor(), std::move(out));
    }

    const int n = a.descriptor().dim;
    const EigenSystem sys = hermitian_eigensystem(a);
    std::vector<double> powered(sys.values.size());
    for (std::size_t i = 0; i < sys.values.size(); ++i)
        powered[i] = std::pow(std::max(sys.values[i], 0.0), exponent);

    std::vector<Complex> out(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (int k = 0; k < n; ++k)
                sum += sys.vectors[i * n + k] * powered[k] *
                       std::conj(sys.vectors[j * n + k]);
            if (i == j) {
                out[i * n + i] = Complex(sum.real(), 0.0);
            } else {
                out[i * n + j] = sum;
                out[j * n + i] = std::conj(sum);
            }
        }
    }
    return AlgebraElement::matrix(a.descriptor(), std::move(out));
}

AlgebraElement random_positive(const AlgebraDescriptor& desc, std::mt19937_64& rng,
                               double magnitude) {
    if (!(magnitude > 0.0) || !std::isfinite(magnitude))
        throw BadParametersError("random_positive magnitude must be positive and finite");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int n = desc.dim;
    if (desc.kind == AlgebraKind::DiagonalReal) {
        std::vector<double> entries(n);
        for (double& e : entries) {
            const double u = unit(rng);
            e = magnitude * u * u;
        }
        return AlgebraElement::diagonal(desc, std::move(entries));
    }
    std::vector<Complex> m(static_cast<std::size_t>(n) * n);
    for (Complex& z : m) z = Complex(unit(rng), unit(rng));
    std::vector<Complex> gram(static_cast<std::size_t>(n) * n, Complex(0.0, 0.0));
    const double factor = magnitude / n;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex sum(0.0, 0.0);
            for (int k = 0; k < n; ++k) sum += std::conj(m[k * n + i]) * m[k * n + j];
            gram[i * n + j] = factor * sum;
        }
    // Exact Hermitian symmetry despite the rounding in the accumulation above.
    for (int i = 0; i < n; ++i) {
        gram[i * n + i] = Complex(gram[i * n + i].real(), 0.0);
        for (int j = i + 1; j < n; ++j) gram[j * n + i] = std::conj(gram[i * n + j]);
    }
    return AlgebraElement::matrix(desc, std::move(gram));
}

}  // namespace cstarfix
