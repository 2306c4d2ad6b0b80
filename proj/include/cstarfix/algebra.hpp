#pragma once

#include <complex>
#include <optional>
#include <random>
#include <variant>
#include <vector>

#include "cstarfix/errors.hpp"

namespace cstarfix {

// ---------------------------------------------------------------------------
// Descriptors
// ---------------------------------------------------------------------------

/// The two concrete algebra models supported by the library.
enum class AlgebraKind {
    DiagonalReal,     ///< real m-tuples, componentwise product, max-modulus norm
    HermitianMatrix,  ///< complex n-by-n matrices, operator 2-norm
};

const char* to_string(AlgebraKind kind) noexcept;

/// Shape and tolerance bundle shared by all elements of one algebra instance.
///
/// Tolerances are relative and must lie in [0, 1e-6].
struct AlgebraDescriptor {
    AlgebraKind kind = AlgebraKind::DiagonalReal;
    int dim = 1;  // tuple length m, or matrix side n
    double positivity_tolerance = 1e-10;
    double hermitian_tolerance = 1e-10;

    static AlgebraDescriptor diagonal_real(int m,
                                           double positivity_tol = 1e-10,
                                           double hermitian_tol = 1e-10);
    static AlgebraDescriptor hermitian_matrix(int n,
                                              double positivity_tol = 1e-10,
                                              double hermitian_tol = 1e-10);

    /// Throws BadParametersError unless dim >= 1 and tolerances are in [0, 1e-6].
    void validate() const;

    friend bool operator==(const AlgebraDescriptor&, const AlgebraDescriptor&) = default;
};

// ---------------------------------------------------------------------------
// Elements
// ---------------------------------------------------------------------------

/// Immutable dense element of a concrete algebra. Entries are always finite.
class AlgebraElement {
public:
    /// Builds a DiagonalReal element; entries.size() must equal desc.dim.
    static AlgebraElement diagonal(AlgebraDescriptor desc, std::vector<double> entries);

    /// Builds a HermitianMatrix-kind element from row-major entries
    /// (desc.dim * desc.dim of them). The matrix is stored as given and is
    /// not required to be Hermitian: non-Hermitian values can legitimately
    /// arise from raw products and are caught by the order operations.
    static AlgebraElement matrix(AlgebraDescriptor desc,
                                 std::vector<std::complex<double>> entries);

    static AlgebraElement zero(const AlgebraDescriptor& desc);
    static AlgebraElement unit(const AlgebraDescriptor& desc);

    [[nodiscard]] const AlgebraDescriptor& descriptor() const noexcept { return desc_; }
    [[nodiscard]] bool is_diagonal() const noexcept;

    /// Diagonal payload; throws Error if the element is matrix-kind.
    [[nodiscard]] const std::vector<double>& diag() const;
    /// Matrix payload (row-major); throws Error if the element is diagonal-kind.
    [[nodiscard]] const std::vector<std::complex<double>>& mat() const;

    /// Entry accessor valid for both kinds; off-diagonal reads of a diagonal
    /// element return zero.
    [[nodiscard]] std::complex<double> at(int row, int col) const;

private:
    using Payload = std::variant<std::vector<double>, std::vector<std::complex<double>>>;
    AlgebraElement(AlgebraDescriptor desc, Payload data);

    AlgebraDescriptor desc_;
    Payload data_;
};

// ---------------------------------------------------------------------------
// Order results
// ---------------------------------------------------------------------------

enum class OrderVerdict { Holds, Fails, IllPosed };

const char* to_string(OrderVerdict verdict) noexcept;

/// Outcome of one partial-order comparison a <= b.
///
/// witness_eigenvalue is the most negative eigenvalue of (b - a); it is
/// always populated when the comparison is well posed. hermitian_defect is
/// the relative asymmetry of (b - a); the verdict is IllPosed exactly when
/// the defect exceeds the descriptor's hermitian tolerance.
struct OrderResult {
    OrderVerdict verdict = OrderVerdict::Fails;
    std::optional<double> witness_eigenvalue;
    std::optional<double> hermitian_defect;

    [[nodiscard]] bool holds() const noexcept { return verdict == OrderVerdict::Holds; }
    [[nodiscard]] bool ill_posed() const noexcept { return verdict == OrderVerdict::IllPosed; }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Conjugate transpose (identity on diagonal elements).
[[nodiscard]] AlgebraElement involution(const AlgebraElement& a);

/// Algebra product: componentwise for diagonal, matrix product otherwise.
[[nodiscard]] AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);

[[nodiscard]] AlgebraElement add(const AlgebraElement& a, const AlgebraElement& b);
[[nodiscard]] AlgebraElement subtract(const AlgebraElement& a, const AlgebraElement& b);
[[nodiscard]] AlgebraElement scale(const AlgebraElement& a, double factor);

/// Max-modulus of entries (diagonal) or operator 2-norm, i.e. the largest
/// singular value (matrix). Valid for non-Hermitian matrices as well.
[[nodiscard]] double norm(const AlgebraElement& a);

/// Relative asymmetry max|a_ij - conj(a_ji)| / max(1, max|a_ij|).
/// Always zero for diagonal elements.
[[nodiscard]] double hermitian_defect(const AlgebraElement& a);

/// Eigenvalues in ascending order. Throws NotHermitianError when the
/// element's defect exceeds its hermitian tolerance.
[[nodiscard]] std::vector<double> spectrum(const AlgebraElement& a);

/// Self-adjoint within tolerance and min(spectrum) >= -tol * max(1, norm).
[[nodiscard]] bool is_positive(const AlgebraElement& a);

/// Partial-order test a <= b, decided on the spectrum of (b - a).
/// Throws DescriptorMismatchError when the operands disagree.
[[nodiscard]] OrderResult leq(const AlgebraElement& a, const AlgebraElement& b);

/// Spectral power a^exponent for positive a and exponent > 0. Eigenvalues
/// inside the negative tolerance band are clamped to zero; 0^exponent = 0.
/// Throws NotPositiveError when is_positive(a) is false.
[[nodiscard]] AlgebraElement frac_power(const AlgebraElement& a, double exponent);

/// Full eigensystem of a Hermitian element. vectors is row-major with
/// eigenvector k in column k; values are ascending and satisfy
/// a = V diag(values) V* to within 1e-12 * norm(a).
struct EigenSystem {
    std::vector<double> values;
    std::vector<std::complex<double>> vectors;
};

[[nodiscard]] EigenSystem hermitian_eigensystem(const AlgebraElement& a);

/// Draws a random positive element: nonnegative entries for diagonal
/// descriptors, a Gram matrix m* m for matrix descriptors. Entry magnitudes
/// are on the order of `magnitude`.
[[nodiscard]] AlgebraElement random_positive(const AlgebraDescriptor& desc,
                                             std::mt19937_64& rng, double magnitude = 1.0);

}  // namespace cstarfix
