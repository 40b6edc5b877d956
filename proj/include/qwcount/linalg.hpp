#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace qwcount {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Default tolerance for structural identities (unitarity, involutions, invariance).
inline constexpr double kStructuralTolerance = 1e-10;
/// Default tolerance for comparisons between two independent computation routes.
inline constexpr double kCrossModeTolerance = 1e-8;

/// Raised when a request would exceed the artifact's explicit size guards.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ComplexVector {
public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : entries_(dim, Complex{0.0, 0.0}) {}
    /// Throws std::invalid_argument if any entry is NaN or infinite.
    explicit ComplexVector(std::vector<Complex> entries);

    std::size_t dim() const noexcept { return entries_.size(); }

    Complex& operator[](std::size_t i) { return entries_[i]; }
    const Complex& operator[](std::size_t i) const { return entries_[i]; }

    std::span<Complex> entries() noexcept { return entries_; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    double norm() const;

    friend bool operator==(const ComplexVector&, const ComplexVector&) = default;

private:
    std::vector<Complex> entries_;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols, Complex{0.0, 0.0}) {}
    /// Throws std::invalid_argument on a size mismatch or a non-finite entry.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    std::span<const Complex> entries() const noexcept { return entries_; }
    std::span<const Complex> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& v);
ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix scaled(const ComplexMatrix& a, Complex factor);

/// Max-entry absolute deviation of a^dagger a from the identity.
double unitarity_defect(const ComplexMatrix& a);

/// ||a v - lambda v||_2 / ||v||_2.
double eigen_residual(const ComplexMatrix& a, Complex lambda, const ComplexVector& v);

/// <a|b>, conjugate-linear in the first argument.
Complex inner(const ComplexVector& a, const ComplexVector& b);

/// Largest entrywise |a - b|; throws on a shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const ComplexVector& a, const ComplexVector& b);

/// Max-entry deviation of the Gram matrix of `vectors` from the identity.
double gram_defect(std::span<const ComplexVector> vectors);

/// The real 2x2 rotation [[cos t, -sin t], [sin t, cos t]].
ComplexMatrix rotation(double theta);

}  // namespace qwcount
