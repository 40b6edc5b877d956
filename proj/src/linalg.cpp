#include "qwcount/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qwcount {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require(bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
}

}  // namespace

ComplexVector::ComplexVector(std::vector<Complex> entries) : entries_(std::move(entries)) {
    require(std::all_of(entries_.begin(), entries_.end(), finite), "ComplexVector: non-finite entry");
}

double ComplexVector::norm() const {
    double sum = 0.0;
    for (const auto& z : entries_) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    require(entries_.size() == rows_ * cols_, "ComplexMatrix: entry count != rows * cols");
    require(std::all_of(entries_.begin(), entries_.end(), finite), "ComplexMatrix: non-finite entry");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix mat_mul(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.cols() == b.rows(), "mat_mul: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    // i-k-j order; zero entries of `a` are skipped, which makes products with the
    // permutation and diagonal operators used throughout nearly free.
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexVector mat_vec(const ComplexMatrix& a, const ComplexVector& v) {
    require(a.cols() == v.dim(), "mat_vec: dimension mismatch");
    ComplexVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Complex acc{};
        for (std::size_t k = 0; k < a.cols(); ++k) acc += a(i, k) * v[k];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = std::conj(a(i, j));
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

ComplexMatrix scaled(const ComplexMatrix& a, Complex factor) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = factor * a(i, j);
    return out;
}

double unitarity_defect(const ComplexMatrix& a) {
    require(a.is_square(), "unitarity_defect: matrix is not square");
    const std::size_t n = a.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // (a^dagger a)_{ij} = sum_k conj(a_{ki}) a_{kj}
            Complex acc{};
            for (std::size_t k = 0; k < n; ++k) acc += std::conj(a(k, i)) * a(k, j);
            if (i == j) acc -= 1.0;
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

double eigen_residual(const ComplexMatrix& a, Complex lambda, const ComplexVector& v) {
    require(a.is_square(), "eigen_residual: matrix is not square");
    require(v.dim() == a.rows(), "eigen_residual: dimension mismatch");
    const double vnorm = v.norm();
    require(vnorm > 0.0, "eigen_residual: zero vector");
    const ComplexVector av = mat_vec(a, v);
    double sum = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) sum += std::norm(av[i] - lambda * v[i]);
    return std::sqrt(sum) / vnorm;
}

Complex inner(const ComplexVector& a, const ComplexVector& b) {
    require(a.dim() == b.dim(), "inner: dimension mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require(a.rows() == b.rows() && a.cols() == b.cols(), "max_abs_diff: shape mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i)
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    return worst;
}

double max_abs_diff(const ComplexVector& a, const ComplexVector& b) {
    require(a.dim() == b.dim(), "max_abs_diff: dimension mismatch");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

double gram_defect(std::span<const ComplexVector> vectors) {
    double worst = 0.0;
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        for (std::size_t j = 0; j < vectors.size(); ++j) {
            Complex g = inner(vectors[i], vectors[j]);
            if (i == j) g -= 1.0;
            worst = std::max(worst, std::abs(g));
        }
    }
    return worst;
}

ComplexMatrix rotation(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return ComplexMatrix(2, 2, {c, -s, s, c});
}

}  // namespace qwcount
