#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "numrad/error.hpp"

namespace numrad {

using Complex = std::complex<double>;

/// Dense square complex matrix stored row-major.
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    ComplexMatrix(std::size_t n, std::vector<Complex> entries) : n_(n), data_(std::move(entries)) {
        if (data_.size() != n_ * n_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "expected " + std::to_string(n_ * n_) + " entries, got " +
                            std::to_string(data_.size()));
        }
    }

    /// Row-by-row construction; every row must have as many entries as there are rows.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : n_(rows.size()) {
        data_.reserve(n_ * n_);
        for (const auto& row : rows) {
            if (row.size() != n_) {
                throw Error(ErrorKind::DimensionMismatch, "ragged row in matrix literal");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    static ComplexMatrix diagonal(std::initializer_list<double> d) {
        return diagonal(std::span<const double>(d.begin(), d.size()));
    }

    std::size_t size() const noexcept { return n_; }
    bool empty() const noexcept { return n_ == 0; }

    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    std::span<Complex> entries() noexcept { return data_; }
    std::span<const Complex> entries() const noexcept { return data_; }

    bool all_finite() const noexcept {
        for (const auto& z : data_) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        }
        return true;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& rhs) {
        require_same_size(rhs);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& rhs) {
        require_same_size(rhs);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    ComplexMatrix& operator*=(double s) {
        for (auto& z : data_) z *= s;
        return *this;
    }

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    void require_same_size(const ComplexMatrix& rhs) const {
        if (rhs.n_ != n_) {
            throw Error(ErrorKind::DimensionMismatch,
                        std::to_string(n_) + "x" + std::to_string(n_) + " vs " +
                            std::to_string(rhs.n_) + "x" + std::to_string(rhs.n_));
        }
    }

    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

inline ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
inline ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
inline ComplexMatrix operator*(ComplexMatrix m, double s) { return m *= s; }
inline ComplexMatrix operator*(double s, ComplexMatrix m) { return m *= s; }
inline ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t n = a.size();
    if (b.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix product");
    ComplexMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

inline std::vector<Complex> operator*(const ComplexMatrix& a, std::span<const Complex> x) {
    const std::size_t n = a.size();
    if (x.size() != n) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
    std::vector<Complex> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        Complex acc{};
        for (std::size_t j = 0; j < n; ++j) acc += a(i, j) * x[j];
        y[i] = acc;
    }
    return y;
}

inline ComplexMatrix adjoint(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = std::conj(a(j, i));
    return r;
}

/// Re T = (T + T*)/2.
inline ComplexMatrix real_part(const ComplexMatrix& t) {
    const std::size_t n = t.size();
    ComplexMatrix r(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) r(i, j) = 0.5 * (t(i, j) + std::conj(t(j, i)));
    return r;
}

inline double frobenius_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (const auto& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_abs_entry(const ComplexMatrix& a) {
    double m = 0.0;
    for (const auto& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

/// Frobenius norm of A − A*, the Hermitian-ness defect.
inline double hermitian_defect(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s += std::norm(a(i, j) - std::conj(a(j, i)));
    return std::sqrt(s);
}

/// A^k by repeated squaring, k ≥ 1.
inline ComplexMatrix power(const ComplexMatrix& a, unsigned k) {
    if (k == 0) throw Error(ErrorKind::DomainError, "matrix power k must be >= 1");
    ComplexMatrix result;
    ComplexMatrix base = a;
    bool have = false;
    while (k > 0) {
        if (k & 1u) {
            result = have ? result * base : base;
            have = true;
        }
        k >>= 1u;
        if (k > 0) base = base * base;
    }
    return result;
}

inline Complex inner(std::span<const Complex> x, std::span<const Complex> y) {
    // ⟨x, y⟩ = Σ x_i conj(y_i), linear in the first slot.
    Complex acc{};
    for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * std::conj(y[i]);
    return acc;
}

/// Quadratic form ⟨Ax, x⟩.
inline Complex quadratic_form(const ComplexMatrix& a, std::span<const Complex> x) {
    const auto ax = a * x;
    return inner(ax, x);
}

inline double vector_norm(std::span<const Complex> x) {
    double s = 0.0;
    for (const auto& z : x) s += std::norm(z);
    return std::sqrt(s);
}

}  // namespace numrad
