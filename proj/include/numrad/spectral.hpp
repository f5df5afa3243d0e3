#pragma once

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <vector>

#include "numrad/matrix.hpp"
#include "numrad/tolerances.hpp"

namespace numrad {

struct HermitianEigen {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix vectors;            // column eigenvectors
};

struct SingularDecomposition {
    ComplexMatrix left;          // unitary
    std::vector<double> sigma;   // descending, nonnegative
    ComplexMatrix right;         // unitary
};

namespace detail {

/// Unitary J = [[c, s], [-s·phase, c·phase]] that diagonalizes the Hermitian
/// 2x2 block [[a, b], [conj(b), d]] via J* H J.
struct Rotation {
    double c = 1.0;
    double s = 0.0;
    Complex phase{1.0, 0.0};
    double t = 0.0;  // tan θ
    double beta = 0.0;
};

inline Rotation jacobi_rotation(double a, double d, Complex b) {
    Rotation r;
    r.beta = std::abs(b);
    if (r.beta == 0.0) return r;
    r.phase = std::conj(b) / r.beta;  // e^{-iφ}
    const double tau = (d - a) / (2.0 * r.beta);
    r.t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::hypot(1.0, tau));
    r.c = 1.0 / std::hypot(1.0, r.t);
    r.s = r.t * r.c;
    return r;
}

/// Apply W ← W·J on columns p, q.
inline void rotate_columns(ComplexMatrix& w, std::size_t p, std::size_t q, const Rotation& r) {
    const std::size_t n = w.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Complex wp = w(k, p);
        const Complex wq = w(k, q);
        w(k, p) = r.c * wp - r.s * r.phase * wq;
        w(k, q) = r.s * wp + r.c * r.phase * wq;
    }
}

/// Cyclic Jacobi on a working copy; eigenvectors accumulated only when requested.
inline std::vector<double> jacobi_diagonalize(ComplexMatrix& h, ComplexMatrix* v) {
    const std::size_t n = h.size();
    const double scale = frobenius_norm(h);
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = h(i, i).real();
    if (n <= 1 || scale == 0.0) return diag;

    const double target = DBL_EPSILON * scale;
    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(h(p, q));
        if (std::sqrt(off) <= target) {
            for (std::size_t i = 0; i < n; ++i) diag[i] = h(i, i).real();
            return diag;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex b = h(p, q);
                const double app = h(p, p).real();
                const double aqq = h(q, q).real();
                if (std::abs(b) <= 1e-3 * DBL_EPSILON * (std::abs(app) + std::abs(aqq)) &&
                    sweep > 2) {
                    h(p, q) = h(q, p) = 0.0;
                    continue;
                }
                if (b == Complex{}) continue;
                const Rotation r = jacobi_rotation(app, aqq, b);
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    const Complex hkp = h(k, p);
                    const Complex hkq = h(k, q);
                    const Complex np = r.c * hkp - r.s * r.phase * hkq;
                    const Complex nq = r.s * hkp + r.c * r.phase * hkq;
                    h(k, p) = np;
                    h(k, q) = nq;
                    h(p, k) = std::conj(np);
                    h(q, k) = std::conj(nq);
                }
                h(p, p) = app - r.t * r.beta;
                h(q, q) = aqq + r.t * r.beta;
                h(p, q) = h(q, p) = 0.0;
                if (v != nullptr) rotate_columns(*v, p, q, r);
            }
        }
    }
    throw Error(ErrorKind::NoConvergence, "Jacobi eigensolver exceeded sweep budget");
}

inline void require_hermitian(const ComplexMatrix& h, double tol_herm) {
    const double defect = hermitian_defect(h);
    if (!(defect <= tol_herm * std::max(1.0, frobenius_norm(h)))) {
        throw Error(ErrorKind::NotHermitian,
                    "‖H − H*‖ = " + std::to_string(defect) + " exceeds tolerance");
    }
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix; eigenvalues ascending.
inline HermitianEigen hermitian_eigen(const ComplexMatrix& h, const Tolerances& tol = {}) {
    detail::require_hermitian(h, tol.herm);
    const std::size_t n = h.size();
    ComplexMatrix work = real_part(h);
    ComplexMatrix v = ComplexMatrix::identity(n);
    std::vector<double> lambda = detail::jacobi_diagonalize(work, &v);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lambda[a] < lambda[b]; });
    HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t j = 0; j < n; ++j) {
        out.eigenvalues[j] = lambda[order[j]];
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

/// Eigenvalues only, ascending. Skips the Hermitian check; callers pass
/// matrices that are Hermitian by construction.
inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h) {
    ComplexMatrix work = h;
    auto lambda = detail::jacobi_diagonalize(work, nullptr);
    std::sort(lambda.begin(), lambda.end());
    return lambda;
}

inline double hermitian_lambda_max(const ComplexMatrix& h) {
    if (h.empty()) return 0.0;
    return hermitian_eigenvalues(h).back();
}

/// ‖H‖ for Hermitian H: the largest eigenvalue modulus.
inline double hermitian_norm(const ComplexMatrix& h) {
    if (h.empty()) return 0.0;
    const auto lambda = hermitian_eigenvalues(h);
    return std::max(std::abs(lambda.front()), std::abs(lambda.back()));
}

namespace detail {

inline void orthonormal_completion(ComplexMatrix& u, std::vector<bool>& filled) {
    const std::size_t n = u.size();
    for (std::size_t j = 0; j < n; ++j) {
        if (filled[j]) continue;
        std::vector<Complex> best;
        double best_norm = -1.0;
        for (std::size_t e = 0; e < n; ++e) {
            std::vector<Complex> cand(n);
            cand[e] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t k = 0; k < n; ++k) {
                    if (!filled[k]) continue;
                    Complex proj{};
                    for (std::size_t i = 0; i < n; ++i) proj += std::conj(u(i, k)) * cand[i];
                    for (std::size_t i = 0; i < n; ++i) cand[i] -= proj * u(i, k);
                }
            }
            const double nm = vector_norm(cand);
            if (nm > best_norm) {
                best_norm = nm;
                best = std::move(cand);
            }
        }
        for (std::size_t i = 0; i < n; ++i) u(i, j) = best[i] / best_norm;
        filled[j] = true;
    }
}

}  // namespace detail

/// One-sided (Hestenes) Jacobi SVD: A = left·diag(σ)·right*.
inline SingularDecomposition svd(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    ComplexMatrix w = a;
    ComplexMatrix v = ComplexMatrix::identity(n);
    std::vector<double> colnorm2(n);
    auto column_norm2 = [&](std::size_t j) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += std::norm(w(k, j));
        return s;
    };

    bool converged = n <= 1;
    for (int sweep = 0; sweep < kMaxJacobiSweeps && !converged; ++sweep) {
        converged = true;
        for (std::size_t j = 0; j < n; ++j) colnorm2[j] = column_norm2(j);
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex gamma{};
                for (std::size_t k = 0; k < n; ++k) gamma += std::conj(w(k, p)) * w(k, q);
                const double alpha = colnorm2[p];
                const double beta = colnorm2[q];
                if (std::abs(gamma) <= DBL_EPSILON * std::sqrt(alpha * beta) ||
                    std::abs(gamma) == 0.0) {
                    continue;
                }
                converged = false;
                const auto r = detail::jacobi_rotation(alpha, beta, gamma);
                detail::rotate_columns(w, p, q, r);
                detail::rotate_columns(v, p, q, r);
                colnorm2[p] = column_norm2(p);
                colnorm2[q] = column_norm2(q);
            }
        }
    }
    if (!converged) throw Error(ErrorKind::NoConvergence, "one-sided Jacobi SVD exceeded sweep budget");

    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(column_norm2(j));
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

    SingularDecomposition out{ComplexMatrix(n), std::vector<double>(n), ComplexMatrix(n)};
    const double floor = (n > 0 ? sigma[order[0]] : 0.0) * static_cast<double>(n) * DBL_EPSILON;
    std::vector<bool> filled(n, false);
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src = order[j];
        out.sigma[j] = sigma[src];
        for (std::size_t i = 0; i < n; ++i) out.right(i, j) = v(i, src);
        if (sigma[src] > floor && sigma[src] > 0.0) {
            for (std::size_t i = 0; i < n; ++i) out.left(i, j) = w(i, src) / sigma[src];
            filled[j] = true;
        }
    }
    detail::orthonormal_completion(out.left, filled);
    return out;
}

namespace detail {

/// Singular values from the Gram matrix; only σ₁ is accurate to full
/// relative precision, the small ones lose half their digits.
inline std::vector<double> gram_singular_values(const ComplexMatrix& a) {
    const std::size_t n = a.size();
    ComplexMatrix gram(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Complex s{};
            for (std::size_t k = 0; k < n; ++k) s += std::conj(a(k, i)) * a(k, j);
            gram(i, j) = s;
            gram(j, i) = std::conj(s);
        }
    auto lambda = hermitian_eigenvalues(gram);
    std::vector<double> sigma(n);
    for (std::size_t j = 0; j < n; ++j) sigma[j] = std::sqrt(std::max(0.0, lambda[n - 1 - j]));
    return sigma;
}

}  // namespace detail

/// ‖A‖ = σ₁.
inline double spectral_norm(const ComplexMatrix& a) {
    if (a.empty()) return 0.0;
    return svd(a).sigma.front();
}

/// Fast ‖A‖ through λ_max(A*A); accurate to roughly machine precision
/// relative to σ₁, which is all the bound evaluators need.
inline double operator_norm(const ComplexMatrix& a) {
    if (a.empty()) return 0.0;
    return detail::gram_singular_values(a).front();
}

/// r(A) by Gelfand's formula with repeated squaring, renormalizing by the
/// Frobenius norm after every step.
inline double spectral_radius(const ComplexMatrix& a, const Tolerances& tol = {}) {
    double f = frobenius_norm(a);
    if (f == 0.0) return 0.0;
    ComplexMatrix m = a * (1.0 / f);
    double log_scale = std::log(f);  // A^{2^k} = e^{log_scale}·m
    double exponent = 1.0;           // 2^k
    double previous = f;
    double estimate = f;
    for (int k = 0; k < kGelfandSquarings; ++k) {
        m = m * m;
        const double g = frobenius_norm(m);
        if (g == 0.0) return 0.0;  // nilpotent to working precision
        m *= 1.0 / g;
        log_scale = 2.0 * log_scale + std::log(g);
        exponent *= 2.0;
        previous = estimate;
        estimate = std::exp(log_scale / exponent);
    }
    if (std::abs(estimate - previous) > tol.rad * std::max(estimate, DBL_MIN)) {
        throw Error(ErrorKind::NoConvergence, "Gelfand iteration did not settle");
    }
    return estimate;
}

/// Spectral data of a PSD matrix, reusable for many fractional powers.
class PsdSpectrum {
public:
    PsdSpectrum() = default;

    PsdSpectrum(std::vector<double> eigenvalues, ComplexMatrix vectors)
        : lambda_(std::move(eigenvalues)), vectors_(std::move(vectors)) {}

    /// Eigen-decomposes a nominally PSD matrix, clamping roundoff negatives.
    static PsdSpectrum from_psd(const ComplexMatrix& p, const Tolerances& tol = {}) {
        auto eig = hermitian_eigen(p, tol);
        double norm = 0.0;
        for (double l : eig.eigenvalues) norm = std::max(norm, std::abs(l));
        for (double& l : eig.eigenvalues) {
            if (l < -tol.psd * norm) {
                throw Error(ErrorKind::NotPSD, "eigenvalue " + std::to_string(l) + " is negative");
            }
            l = std::max(l, 0.0);
        }
        return {std::move(eig.eigenvalues), std::move(eig.vectors)};
    }

    std::size_t size() const noexcept { return lambda_.size(); }
    const std::vector<double>& eigenvalues() const noexcept { return lambda_; }
    const ComplexMatrix& vectors() const noexcept { return vectors_; }

    double max_eigenvalue() const noexcept {
        double m = 0.0;
        for (double l : lambda_) m = std::max(m, l);
        return m;
    }

    /// True when λ_max^r is not representable with headroom for an n-term sum.
    bool power_overflows(double r) const {
        const double top = max_eigenvalue();
        if (top <= 1.0) return false;
        return r * std::log(top) > std::log(DBL_MAX) - std::log(16.0 * static_cast<double>(size() + 1));
    }

    /// V·diag(λ^r)·V* with 0^r = 0; r must be positive.
    ComplexMatrix power(double r) const {
        if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "fractional power exponent must be positive");
        const std::size_t n = size();
        std::vector<double> d(n);
        for (std::size_t k = 0; k < n; ++k) {
            d[k] = lambda_[k] > 0.0 ? std::pow(lambda_[k], r) : 0.0;
            if (!std::isfinite(d[k])) {
                throw Error(ErrorKind::NonFinite, "λ^r overflow at r = " + std::to_string(r));
            }
        }
        return reconstruct(d);
    }

    ComplexMatrix reconstruct(std::span<const double> d) const {
        const std::size_t n = size();
        ComplexMatrix out(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i; j < n; ++j) {
                Complex s{};
                for (std::size_t k = 0; k < n; ++k) {
                    if (d[k] == 0.0) continue;
                    s += vectors_(i, k) * d[k] * std::conj(vectors_(j, k));
                }
                out(i, j) = s;
                out(j, i) = std::conj(s);
            }
            out(i, i) = out(i, i).real();
        }
        return out;
    }

private:
    std::vector<double> lambda_;
    ComplexMatrix vectors_;
};

/// P^r for PSD P. r = 0 is rejected: support projection vs identity is ambiguous.
inline ComplexMatrix frac_power(const ComplexMatrix& p, double r, const Tolerances& tol = {}) {
    if (r == 0.0) throw Error(ErrorKind::DomainError, "exponent 0 is not defined for frac_power");
    if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "exponent must be nonnegative");
    return PsdSpectrum::from_psd(p, tol).power(r);
}

}  // namespace numrad
