#pragma once

#include <algorithm>
#include <vector>

#include "numrad/matrix.hpp"
#include "numrad/spectral.hpp"
#include "numrad/tolerances.hpp"

namespace numrad {

/// A = U·P with U a partial isometry vanishing on ker P and P = |A|.
struct PolarDecomposition {
    ComplexMatrix isometry;
    ComplexMatrix positive;
};

/// A weight t in the clamped window [t_min, 1 − t_min] together with R = max{t, 1 − t}.
class WeightParams {
public:
    static WeightParams make(double t, const Tolerances& tol = {}) {
        if (!(t >= tol.t_min && t <= 1.0 - tol.t_min)) {
            throw Error(ErrorKind::WeightOutOfRange,
                        "t = " + std::to_string(t) + " outside [" + std::to_string(tol.t_min) + ", " +
                            std::to_string(1.0 - tol.t_min) + "]");
        }
        return WeightParams(t);
    }

    double t() const noexcept { return t_; }
    double r_cap() const noexcept { return std::max(t_, 1.0 - t_); }

private:
    explicit WeightParams(double t) : t_(t) {}
    double t_;
};

struct WeightedAluthge {
    double t;
    ComplexMatrix transform;
};

/// Everything derived from one SVD of A: the spectra of |A| and |A*| and
/// the polar isometry. Building this once lets the bound evaluators take
/// many fractional powers without re-factoring.
class PolarFactors {
public:
    explicit PolarFactors(const ComplexMatrix& a, const Tolerances& tol = {}) : a_(a) {
        auto s = svd(a);
        const std::size_t n = a.size();
        norm_ = n > 0 ? s.sigma.front() : 0.0;
        abs_ = PsdSpectrum(s.sigma, s.right);
        abs_adjoint_ = PsdSpectrum(s.sigma, s.left);

        // U = Σ_{σ_k > cut} left_k · right_k*
        const double cut = tol.sigma_cut * norm_;
        isometry_ = ComplexMatrix(n);
        for (std::size_t k = 0; k < n; ++k) {
            if (!(s.sigma[k] > cut)) continue;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    isometry_(i, j) += s.left(i, k) * std::conj(s.right(j, k));
        }
    }

    const ComplexMatrix& matrix() const noexcept { return a_; }
    std::size_t size() const noexcept { return a_.size(); }
    double norm() const noexcept { return norm_; }

    /// Spectrum of |A| = (A*A)^{1/2}.
    const PsdSpectrum& abs_spectrum() const noexcept { return abs_; }
    /// Spectrum of |A*| = (AA*)^{1/2}.
    const PsdSpectrum& abs_adjoint_spectrum() const noexcept { return abs_adjoint_; }
    const ComplexMatrix& isometry() const noexcept { return isometry_; }

    ComplexMatrix abs() const { return abs_.reconstruct(abs_.eigenvalues()); }
    ComplexMatrix abs_adjoint() const { return abs_adjoint_.reconstruct(abs_adjoint_.eigenvalues()); }

    /// Ã_t = |A|^{1−t}·U·|A|^t for t strictly inside (0, 1).
    ComplexMatrix aluthge(double t) const {
        if (!(t > 0.0 && t < 1.0)) {
            throw Error(ErrorKind::WeightOutOfRange, "Aluthge weight must lie in (0, 1)");
        }
        return abs_.power(1.0 - t) * isometry_ * abs_.power(t);
    }

private:
    ComplexMatrix a_;
    double norm_ = 0.0;
    PsdSpectrum abs_;
    PsdSpectrum abs_adjoint_;
    ComplexMatrix isometry_;
};

/// |A| = (A*A)^{1/2}, built from the right singular vectors.
inline ComplexMatrix abs_value(const ComplexMatrix& a) {
    return PolarFactors(a).abs();
}

inline PolarDecomposition polar(const ComplexMatrix& a, const Tolerances& tol = {}) {
    PolarFactors f(a, tol);
    return {f.isometry(), f.abs()};
}

/// Weighted Aluthge transform; t must lie in the clamped window.
inline WeightedAluthge aluthge(const ComplexMatrix& a, double t, const Tolerances& tol = {}) {
    const auto w = WeightParams::make(t, tol);
    return {w.t(), PolarFactors(a, tol).aluthge(w.t())};
}

}  // namespace numrad
