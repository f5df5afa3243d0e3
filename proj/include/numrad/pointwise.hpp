#pragma once

#include <cmath>
#include <vector>

#include "numrad/matrix.hpp"
#include "numrad/numradius.hpp"
#include "numrad/polar.hpp"
#include "numrad/random.hpp"
#include "numrad/spectral.hpp"

namespace numrad {

/// A vector normalized on construction.
class UnitVector {
public:
    explicit UnitVector(std::vector<Complex> entries) : x_(std::move(entries)) {
        const double nm = vector_norm(x_);
        if (!(nm > 0.0) || !std::isfinite(nm)) {
            throw Error(ErrorKind::DomainError, "cannot normalize a zero or non-finite vector");
        }
        for (auto& z : x_) z /= nm;
    }

    static UnitVector random(Rng& rng, std::size_t n) { return UnitVector(rng.unit_vector(n)); }

    static UnitVector basis(std::size_t n, std::size_t k) {
        std::vector<Complex> e(n);
        e.at(k) = 1.0;
        return UnitVector(std::move(e));
    }

    std::size_t size() const noexcept { return x_.size(); }
    std::span<const Complex> entries() const noexcept { return x_; }
    operator std::span<const Complex>() const noexcept { return x_; }

private:
    std::vector<Complex> x_;
};

struct InequalityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin() const noexcept { return rhs - lhs; }
    bool holds(double tol) const noexcept { return margin() >= -tol; }
};

namespace detail {

inline void require_dims(const ComplexMatrix& a, std::size_t n) {
    if (a.size() != n) throw Error(ErrorKind::DimensionMismatch, "operand dimensions disagree");
}

/// ⟨Px, x⟩ for Hermitian P, as a real number.
inline double real_form(const ComplexMatrix& p, std::span<const Complex> x) {
    return quadratic_form(p, x).real();
}

}  // namespace detail

/// |⟨Ax, y⟩|² ≤ ⟨|A|^{2(1−t)}x, x⟩·⟨|A*|^{2t}y, y⟩.
inline InequalityCheck kato(const ComplexMatrix& a, const UnitVector& x, const UnitVector& y, double t,
                            const Tolerances& tol = {}) {
    const auto w = WeightParams::make(t, tol);
    detail::require_dims(a, x.size());
    detail::require_dims(a, y.size());
    PolarFactors f(a, tol);
    const double lhs = std::norm(inner(a * x.entries(), y));
    const double rhs = detail::real_form(f.abs_spectrum().power(2.0 * (1.0 - w.t())), x) *
                       detail::real_form(f.abs_adjoint_spectrum().power(2.0 * w.t()), y);
    return {lhs, rhs};
}

/// Power-mean comparison for PSD P. For r ≥ 1 checks ⟨Px,x⟩^r ≤ ⟨P^r x,x⟩;
/// for r in (0, 1) the sides are swapped, so margin ≥ 0 in both regimes.
inline InequalityCheck mccarthy(const ComplexMatrix& p, const UnitVector& x, double r,
                                const Tolerances& tol = {}) {
    if (!(r > 0.0)) throw Error(ErrorKind::DomainError, "mccarthy needs r > 0");
    detail::require_dims(p, x.size());
    const auto spectrum = PsdSpectrum::from_psd(p, tol);
    const double base = std::max(0.0, detail::real_form(p, x));
    const double powered = std::max(0.0, detail::real_form(spectrum.power(r), x));
    const double base_r = std::pow(base, r);
    if (r >= 1.0) return {base_r, powered};
    return {powered, base_r};
}

struct CovarianceCheck {
    InequalityCheck general;      // arbitrary A, B
    InequalityCheck self_product; // B* = A specialization
};

/// |⟨B*Ax,x⟩ − ⟨B*x,x⟩⟨Ax,x⟩| ≤ sqrt(⟨|A|²x,x⟩⟨|B|²x,x⟩) − |⟨Ax,x⟩||⟨Bx,x⟩|,
/// together with the B* = A case
/// |⟨Ax,x⟩|² + |⟨A²x,x⟩ − ⟨Ax,x⟩²| ≤ sqrt(⟨|A|²x,x⟩⟨|A*|²x,x⟩).
inline CovarianceCheck schwarz_covariance(const ComplexMatrix& a, const ComplexMatrix& b, const UnitVector& x) {
    detail::require_dims(a, x.size());
    detail::require_dims(b, x.size());
    const auto ax = a * x.entries();
    const auto bx = b * x.entries();
    const Complex ax_x = inner(ax, x);
    const Complex bx_x = inner(bx, x);
    const Complex bstar_x_x = std::conj(bx_x);  // ⟨B*x, x⟩ = conj⟨Bx, x⟩
    const Complex bstar_ax_x = inner(ax, bx);   // ⟨B*Ax, x⟩ = ⟨Ax, Bx⟩
    const double a2 = std::norm(vector_norm(ax));  // ⟨|A|²x, x⟩ = ‖Ax‖²
    const double b2 = std::norm(vector_norm(bx));

    CovarianceCheck out;
    out.general.lhs = std::abs(bstar_ax_x - bstar_x_x * ax_x);
    out.general.rhs = std::sqrt(a2 * b2) - std::abs(ax_x) * std::abs(bx_x);

    const auto a2x = a * std::span<const Complex>(ax);
    const Complex a2x_x = inner(a2x, x);
    const auto astar_x = adjoint(a) * x.entries();
    const double astar2 = std::norm(vector_norm(astar_x));  // ⟨|A*|²x, x⟩ = ‖A*x‖²
    out.self_product.lhs = std::norm(ax_x) + std::abs(a2x_x - ax_x * ax_x);
    out.self_product.rhs = std::sqrt(a2 * astar2);
    return out;
}

/// |⟨B*x,x⟩⟨Ax,x⟩| ≤ (sqrt(⟨|A|²x,x⟩⟨|B|²x,x⟩) + |⟨B*Ax,x⟩|)/2.
inline InequalityCheck cs_refinement(const ComplexMatrix& a, const ComplexMatrix& b, const UnitVector& x) {
    detail::require_dims(a, x.size());
    detail::require_dims(b, x.size());
    const auto ax = a * x.entries();
    const auto bx = b * x.entries();
    const Complex ax_x = inner(ax, x);
    const Complex bstar_x_x = std::conj(inner(bx, x));
    const double a2 = std::norm(vector_norm(ax));
    const double b2 = std::norm(vector_norm(bx));
    return {std::abs(bstar_x_x * ax_x), 0.5 * (std::sqrt(a2 * b2) + std::abs(inner(ax, bx)))};
}

/// r(AB + CD) ≤ ½(ω(BA) + ω(DC) + sqrt((ω(BA) − ω(DC))² + 4‖BC‖‖DA‖)).
inline InequalityCheck amer_bound(const ComplexMatrix& a, const ComplexMatrix& b, const ComplexMatrix& c,
                                  const ComplexMatrix& d, const Tolerances& tol = {},
                                  int theta_grid = kDefaultThetaGrid) {
    const std::size_t n = a.size();
    detail::require_dims(b, n);
    detail::require_dims(c, n);
    detail::require_dims(d, n);
    const double lhs = spectral_radius(a * b + c * d, tol);
    const double wba = numerical_radius(b * a, theta_grid);
    const double wdc = numerical_radius(d * c, theta_grid);
    const double cross = spectral_norm(b * c) * spectral_norm(d * a);
    const double rhs = 0.5 * (wba + wdc + std::sqrt((wba - wdc) * (wba - wdc) + 4.0 * cross));
    return {lhs, rhs};
}

/// ‖P^t Q^t‖ ≤ ‖PQ‖^t for PSD P, Q and t in (0, 1].
inline InequalityCheck log_convexity_power(const PsdSpectrum& p, const PsdSpectrum& q, double t) {
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorKind::DomainError, "t must lie in (0, 1]");
    const ComplexMatrix pm = p.reconstruct(p.eigenvalues());
    const ComplexMatrix qm = q.reconstruct(q.eigenvalues());
    return {spectral_norm(p.power(t) * q.power(t)), std::pow(spectral_norm(pm * qm), t)};
}

/// Midpoint log-convexity of f(t) = ‖P^t Q^t‖: f((s+u)/2)² ≤ f(s)·f(u).
inline InequalityCheck log_convexity_midpoint(const PsdSpectrum& p, const PsdSpectrum& q, double s, double u) {
    auto f = [&](double t) { return spectral_norm(p.power(t) * q.power(t)); };
    const double mid = f(0.5 * (s + u));
    return {mid * mid, f(s) * f(u)};
}

}  // namespace numrad
