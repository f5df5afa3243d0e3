#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "numrad/golden.hpp"
#include "numrad/matrix.hpp"
#include "numrad/numradius.hpp"
#include "numrad/polar.hpp"
#include "numrad/spectral.hpp"
#include "numrad/tolerances.hpp"

namespace numrad {

enum class BoundId {
    Classic,
    KittSum,
    KittSquare,
    KittMixed,
    Integral,
    IntegralRefined,
    Yamazaki,
    AluthgeT,
    AluthgeHalf,
    WeightedPower,
    WeightedR,
    Product,
    FourthPower,
    SchwarzRadius,
};

inline constexpr std::array<BoundId, 14> kAllBounds = {
    BoundId::Classic,       BoundId::KittSum,     BoundId::KittSquare,    BoundId::KittMixed,
    BoundId::Integral,      BoundId::IntegralRefined, BoundId::Yamazaki, BoundId::AluthgeT,
    BoundId::AluthgeHalf,   BoundId::WeightedPower, BoundId::WeightedR,  BoundId::Product,
    BoundId::FourthPower,   BoundId::SchwarzRadius,
};

inline constexpr std::string_view to_string(BoundId id) {
    switch (id) {
        case BoundId::Classic: return "classic";
        case BoundId::KittSum: return "kitt-sum";
        case BoundId::KittSquare: return "kitt-square";
        case BoundId::KittMixed: return "kitt-mixed";
        case BoundId::Integral: return "integral";
        case BoundId::IntegralRefined: return "integral-refined";
        case BoundId::Yamazaki: return "yamazaki";
        case BoundId::AluthgeT: return "aluthge-t";
        case BoundId::AluthgeHalf: return "aluthge-half";
        case BoundId::WeightedPower: return "weighted-power";
        case BoundId::WeightedR: return "weighted-r";
        case BoundId::Product: return "product";
        case BoundId::FourthPower: return "fourth-power";
        case BoundId::SchwarzRadius: return "schwarz-radius";
    }
    return "unknown";
}

inline std::optional<BoundId> parse_bound_id(std::string_view name) {
    for (BoundId id : kAllBounds) {
        if (to_string(id) == name) return id;
    }
    return std::nullopt;
}

inline constexpr bool is_weighted(BoundId id) {
    switch (id) {
        case BoundId::AluthgeT:
        case BoundId::WeightedPower:
        case BoundId::WeightedR:
        case BoundId::Product:
        case BoundId::FourthPower:
        case BoundId::SchwarzRadius: return true;
        default: return false;
    }
}

/// One evaluated bound. `inner` holds the bound on ω² for the bounds stated
/// in squared form; `value` is always comparable with ω.
struct BoundValue {
    BoundId id;
    std::optional<double> t_used;
    double value = 0.0;
    std::optional<double> inner;
    std::vector<std::pair<std::string, double>> detail;

    std::optional<double> find(std::string_view key) const {
        for (const auto& [k, v] : detail)
            if (k == key) return v;
        return std::nullopt;
    }
};

struct BoundSettings {
    int t_grid = 1001;
    double refine_tol = 1e-8;
    int theta_grid = kDefaultThetaGrid;
    double theta_tol = kDefaultThetaTol;
    // Bounds that need ω of a t-dependent matrix run two angle sweeps per
    // evaluation; their search uses a coarser grid, and the winning t is
    // then re-evaluated at full resolution.
    int nested_t_grid = 21;
    double nested_refine_tol = 1e-3;
    int nested_theta_grid = 48;
    double nested_theta_tol = 1e-6;
    Tolerances tol{};
};

struct TMinimum {
    double t_star = 0.5;
    double value = 0.0;  // ω-comparable bound at t_star
    int evaluations = 0;
    int skipped = 0;  // grid points whose evaluation overflowed
};

struct BoundReport {
    RadiusEstimate omega;
    std::vector<BoundValue> bounds;  // ascending by value
    std::vector<double> slacks;      // value − ω, aligned with bounds
    std::vector<std::pair<BoundId, std::string>> failures;

    double min_slack() const {
        double m = std::numeric_limits<double>::infinity();
        for (double s : slacks) m = std::min(m, s);
        return m;
    }

    const BoundValue* find(BoundId id) const {
        for (const auto& b : bounds)
            if (b.id == id) return &b;
        return nullptr;
    }
};

/// Evaluates the whole bound catalog for one matrix. X = |A| and Y = |A*|
/// come from a single SVD; derived quantities are cached on first use.
class BoundCatalog {
public:
    explicit BoundCatalog(const ComplexMatrix& a, BoundSettings settings = {})
        : settings_(settings), factors_(require_finite(a), settings.tol) {
        x_ = factors_.abs();
        y_ = factors_.abs_adjoint();
        x2_ = x_ * x_;
        y2_ = y_ * y_;
    }

    const BoundSettings& settings() const noexcept { return settings_; }
    const PolarFactors& factors() const noexcept { return factors_; }
    double norm() const noexcept { return factors_.norm(); }
    const ComplexMatrix& abs() const noexcept { return x_; }
    const ComplexMatrix& abs_adjoint() const noexcept { return y_; }

    std::pair<double, double> classic_envelope() const { return {0.5 * norm(), norm()}; }

    BoundValue classic() const {
        return {BoundId::Classic, std::nullopt, norm(), std::nullopt, {{"lower", 0.5 * norm()}}};
    }

    BoundValue kittaneh_sum() const {
        const double s = hermitian_norm(x_ + y_);
        return {BoundId::KittSum, std::nullopt, 0.5 * s, std::nullopt, {{"norm_abs_sum", s}}};
    }

    BoundValue kittaneh_square() const {
        const double inner = 0.5 * hermitian_norm(x2_ + y2_);
        return {BoundId::KittSquare, std::nullopt, std::sqrt(inner), inner, {}};
    }

    BoundValue kittaneh_mixed() {
        const double sq = std::sqrt(norm_of_square());
        return {BoundId::KittMixed, std::nullopt, 0.5 * (norm() + sq), std::nullopt,
                {{"norm_square_sqrt", sq}}};
    }

    /// ∫₀¹((1−t)X + tY)² dt = (X² + Y²)/3 + (XY + YX)/6.
    ComplexMatrix integral_operand() const {
        const ComplexMatrix xy = x_ * y_;
        return (1.0 / 3.0) * (x2_ + y2_) + (1.0 / 6.0) * (xy + adjoint(xy));
    }

    BoundValue integral_bound() const {
        const double inner = hermitian_norm(integral_operand());
        // Midpoint-rule cross-check of the closed form.
        constexpr int kNodes = 1000;
        ComplexMatrix acc(x_.size());
        for (int k = 0; k < kNodes; ++k) {
            const double t = (k + 0.5) / kNodes;
            const ComplexMatrix m = (1.0 - t) * x_ + t * y_;
            acc += m * m;
        }
        acc *= 1.0 / kNodes;
        const double quad = hermitian_norm(acc);
        return {BoundId::Integral, std::nullopt, std::sqrt(inner), inner,
                {{"quadrature_inner", quad}, {"quadrature_gap", std::abs(quad - inner)}}};
    }

    BoundValue integral_refined() const {
        const ComplexMatrix d = x_ - y_;
        const double inner = std::max(0.0, hermitian_lambda_max(integral_operand() - (1.0 / 48.0) * (d * d)));
        return {BoundId::IntegralRefined, std::nullopt, std::sqrt(inner), inner, {}};
    }

    BoundValue yamazaki() {
        const double w = omega_aluthge_half();
        return {BoundId::Yamazaki, std::nullopt, 0.5 * (norm() + w), std::nullopt,
                {{"omega_aluthge", w}}};
    }

    BoundValue aluthge_half() {
        const ComplexMatrix& at = aluthge_half_matrix();
        const double gram = hermitian_norm(aluthge_gram(at));
        const double w = omega_aluthge_half();
        const double w2 = omega_aluthge_half_squared();
        const double nrm = norm();
        const double s = nrm * nrm + 0.25 * gram + 0.5 * w2 + 2.0 * nrm * w;
        return {BoundId::AluthgeHalf, std::nullopt, 0.5 * std::sqrt(s), 0.25 * s,
                {{"gram_norm", gram}, {"omega_aluthge", w}, {"omega_aluthge_sq", w2},
                 {"norm_aluthge", operator_norm(at)}}};
    }

    BoundValue aluthge_weighted(const WeightParams& w) {
        return aluthge_weighted_at(w.t(), settings_.theta_grid, settings_.theta_tol);
    }

    BoundValue weighted_power(const WeightParams& w) const { return weighted_power_at(w.t()); }
    BoundValue weighted_r(const WeightParams& w) const { return weighted_r_at(w.t()); }
    BoundValue product_bound(const WeightParams& w) const { return product_at(w.t()); }
    BoundValue fourth_power(const WeightParams& w) const { return fourth_power_at(w.t()); }
    BoundValue schwarz_radius(const WeightParams& w) { return schwarz_radius_at(w.t()); }

    /// Evaluates a weighted bound at a fixed t (validated against the window).
    BoundValue evaluate_at(BoundId id, const WeightParams& w) {
        switch (id) {
            case BoundId::AluthgeT: return aluthge_weighted(w);
            case BoundId::WeightedPower: return weighted_power(w);
            case BoundId::WeightedR: return weighted_r(w);
            case BoundId::Product: return product_bound(w);
            case BoundId::FourthPower: return fourth_power(w);
            case BoundId::SchwarzRadius: return schwarz_radius(w);
            default: break;
        }
        throw Error(ErrorKind::InvalidArgument, std::string(to_string(id)) + " does not depend on t");
    }

    /// Grid search over [t_min, 1 − t_min] followed by golden-section
    /// refinement around the best grid point. Evaluations whose fractional
    /// powers would overflow count as +∞ and are skipped.
    TMinimum minimize_over_t(BoundId id, std::optional<int> grid_points = std::nullopt,
                             std::optional<double> refine_tol = std::nullopt) {
        if (!is_weighted(id)) {
            throw Error(ErrorKind::InvalidArgument, std::string(to_string(id)) + " does not depend on t");
        }
        const bool nested = id == BoundId::AluthgeT;
        const int grid = grid_points.value_or(nested ? settings_.nested_t_grid : settings_.t_grid);
        const double tol = refine_tol.value_or(nested ? settings_.nested_refine_tol : settings_.refine_tol);
        if (grid < 3) throw Error(ErrorKind::InvalidArgument, "t grid needs at least 3 points");

        const double lo = settings_.tol.t_min;
        const double hi = 1.0 - settings_.tol.t_min;
        const double step = (hi - lo) / (grid - 1);
        TMinimum out;
        out.value = std::numeric_limits<double>::infinity();

        auto objective = [&](double t) {
            ++out.evaluations;
            double v;
            try {
                v = search_objective(id, t);
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::NonFinite) throw;
                throw Error(ErrorKind::NonFinite,
                            std::string(to_string(id)) + " at t = " + std::to_string(t) + ": " + e.what());
            }
            if (std::isnan(v) || v == -std::numeric_limits<double>::infinity()) {
                throw Error(ErrorKind::NonFinite,
                            std::string(to_string(id)) + " evaluated to a non-finite value at t = " +
                                std::to_string(t));
            }
            return v;
        };

        int best = -1;
        for (int i = 0; i < grid; ++i) {
            const double t = i + 1 == grid ? hi : lo + step * i;
            const double v = objective(t);
            if (std::isinf(v)) {
                ++out.skipped;
                continue;
            }
            if (v < out.value) {
                out.value = v;
                out.t_star = t;
                best = i;
            }
        }
        if (best < 0) {
            throw Error(ErrorKind::NonFinite,
                        std::string(to_string(id)) + " overflowed at every grid point; first t = " +
                            std::to_string(lo));
        }
        const double a = std::max(lo, out.t_star - step);
        const double b = std::min(hi, out.t_star + step);
        const auto opt = golden_minimize(objective, a, b, tol);
        if (opt.value < out.value) {
            out.value = opt.value;
            out.t_star = opt.x;
        }
        if (nested) out.value = evaluate_raw(id, out.t_star).value;
        return out;
    }

    /// Bound value for `id`; weighted bounds are minimized over t.
    BoundValue evaluate(BoundId id) {
        switch (id) {
            case BoundId::Classic: return classic();
            case BoundId::KittSum: return kittaneh_sum();
            case BoundId::KittSquare: return kittaneh_square();
            case BoundId::KittMixed: return kittaneh_mixed();
            case BoundId::Integral: return integral_bound();
            case BoundId::IntegralRefined: return integral_refined();
            case BoundId::Yamazaki: return yamazaki();
            case BoundId::AluthgeHalf: return aluthge_half();
            default: break;
        }
        const TMinimum m = minimize_over_t(id);
        BoundValue v = evaluate_raw(id, m.t_star);
        v.detail.emplace_back("evaluations", m.evaluations);
        v.detail.emplace_back("skipped", m.skipped);
        return v;
    }

    /// ω(A) at the catalog's angle-sweep resolution, cached.
    const RadiusEstimate& omega() {
        if (!omega_) omega_ = radius_sweep(factors_.matrix(), settings_.theta_grid, settings_.theta_tol);
        return *omega_;
    }

    double norm_of_square() {
        if (!norm_sq_) norm_sq_ = operator_norm(factors_.matrix() * factors_.matrix());
        return *norm_sq_;
    }

    const ComplexMatrix& aluthge_half_matrix() {
        if (!aluthge_half_) aluthge_half_ = factors_.aluthge(0.5);
        return *aluthge_half_;
    }

private:
    static ComplexMatrix aluthge_gram(const ComplexMatrix& at) {
        const ComplexMatrix ad = adjoint(at);
        return ad * at + at * ad;
    }

    double omega_aluthge_half() {
        if (!omega_aluthge_) omega_aluthge_ = radius(aluthge_half_matrix(), settings_.theta_grid, settings_.theta_tol);
        return *omega_aluthge_;
    }

    double omega_aluthge_half_squared() {
        if (!omega_aluthge_sq_) {
            const auto& at = aluthge_half_matrix();
            omega_aluthge_sq_ = radius(at * at, settings_.theta_grid, settings_.theta_tol);
        }
        return *omega_aluthge_sq_;
    }

    double omega_of_square() {
        if (!omega_sq_) {
            const auto& a = factors_.matrix();
            omega_sq_ = radius(a * a, settings_.theta_grid, settings_.theta_tol);
        }
        return *omega_sq_;
    }

    static double radius(const ComplexMatrix& m, int grid, double tol) {
        return radius_sweep(m, grid, tol).value;
    }

    static constexpr double kInf = std::numeric_limits<double>::infinity();
    static constexpr double kGuardExponent = 50.0;

    static const ComplexMatrix& require_finite(const ComplexMatrix& a) {
        if (!a.all_finite()) throw Error(ErrorKind::NonFinite, "matrix has non-finite entries");
        return a;
    }

    /// Overflow guard for exponents above 50 on the spectrum of X or Y.
    static bool guarded(const PsdSpectrum& s, double r) { return r > kGuardExponent && s.power_overflows(r); }

    double search_objective(BoundId id, double t) {
        if (id == BoundId::AluthgeT) {
            return aluthge_weighted_at(t, settings_.nested_theta_grid, settings_.nested_theta_tol).value;
        }
        return evaluate_raw(id, t).value;
    }

    BoundValue evaluate_raw(BoundId id, double t) {
        switch (id) {
            case BoundId::AluthgeT: return aluthge_weighted_at(t, settings_.theta_grid, settings_.theta_tol);
            case BoundId::WeightedPower: return weighted_power_at(t);
            case BoundId::WeightedR: return weighted_r_at(t);
            case BoundId::Product: return product_at(t);
            case BoundId::FourthPower: return fourth_power_at(t);
            case BoundId::SchwarzRadius: return schwarz_radius_at(t);
            default: break;
        }
        throw Error(ErrorKind::InvalidArgument, "not a weighted bound");
    }

    static BoundValue overflowed(BoundId id, double t) {
        return {id, t, kInf, kInf, {{"overflow", 1.0}}};
    }

    BoundValue aluthge_weighted_at(double t, int theta_grid, double theta_tol) {
        const auto& xs = factors_.abs_spectrum();
        if (guarded(xs, 4.0 * std::max(t, 1.0 - t))) return overflowed(BoundId::AluthgeT, t);
        const ComplexMatrix at = factors_.aluthge(t);
        const double quartic = hermitian_norm(xs.power(4.0 * t) + xs.power(4.0 * (1.0 - t)));
        const double quadratic = hermitian_norm(xs.power(2.0 * t) + xs.power(2.0 * (1.0 - t)));
        const double gram = hermitian_norm(aluthge_gram(at));
        const double w = radius(at, theta_grid, theta_tol);
        const double w2 = radius(at * at, theta_grid, theta_tol);
        const double nrm = norm();
        const double s = 0.25 * quartic + 0.5 * nrm * nrm + 0.25 * gram + 0.5 * w2 + quadratic * w;
        return {BoundId::AluthgeT, t, 0.5 * std::sqrt(s), 0.25 * s,
                {{"quartic_norm", quartic},
                 {"norm_sq", nrm * nrm},
                 {"gram_norm", gram},
                 {"omega_aluthge_sq", w2},
                 {"quadratic_norm", quadratic},
                 {"omega_aluthge", w}}};
    }

    BoundValue weighted_power_at(double t) const {
        const auto& xs = factors_.abs_spectrum();
        const auto& ys = factors_.abs_adjoint_spectrum();
        const double ex = 1.0 / (1.0 - t);
        const double ey = 1.0 / t;
        if (guarded(xs, ex) || guarded(ys, ey)) return overflowed(BoundId::WeightedPower, t);
        const double inner = hermitian_norm((1.0 - t) * xs.power(ex) + t * ys.power(ey));
        return {BoundId::WeightedPower, t, std::sqrt(inner), inner, {}};
    }

    BoundValue weighted_r_at(double t) const {
        const double r_cap = std::max(t, 1.0 - t);
        const ComplexMatrix d = x_ - y_;
        const double inner = 0.5 * hermitian_norm(x2_ + y2_ - (t * (1.0 - t) / r_cap) * (d * d));
        return {BoundId::WeightedR, t, std::sqrt(inner), inner, {{"r_cap", r_cap}}};
    }

    BoundValue product_at(double t) const {
        const auto& xs = factors_.abs_spectrum();
        const auto& ys = factors_.abs_adjoint_spectrum();
        const double first = operator_norm(xs.power(t) * ys.power(t));
        const double second = operator_norm(xs.power(1.0 - t) * ys.power(1.0 - t));
        const double root = std::sqrt(first * second);
        return {BoundId::Product, t, 0.5 * (norm() + root), std::nullopt,
                {{"norm_t", first}, {"norm_1mt", second}}};
    }

    BoundValue fourth_power_at(double t) const {
        const auto& xs = factors_.abs_spectrum();
        const auto& ys = factors_.abs_adjoint_spectrum();
        const ComplexMatrix m = 0.25 * (xs.power(4.0 * (1.0 - t)) + ys.power(4.0 * t)) +
                                0.5 * ((1.0 - t) * x2_ + t * y2_);
        const double inner = hermitian_norm(m);
        return {BoundId::FourthPower, t, std::sqrt(inner), inner, {}};
    }

    BoundValue schwarz_radius_at(double t) {
        const auto& xs = factors_.abs_spectrum();
        const auto& ys = factors_.abs_adjoint_spectrum();
        const double ex = 2.0 / t;
        const double ey = 2.0 / (1.0 - t);
        if (guarded(xs, ex) || guarded(ys, ey)) return overflowed(BoundId::SchwarzRadius, t);
        const double mix = hermitian_norm(t * xs.power(ex) + (1.0 - t) * ys.power(ey));
        const double w2 = omega_of_square();
        const double inner = 0.5 * (std::sqrt(mix) + w2);
        return {BoundId::SchwarzRadius, t, std::sqrt(inner), inner,
                {{"mixed_norm", mix}, {"omega_square", w2}}};
    }

    BoundSettings settings_;
    PolarFactors factors_;
    ComplexMatrix x_, y_, x2_, y2_;
    std::optional<RadiusEstimate> omega_;
    std::optional<double> norm_sq_;
    std::optional<ComplexMatrix> aluthge_half_;
    std::optional<double> omega_aluthge_;
    std::optional<double> omega_aluthge_sq_;
    std::optional<double> omega_sq_;
};

// Free-function forms of the catalog, one matrix at a time.

inline std::pair<double, double> classic_envelope(const ComplexMatrix& a) {
    return BoundCatalog(a).classic_envelope();
}
inline BoundValue kittaneh_sum(const ComplexMatrix& a) { return BoundCatalog(a).kittaneh_sum(); }
inline BoundValue kittaneh_square(const ComplexMatrix& a) { return BoundCatalog(a).kittaneh_square(); }
inline BoundValue kittaneh_mixed(const ComplexMatrix& a) { return BoundCatalog(a).kittaneh_mixed(); }
inline BoundValue integral_bound(const ComplexMatrix& a) { return BoundCatalog(a).integral_bound(); }
inline BoundValue integral_refined(const ComplexMatrix& a) { return BoundCatalog(a).integral_refined(); }
inline BoundValue yamazaki(const ComplexMatrix& a) { return BoundCatalog(a).yamazaki(); }
inline BoundValue aluthge_half(const ComplexMatrix& a) { return BoundCatalog(a).aluthge_half(); }
inline BoundValue aluthge_weighted(const ComplexMatrix& a, const WeightParams& w) {
    return BoundCatalog(a).aluthge_weighted(w);
}
inline BoundValue weighted_power(const ComplexMatrix& a, const WeightParams& w) {
    return BoundCatalog(a).weighted_power(w);
}
inline BoundValue weighted_r(const ComplexMatrix& a, const WeightParams& w) {
    return BoundCatalog(a).weighted_r(w);
}
inline BoundValue product_bound(const ComplexMatrix& a, const WeightParams& w) {
    return BoundCatalog(a).product_bound(w);
}
inline BoundValue fourth_power(const ComplexMatrix& a, const WeightParams& w) {
    return BoundCatalog(a).fourth_power(w);
}
inline BoundValue schwarz_radius(const ComplexMatrix& a, const WeightParams& w) {
    return BoundCatalog(a).schwarz_radius(w);
}

inline TMinimum minimize_over_t(BoundId id, const ComplexMatrix& a, int grid_points = 1001,
                                double refine_tol = 1e-8) {
    return BoundCatalog(a).minimize_over_t(id, grid_points, refine_tol);
}

/// ω plus every requested bound, sorted ascending by value. A failing bound
/// is recorded in `failures` and the rest of the report is still produced.
inline BoundReport compare_all(const ComplexMatrix& a, const BoundSettings& settings = {},
                               std::span<const BoundId> ids = kAllBounds) {
    BoundCatalog catalog(a, settings);
    BoundReport report;
    report.omega = catalog.omega();
    for (BoundId id : ids) {
        try {
            report.bounds.push_back(catalog.evaluate(id));
        } catch (const Error& e) {
            report.failures.emplace_back(id, e.what());
        }
    }
    std::stable_sort(report.bounds.begin(), report.bounds.end(),
                     [](const BoundValue& x, const BoundValue& y) {
                         return x.value != y.value ? x.value < y.value
                                                   : static_cast<int>(x.id) < static_cast<int>(y.id);
                     });
    for (const auto& b : report.bounds) report.slacks.push_back(b.value - report.omega.value);
    return report;
}

}  // namespace numrad
