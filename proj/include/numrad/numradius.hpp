#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <thread>
#include <utility>
#include <vector>

#include "numrad/golden.hpp"
#include "numrad/matrix.hpp"
#include "numrad/random.hpp"
#include "numrad/spectral.hpp"

namespace numrad {

inline constexpr int kDefaultThetaGrid = 720;
inline constexpr double kDefaultThetaTol = 1e-10;

struct RadiusEstimate {
    double value = 0.0;       // ω(A)
    double theta_star = 0.0;  // maximizing angle in [0, 2π)
    int grid_points = 0;
    double refine_width = 0.0;
};

struct OracleEstimate {
    double value = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// θ ↦ λ_max(Re(e^{iθ}A)) = λ_max(cos θ·H − sin θ·K) with A = H + iK.
class AngleProfile {
public:
    explicit AngleProfile(const ComplexMatrix& a) : h_(a.size()), k_(a.size()), work_(a.size()) {
        const std::size_t n = a.size();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                const Complex aij = a(i, j);
                const Complex aji = std::conj(a(j, i));
                h_(i, j) = 0.5 * (aij + aji);
                k_(i, j) = Complex(0.0, -0.5) * (aij - aji);
            }
        }
    }

    double operator()(double theta) {
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        auto w = work_.entries();
        auto h = h_.entries();
        auto k = k_.entries();
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = c * h[i] - s * k[i];
        return hermitian_lambda_max(work_);
    }

private:
    ComplexMatrix h_;
    ComplexMatrix k_;
    ComplexMatrix work_;
};

/// ω(A) = sup_θ λ_max(Re(e^{iθ}A)): uniform grid over [0, 2π) followed by
/// golden-section refinement. Every discrete local maximum whose value is
/// within the grid-resolution margin of the best is refined, so a near-tie
/// between basins cannot hide the global maximum.
inline RadiusEstimate radius_sweep(const ComplexMatrix& a, int grid_points = kDefaultThetaGrid,
                                   double theta_tol = kDefaultThetaTol) {
    if (grid_points < 8) throw Error(ErrorKind::InvalidArgument, "radius_sweep needs grid_points >= 8");
    RadiusEstimate out;
    out.grid_points = grid_points;
    if (a.empty()) return out;

    AngleProfile g(a);
    const double step = 2.0 * std::numbers::pi / grid_points;
    std::vector<double> values(static_cast<std::size_t>(grid_points));
    std::size_t best = 0;
    for (int i = 0; i < grid_points; ++i) {
        values[i] = g(step * i);
        if (values[i] > values[best]) best = static_cast<std::size_t>(i);
    }
    out.value = values[best];
    out.theta_star = step * static_cast<double>(best);
    out.refine_width = 2.0 * step;

    // Near the maximizer θ*, g(θ) ≥ ω·cos(θ − θ*); a grid point's value may
    // therefore trail ω by up to ω(1 − cos(step/2)).
    const double slack = values[best] * (1.0 - std::cos(step)) + 1e-14 * std::abs(values[best]);
    std::vector<std::pair<double, std::size_t>> candidates;
    const std::size_t m = values.size();
    for (std::size_t i = 0; i < m; ++i) {
        const double prev = values[(i + m - 1) % m];
        const double next = values[(i + 1) % m];
        if (values[i] >= prev && values[i] >= next && values[i] >= values[best] - slack) {
            candidates.emplace_back(values[i], i);
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const auto& x, const auto& y) {
        return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    if (candidates.size() > 6) candidates.resize(6);

    for (const auto& [v, i] : candidates) {
        const double centre = step * static_cast<double>(i);
        const auto opt = golden_maximize(g, centre - step, centre + step, theta_tol);
        if (opt.value > out.value) {
            out.value = opt.value;
            out.theta_star = opt.x;
        }
        out.refine_width = std::min(out.refine_width, opt.width);
    }
    out.theta_star = std::fmod(out.theta_star, 2.0 * std::numbers::pi);
    if (out.theta_star < 0.0) out.theta_star += 2.0 * std::numbers::pi;
    out.value = std::max(out.value, 0.0);
    return out;
}

inline double numerical_radius(const ComplexMatrix& a, int grid_points = kDefaultThetaGrid,
                               double theta_tol = kDefaultThetaTol) {
    return radius_sweep(a, grid_points, theta_tol).value;
}

/// Perturbation ascent from each sampled start. With z = ⟨Ax, x⟩ = |z|e^{iφ},
/// the perturbation points along the tangent ascent direction
/// e^{−iφ}Ax + e^{iφ}A*x − 2|z|x of |⟨Ax, x⟩|. A step is kept when it raises
/// |⟨Ax, x⟩|; a rejected step shrinks the scale by `decay`.
struct OracleSettings {
    int ascent_steps = 50;
    double initial_scale = 0.1;
    double decay = 0.7;
};

namespace detail {

inline double sampled_trial(const ComplexMatrix& a, const ComplexMatrix& a_adj, std::uint64_t trial_seed,
                            const OracleSettings& cfg) {
    const std::size_t n = a.size();
    Rng rng(trial_seed);
    auto x = rng.unit_vector(n);
    auto ax = a * std::span<const Complex>(x);
    Complex z = inner(ax, x);
    double best = std::abs(z);
    double scale = cfg.initial_scale;
    std::vector<Complex> g(n), y(n);
    for (int step = 0; step < cfg.ascent_steps; ++step) {
        const Complex phase = best > 0.0 ? z / best : Complex(1.0, 0.0);
        const auto astar_x = a_adj * std::span<const Complex>(x);
        for (std::size_t i = 0; i < n; ++i) g[i] = std::conj(phase) * ax[i] + phase * astar_x[i] - 2.0 * best * x[i];
        const double gn = vector_norm(g);
        if (!(gn > 0.0)) break;  // stationary point
        for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + (scale / gn) * g[i];
        const double nm = vector_norm(y);
        for (auto& c : y) c /= nm;
        auto ay = a * std::span<const Complex>(y);
        const Complex zy = inner(ay, y);
        if (std::abs(zy) > best) {
            best = std::abs(zy);
            z = zy;
            x.swap(y);
            ax.swap(ay);
        } else {
            scale *= cfg.decay;
        }
    }
    return best;
}

}  // namespace detail

/// Independent lower estimate of ω(A): max over sampled unit vectors of
/// |⟨Ax, x⟩|, each polished by a perturbation ascent. Trial i draws
/// from derive_seed(seed, i), so the result does not depend on `jobs`.
inline OracleEstimate radius_oracle(const ComplexMatrix& a, int trials, std::uint64_t seed,
                                    const OracleSettings& cfg = {}, unsigned jobs = 1) {
    if (trials < 1) throw Error(ErrorKind::InvalidArgument, "radius_oracle needs trials >= 1");
    OracleEstimate out{0.0, trials, seed};
    if (a.empty()) return out;
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(trials)));

    const ComplexMatrix a_adj = adjoint(a);
    std::vector<double> partial(jobs, 0.0);
    auto worker = [&](unsigned j) {
        double local = 0.0;
        for (int i = static_cast<int>(j); i < trials; i += static_cast<int>(jobs)) {
            local = std::max(local, detail::sampled_trial(a, a_adj, derive_seed(seed, static_cast<std::uint64_t>(i)), cfg));
        }
        partial[j] = local;
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto& th : pool) th.join();
    }
    out.value = *std::max_element(partial.begin(), partial.end());
    return out;
}

struct PowerCheck {
    double lhs;  // ω(A^k)
    double rhs;  // ω(A)^k
};

inline PowerCheck power_check(const ComplexMatrix& a, unsigned k, int grid_points = kDefaultThetaGrid) {
    if (k < 1) throw Error(ErrorKind::InvalidArgument, "power_check needs k >= 1");
    const double w = numerical_radius(a, grid_points);
    if (k == 1) return {w, w};
    return {numerical_radius(power(a, k), grid_points), std::pow(w, static_cast<double>(k))};
}

}  // namespace numrad
