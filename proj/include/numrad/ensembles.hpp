#pragma once

#include <array>
#include <cmath>
#include <optional>
#include <string_view>

#include "numrad/matrix.hpp"
#include "numrad/random.hpp"

namespace numrad {

enum class Ensemble { Ginibre, Hermitian, UnitaryScaled, Nilpotent, WeightedCyclicShift };

inline constexpr std::array<Ensemble, 5> kAllEnsembles = {
    Ensemble::Ginibre, Ensemble::Hermitian, Ensemble::UnitaryScaled, Ensemble::Nilpotent,
    Ensemble::WeightedCyclicShift};

inline constexpr std::string_view to_string(Ensemble e) {
    switch (e) {
        case Ensemble::Ginibre: return "ginibre";
        case Ensemble::Hermitian: return "hermitian";
        case Ensemble::UnitaryScaled: return "unitary-scaled";
        case Ensemble::Nilpotent: return "nilpotent";
        case Ensemble::WeightedCyclicShift: return "weighted-cyclic-shift";
    }
    return "unknown";
}

inline std::optional<Ensemble> parse_ensemble(std::string_view name) {
    for (Ensemble e : kAllEnsembles)
        if (to_string(e) == name) return e;
    return std::nullopt;
}

/// i.i.d. standard complex Gaussian entries.
inline ComplexMatrix ginibre(std::size_t n, Rng& rng) {
    ComplexMatrix a(n);
    for (auto& z : a.entries()) z = rng.complex_normal();
    return a;
}

/// Unitary factor of the QR decomposition of a Ginibre matrix (modified
/// Gram–Schmidt, so the triangular factor has a positive diagonal).
inline ComplexMatrix haar_unitary(std::size_t n, Rng& rng) {
    ComplexMatrix q = ginibre(n, rng);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < j; ++k) {
            Complex proj{};
            for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
            for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
        }
        double nm = 0.0;
        for (std::size_t i = 0; i < n; ++i) nm += std::norm(q(i, j));
        nm = std::sqrt(nm);
        for (std::size_t i = 0; i < n; ++i) q(i, j) /= nm;
    }
    return q;
}

/// Weighted cyclic shift: A(i, i+1 mod n) = w_i.
inline ComplexMatrix weighted_cyclic_shift(std::span<const double> weights) {
    const std::size_t n = weights.size();
    ComplexMatrix a(n);
    for (std::size_t i = 0; i < n; ++i) a(i, (i + 1) % n) = weights[i];
    return a;
}

inline ComplexMatrix sample_ensemble(Ensemble e, std::size_t n, Rng& rng) {
    switch (e) {
        case Ensemble::Ginibre: return ginibre(n, rng);
        case Ensemble::Hermitian: return real_part(ginibre(n, rng));
        case Ensemble::UnitaryScaled: {
            ComplexMatrix q = haar_unitary(n, rng);
            return rng.uniform(0.1, 3.0) * std::move(q);
        }
        case Ensemble::Nilpotent: {
            ComplexMatrix a(n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) a(i, j) = rng.complex_normal();
            return a;
        }
        case Ensemble::WeightedCyclicShift: {
            std::vector<double> w(n);
            for (auto& x : w) x = std::exp(rng.uniform(std::log(0.5), std::log(5.0)));
            return weighted_cyclic_shift(w);
        }
    }
    throw Error(ErrorKind::InvalidArgument, "unknown ensemble");
}

/// The two 3×3 weighted shifts used as worked examples: weights (2,3,4) and (3,4,2).
inline ComplexMatrix example_one_matrix() {
    constexpr double w[] = {2.0, 3.0, 4.0};
    return weighted_cyclic_shift(w);
}

inline ComplexMatrix example_two_matrix() {
    constexpr double w[] = {3.0, 4.0, 2.0};
    return weighted_cyclic_shift(w);
}

}  // namespace numrad
