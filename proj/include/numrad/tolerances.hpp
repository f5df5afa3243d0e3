#pragma once

namespace numrad {

/// Numerical tolerances shared by every module. Relative tolerances are
/// scaled by max(1, ‖A‖) at the point of use.
struct Tolerances {
    double herm = 1e-10;        // Hermitian-ness of nominally Hermitian input
    double eig = 1e-9;          // eigen/SVD reconstruction
    double psd = 1e-10;         // negative-eigenvalue clamp for PSD input
    double rad = 1e-6;          // Gelfand spectral radius, relative
    double slack = 1e-7;        // bound minus ω
    double pointwise = 1e-9;    // vector-level inequality margins
    double amer = 1e-5;         // spectral-radius lemma margin
    double sigma_cut = 1e-12;   // singular values ≤ sigma_cut·σ₁ are kernel
    double t_min = 1e-3;        // weight window [t_min, 1 − t_min]
};

inline constexpr int kMaxJacobiSweeps = 64;
inline constexpr int kGelfandSquarings = 40;

}  // namespace numrad
