#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "numrad/bounds.hpp"
#include "numrad/ensembles.hpp"
#include "numrad/pointwise.hpp"
#include "numrad/random.hpp"
#include "numrad/report.hpp"

namespace numrad {

struct CampaignConfig {
    Ensemble ensemble = Ensemble::Ginibre;
    int dim = 4;
    int dim_max = 0;  // ≤ dim means a fixed dimension; otherwise trial i uses dim + i mod (dim_max − dim + 1)
    int trials = 100;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    BoundSettings settings{};

    int dimension_for(std::size_t index) const {
        if (dim_max <= dim) return dim;
        return dim + static_cast<int>(index % static_cast<std::size_t>(dim_max - dim + 1));
    }

    void validate() const {
        if (trials < 1) throw Error(ErrorKind::InvalidArgument, "trials must be >= 1");
        if (dim < 1) throw Error(ErrorKind::InvalidArgument, "dim must be >= 1");
        if (jobs < 1) throw Error(ErrorKind::InvalidArgument, "jobs must be >= 1");
    }
};

struct TrialResult {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    int n = 0;
    double omega = 0.0;
    std::array<double, kAllBounds.size()> bounds{};  // in kAllBounds order; NaN when evaluation failed
    double min_slack = 0.0;
    std::vector<std::string> violations;
};

/// Column order of campaign CSV output.
inline std::string campaign_header() {
    std::string h = "trial,seed,n,omega";
    for (BoundId id : kAllBounds) h += "," + std::string(to_string(id));
    h += ",min_slack,violations";
    return h;
}

/// Matrix for trial `index`. The weighted-cyclic-shift ensemble at n = 3
/// starts with the two worked-example matrices.
inline ComplexMatrix campaign_matrix(const CampaignConfig& cfg, std::size_t index, Rng& rng) {
    const int n = cfg.dimension_for(index);
    if (cfg.ensemble == Ensemble::WeightedCyclicShift && n == 3 && index < 2) {
        return index == 0 ? example_one_matrix() : example_two_matrix();
    }
    return sample_ensemble(cfg.ensemble, static_cast<std::size_t>(n), rng);
}

namespace detail {

inline void check(std::vector<std::string>& violations, const char* name, const InequalityCheck& c, double tol) {
    if (!c.holds(tol)) violations.emplace_back(name);
}

/// Vector-level lemma checks on one sampled configuration.
inline void pointwise_suite(const ComplexMatrix& a, Rng& rng, const Tolerances& tol, int theta_grid,
                            std::vector<std::string>& violations) {
    const std::size_t n = a.size();
    const auto x = UnitVector::random(rng, n);
    const auto y = UnitVector::random(rng, n);
    const double t = rng.uniform(tol.t_min, 1.0 - tol.t_min);
    const double r = std::exp(rng.uniform(std::log(0.2), std::log(5.0)));
    const ComplexMatrix b = ginibre(n, rng);
    const ComplexMatrix c = ginibre(n, rng);
    const ComplexMatrix d = ginibre(n, rng);
    PolarFactors f(a, tol);

    check(violations, "kato", kato(a, x, y, t, tol), tol.pointwise);
    const ComplexMatrix abs_a = f.abs();
    if (abs_a.all_finite()) check(violations, "mccarthy", mccarthy(abs_a, x, r, tol), tol.pointwise);
    const auto cov = schwarz_covariance(a, b, x);
    check(violations, "schwarz-covariance", cov.general, tol.pointwise);
    check(violations, "schwarz-covariance-self", cov.self_product, tol.pointwise);
    check(violations, "cs-refinement", cs_refinement(a, b, x), tol.pointwise);
    check(violations, "amer", amer_bound(a, b, c, d, tol, theta_grid), tol.amer);

    const double s = rng.uniform(tol.t_min, 1.0);
    const double u = rng.uniform(tol.t_min, 1.0);
    check(violations, "log-convexity-power", log_convexity_power(f.abs_spectrum(), f.abs_adjoint_spectrum(), t),
          tol.pointwise);
    check(violations, "log-convexity-midpoint",
          log_convexity_midpoint(f.abs_spectrum(), f.abs_adjoint_spectrum(), std::min(s, u), std::max(s, u)),
          tol.pointwise);
}

}  // namespace detail

inline TrialResult run_trial(const CampaignConfig& cfg, std::size_t index) {
    TrialResult out;
    out.index = index;
    out.seed = derive_seed(cfg.seed, index);
    Rng rng(out.seed);
    const ComplexMatrix a = campaign_matrix(cfg, index, rng);
    out.n = static_cast<int>(a.size());

    const auto& tol = cfg.settings.tol;
    const BoundReport report = compare_all(a, cfg.settings);
    out.omega = report.omega.value;
    out.bounds.fill(std::numeric_limits<double>::quiet_NaN());
    out.min_slack = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < report.bounds.size(); ++k) {
        const auto& b = report.bounds[k];
        const auto pos = std::find(kAllBounds.begin(), kAllBounds.end(), b.id) - kAllBounds.begin();
        out.bounds[static_cast<std::size_t>(pos)] = b.value;
        out.min_slack = std::min(out.min_slack, report.slacks[k]);
        if (report.slacks[k] < -tol.slack) out.violations.push_back("bound:" + std::string(to_string(b.id)));
    }
    for (const auto& [id, msg] : report.failures) out.violations.push_back("error:" + std::string(to_string(id)));

    const double nrm = spectral_norm(a);
    if (out.omega < 0.5 * nrm - 1e-8 || out.omega > nrm + 1e-8) out.violations.emplace_back("envelope");

    try {
        detail::pointwise_suite(a, rng, tol, cfg.settings.theta_grid, out.violations);
    } catch (const Error& e) {
        out.violations.push_back(std::string("error:pointwise:") + to_string(e.kind()));
    }
    return out;
}

/// Runs every trial; results are written back by index so the output does
/// not depend on `jobs`.
inline std::vector<TrialResult> run_campaign(const CampaignConfig& cfg) {
    cfg.validate();
    std::vector<TrialResult> results(static_cast<std::size_t>(cfg.trials));
    const unsigned jobs = std::min<unsigned>(cfg.jobs, static_cast<unsigned>(cfg.trials));
    auto worker = [&](unsigned j) {
        for (std::size_t i = j; i < results.size(); i += jobs) results[i] = run_trial(cfg, i);
    };
    if (jobs <= 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker, j);
        for (auto& th : pool) th.join();
    }
    return results;
}

inline std::string trial_to_csv_row(const TrialResult& r) {
    std::string row = std::to_string(r.index) + ',' + std::to_string(r.seed) + ',' + std::to_string(r.n) + ',' +
                      format_number(r.omega);
    for (double v : r.bounds) row += ',' + format_number(v);
    row += ',' + format_number(r.min_slack) + ',';
    for (std::size_t k = 0; k < r.violations.size(); ++k) {
        if (k) row += ';';
        row += r.violations[k];
    }
    return row;
}

inline std::string campaign_to_csv(const std::vector<TrialResult>& results) {
    std::string out = campaign_header() + '\n';
    for (const auto& r : results) out += trial_to_csv_row(r) + '\n';
    return out;
}

inline std::size_t violation_rows(const std::vector<TrialResult>& results) {
    return static_cast<std::size_t>(
        std::count_if(results.begin(), results.end(), [](const TrialResult& r) { return !r.violations.empty(); }));
}

/// One reproduced figure from the worked examples.
struct ExampleCheck {
    std::string name;
    double value;
    double expected;
    double tolerance;
    bool pass() const { return std::abs(value - expected) <= tolerance; }
};

inline std::vector<ExampleCheck> reproduce_examples(const BoundSettings& settings = {}) {
    std::vector<ExampleCheck> checks;
    BoundCatalog one(example_one_matrix(), settings);
    const auto wp = one.evaluate(BoundId::WeightedPower);
    checks.push_back({"example1.weighted-power.inner", wp.inner.value(), 12.002, 5e-3});
    checks.push_back({"example1.kitt-square.inner", one.kittaneh_square().inner.value(), 12.5, 1e-9});
    checks.push_back({"example1.kitt-sum", one.kittaneh_sum().value, 3.5, 1e-9});

    BoundCatalog two(example_two_matrix(), settings);
    const auto fp = two.evaluate(BoundId::FourthPower);
    checks.push_back({"example2.fourth-power.inner", fp.inner.value(), 9.32, 2e-2});
    checks.push_back({"example2.kitt-sum", two.kittaneh_sum().value, 3.5, 1e-9});
    return checks;
}

inline std::string format_example_check(const ExampleCheck& c) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "%s = %.6g (expected %.6g ± %.0e) %s", c.name.c_str(), c.value, c.expected,
                  c.tolerance, c.pass() ? "PASS" : "FAIL");
    return buf;
}

}  // namespace numrad
