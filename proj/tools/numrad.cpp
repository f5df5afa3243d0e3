// numrad: numerical radius and weighted upper bounds from the command line.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "numrad/numrad.hpp"

namespace {

using namespace numrad;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void add_tolerance_flags(CLI::App* cmd, Tolerances& tol) {
    cmd->add_option("--tol-herm", tol.herm, "Hermitian-ness tolerance")->capture_default_str();
    cmd->add_option("--tol-eig", tol.eig, "eigen/SVD reconstruction tolerance")->capture_default_str();
    cmd->add_option("--tol-psd", tol.psd, "negative eigenvalue clamp for PSD input")->capture_default_str();
    cmd->add_option("--tol-rad", tol.rad, "Gelfand spectral radius tolerance")->capture_default_str();
    cmd->add_option("--tol-slack", tol.slack, "allowed negative slack of a bound")->capture_default_str();
    cmd->add_option("--tol-pointwise", tol.pointwise, "pointwise lemma margin")->capture_default_str();
    cmd->add_option("--tol-amer", tol.amer, "spectral radius lemma margin")->capture_default_str();
    cmd->add_option("--t-min", tol.t_min, "weight window is [t_min, 1 - t_min]")->capture_default_str();
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("NUMRAD_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "ignoring unparsable NUMRAD_SEED='" << env << "'\n";
        }
    }
    return 0;
}

int cmd_bounds(const std::string& path, const std::vector<std::string>& names, const std::string& format,
               const BoundSettings& settings) {
    ComplexMatrix a;
    try {
        a = parse_matrix(read_file(path));
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    std::vector<BoundId> ids;
    for (const auto& name : names) {
        if (name == "all") {
            ids.assign(kAllBounds.begin(), kAllBounds.end());
            break;
        }
        const auto id = parse_bound_id(name);
        if (!id) {
            std::cerr << "unknown bound '" << name << "'\n";
            return 2;
        }
        ids.push_back(*id);
    }
    if (ids.empty()) ids.assign(kAllBounds.begin(), kAllBounds.end());

    BoundReport report;
    try {
        report = compare_all(a, settings, ids);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    if (format == "json") {
        std::cout << report_to_json(report).dump(2) << '\n';
    } else if (format == "csv") {
        std::cout << report_to_csv(report);
    } else {
        std::cout << report_to_table(report);
    }
    return report.bounds.empty() ? 2 : 0;
}

int cmd_radius(const std::string& path, int theta_grid, int oracle_trials, std::uint64_t seed) {
    ComplexMatrix a;
    try {
        a = parse_matrix(read_file(path));
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    const auto est = radius_sweep(a, theta_grid);
    nlohmann::json j = {{"omega", est.value},
                        {"theta_star", est.theta_star},
                        {"grid_points", est.grid_points},
                        {"refine_width", est.refine_width},
                        {"norm", spectral_norm(a)}};
    if (oracle_trials > 0) {
        const auto oracle = radius_oracle(a, oracle_trials, seed);
        j["oracle"] = {{"value", oracle.value}, {"trials", oracle.trials}, {"seed", oracle.seed}};
    }
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_reproduce() {
    bool ok = true;
    for (const auto& c : reproduce_examples()) {
        std::cout << format_example_check(c) << '\n';
        ok = ok && c.pass();
    }
    return ok ? 0 : 1;
}

int cmd_fuzz(const CampaignConfig& cfg, const std::string& output) {
    std::vector<TrialResult> results;
    try {
        results = run_campaign(cfg);
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    const std::string csv = campaign_to_csv(results);
    if (output.empty() || output == "-") {
        std::cout << csv;
    } else {
        std::ofstream(output, std::ios::binary) << csv;
    }
    const auto bad = violation_rows(results);
    std::cerr << results.size() << " trials, " << bad << " violation rows\n";
    return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numrad: numerical radius and weighted upper bounds for complex matrices"};
    app.require_subcommand(1);

    BoundSettings settings;
    std::string matrix_path;
    std::vector<std::string> bound_names;
    std::string format = "table";
    auto* bounds = app.add_subcommand("bounds", "evaluate the bound catalog for one matrix");
    bounds->add_option("file", matrix_path, "matrix file (JSON document or real CSV)")->required();
    bounds->add_option("--bound", bound_names, "bound id or 'all' (repeatable)");
    bounds->add_option("--t-grid", settings.t_grid, "grid points for the t search")->capture_default_str();
    bounds->add_option("--theta-grid", settings.theta_grid, "grid points for the angle sweep")->capture_default_str();
    bounds->add_option("--format", format, "json | csv | table")
        ->check(CLI::IsMember({"json", "csv", "table"}))
        ->capture_default_str();
    add_tolerance_flags(bounds, settings.tol);

    int radius_grid = kDefaultThetaGrid;
    int oracle_trials = 0;
    std::uint64_t seed = default_seed();
    auto* radius = app.add_subcommand("radius", "compute the numerical radius of one matrix");
    radius->add_option("file", matrix_path, "matrix file")->required();
    radius->add_option("--theta-grid", radius_grid, "grid points for the angle sweep")->capture_default_str();
    radius->add_option("--oracle-trials", oracle_trials, "also run the sampling oracle with this many trials");
    radius->add_option("--seed", seed, "oracle seed (default: $NUMRAD_SEED or 0)");

    app.add_subcommand("reproduce-examples", "recompute the two 3x3 worked examples");

    CampaignConfig campaign;
    campaign.seed = seed;
    std::string ensemble_name = "ginibre";
    std::string output;
    auto* fuzz = app.add_subcommand(
        "fuzz",
        "random campaign; writes CSV with columns\n  " + campaign_header() +
            "\n  violations is a ';'-separated list (empty when every check holds)");
    fuzz->add_option("--ensemble", ensemble_name,
                     "ginibre | hermitian | unitary-scaled | nilpotent | weighted-cyclic-shift")
        ->required();
    fuzz->add_option("--dim", campaign.dim, "matrix dimension")->required();
    fuzz->add_option("--dim-max", campaign.dim_max, "cycle dimensions dim..dim-max across trials");
    fuzz->add_option("--trials", campaign.trials, "number of trials")->required();
    fuzz->add_option("--seed", campaign.seed, "campaign seed (default: $NUMRAD_SEED or 0)");
    fuzz->add_option("--jobs", campaign.jobs, "worker threads")->capture_default_str();
    fuzz->add_option("--t-grid", campaign.settings.t_grid, "grid points for the t search")->capture_default_str();
    fuzz->add_option("--theta-grid", campaign.settings.theta_grid, "grid points for the angle sweep")
        ->capture_default_str();
    fuzz->add_option("--output,-o", output, "CSV destination (default stdout)");
    add_tolerance_flags(fuzz, campaign.settings.tol);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*bounds) return cmd_bounds(matrix_path, bound_names, format, settings);
        if (*radius) return cmd_radius(matrix_path, radius_grid, oracle_trials, seed);
        if (app.got_subcommand("reproduce-examples")) return cmd_reproduce();
        if (*fuzz) {
            const auto e = parse_ensemble(ensemble_name);
            if (!e) {
                std::cerr << "unknown ensemble '" << ensemble_name << "'\n";
                return 2;
            }
            campaign.ensemble = *e;
            return cmd_fuzz(campaign, output);
        }
    } catch (const Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    }
    return 2;
}
