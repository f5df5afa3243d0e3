#include "test_support.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

using namespace numrad;
using namespace numrad::testing;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args, const std::string& env = "") {
    const std::string cmd = env + (env.empty() ? "" : " ") + std::string(NUMRAD_CLI_PATH) + " " + args + " 2>/dev/null";
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string sample(const char* name) { return std::string(NUMRAD_SAMPLES_DIR) + "/" + name; }

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

TEST(ParseMatrix, JsonJordanBlock) {
    const auto m = parse_matrix(R"({"n":2,"data":[[[0,0],[1,0]],[[0,0],[0,0]]]})");
    EXPECT_EQ(m, jordan2());
}

TEST(ParseMatrix, CsvExampleOne) {
    EXPECT_EQ(parse_matrix("0,2,0\n0,0,3\n4,0,0"), example_one_matrix());
    EXPECT_EQ(parse_matrix("0, 2, 0\r\n0,0,3\n\n4,0,0\n"), example_one_matrix());
}

TEST(ParseMatrix, JsonNameAndImaginaryParts) {
    const auto doc = parse_matrix_document(R"({"n":1,"name":"z","data":[[[1.5,-2]]]})");
    EXPECT_EQ(doc.name, std::optional<std::string>("z"));
    EXPECT_EQ(doc.matrix(0, 0), Complex(1.5, -2));
}

void expect_error(const std::string& text, ErrorKind kind, const std::string& where) {
    try {
        parse_matrix(text);
        FAIL() << "accepted: " << text;
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), kind) << text;
        EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
}

TEST(ParseMatrix, Errors) {
    expect_error(R"({"n":2,"data":[[[0,0]]]})", ErrorKind::DimensionMismatch, "data");
    expect_error(R"({"n":2,"data":[[[0,0],[1,0]],[[0,0]]]})", ErrorKind::DimensionMismatch, "data[1]");
    expect_error(R"({"n":1,"data":[[[0,"x"]]]})", ErrorKind::ParseError, "data[0][0][1]");
    expect_error(R"({"n":1,"data":[[[0]]]})", ErrorKind::ParseError, "data[0][0]");
    expect_error(R"({"n":0,"data":[]})", ErrorKind::ParseError, "'n'");
    expect_error(R"({"n":1)", ErrorKind::ParseError, "parse");
    expect_error("1,2\n3,abc", ErrorKind::ParseError, "line 2, field 2");
    expect_error("1,2\n3", ErrorKind::DimensionMismatch, "row 2");
    expect_error("1,nan\n0,1", ErrorKind::ParseError, "line 1, field 2");
    expect_error("", ErrorKind::ParseError, "empty");
}

TEST(ParseMatrix, BitExactRoundTrip) {
    Rng rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        ComplexMatrix m = ginibre(random_dim(rng, 1, 8), rng);
        m(0, 0) = Complex(1e-300 * rng.normal(), 1e300 * rng.normal());
        const auto back = parse_matrix(serialize_matrix(m, "rt"));
        ASSERT_EQ(back.size(), m.size());
        for (std::size_t k = 0; k < m.entries().size(); ++k) {
            const Complex a = m.entries()[k], b = back.entries()[k];
            EXPECT_EQ(std::memcmp(&a, &b, sizeof a), 0);
        }
    }
}

TEST(Report, FormatNumberRoundTrips) {
    for (double x : {0.1, 3.5, 1.0 / 3.0, 12.000679607755799, -2e-310, 0.0}) {
        EXPECT_EQ(std::strtod(format_number(x).c_str(), nullptr), x);
    }
    EXPECT_EQ(format_number(3.5), "3.5");
}

TEST(Report, JsonShape) {
    const auto r = compare_all(example_one_matrix());
    const auto j = report_to_json(r);
    EXPECT_NEAR(j["omega"]["value"].get<double>(), 3.037336791257563, 1e-9);
    ASSERT_EQ(j["bounds"].size(), kAllBounds.size());
    for (const auto& b : j["bounds"]) {
        ASSERT_TRUE(b.contains("id"));
        ASSERT_TRUE(b.contains("value"));
        ASSERT_TRUE(b.contains("slack"));
        ASSERT_TRUE(b.contains("t"));
        ASSERT_TRUE(b.contains("inner"));
    }
    EXPECT_TRUE(j["failures"].empty());
}

TEST(Report, CsvHasHeaderAndOmegaRow) {
    const auto lines = lines_of(report_to_csv(compare_all(jordan2(), {}, std::array{BoundId::KittSum})));
    ASSERT_EQ(lines.size(), 3u);
    EXPECT_EQ(lines[0], "id,t,value,inner,slack");
    EXPECT_EQ(lines[1].rfind("omega,,0.5", 0), 0u);
    EXPECT_EQ(lines[2].rfind("kitt-sum,,0.5,,", 0), 0u);
}

TEST(Campaign, HeaderColumns) {
    const auto h = campaign_header();
    EXPECT_EQ(h.rfind("trial,seed,n,omega,classic,kitt-sum,", 0), 0u);
    EXPECT_NE(h.find("schwarz-radius,min_slack,violations"), std::string::npos);
}

TEST(Campaign, WeightedCyclicShiftStartsWithWorkedExamples) {
    CampaignConfig cfg;
    cfg.ensemble = Ensemble::WeightedCyclicShift;
    cfg.dim = 3;
    Rng rng(1);
    EXPECT_EQ(campaign_matrix(cfg, 0, rng), example_one_matrix());
    EXPECT_EQ(campaign_matrix(cfg, 1, rng), example_two_matrix());
}

TEST(Campaign, GinibreHundredTrialsClean) {
    CampaignConfig cfg;
    cfg.ensemble = Ensemble::Ginibre;
    cfg.dim = 4;
    cfg.trials = 100;
    cfg.seed = 7;
    const auto results = run_campaign(cfg);
    ASSERT_EQ(results.size(), 100u);
    EXPECT_EQ(violation_rows(results), 0u);
    for (const auto& r : results) EXPECT_GE(r.min_slack, -1e-7);
}

TEST(Campaign, SingleHermitianTrialAttainsNorm) {
    CampaignConfig cfg;
    cfg.ensemble = Ensemble::Hermitian;
    cfg.dim = 5;
    cfg.trials = 1;
    cfg.seed = 3;
    const auto r = run_campaign(cfg).front();
    Rng rng(r.seed);
    const ComplexMatrix a = campaign_matrix(cfg, 0, rng);
    EXPECT_NEAR(r.omega, spectral_norm(a), 1e-8);
    EXPECT_TRUE(r.violations.empty());
}

TEST(Campaign, InvalidConfigRejected) {
    CampaignConfig cfg;
    cfg.trials = 0;
    EXPECT_THROW(run_campaign(cfg), Error);
    cfg.trials = 1;
    cfg.dim = 0;
    EXPECT_THROW(run_campaign(cfg), Error);
}

TEST(Cli, BoundsKittSumTableRow) {
    const auto r = run_cli("bounds " + sample("example1.csv") + " --bound kitt-sum");
    EXPECT_EQ(r.exit_code, 0);
    bool found = false;
    for (const auto& line : lines_of(r.out)) {
        std::istringstream in(line);
        std::string id, value;
        in >> id >> value;
        if (id == "kitt-sum") {
            found = true;
            EXPECT_EQ(value, "3.5");
        }
    }
    EXPECT_TRUE(found) << r.out;
}

TEST(Cli, BoundsWeightedPowerJson) {
    const auto r = run_cli("bounds " + sample("example1.json") + " --bound weighted-power --format json");
    ASSERT_EQ(r.exit_code, 0);
    const auto j = nlohmann::json::parse(r.out);
    ASSERT_EQ(j["bounds"].size(), 1u);
    EXPECT_NEAR(j["bounds"][0]["inner"].get<double>(), 12.002, 5e-3);
    // ±5e-3 on the inner value is ±7.3e-4 after the square root
    EXPECT_NEAR(j["bounds"][0]["value"].get<double>(), 3.4644, 7.3e-4);
    EXPECT_NEAR(j["bounds"][0]["value"].get<double>(), std::sqrt(j["bounds"][0]["inner"].get<double>()), 1e-15);
}

TEST(Cli, BoundsZeroMatrixAllZero) {
    const auto r = run_cli("bounds " + sample("zero.json") + " --format csv");
    ASSERT_EQ(r.exit_code, 0);
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 2 + kAllBounds.size());
    for (std::size_t k = 1; k < lines.size(); ++k) {
        std::vector<std::string> fields;
        std::istringstream in(lines[k]);
        for (std::string f; std::getline(in, f, ',');) fields.push_back(f);
        ASSERT_GE(fields.size(), 3u) << lines[k];
        EXPECT_EQ(std::strtod(fields[2].c_str(), nullptr), 0.0) << lines[k];
    }
}

TEST(Cli, BoundsExitCodes) {
    EXPECT_EQ(run_cli("bounds /nonexistent/matrix.json").exit_code, 2);
    EXPECT_EQ(run_cli("bounds " + sample("jordan.json") + " --bound nope").exit_code, 2);
    EXPECT_EQ(run_cli("bounds " + sample("jordan.json") + " --format xml").exit_code, 2);
    EXPECT_EQ(run_cli("bounds " + sample("jordan.json") + " --tol-slack 1e-6").exit_code, 0);
}

TEST(Cli, Radius) {
    const auto r = run_cli("radius " + sample("jordan.json"));
    ASSERT_EQ(r.exit_code, 0);
    EXPECT_NEAR(nlohmann::json::parse(r.out)["omega"].get<double>(), 0.5, 1e-12);
}

TEST(Cli, ReproduceExamplesReportsEveryFigure) {
    const auto r = run_cli("reproduce-examples");
    const auto lines = lines_of(r.out);
    ASSERT_EQ(lines.size(), 5u) << r.out;
    bool all_pass = true;
    for (const auto& line : lines) all_pass = all_pass && line.find(" PASS") != std::string::npos;
    EXPECT_EQ(r.exit_code, all_pass ? 0 : 1);
    EXPECT_NE(r.out.find("example1.kitt-square.inner = 12.5 "), std::string::npos);
    EXPECT_NE(r.out.find("example1.kitt-sum = 3.5 "), std::string::npos);
}

TEST(Cli, FuzzDeterministicAcrossRunsAndJobs) {
    const std::string base = "fuzz --ensemble weighted-cyclic-shift --dim 3 --trials 6 --seed 11";
    const auto a = run_cli(base);
    const auto b = run_cli(base);
    const auto c = run_cli(base + " --jobs 2");
    EXPECT_EQ(a.exit_code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.out, c.out);
    const auto lines = lines_of(a.out);
    ASSERT_EQ(lines.size(), 7u);
    EXPECT_EQ(lines[0], campaign_header());
}

TEST(Cli, FuzzSeedFromEnvironment) {
    const std::string base = "fuzz --ensemble nilpotent --dim 3 --trials 2";
    const auto env = run_cli(base, "NUMRAD_SEED=42");
    const auto flag = run_cli(base + " --seed 42");
    const auto other = run_cli(base + " --seed 43");
    EXPECT_EQ(env.out, flag.out);
    EXPECT_NE(env.out, other.out);
    // explicit flag wins over the environment
    EXPECT_EQ(run_cli(base + " --seed 43", "NUMRAD_SEED=42").out, other.out);
}

TEST(Cli, FuzzRejectsBadConfig) {
    EXPECT_EQ(run_cli("fuzz --ensemble ginibre --dim 3 --trials 0").exit_code, 2);
    EXPECT_EQ(run_cli("fuzz --ensemble nope --dim 3 --trials 1").exit_code, 2);
}

TEST(Cli, FuzzViolationSetsExitCode) {
    // A negative slack tolerance turns every tight bound into a violation.
    EXPECT_EQ(run_cli("fuzz --ensemble nilpotent --dim 2 --trials 1 --seed 1 --tol-slack -1").exit_code, 1);
}

}  // namespace
