#include "scanspectra/report.hpp"
#include "scanspectra/suites.hpp"

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace {

using namespace scanspectra;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

#ifdef SCAN_SPECTRA_CLI_PATH
int run_cli(const std::string& args) {
    const std::string command = std::string(SCAN_SPECTRA_CLI_PATH) + " " + args + " 2>/dev/null";
    const int status = std::system(command.c_str());
    return WEXITSTATUS(status);
}
#endif

}  // namespace

TEST_CASE("report round trip") {
    Report report;
    report.config["subcommand"] = "verify";
    report.config["seed"] = 7;
    ResultRecord passing;
    passing.name = "a";
    passing.kind = "spectral";
    passing.values["bound_value"] = 0.5;
    passing.pass = true;
    ResultRecord info;
    info.name = "b";
    info.kind = "spectrum";
    info.values["gap"] = 0.25;
    report.results = {passing, info};
    CHECK(report.overall_pass());

    const std::string path = "report_roundtrip_test.json";
    write_report(report, path);
    const Report loaded = read_report(path);
    CHECK(report_to_json(loaded) == report_to_json(report));
    std::remove(path.c_str());

    ResultRecord failing;
    failing.name = "c";
    failing.kind = "spectral";
    failing.pass = false;
    report.results.push_back(failing);
    CHECK_FALSE(report.overall_pass());
}

TEST_CASE("report schema validation names the missing field") {
    const std::string path = "report_schema_test.json";
    {
        std::ofstream out(path);
        out << R"({"schema_version": 1, "tool": "scan-spectra", "tool_version": "0.1.0",)"
            << R"( "config": {}, "results": [{"name": "x", "kind": "y", "values": {}}],)"
            << R"( "overall_pass": true})";
    }
    CHECK_THROWS_WITH_AS(read_report(path), doctest::Contains("pass"), std::runtime_error);
    {
        std::ofstream out(path);
        out << R"({"schema_version": 2, "tool": "scan-spectra", "tool_version": "0.1.0",)"
            << R"( "config": {}, "results": [], "overall_pass": true})";
    }
    CHECK_THROWS_WITH_AS(read_report(path), doctest::Contains("schema_version"),
                         std::runtime_error);
    {
        std::ofstream out(path);
        out << R"({"schema_version": 1, "tool": "scan-spectra", "config": {},)"
            << R"( "results": [], "overall_pass": true})";
    }
    CHECK_THROWS_WITH_AS(read_report(path), doctest::Contains("tool_version"),
                         std::runtime_error);
    std::remove(path.c_str());
}

TEST_CASE("suite dispatch") {
    const Distribution model = build_hardcore(complete_graph(3), 1.0);
    SuiteOptions opts;
    opts.trials = 10;
    for (const std::string& name : suite_names()) {
        const SuiteOutcome outcome = run_suite(name, model, opts);
        CHECK(outcome.pass);
        CHECK_FALSE(outcome.results.empty());
    }
    CHECK_THROWS_AS(run_suite("nope", model, opts), std::invalid_argument);
}

TEST_CASE("standard model battery") {
    const auto models = standard_test_models();
    CHECK(models.size() == 79);  // 15 hardcore + 64 Ising
    for (const auto& [name, dist] : models) CHECK_FALSE(name.empty());
}

TEST_CASE("suite results do not depend on the worker count") {
    const Distribution model = build_ising(cycle_graph(4), 0.5, 0.3);
    SuiteOptions opts;
    opts.trials = 40;
    setenv("SCAN_SPECTRA_THREADS", "1", 1);
    const SuiteOutcome serial = suite_sequence_bound(model, opts);
    setenv("SCAN_SPECTRA_THREADS", "4", 1);
    const SuiteOutcome threaded = suite_sequence_bound(model, opts);
    unsetenv("SCAN_SPECTRA_THREADS");
    REQUIRE(serial.results.size() == threaded.results.size());
    for (std::size_t i = 0; i < serial.results.size(); ++i) {
        CHECK(serial.results[i].name == threaded.results[i].name);
        CHECK(serial.results[i].values == threaded.results[i].values);
    }
}

#ifdef SCAN_SPECTRA_CLI_PATH

TEST_CASE("cli: verification suite passes with exit 0 and full permutation coverage") {
    const std::string out = "cli_cor32_test.json";
    const int status =
        run_cli("verify --model hardcore:complete:n=4,lambda=1 --suite cor32 --out " + out);
    CHECK(status == 0);
    const Report report = read_report(out);
    CHECK(report.results.size() == 24);
    for (const ResultRecord& record : report.results) {
        REQUIRE(record.pass.has_value());
        CHECK(*record.pass);
    }
    std::remove(out.c_str());
}

TEST_CASE("cli: identical seeds give byte-identical reports") {
    const std::string a = "cli_det_a.json", b = "cli_det_b.json";
    const std::string verify_args =
        "verify --model ising:cycle:n=4,beta=0.5,h=0.3 --suite thm31 --trials 25 --seed 99 --out ";
    CHECK(run_cli(verify_args + a) == 0);
    CHECK(run_cli(verify_args + b) == 0);
    CHECK(slurp(a) == slurp(b));

    const std::string sim_args = "sim --n 8 --sweeps 50 --seed 31 --out ";
    CHECK(run_cli(sim_args + a) == 0);
    CHECK(run_cli(sim_args + b) == 0);
    CHECK(slurp(a) == slurp(b));
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("certify --n 3 --seq \"0 0 0\"") == 1);     // rejected certificate
    CHECK(run_cli("certify --n 2 --seq \"0 1\"") == 0);       // accepted
    CHECK(run_cli("frobnicate") == 2);                        // unknown subcommand
    CHECK(run_cli("verify --model hardcore:complete:n=3,lambda=1 --suite nope") == 2);
    CHECK(run_cli("verify --model missing_file.json --suite cor32") == 3);
    CHECK(run_cli("mix --model not:a:n=1,model=2 --eps 0.25") == 3);
}

TEST_CASE("cli: spectra report on a small model") {
    const std::string out = "cli_spectra_test.json";
    CHECK(run_cli("spectra --model hardcore:complete:n=2,lambda=1 --out " + out) == 0);
    const Report report = read_report(out);
    bool saw_scan_spectrum = false;
    for (const ResultRecord& record : report.results) {
        if (record.name == "systematic scan spectrum") {
            saw_scan_spectrum = true;
            CHECK(record.values.at("operator_norm").get<double>() ==
                  doctest::Approx(0.5).epsilon(1e-9));
            CHECK(record.values.at("laplacian_sigma2").get<double>() ==
                  doctest::Approx(0.651388).epsilon(1e-5));
        }
        if (record.kind == "laplacian-mixing")
            CHECK(record.values.at("implied_constant").get<double>() > 0.0);
    }
    CHECK(saw_scan_spectrum);
    std::remove(out.c_str());
}

TEST_CASE("cli: mixing curve CSV layout") {
    const std::string out = "cli_mix_test.json";
    const std::string csv = "cli_mix_test.csv";
    CHECK(run_cli("mix --model hardcore:complete:n=2,lambda=1 --eps 0.25 --unit steps --csv " +
                  csv + " --out " + out) == 0);
    std::istringstream lines(slurp(csv));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "t,unit,d_t");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("0,site-steps,", 0) == 0);
    const Report report = read_report(out);
    CHECK(report.results.at(0).values.at("t_mix").get<long>() == 3);
    std::remove(out.c_str());
    std::remove(csv.c_str());
}

TEST_CASE("cli: separation table CSV layout") {
    const std::string out = "cli_hardcore_test.json";
    const std::string csv = "cli_hardcore_test.csv";
    CHECK(run_cli("hardcore --n-list \"2 4\" --eps 0.25 --csv " + csv + " --out " + out) == 1);
    // Exit 1: the slope bands are only judged over the full standard window;
    // a two-point table reports slopes but fails the pinned bands.
    std::istringstream lines(slurp(csv));
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "n,t_gd_steps,t_ss_sweeps,ratio,bound_check");
    REQUIRE(std::getline(lines, line));
    CHECK(line.rfind("2,3,2,", 0) == 0);  // pinned n=2 row
    std::remove(out.c_str());
    std::remove(csv.c_str());
}

TEST_CASE("cli: sim trajectory report carries the stopping times") {
    const std::string out = "cli_sim_test.json";
    CHECK(run_cli("sim --n 6 --sweeps 120 --seed 3 --out " + out) == 0);
    const Report report = read_report(out);
    REQUIRE(report.results.size() == 1);
    const auto& values = report.results.at(0).values;
    CHECK(values.at("total_updates").get<long>() == 720);
    CHECK(values.at("tau").is_array());
    CHECK(values.at("nu").is_array());
    CHECK(values.at("tau").size() >= values.at("nu").size());
    std::remove(out.c_str());
}

TEST_CASE("cli: converse suite refuses six-site models as a usage error") {
    CHECK(run_cli("verify --model ising:cycle:n=6,beta=0.5,h=0 --suite thm35") == 2);
}

TEST_CASE("cli: recht-re report carries the closed form") {
    const std::string out = "cli_recht_test.json";
    CHECK(run_cli("recht-re --n 4 --delta 0.5 --out " + out) == 0);
    const Report report = read_report(out);
    REQUIRE(report.results.size() == 1);
    const double direct = report.results[0].values.at("direct_norm").get<double>();
    CHECK(direct == doctest::Approx(0.3535534).epsilon(1e-6));
    std::remove(out.c_str());
}

#endif  // SCAN_SPECTRA_CLI_PATH
