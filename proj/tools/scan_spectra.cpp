// scan_spectra: exact spectral-gap, mixing-time, and update-schedule analysis
// for Gibbs samplers on finite product spaces.
//
// Subcommands: spectra | mix | verify | certify | recht-re | hardcore | sim.
// Reports are JSON (stdout or --out); curves and tables are CSV. Exit codes:
// 0 all verdicts pass, 1 a verification failed, 2 usage error, 3 file error.

#include "scanspectra/hardcore_sim.hpp"
#include "scanspectra/models.hpp"
#include "scanspectra/parallel.hpp"
#include "scanspectra/projections.hpp"
#include "scanspectra/report.hpp"
#include "scanspectra/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace {

using namespace scanspectra;

struct CommonOptions {
    std::string model;
    std::uint64_t seed = kDefaultSeed;
    Index state_cap = ProductSpace::kDefaultStateCap;
    double tol = kVerifyTol;
    std::string out_path;
    std::string csv_path;
};

Distribution load_model(const CommonOptions& common) {
    return build_model(parse_model_string(common.model), common.state_cap);
}

nlohmann::json base_config(const std::string& subcommand, const CommonOptions& common) {
    nlohmann::json config;
    config["subcommand"] = subcommand;
    config["seed"] = common.seed;
    config["state_cap"] = common.state_cap;
    config["tol"] = common.tol;
    if (!common.model.empty()) config["model"] = common.model;
    return config;
}

int emit(const Report& report, const CommonOptions& common) {
    if (!common.out_path.empty())
        write_report(report, common.out_path);
    else
        std::cout << report_to_string(report);
    const bool pass = report.overall_pass();
    std::cerr << (pass ? "overall: PASS" : "overall: FAIL") << '\n';
    return pass ? 0 : 1;
}

std::vector<int> identity_order(int n) {
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    return order;
}

int run_spectra(const CommonOptions& common, long t_max) {
    const Distribution model = load_model(common);
    const SiteKernelSet set(model);
    Report report;
    report.config = base_config("spectra", common);
    report.config["t_max"] = t_max;

    for (int site = 0; site < set.sites(); ++site)
        report.results.push_back(to_record("projection properties, site " + std::to_string(site),
                                           check_projection_properties(set.kernel(site))));

    const auto spectrum_record = [](const std::string& name, const MarkovKernel& kernel) {
        ResultRecord record;
        record.name = name;
        record.kind = "spectrum";
        const double norm = pi_operator_norm(kernel);
        record.values["operator_norm"] = norm;
        record.values["gap"] = 1.0 - norm;
        record.values["laplacian_sigma2"] = laplacian_sigma2(kernel);
        record.values["reversible"] =
            check_projection_properties(kernel).detailed_balance_residual <= 1e-10;
        return record;
    };
    const MarkovKernel glauber = glauber_kernel(set);
    const MarkovKernel scan = sequence_product_kernel(set, identity_order(set.sites()));
    report.results.push_back(spectrum_record("random scan spectrum", glauber));
    report.results.push_back(spectrum_record("systematic scan spectrum", scan));
    report.results.push_back(to_record(laplacian_comparison(set, common.tol)));
    report.results.push_back(to_record("laplacian mixing comparison, systematic scan",
                                       chatterjee_comparison(scan, t_max)));
    return emit(report, common);
}

int run_mix(const CommonOptions& common, double eps, long t_max, const std::string& unit) {
    const Distribution model = load_model(common);
    const SiteKernelSet set(model);
    const MarkovKernel kernel = unit == "sweeps"
                                    ? sequence_product_kernel(set, identity_order(set.sites()))
                                    : glauber_kernel(set);
    Report report;
    report.config = base_config("mix", common);
    report.config["eps"] = eps;
    report.config["t_max"] = t_max;
    report.config["unit"] = unit;

    const MixingReport mixing = mixing_report(kernel, eps, t_max);
    report.results.push_back(to_record("mixing time, " + kernel.label(), mixing,
                                       /*check_upper=*/true,
                                       /*check_lower=*/mixing.reversible_lower.has_value()));
    if (!common.csv_path.empty()) {
        const long horizon = mixing.exceeded ? t_max : mixing.t_mix;
        write_curve_csv(mixing_curve(kernel, horizon), common.csv_path);
    }
    return emit(report, common);
}

int run_verify(const CommonOptions& common, const std::string& suite, int trials, double eps) {
    const Distribution model = load_model(common);
    SuiteOptions opts;
    opts.seed = common.seed;
    opts.trials = trials;
    opts.tol = common.tol;
    if (eps > 0.0) opts.eps_values = {eps};
    Report report;
    report.config = base_config("verify", common);
    report.config["suite"] = suite;
    report.config["trials"] = trials;
    if (eps > 0.0) report.config["eps"] = eps;
    SuiteOutcome outcome = run_suite(suite, model, opts);
    report.results = std::move(outcome.results);
    return emit(report, common);
}

int run_certify(const CommonOptions& common, int n, const std::string& seq_text,
                const std::string& seq_file, std::uint64_t stream, double delta,
                const std::string& dump_seq) {
    UpdateSequence seq{{}, n};
    std::string source;
    if (!seq_text.empty()) {
        seq = sequence_from_string(seq_text, n);
        source = "inline";
    } else if (!seq_file.empty()) {
        std::ifstream in(seq_file);
        if (!in) throw ParseError("cannot open sequence file: " + seq_file);
        std::stringstream buffer;
        buffer << in.rdbuf();
        seq = sequence_from_string(buffer.str(), n);
        source = seq_file;
    } else {
        seq = sample_covering_sequence(n, common.seed, stream);
        source = "sampled";
    }
    if (!dump_seq.empty()) {
        std::ofstream out(dump_seq);
        if (!out) throw std::runtime_error("cannot write sequence file: " + dump_seq);
        out << sequence_to_string(seq) << '\n';
    }

    Report report;
    report.config = base_config("certify", common);
    report.config["n"] = n;
    report.config["stream"] = stream;
    report.config["sequence_source"] = source;
    const Certificate cert = certify_sequence(seq);
    ResultRecord record = to_record("sequence certificate", cert);
    record.values["sequence"] = seq.indices;
    if (delta > 0.0) {
        record.values["delta"] = delta;
        record.values["norm_bound"] = cert.norm_bound(delta);
    }
    report.results.push_back(std::move(record));
    return emit(report, common);
}

int run_recht_re(const CommonOptions& common, int n, double delta) {
    Report report;
    report.config = base_config("recht-re", common);
    report.config["n"] = n;
    report.config["delta"] = delta;

    const ProjectionFamily family = recht_re_family(n, delta);
    const double closed = closed_form_product_norm(n, delta);
    const double direct = family_product_norm(family, identity_order(n));
    const double average = family_average_norm(family);

    ResultRecord record;
    record.name = "equiangular rank-one family, identity product";
    record.kind = "projection-family";
    record.values["n"] = n;
    record.values["delta"] = delta;
    record.values["closed_form"] = closed;
    record.values["direct_norm"] = direct;
    record.values["average_norm"] = average;
    record.values["family_kind"] = family.kind == FamilyKind::kOrthogonalProjection
                                       ? "orthogonal_projection"
                                       : "psd_general";
    const double rel = std::abs(direct - closed) / std::max(std::abs(closed), 1e-300);
    record.values["relative_error"] = rel;
    record.pass = rel <= 1e-9;
    report.results.push_back(std::move(record));

    if (!common.csv_path.empty()) {
        std::vector<int> n_values;
        for (int i = 2; i <= n; ++i) n_values.push_back(i);
        write_sweep_csv(recht_re_sweep(n_values, delta), common.csv_path);
    }
    return emit(report, common);
}

int run_hardcore(const CommonOptions& common, const std::string& n_list_text, double eps) {
    std::vector<int> n_list;
    {
        std::istringstream in(n_list_text);
        int value = 0;
        while (in >> value) n_list.push_back(value);
        if (n_list.empty()) throw std::invalid_argument("hardcore: empty --n-list");
    }
    Report report;
    report.config = base_config("hardcore", common);
    report.config["n_list"] = n_list;
    report.config["eps"] = eps;

    const SeparationTable table = separation_experiment(n_list, eps);
    report.results.push_back(to_record(table, 0.8, 1.2, 1.7, 2.3));
    if (!common.csv_path.empty()) write_separation_csv(table, common.csv_path);
    return emit(report, common);
}

int run_sim(const CommonOptions& common, int n, long sweeps, std::uint64_t stream, int start,
            const std::string& check, int s, int trials, double c_prime) {
    Report report;
    report.config = base_config("sim", common);
    report.config["n"] = n;
    report.config["stream"] = stream;
    if (check.empty()) {
        report.config["sweeps"] = sweeps;
        report.config["start"] = start;
        const TrajectoryStats stats =
            simulate_scan(n, sweeps, common.seed, HardcoreState{start}, stream);
        report.results.push_back(to_record("scan trajectory", stats));
        return emit(report, common);
    }
    report.config["check"] = check;
    report.config["trials"] = trials;
    if (check == "moments") {
        report.config["s"] = s;
        report.results.push_back(to_record(nu_moment_check(n, s, trials, common.seed)));
    } else if (check == "residues") {
        report.config["s"] = s;
        report.results.push_back(to_record(decomposition_check(n, s, trials, common.seed)));
    } else if (check == "concentration") {
        report.config["cprime"] = c_prime;
        report.results.push_back(to_record(concentration_check(n, trials, common.seed, c_prime)));
    } else {
        throw std::invalid_argument("sim: unknown --check '" + check +
                                    "' (moments|residues|concentration)");
    }
    return emit(report, common);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact spectral-gap and mixing-time analysis for Gibbs samplers"};
    app.require_subcommand(1);

    CommonOptions common;
    long t_max = -1;
    double eps = 0.25;
    std::string unit = "steps";
    std::string suite;
    int trials = 200;
    int n = 2;
    double delta = 0.0;
    double recht_delta = 0.5;
    std::string seq_text, seq_file, dump_seq, check;
    std::uint64_t stream = 0;
    int start = -1;
    int s = 1;
    double c_prime = 0.004;
    long sweeps = 100;
    double verify_eps = -1.0;
    std::string n_list = "4 8 16 32 64";

    const auto add_common = [&common](CLI::App* cmd, bool with_model) {
        if (with_model)
            cmd->add_option("--model", common.model,
                            "builtin string (e.g. hardcore:complete:n=4,lambda=1) or model file path")
                ->required();
        cmd->add_option("--seed", common.seed, "random seed (default 1729)");
        cmd->add_option("--cap", common.state_cap, "state-count cap");
        cmd->add_option("--tol", common.tol, "verification tolerance");
        cmd->add_option("--out", common.out_path, "write the JSON report here instead of stdout");
    };

    CLI::App* spectra = app.add_subcommand("spectra", "norms, gaps, and projection checks");
    add_common(spectra, true);
    spectra->add_option("--tmax", t_max, "evolution horizon (default: from the spectral bound)");

    CLI::App* mix = app.add_subcommand("mix", "exact mixing curve and spectral bounds");
    add_common(mix, true);
    mix->add_option("--eps", eps, "total-variation threshold");
    mix->add_option("--tmax", t_max, "search horizon");
    mix->add_option("--unit", unit, "steps (random scan) or sweeps (systematic scan)")
        ->check(CLI::IsMember({"steps", "sweeps"}));
    mix->add_option("--csv", common.csv_path, "write the mixing curve as CSV");

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite against a model");
    add_common(verify, true);
    verify->add_option("--suite", suite, "cor32|thm31|thm36|lemma27|thm35|thm25")->required();
    verify->add_option("--trials", trials, "sequences per model for the sequence suites");
    verify->add_option("--eps", verify_eps, "override the mixing-suite epsilon list");

    CLI::App* certify = app.add_subcommand("certify", "certificate for an update sequence");
    add_common(certify, false);
    certify->add_option("--n", n, "number of sites")->required();
    certify->add_option("--seq", seq_text, "whitespace-separated site indices");
    certify->add_option("--seq-file", seq_file, "read the sequence from a file");
    certify->add_option("--stream", stream, "stream id when sampling");
    certify->add_option("--delta", delta, "random-scan gap for the certified norm bound");
    certify->add_option("--dump-seq", dump_seq, "write the sequence to a file");

    CLI::App* recht_re = app.add_subcommand("recht-re", "equiangular rank-one family norms");
    add_common(recht_re, false);
    recht_re->add_option("--n", n, "family size")->required();
    recht_re->add_option("--delta", recht_delta, "scaling parameter in [0,1]")->required();
    recht_re->add_option("--csv", common.csv_path, "write a sweep over 2..n as CSV");

    CLI::App* hardcore = app.add_subcommand("hardcore", "mixing-time separation experiment");
    add_common(hardcore, false);
    hardcore->add_option("--n-list", n_list, "space-separated n values");
    hardcore->add_option("--eps", eps, "total-variation threshold");
    hardcore->add_option("--csv", common.csv_path, "write the separation table as CSV");

    CLI::App* sim = app.add_subcommand("sim", "scan trajectory simulation and statistics");
    add_common(sim, false);
    sim->add_option("--n", n, "number of sites")->required();
    sim->add_option("--sweeps", sweeps, "trajectory length in sweeps");
    sim->add_option("--stream", stream, "stream id");
    sim->add_option("--start", start, "start state (0=empty, i=e_i; default e_n)");
    sim->add_option("--check", check, "moments|residues|concentration");
    sim->add_option("--s", s, "excursion index for the checks");
    sim->add_option("--trials", trials, "trial count for the checks");
    sim->add_option("--cprime", c_prime, "horizon constant for the concentration check");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (spectra->parsed()) return run_spectra(common, t_max);
        if (mix->parsed()) return run_mix(common, eps, t_max, unit);
        if (verify->parsed()) return run_verify(common, suite, trials, verify_eps);
        if (certify->parsed())
            return run_certify(common, n, seq_text, seq_file, stream, delta, dump_seq);
        if (recht_re->parsed()) return run_recht_re(common, n, recht_delta);
        if (hardcore->parsed()) return run_hardcore(common, n_list, eps);
        if (sim->parsed())
            return run_sim(common, n, sweeps, stream, start, check, s, trials, c_prime);
        std::cerr << "no subcommand selected\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}
