#include "scanspectra/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace scanspectra {

using nlohmann::json;

bool Report::overall_pass() const {
    for (const ResultRecord& record : results)
        if (record.pass.has_value() && !*record.pass) return false;
    return true;
}

json report_to_json(const Report& report) {
    json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["tool"] = kToolName;
    doc["tool_version"] = kToolVersion;
    doc["config"] = report.config;
    json results = json::array();
    for (const ResultRecord& record : report.results) {
        json entry;
        entry["name"] = record.name;
        entry["kind"] = record.kind;
        entry["values"] = record.values;
        if (record.pass.has_value())
            entry["pass"] = *record.pass;
        else
            entry["pass"] = nullptr;
        results.push_back(std::move(entry));
    }
    doc["results"] = std::move(results);
    doc["overall_pass"] = report.overall_pass();
    return doc;
}

std::string report_to_string(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

void write_report(const Report& report, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) throw std::runtime_error("cannot write report: " + tmp);
        out << report_to_string(report);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move report into place: " + path);
}

namespace {

const json& require_field(const json& doc, const char* field) {
    if (!doc.contains(field))
        throw std::runtime_error(std::string("report is missing field: ") + field);
    return doc.at(field);
}

}  // namespace

Report read_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open report: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& err) {
        throw std::runtime_error("report " + path + ": " + err.what());
    }
    const int version = require_field(doc, "schema_version").get<int>();
    if (version != kReportSchemaVersion)
        throw std::runtime_error("report schema_version " + std::to_string(version) +
                                 " does not match expected " +
                                 std::to_string(kReportSchemaVersion));
    require_field(doc, "tool");
    require_field(doc, "tool_version");
    Report report;
    report.config = require_field(doc, "config");
    for (const json& entry : require_field(doc, "results")) {
        ResultRecord record;
        record.name = require_field(entry, "name").get<std::string>();
        record.kind = require_field(entry, "kind").get<std::string>();
        record.values = require_field(entry, "values");
        const json& pass = require_field(entry, "pass");
        if (!pass.is_null()) record.pass = pass.get<bool>();
        report.results.push_back(std::move(record));
    }
    require_field(doc, "overall_pass");
    return report;
}

ResultRecord to_record(const SpectralReport& report) {
    ResultRecord record;
    record.name = report.name;
    record.kind = "spectral";
    record.values["operator_norm"] = report.operator_norm;
    record.values["gap"] = report.gap;
    record.values["laplacian_sigma2"] = report.laplacian_sigma2;
    record.values["bound_value"] = report.bound_value;
    record.values["attained"] = report.attained;
    record.values["residual"] = report.residual;
    for (const auto& [key, value] : report.details) record.values[key] = value;
    record.pass = report.pass;
    return record;
}

ResultRecord to_record(const std::string& name, const MixingReport& report, bool check_upper,
                       bool check_lower) {
    ResultRecord record;
    record.name = name;
    record.kind = "mixing";
    record.values["epsilon"] = report.epsilon;
    record.values["unit"] = to_string(report.unit);
    record.values["gamma"] = report.gamma;
    record.values["pi_min"] = report.pi_min;
    record.values["spectral_upper"] = report.spectral_upper;
    if (report.reversible_lower.has_value())
        record.values["reversible_lower"] = *report.reversible_lower;
    if (report.exceeded) {
        record.values["t_mix"] = "exceeded";
        if (check_upper || check_lower) record.pass = false;
        return record;
    }
    record.values["t_mix"] = report.t_mix;
    if (check_upper || check_lower) {
        bool ok = true;
        if (check_upper) ok = ok && static_cast<double>(report.t_mix) <= report.spectral_upper + kVerifyTol;
        if (check_lower && report.reversible_lower.has_value())
            ok = ok && *report.reversible_lower <= static_cast<double>(report.t_mix) + kVerifyTol;
        record.pass = ok;
    }
    return record;
}

ResultRecord to_record(const std::string& name, const Certificate& cert) {
    ResultRecord record;
    record.name = name;
    record.kind = "certificate";
    record.values["sites"] = cert.sites;
    record.values["covered"] = cert.covered;
    record.values["cover_time"] = cert.cover_time;
    record.values["cover_threshold"] = cert.cover_threshold;
    record.values["sum_k"] = cert.sum_k;
    record.values["sum_threshold"] = cert.sum_threshold;
    record.values["accepted"] = cert.accepted;
    record.pass = cert.accepted;
    return record;
}

ResultRecord to_record(const std::string& name, const ProjectionCheck& check) {
    ResultRecord record;
    record.name = name;
    record.kind = "projection";
    record.values["detailed_balance_residual"] = check.detailed_balance_residual;
    record.values["idempotence_residual"] = check.idempotence_residual;
    record.pass = check.pass;
    return record;
}

ResultRecord to_record(const NuMomentCheck& check) {
    ResultRecord record;
    record.name = "excursion moments, n=" + std::to_string(check.n) + " s=" + std::to_string(check.s);
    record.kind = "moments";
    record.values["trials"] = check.trials;
    record.values["sample_mean"] = check.sample_mean;
    record.values["expected_mean"] = check.expected_mean;
    record.values["mean_tolerance"] = check.mean_tolerance;
    record.values["sample_variance"] = check.sample_variance;
    record.values["expected_variance"] = check.expected_variance;
    record.values["variance_tolerance"] = check.variance_tolerance;
    record.pass = check.pass;
    return record;
}

ResultRecord to_record(const ResidueCheck& check) {
    ResultRecord record;
    record.name = "excursion residue law, n=" + std::to_string(check.n) + " s=" +
                  std::to_string(check.s);
    record.kind = "residues";
    record.values["used_trials"] = check.used_trials;
    record.values["tv"] = check.tv;
    record.values["tv_limit"] = check.tv_limit;
    record.pass = check.pass;
    return record;
}

ResultRecord to_record(const ConcentrationCheck& check) {
    ResultRecord record;
    record.name = "residue concentration, n=" + std::to_string(check.n);
    record.kind = "concentration";
    record.values["used_trials"] = check.used_trials;
    record.values["c_prime"] = check.c_prime;
    record.values["horizon_sweeps"] = check.horizon_sweeps;
    record.values["set_size"] = check.set_size;
    record.values["max_allowed"] = check.max_allowed;
    record.values["captured_mass"] = check.captured_mass;
    record.pass = check.pass;
    return record;
}

ResultRecord to_record(const TailBoundCheck& check) {
    ResultRecord record;
    record.name = "geometric tail dominates random-scan distance, n=" + std::to_string(check.n);
    record.kind = "tail-bound";
    record.values["t_max"] = check.t_max;
    record.values["max_violation"] = check.max_violation;
    record.pass = check.pass;
    return record;
}

ResultRecord to_record(const SeparationTable& table, double slope_gd_lo, double slope_gd_hi,
                       double slope_ss_lo, double slope_ss_hi) {
    ResultRecord record;
    record.name = "mixing-time separation";
    record.kind = "separation";
    nlohmann::json rows = nlohmann::json::array();
    bool ratios_increase = true;
    bool bounds_ok = true;
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const SeparationRow& row = table.rows[i];
        nlohmann::json entry;
        entry["n"] = row.n;
        entry["t_gd_steps"] = row.t_gd_steps;
        entry["t_ss_sweeps"] = row.t_ss_sweeps;
        entry["ratio"] = row.ratio;
        entry["bound_check"] = row.bound_check;
        rows.push_back(std::move(entry));
        if (i > 0 && row.ratio <= table.rows[i - 1].ratio) ratios_increase = false;
        bounds_ok = bounds_ok && row.bound_check;
    }
    record.values["eps"] = table.eps;
    record.values["rows"] = std::move(rows);
    record.values["slope_gd"] = table.slope_gd;
    record.values["slope_ss"] = table.slope_ss;
    record.values["ratios_increase"] = ratios_increase;
    if (table.rows.size() >= 2) {
        record.pass = table.slope_gd >= slope_gd_lo && table.slope_gd <= slope_gd_hi &&
                      table.slope_ss >= slope_ss_lo && table.slope_ss <= slope_ss_hi &&
                      ratios_increase && bounds_ok;
    }
    return record;
}

ResultRecord to_record(const std::string& name, const TrajectoryStats& stats) {
    ResultRecord record;
    record.name = name;
    record.kind = "trajectory";
    record.values["n"] = stats.n;
    record.values["total_updates"] = stats.total_updates;
    record.values["tau"] = stats.tau;
    record.values["nu"] = stats.nu;
    record.values["final_state"] = stats.final_state;
    record.values["seed"] = stats.seed;
    record.values["stream"] = stats.stream;
    return record;
}

ResultRecord to_record(const std::string& name, const LaplacianMixingComparison& cmp) {
    ResultRecord record;
    record.name = name;
    record.kind = "laplacian-mixing";
    record.values["t_mix_tenth"] = cmp.t_mix_tenth;
    record.values["gamma_tilde"] = cmp.gamma_tilde;
    record.values["implied_constant"] = cmp.implied_constant;
    record.values["unit"] = to_string(cmp.unit);
    return record;
}

}  // namespace scanspectra
