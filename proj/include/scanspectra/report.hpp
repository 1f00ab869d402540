#pragma once

#include "scanspectra/hardcore_sim.hpp"
#include "scanspectra/mixing.hpp"
#include "scanspectra/schedules.hpp"
#include "scanspectra/spectral.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace scanspectra {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "scan-spectra";
inline constexpr const char* kToolVersion = "0.1.0";

// One named result. `values` carries every number needed to re-verify a
// verdict by hand (both sides of each inequality); `pass` is absent for
// purely informational results.
struct ResultRecord {
    std::string name;
    std::string kind;
    nlohmann::json values;
    std::optional<bool> pass;
};

struct Report {
    nlohmann::json config;
    std::vector<ResultRecord> results;

    // Overall verdict: every verdict-bearing result passes.
    bool overall_pass() const;
};

nlohmann::json report_to_json(const Report& report);
std::string report_to_string(const Report& report);

// Atomic write (write-then-rename).
void write_report(const Report& report, const std::string& path);

// Parses and validates a serialized report; a missing field or a schema
// version mismatch raises an error naming the field.
Report read_report(const std::string& path);

ResultRecord to_record(const SpectralReport& report);
ResultRecord to_record(const std::string& name, const MixingReport& report, bool check_upper,
                       bool check_lower);
ResultRecord to_record(const std::string& name, const Certificate& cert);
ResultRecord to_record(const std::string& name, const ProjectionCheck& check);
ResultRecord to_record(const NuMomentCheck& check);
ResultRecord to_record(const ResidueCheck& check);
ResultRecord to_record(const ConcentrationCheck& check);
ResultRecord to_record(const TailBoundCheck& check);
ResultRecord to_record(const SeparationTable& table, double slope_gd_lo, double slope_gd_hi,
                       double slope_ss_lo, double slope_ss_hi);
ResultRecord to_record(const std::string& name, const TrajectoryStats& stats);
ResultRecord to_record(const std::string& name, const LaplacianMixingComparison& cmp);

}  // namespace scanspectra
