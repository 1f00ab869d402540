#pragma once

#include "scanspectra/operators.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scanspectra {

// One kernel application of a sequence kernel is a sweep (n site updates);
// for site and random-scan kernels it is a single site update. Reports always
// state their unit; conversions are never implicit.
enum class StepUnit { kSiteSteps, kSweeps };

std::string to_string(StepUnit unit);
StepUnit kernel_unit(const MarkovKernel& kernel);

// Worst-case distance to stationarity d(t) = max_x TV(P^t(x,.), pi) for
// t = 0, 1, ..., computed exactly by evolving the full matrix power.
struct MixingCurve {
    std::string kernel_label;
    StepUnit unit = StepUnit::kSiteSteps;
    std::vector<double> d_values;  // d_values[t] = d(t), t = 0..T
};

inline constexpr long kMaxHorizon = 1L << 22;

MixingCurve mixing_curve(const MarkovKernel& kernel, long t_max);
double worst_case_distance(const MarkovKernel& kernel, long t);

struct MixingReport {
    double epsilon = 0.0;
    long t_mix = -1;            // valid when !exceeded
    bool exceeded = false;      // d(t) did not reach epsilon by t_max
    StepUnit unit = StepUnit::kSiteSteps;
    double spectral_upper = 0.0;               // (1/gamma) log(1/(eps pi_min))
    std::optional<double> reversible_lower;    // (1/gamma - 1) log(1/(2 eps)), reversible only
    double gamma = 0.0;
    double pi_min = 0.0;
};

// Smallest t with d(t) <= epsilon (inclusive), searching up to t_max.
MixingReport mixing_time(const MarkovKernel& kernel, double epsilon, long t_max);

// Spectral bounds only (no evolution): the upper bound holds for any
// irreducible chain; the lower bound additionally needs reversibility and is
// absent otherwise.
MixingReport spectral_mixing_bounds(const MarkovKernel& kernel, double epsilon);

// Exact mixing time and the spectral bounds in one record. When t_max < 0 the
// search horizon is sized from the upper bound.
MixingReport mixing_report(const MarkovKernel& kernel, double epsilon, long t_max = -1);

// Both sides of the non-reversible lower-bound comparison
// t_mix(1/10) >= c / sigma2(I - P): the implied constant is their product.
struct LaplacianMixingComparison {
    long t_mix_tenth = 0;
    double gamma_tilde = 0.0;
    double implied_constant = 0.0;
    StepUnit unit = StepUnit::kSiteSteps;
};

LaplacianMixingComparison chatterjee_comparison(const MarkovKernel& kernel, long t_max = -1);

void write_curve_csv(const MixingCurve& curve, const std::string& path);

}  // namespace scanspectra
