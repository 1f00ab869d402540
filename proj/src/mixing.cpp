#include "scanspectra/mixing.hpp"

#include "scanspectra/spectral.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace scanspectra {

namespace {

constexpr double kMonotoneTol = 1e-12;

double max_row_tv(const Eigen::MatrixXd& power, const Eigen::VectorXd& pi) {
    double worst = 0.0;
    for (Eigen::Index r = 0; r < power.rows(); ++r) {
        const double tv = 0.5 * (power.row(r).transpose() - pi).cwiseAbs().sum();
        worst = std::max(worst, tv);
    }
    return worst;
}

}  // namespace

std::string to_string(StepUnit unit) {
    return unit == StepUnit::kSweeps ? "sweeps" : "site-steps";
}

StepUnit kernel_unit(const MarkovKernel& kernel) {
    return kernel.kind() == KernelKind::kSequence ? StepUnit::kSweeps : StepUnit::kSiteSteps;
}

MixingCurve mixing_curve(const MarkovKernel& kernel, long t_max) {
    if (t_max < 0) throw std::invalid_argument("mixing_curve: t_max must be >= 0");
    if (t_max > kMaxHorizon)
        throw std::invalid_argument("mixing_curve: horizon " + std::to_string(t_max) +
                                    " beyond configured limit " + std::to_string(kMaxHorizon));
    MixingCurve curve;
    curve.kernel_label = kernel.label();
    curve.unit = kernel_unit(kernel);
    curve.d_values.reserve(static_cast<std::size_t>(t_max) + 1);

    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(kernel.size(), kernel.size());
    curve.d_values.push_back(max_row_tv(power, kernel.pi()));
    for (long t = 1; t <= t_max; ++t) {
        power = power * kernel.matrix();
        const double d = max_row_tv(power, kernel.pi());
        if (d > curve.d_values.back() + kMonotoneTol)
            throw std::runtime_error("mixing_curve: distance to stationarity increased at t=" +
                                     std::to_string(t) + " (" + std::to_string(d) + " > " +
                                     std::to_string(curve.d_values.back()) + ")");
        curve.d_values.push_back(d);
    }
    return curve;
}

double worst_case_distance(const MarkovKernel& kernel, long t) {
    return mixing_curve(kernel, t).d_values.back();
}

MixingReport mixing_time(const MarkovKernel& kernel, double epsilon, long t_max) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("mixing_time: epsilon must lie in (0, 1)");
    if (t_max < 1) throw std::invalid_argument("mixing_time: t_max must be >= 1");
    if (t_max > kMaxHorizon)
        throw std::invalid_argument("mixing_time: horizon beyond configured limit");

    MixingReport report;
    report.epsilon = epsilon;
    report.unit = kernel_unit(kernel);
    report.pi_min = kernel.pi().minCoeff();

    Eigen::MatrixXd power = Eigen::MatrixXd::Identity(kernel.size(), kernel.size());
    double previous = max_row_tv(power, kernel.pi());
    if (previous <= epsilon) {
        report.t_mix = 0;
        return report;
    }
    for (long t = 1; t <= t_max; ++t) {
        power = power * kernel.matrix();
        const double d = max_row_tv(power, kernel.pi());
        if (d > previous + kMonotoneTol)
            throw std::runtime_error("mixing_time: distance to stationarity increased at t=" +
                                     std::to_string(t));
        previous = d;
        if (d <= epsilon) {
            report.t_mix = t;
            return report;
        }
    }
    report.exceeded = true;
    return report;
}

MixingReport spectral_mixing_bounds(const MarkovKernel& kernel, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw std::invalid_argument("spectral_mixing_bounds: epsilon must lie in (0, 1)");
    MixingReport report;
    report.epsilon = epsilon;
    report.unit = kernel_unit(kernel);
    report.pi_min = kernel.pi().minCoeff();
    report.gamma = 1.0 - pi_operator_norm(kernel);
    if (report.gamma <= 0.0)
        throw std::invalid_argument("spectral_mixing_bounds: kernel has no spectral gap");
    report.spectral_upper = std::log(1.0 / (epsilon * report.pi_min)) / report.gamma;
    if (check_projection_properties(kernel).detailed_balance_residual <= 1e-10)
        report.reversible_lower = (1.0 / report.gamma - 1.0) * std::log(1.0 / (2.0 * epsilon));
    return report;
}

MixingReport mixing_report(const MarkovKernel& kernel, double epsilon, long t_max) {
    MixingReport bounds = spectral_mixing_bounds(kernel, epsilon);
    if (t_max < 0) t_max = static_cast<long>(std::ceil(bounds.spectral_upper)) + 8;
    const MixingReport exact = mixing_time(kernel, epsilon, t_max);
    bounds.t_mix = exact.t_mix;
    bounds.exceeded = exact.exceeded;
    return bounds;
}

LaplacianMixingComparison chatterjee_comparison(const MarkovKernel& kernel, long t_max) {
    LaplacianMixingComparison cmp;
    cmp.unit = kernel_unit(kernel);
    cmp.gamma_tilde = laplacian_sigma2(kernel);
    if (t_max < 0) {
        const MixingReport bounds = spectral_mixing_bounds(kernel, 0.1);
        t_max = static_cast<long>(std::ceil(bounds.spectral_upper)) + 8;
    }
    const MixingReport exact = mixing_time(kernel, 0.1, t_max);
    if (exact.exceeded)
        throw std::runtime_error("chatterjee_comparison: mixing time exceeded horizon");
    cmp.t_mix_tenth = exact.t_mix;
    cmp.implied_constant = static_cast<double>(cmp.t_mix_tenth) * cmp.gamma_tilde;
    return cmp;
}

void write_curve_csv(const MixingCurve& curve, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write curve CSV: " + path);
    out << "t,unit,d_t\n";
    for (std::size_t t = 0; t < curve.d_values.size(); ++t) {
        out << t << ',' << to_string(curve.unit) << ',';
        out.precision(17);
        out << curve.d_values[t] << '\n';
    }
}

}  // namespace scanspectra
