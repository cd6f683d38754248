#pragma once
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rbb {

// Acklam's rational approximation of the standard normal quantile
// (relative error below 1.15e-9, plenty for confidence levels).
double normal_quantile(double p);

// Wilson score interval for a binomial proportion.
std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double confidence);

enum class ScalingModel { LogN, NLog2N, LinearN };

std::string to_string(ScalingModel model);
double scaling_model_value(ScalingModel model, double n);

struct ScalingFit {
    double coefficient = 0.0;
    double residual_norm = 0.0;               // ||y - a f(n)|| / ||y||
    std::vector<double> relative_residuals;   // |y_i - a f(n_i)| / y_i
    double max_relative_residual = 0.0;
};

// Least squares through the origin: value ~ a * model(n).
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points,
                       ScalingModel model);

struct SampleStats {
    std::int64_t count = 0;
    double mean = 0.0;
    double variance = 0.0; // unbiased
    double min = 0.0;
    double max = 0.0;

    double stderr_mean() const {
        return count > 1 ? std::sqrt(variance / static_cast<double>(count)) : 0.0;
    }
};

SampleStats summarize_samples(const std::vector<double>& samples);

double lag1_autocorrelation(const std::vector<double>& samples);

} // namespace rbb
