#include "rbb/stats.hpp"

#include <algorithm>
#include <numeric>

namespace rbb {

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile needs p in (0,1)");

    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    constexpr double p_low = 0.02425;

    if (p < p_low) {
        double q = std::sqrt(-2.0 * std::log(p));
        return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    if (p > 1.0 - p_low) {
        double q = std::sqrt(-2.0 * std::log(1.0 - p));
        return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
               ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    double q = p - 0.5;
    double r = q * q;
    return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
           (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

std::pair<double, double> wilson_interval(std::int64_t successes, std::int64_t trials,
                                          double confidence) {
    if (trials < 1) throw std::domain_error("wilson interval needs trials >= 1");
    if (successes < 0 || successes > trials)
        throw std::domain_error("successes out of range");
    if (!(confidence > 0.0 && confidence < 1.0))
        throw std::domain_error("confidence must be in (0,1)");

    const double z = normal_quantile(0.5 + confidence / 2.0);
    const double nd = static_cast<double>(trials);
    const double phat = static_cast<double>(successes) / nd;
    const double z2 = z * z;
    const double denom = nd + z2;
    const double center = (static_cast<double>(successes) + z2 / 2.0) / denom;
    const double half = z / denom * std::sqrt(nd * phat * (1.0 - phat) + z2 / 4.0);
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

std::string to_string(ScalingModel model) {
    switch (model) {
    case ScalingModel::LogN: return "log_n";
    case ScalingModel::NLog2N: return "n_log2_n";
    case ScalingModel::LinearN: return "linear_n";
    }
    return "?";
}

double scaling_model_value(ScalingModel model, double n) {
    switch (model) {
    case ScalingModel::LogN: return std::log(n);
    case ScalingModel::NLog2N: return n * std::log(n) * std::log(n);
    case ScalingModel::LinearN: return n;
    }
    throw std::logic_error("unreachable");
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points,
                       ScalingModel model) {
    std::vector<double> distinct;
    for (const auto& [n, _] : points)
        if (std::find(distinct.begin(), distinct.end(), n) == distinct.end())
            distinct.push_back(n);
    if (distinct.size() < 3)
        throw std::invalid_argument("scaling fit needs at least 3 distinct n values");

    // Least squares in relative terms (weights 1/y^2): the quality target is
    // the relative residual, and unweighted fitting lets the largest n drown
    // out the small ones.
    double su = 0.0, suu = 0.0, sfy = 0.0, sff = 0.0;
    for (const auto& [n, y] : points) {
        double f = scaling_model_value(model, n);
        sfy += f * y;
        sff += f * f;
        if (y != 0.0) {
            double u = f / y;
            su += u;
            suu += u * u;
        }
    }
    if (sff == 0.0) throw std::invalid_argument("degenerate scaling fit");

    ScalingFit fit;
    fit.coefficient = suu > 0.0 ? su / suu : sfy / sff;
    double ss_res = 0.0, ss_tot = 0.0;
    for (const auto& [n, y] : points) {
        double pred = fit.coefficient * scaling_model_value(model, n);
        ss_res += (y - pred) * (y - pred);
        ss_tot += y * y;
        double rel = y != 0.0 ? std::abs(y - pred) / std::abs(y) : std::abs(pred);
        fit.relative_residuals.push_back(rel);
        fit.max_relative_residual = std::max(fit.max_relative_residual, rel);
    }
    fit.residual_norm = ss_tot > 0.0 ? std::sqrt(ss_res / ss_tot) : 0.0;
    return fit;
}

SampleStats summarize_samples(const std::vector<double>& samples) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    SampleStats s;
    s.count = static_cast<std::int64_t>(samples.size());
    s.mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
             static_cast<double>(s.count);
    s.min = *std::min_element(samples.begin(), samples.end());
    s.max = *std::max_element(samples.begin(), samples.end());
    if (s.count > 1) {
        double acc = 0.0;
        for (double v : samples) acc += (v - s.mean) * (v - s.mean);
        s.variance = acc / static_cast<double>(s.count - 1);
    }
    return s;
}

double lag1_autocorrelation(const std::vector<double>& samples) {
    if (samples.size() < 3) throw std::invalid_argument("need at least 3 samples");
    const auto stats = summarize_samples(samples);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double d = samples[i] - stats.mean;
        den += d * d;
        if (i + 1 < samples.size()) num += d * (samples[i + 1] - stats.mean);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace rbb
