#pragma once
#include <cmath>
#include <stdexcept>

namespace rbb {

// Closed forms of the analytic tail bounds, evaluated in double precision.
// All logarithms are natural.  The bounds are conservative upper bounds, so
// rounding direction is immaterial at the magnitudes reported here.

inline double chernoff_lower(double mu_low, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must be in (0,1)");
    if (!(mu_low > 0.0)) throw std::domain_error("mu must be positive");
    return std::exp(-delta * delta / 2.0 * mu_low);
}

inline double chernoff_upper(double mu_high, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("delta must be in (0,1)");
    if (!(mu_high > 0.0)) throw std::domain_error("mu must be positive");
    return std::exp(-delta * delta / 3.0 * mu_high);
}

// P[some round in a window of this length after an emptying exceeds the
// threshold] <= window_len^2 / n^beta.
inline double between_empty_bound(double beta, long long window_len, double n) {
    if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
    if (window_len < 1) throw std::domain_error("window length must be >= 1");
    if (!(n >= 2.0)) throw std::domain_error("n must be >= 2");
    return static_cast<double>(window_len) * static_cast<double>(window_len) /
           std::pow(n, beta);
}

inline double between_empty_threshold(double beta, double n) {
    if (!(beta > 0.0)) throw std::domain_error("beta must be positive");
    if (!(n >= 2.0)) throw std::domain_error("n must be >= 2");
    return 192.0 / 5.0 * beta * std::log(n);
}

// Expected arrivals into a fixed tetris bin over a window of Delta+1 rounds.
inline double tetris_window_mean(long long delta) {
    if (delta < 0) throw std::domain_error("delta must be >= 0");
    return 0.75 * (static_cast<double>(delta) + 1.0);
}

} // namespace rbb
