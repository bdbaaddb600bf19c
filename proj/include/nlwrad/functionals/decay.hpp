#pragma once

#include <cstddef>
#include <limits>
#include <span>

namespace nlwrad {

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    std::size_t samples = 0;
};

/// Least-squares line through (log t, log y) for samples with
/// t_min ≤ t ≤ t_max and y > 0. Throws InvalidParameter for fewer than two points.
LogLogFit fit_loglog(std::span<const double> t, std::span<const double> y, double t_min = 0.0,
                     double t_max = std::numeric_limits<double>::infinity());

struct DecayOptions {
    double fit_min = 1.0;
    double fit_max = std::numeric_limits<double>::infinity();
    double tail_start = 50.0;      ///< t^κ Q must decrease from here on
    double tail_end = std::numeric_limits<double>::infinity();
    double reference_time = 10.0;  ///< first sample at or after this time
    double drop_ratio = 0.2;       ///< final/reference threshold
};

struct DecayReport {
    double kappa = 0.0;
    LogLogFit fit;
    bool tail_decreasing = false;
    double reference_value = 0.0;  ///< t^κ Q at the reference sample
    double final_value = 0.0;      ///< t^κ Q at the last sample
    double final_ratio = 0.0;
    bool dropped = false;          ///< final_ratio < drop_ratio
};

/// Slope of log Q against log t and the two t^κ Q(t) → 0 indicators.
/// Needs at least ten samples spanning a decade (InvalidParameter otherwise).
DecayReport decay_report(std::span<const double> t, std::span<const double> q, double kappa,
                         const DecayOptions& options = {});

}  // namespace nlwrad
