#include "nlwrad/functionals/decay.hpp"

#include <cmath>
#include <vector>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

LogLogFit fit_loglog(std::span<const double> t, std::span<const double> y, double t_min, double t_max) {
    if (t.size() != y.size()) throw InvalidParameter("fit inputs differ in length");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (t[k] < t_min || t[k] > t_max || !(t[k] > 0.0) || !(y[k] > 0.0)) continue;
        const double x = std::log(t[k]), v = std::log(y[k]);
        sx += x;
        sy += v;
        sxx += x * x;
        sxy += x * v;
        ++m;
    }
    if (m < 2) throw InvalidParameter("log-log fit needs at least two positive samples");
    const double denom = m * sxx - sx * sx;
    if (!(denom > 0.0)) throw InvalidParameter("log-log fit needs distinct sample times");
    LogLogFit fit;
    fit.slope = (m * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / m;
    fit.samples = m;
    return fit;
}

DecayReport decay_report(std::span<const double> t, std::span<const double> q, double kappa,
                         const DecayOptions& options) {
    if (t.size() != q.size()) throw InvalidParameter("decay inputs differ in length");
    std::size_t positive = 0;
    double lo = INFINITY, hi = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (!(t[k] > 0.0)) continue;
        ++positive;
        lo = std::min(lo, t[k]);
        hi = std::max(hi, t[k]);
    }
    if (positive < 10 || hi < 10.0 * lo)
        throw InvalidParameter("decay report needs at least ten samples spanning a decade");

    DecayReport rep;
    rep.kappa = kappa;
    rep.fit = fit_loglog(t, q, options.fit_min, options.fit_max);

    std::vector<double> tail;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= options.tail_start && t[k] <= options.tail_end) tail.push_back(std::pow(t[k], kappa) * q[k]);
    rep.tail_decreasing = tail.size() >= 2;
    for (std::size_t k = 1; k < tail.size(); ++k)
        if (!(tail[k] < tail[k - 1])) rep.tail_decreasing = false;

    std::size_t ref = t.size();
    for (std::size_t k = 0; k < t.size(); ++k)
        if (t[k] >= options.reference_time) {
            ref = k;
            break;
        }
    if (ref == t.size()) throw InvalidParameter("no sample at or after the reference time");
    rep.reference_value = std::pow(t[ref], kappa) * q[ref];
    rep.final_value = std::pow(t.back(), kappa) * q.back();
    rep.final_ratio = rep.reference_value > 0.0 ? rep.final_value / rep.reference_value : 0.0;
    rep.dropped = rep.reference_value > 0.0 && rep.final_ratio < options.drop_ratio;
    return rep;
}

}  // namespace nlwrad
