#include "nlwrad/scattering/radiation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "nlwrad/core/error.hpp"
#include "nlwrad/functionals/decay.hpp"

namespace nlwrad {

namespace {

Eigen::Index node_of(const RadialGrid& grid, double r) {
    const Eigen::Index j = std::llround(r / grid.dr());
    if (j < 0 || j > grid.n()) throw RangeError("radius " + std::to_string(r) + " outside the grid");
    return j;
}

}  // namespace

double RadiationProfile::at(double e) const {
    if (eta.empty() || e < eta.front() || e > eta.back()) return 0.0;
    auto it = std::upper_bound(eta.begin(), eta.end(), e);
    if (it == eta.end()) return g_plus.back();
    const std::size_t k = std::size_t(it - eta.begin());
    if (k == 0) return g_plus.front();
    const double s = (e - eta[k - 1]) / (eta[k] - eta[k - 1]);
    return (1.0 - s) * g_plus[k - 1] + s * g_plus[k];
}

std::vector<double> node_eta_grid(const FieldState& at_t_max, double r_min) {
    const auto& g = at_t_max.grid;
    const double t = at_t_max.t;
    std::vector<double> eta;
    for (Eigen::Index j = g.n(); j >= 0; --j) {
        const double r = g.r(j);
        if (r < r_min) break;
        const double e = t - r;
        if (0.5 * t - e >= 0.0) eta.push_back(e);
    }
    return eta;
}

RadiationProfile extract_radiation(const FieldState& fin, const FieldState& half,
                                   const std::vector<double>& eta) {
    if (std::abs(2.0 * half.t - fin.t) > fin.grid.dr())
        throw InvalidParameter("second state must sit at t_max/2");
    RadiationProfile prof;
    prof.t_max = fin.t;
    prof.t_half = half.t;
    prof.d = fin.params.d;
    for (double e : eta) {
        const double r = fin.t - e;
        if (r < 10.0 - 1e-9 || r > fin.grid.r_max() + 1e-9)
            throw RangeError("retarded time " + std::to_string(e) + " outside the reachable cone");
        const double r_half = half.t - e;
        if (r_half < -1e-9) throw RangeError("retarded time not yet emitted at t_max/2");
        const double v = fin.v_plus[node_of(fin.grid, r)];
        const double vh = half.v_plus[node_of(half.grid, std::max(0.0, r_half))];
        prof.eta.push_back(e);
        prof.g_plus.push_back(0.5 * v);
        prof.tail.push_back(std::abs(v - vh));
    }
    for (std::size_t k = 1; k < prof.eta.size(); ++k)
        if (!(prof.eta[k] > prof.eta[k - 1])) throw InvalidParameter("η grid must be increasing");
    return prof;
}

double radiated_energy(const RadiationProfile& p) {
    double acc = 0.0;
    for (std::size_t k = 1; k < p.eta.size(); ++k)
        acc += 0.5 * (p.eta[k] - p.eta[k - 1]) * (p.g_plus[k] * p.g_plus[k] + p.g_plus[k - 1] * p.g_plus[k - 1]);
    return sphere_area(p.d) * acc;
}

double characteristic_l2_window(const FieldState& s, const RadiationProfile& prof, double c, double beta,
                                double R) {
    if (!(c >= 0.0) || !(R >= 0.0)) throw InvalidParameter("window parameters must be nonnegative");
    const double lo = s.t - c * std::pow(s.t, beta);
    const double hi = s.t + R;
    if (lo < 0.0 || hi > s.grid.r_max()) throw RangeError("characteristic window outside the grid");
    const Eigen::Index j0 = s.grid.nearest(lo), j1 = s.grid.nearest(hi);
    double acc = 0.0;
    for (Eigen::Index j = j0; j <= j1; ++j) {
        const double diff = s.v_plus[j] - 2.0 * prof.at(s.t - s.grid.r(j));
        const double wgt = (j == j0 || j == j1) ? 0.5 : 1.0;
        acc += wgt * diff * diff;
    }
    return j1 > j0 ? acc * s.grid.dr() : 0.0;
}

CharacteristicRecorder::CharacteristicRecorder(std::vector<double> eta)
    : eta_(std::move(eta)), times_(eta_.size()), values_(eta_.size()) {}

void CharacteristicRecorder::record(const FieldState& s) {
    for (std::size_t k = 0; k < eta_.size(); ++k) {
        const double r = s.t - eta_[k];
        if (r < -1e-9 || r > s.grid.r_max() + 1e-9) continue;
        times_[k].push_back(s.t);
        values_[k].push_back(s.v_plus[node_of(s.grid, std::max(0.0, r))]);
    }
}

CheckpointObserver CharacteristicRecorder::observer() {
    return [this](const FieldState& s) { record(s); };
}

double CharacteristicRecorder::value_at(std::size_t k, double t) const {
    const auto& ts = times_.at(k);
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (std::abs(ts[i] - t) <= 1e-9 * std::max(1.0, t)) return values_[k][i];
    throw RangeError("characteristic not recorded at t = " + std::to_string(t));
}

VariationSample variation_bound_check(const CharacteristicRecorder& rec, std::size_t k, double t1, double t2) {
    const double eta = rec.eta().at(k);
    if (!(t2 > t1) || !(t1 > eta + 1.0)) throw RangeError("variation window needs t2 > t1 > η + 1");
    VariationSample s;
    s.eta = eta;
    s.t1 = t1;
    s.t2 = t2;
    s.delta = std::abs(rec.value_at(k, t2) - rec.value_at(k, t1));
    return s;
}

namespace {

// Smallest A + B over A, B ≥ 0 with A x_k + B y_k ≥ z_k; the optimum of a
// two-variable LP lies on a vertex, so enumerate them.
std::pair<double, double> minimal_envelope(const std::vector<double>& x, const std::vector<double>& y,
                                           const std::vector<double>& z) {
    auto feasible = [&](double a, double b) {
        if (a < 0.0 || b < 0.0) return false;
        for (std::size_t k = 0; k < z.size(); ++k)
            if (a * x[k] + b * y[k] < z[k] * (1.0 - 1e-12)) return false;
        return true;
    };
    std::vector<std::pair<double, double>> cand;
    double a_only = 0.0, b_only = 0.0;
    for (std::size_t k = 0; k < z.size(); ++k) {
        a_only = std::max(a_only, z[k] / x[k]);
        b_only = std::max(b_only, z[k] / y[k]);
    }
    cand.push_back({a_only, 0.0});
    cand.push_back({0.0, b_only});
    for (std::size_t i = 0; i < z.size(); ++i)
        for (std::size_t j = i + 1; j < z.size(); ++j) {
            const double det = x[i] * y[j] - x[j] * y[i];
            if (std::abs(det) < 1e-300) continue;
            cand.push_back({(z[i] * y[j] - z[j] * y[i]) / det, (x[i] * z[j] - x[j] * z[i]) / det});
        }
    std::pair<double, double> best{a_only, 0.0};
    double best_sum = a_only;
    for (auto [a, b] : cand)
        if (feasible(a, b) && a + b < best_sum) {
            best = {a, b};
            best_sum = a + b;
        }
    return best;
}

}  // namespace

VariationSweep variation_sweep(const CharacteristicRecorder& rec, const std::vector<double>& taus, double t2,
                               double beta, double fit_min, double fit_max) {
    VariationSweep out;
    for (double tau : taus) {
        double sup = 0.0;
        bool any = false;
        for (std::size_t k = 0; k < rec.eta().size(); ++k) {
            const double t1 = rec.eta()[k] + tau;
            if (!(t2 > t1) || !(tau > 1.0)) continue;
            sup = std::max(sup, variation_bound_check(rec, k, t1, t2).delta);
            any = true;
        }
        if (!any) throw RangeError("no characteristic admits τ = " + std::to_string(tau));
        out.tau.push_back(tau);
        out.sup_delta.push_back(sup);
    }
    fit_variation(out, beta, fit_min, fit_max);
    return out;
}

void fit_variation(VariationSweep& out, double beta, double fit_min, double fit_max) {
    out.required_slope = -std::min(0.5, 0.5 * beta);
    out.slope = fit_loglog(out.tau, out.sup_delta, fit_min, fit_max).slope;
    std::vector<double> x, y, z;
    for (std::size_t k = 0; k < out.tau.size(); ++k) {
        x.push_back(std::pow(out.tau[k], -0.5));
        y.push_back(std::pow(out.tau[k], -0.5 * beta));
        z.push_back(out.sup_delta[k]);
    }
    std::tie(out.envelope_a, out.envelope_b) = minimal_envelope(x, y, z);
}

}  // namespace nlwrad
