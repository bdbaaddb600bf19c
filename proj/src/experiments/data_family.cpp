#include "nlwrad/experiments/data_family.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

namespace {

// e^{-x²} < 1e-18 beyond this x.
const double gaussian_cut = std::sqrt(18.0 * std::log(10.0));

RadialProfile zero_profile() {
    return {[](double) { return 0.0; }, [](double) { return 0.0; }};
}

RadialProfile interpolated(std::shared_ptr<const std::vector<std::pair<double, double>>> pts) {
    auto value = [pts](double r) {
        const auto& v = *pts;
        if (r < v.front().first || r > v.back().first) return 0.0;
        auto it = std::lower_bound(v.begin(), v.end(), r,
                                   [](const std::pair<double, double>& a, double x) { return a.first < x; });
        if (it == v.begin()) return it->second;
        const auto& [r1, f1] = *it;
        const auto& [r0, f0] = *(it - 1);
        return f0 + (f1 - f0) * (r - r0) / (r1 - r0);
    };
    return {value, {}};
}

// Interpolation keeps the profile nonzero up to the sample after the last nonzero one.
double last_nonzero(const std::vector<std::pair<double, double>>& v) {
    for (std::size_t k = v.size(); k-- > 0;)
        if (v[k].second != 0.0) return k + 1 < v.size() ? v[k + 1].first : v[k].first;
    return 0.0;
}

}  // namespace

std::string to_string(DataKind kind) {
    switch (kind) {
        case DataKind::gaussian: return "gaussian";
        case DataKind::polynomial_tail: return "polynomial_tail";
        case DataKind::outgoing_pulse: return "outgoing_pulse";
        case DataKind::compact_bump: return "compact_bump";
        case DataKind::file: return "file";
    }
    return "gaussian";
}

DataKind parse_data_kind(const std::string& name) {
    for (DataKind k : {DataKind::gaussian, DataKind::polynomial_tail, DataKind::outgoing_pulse,
                       DataKind::compact_bump, DataKind::file})
        if (to_string(k) == name) return k;
    throw InvalidParameter("unknown data family '" + name + "'");
}

std::vector<std::pair<double, double>> read_samples(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParameter("cannot open sample file " + path);
    std::vector<std::pair<double, double>> pts;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        double r, v;
        if (!(ls >> r)) continue;
        std::string rest;
        if (!(ls >> v) || (ls >> rest) || !std::isfinite(r) || !std::isfinite(v))
            throw InvalidParameter(path + ":" + std::to_string(lineno) + ": expected two numbers");
        if (!pts.empty() && !(r > pts.back().first))
            throw InvalidParameter(path + ":" + std::to_string(lineno) + ": radii must increase");
        pts.emplace_back(r, v);
    }
    if (pts.size() < 2) throw InvalidParameter(path + ": need at least two samples");
    if (pts.front().first < 0.0) throw InvalidParameter(path + ": negative radius");
    return pts;
}

InitialData make_initial_data(const DataSpec& s, const ModelParams& params) {
    const double a = s.amplitude;
    const double sigma = s.width;
    const double r0 = s.center;
    if (!std::isfinite(a)) throw InvalidParameter("amplitude must be finite");
    if (s.kind != DataKind::file && s.kind != DataKind::polynomial_tail && !(sigma > 0.0))
        throw InvalidParameter("width must be positive");

    InitialData out;
    out.u1 = zero_profile();
    switch (s.kind) {
        case DataKind::gaussian: {
            if (r0 < 0.0) throw InvalidParameter("center must be nonnegative");
            const double cut = r0 + gaussian_cut * sigma;
            out.support = cut;
            out.u0.value = [=](double r) {
                const double x = (r - r0) / sigma;
                return r < cut ? a * std::exp(-x * x) : 0.0;
            };
            out.u0.derivative = [=](double r) {
                const double x = (r - r0) / sigma;
                return r < cut ? -2.0 * a * x / sigma * std::exp(-x * x) : 0.0;
            };
            break;
        }
        case DataKind::polynomial_tail: {
            const double m = s.tail_exponent;
            if (!(m > 0.0)) throw InvalidParameter("tail exponent must be positive");
            out.support = std::numeric_limits<double>::infinity();
            out.u0.value = [=](double r) { return a * std::pow(1.0 + r * r, -0.5 * m); };
            out.u0.derivative = [=](double r) { return -a * m * r * std::pow(1.0 + r * r, -0.5 * m - 1.0); };
            break;
        }
        case DataKind::outgoing_pulse: {
            const double lo = r0 - gaussian_cut * sigma, hi = r0 + gaussian_cut * sigma;
            if (!(lo > 0.0)) throw InvalidParameter("outgoing pulse must sit away from the origin");
            const double q = params.q();
            out.support = hi;
            out.time_symmetric = false;
            auto F = [=](double r) {
                const double x = (r - r0) / sigma;
                return (r > lo && r < hi) ? a * std::exp(-x * x) : 0.0;
            };
            auto dF = [=](double r) {
                const double x = (r - r0) / sigma;
                return (r > lo && r < hi) ? -2.0 * a * x / sigma * std::exp(-x * x) : 0.0;
            };
            out.u0.value = [=](double r) { return r > lo ? F(r) * std::pow(r, -q) : 0.0; };
            out.u0.derivative = [=](double r) {
                return r > lo ? dF(r) * std::pow(r, -q) - q * F(r) * std::pow(r, -q - 1.0) : 0.0;
            };
            out.u1.value = [=](double r) { return r > lo ? -dF(r) * std::pow(r, -q) : 0.0; };
            out.u1.derivative = {};
            break;
        }
        case DataKind::compact_bump: {
            out.support = sigma;
            out.u0.value = [=](double r) {
                const double y = 1.0 - r * r / (sigma * sigma);
                return r < sigma ? a * y * y * y * y : 0.0;
            };
            out.u0.derivative = [=](double r) {
                const double y = 1.0 - r * r / (sigma * sigma);
                return r < sigma ? -8.0 * a * r / (sigma * sigma) * y * y * y : 0.0;
            };
            break;
        }
        case DataKind::file: {
            if (s.file.empty()) throw InvalidParameter("file family needs a sample file");
            auto pts = std::make_shared<std::vector<std::pair<double, double>>>(read_samples(s.file));
            for (auto& pt : *pts) pt.second *= a;
            out.support = last_nonzero(*pts);
            out.u0 = interpolated(pts);
            if (!s.velocity_file.empty()) {
                auto vel = std::make_shared<std::vector<std::pair<double, double>>>(read_samples(s.velocity_file));
                for (auto& pt : *vel) pt.second *= a;
                out.support = std::max(out.support, last_nonzero(*vel));
                out.time_symmetric = std::all_of(vel->begin(), vel->end(), [](auto& pt) { return pt.second == 0.0; });
                out.u1 = interpolated(vel);
            }
            break;
        }
    }
    if (a == 0.0) out.support = 0.0;
    return out;
}

double polynomial_tail_kappa_limit(double m, const ModelParams& params) {
    const int d = params.d;
    return std::min(2.0 * m + 2.0 - d, m * (params.p + 1.0) - d);
}

bool weighted_energy_finite(const DataSpec& spec, const ModelParams& params, double kappa) {
    if (spec.kind != DataKind::polynomial_tail || spec.amplitude == 0.0) return true;
    return kappa < polynomial_tail_kappa_limit(spec.tail_exponent, params);
}

}  // namespace nlwrad
