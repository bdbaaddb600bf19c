#include "nlwrad/solver/field_state.hpp"

#include <cmath>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/quadrature.hpp"
#include "nlwrad/solver/source.hpp"

namespace nlwrad {

FieldState zero_state(const ModelParams& params, const RadialGrid& grid, double t) {
    FieldState s;
    s.t = t;
    s.params = params;
    s.grid = grid;
    s.w = Eigen::ArrayXd::Zero(grid.size());
    s.v_plus = Eigen::ArrayXd::Zero(grid.size());
    s.v_minus = Eigen::ArrayXd::Zero(grid.size());
    return s;
}

FieldState init_from_profile(const RadialProfile& u0, const RadialProfile& u1,
                             const RadialGrid& grid, const ModelParams& params) {
    if (!u0.value || !u1.value) throw InvalidParameter("initial profiles must be callable");
    if (grid.n() < 3) throw InvalidParameter("grid needs at least four nodes");

    const Eigen::Index n = grid.n();
    const double h = grid.dr();
    const double q = params.q();

    Eigen::ArrayXd a(grid.size()), b(grid.size()), da(grid.size());
    for (Eigen::Index j = 0; j <= n; ++j) {
        a[j] = u0.value(grid.r(j));
        b[j] = u1.value(grid.r(j));
        if (!std::isfinite(a[j]) || !std::isfinite(b[j]))
            throw InvalidParameter("non-finite initial sample at r = " + std::to_string(grid.r(j)));
    }
    if (u0.derivative) {
        for (Eigen::Index j = 0; j <= n; ++j) {
            da[j] = u0.derivative(grid.r(j));
            if (!std::isfinite(da[j])) throw InvalidParameter("non-finite initial derivative");
        }
        da[0] = 0.0;
    } else {
        da[0] = 0.0;
        for (Eigen::Index j = 1; j < n; ++j) da[j] = (a[j + 1] - a[j - 1]) / (2.0 * h);
        da[n] = (3.0 * a[n] - 4.0 * a[n - 1] + a[n - 2]) / (2.0 * h);
    }

    FieldState s = zero_state(params, grid, 0.0);
    for (Eigen::Index j = 0; j <= n; ++j) {
        const double r = grid.r(j);
        const double rq = std::pow(r, q);
        const double rq1 = (j == 0) ? (q == 1.0 ? 1.0 : 0.0) : std::pow(r, q - 1.0);
        const double w_r = q * rq1 * a[j] + rq * da[j];
        const double w_t = rq * b[j];
        s.w[j] = rq * a[j];
        s.v_plus[j] = w_t - w_r;
        s.v_minus[j] = w_t + w_r;
    }
    return s;
}

namespace {

double extrapolate_origin(const Eigen::ArrayXd& f) { return 3.0 * f[1] - 3.0 * f[2] + f[3]; }

}  // namespace

RadialFields reconstruct_u(const FieldState& s) {
    const Eigen::Index n = s.grid.n();
    if (n < 3) throw InvalidParameter("grid needs at least four nodes");
    const double q = s.params.q();

    RadialFields out;
    out.u.resize(n + 1);
    out.u_r.resize(n + 1);
    out.u_t.resize(n + 1);
    for (Eigen::Index j = 1; j <= n; ++j) {
        const double r = s.grid.r(j);
        const double inv_rq = std::pow(r, -q);
        const double w_r = 0.5 * (s.v_minus[j] - s.v_plus[j]);
        const double w_t = 0.5 * (s.v_minus[j] + s.v_plus[j]);
        out.u[j] = s.w[j] * inv_rq;
        out.u_r[j] = (w_r - q * s.w[j] / r) * inv_rq;
        out.u_t[j] = w_t * inv_rq;
    }
    out.u[0] = extrapolate_origin(out.u);
    out.u_t[0] = extrapolate_origin(out.u_t);
    out.u_r[0] = 0.0;
    return out;
}

Eigen::ArrayXd source_term(const FieldState& s, SourceMode mode) {
    const Eigen::Index n = s.grid.n();
    const double c = s.params.potential_coefficient();
    const double q = s.params.q();
    const double p = s.params.p;
    Eigen::ArrayXd f = Eigen::ArrayXd::Zero(n + 1);
    for (Eigen::Index j = 1; j <= n; ++j) {
        const double r = s.grid.r(j);
        const double u = s.w[j] * std::pow(r, -q);
        double v = -c * s.w[j] / (r * r);
        if (mode == SourceMode::nonlinear) v -= std::pow(r, q) * defocusing_power(u, p);
        f[j] = v;
    }
    return f;
}

double consistency_residual(const FieldState& s) {
    const Eigen::Index n = s.grid.n();
    const double h = s.grid.dr();
    double worst = 0.0;
    for (Eigen::Index j = 1; j < n; ++j) {
        const double fd = (s.w[j + 1] - s.w[j - 1]) / (2.0 * h);
        worst = std::max(worst, std::abs(0.5 * (s.v_minus[j] - s.v_plus[j]) - fd));
    }
    return worst;
}

namespace {

// r^{d-1}(|Δu_r|² + |Δu_t|²) written in the w variables.
Eigen::ArrayXd energy_norm_density(const Eigen::ArrayXd& w, const Eigen::ArrayXd& vp,
                                   const Eigen::ArrayXd& vm, const RadialGrid& grid, double q) {
    Eigen::ArrayXd g = Eigen::ArrayXd::Zero(grid.size());
    for (Eigen::Index j = 1; j <= grid.n(); ++j) {
        const double r = grid.r(j);
        const double sr = 0.5 * (vm[j] - vp[j]) - q * w[j] / r;
        const double st = 0.5 * (vm[j] + vp[j]);
        g[j] = sr * sr + st * st;
    }
    return g;
}

}  // namespace

double hdot1_l2_distance(const FieldState& a, const FieldState& b) {
    if (a.grid.size() != b.grid.size() || a.grid.dr() != b.grid.dr())
        throw InvalidParameter("states live on different grids");
    const Eigen::ArrayXd dw = a.w - b.w;
    const Eigen::ArrayXd dvp = a.v_plus - b.v_plus;
    const Eigen::ArrayXd dvm = a.v_minus - b.v_minus;
    const auto g = energy_norm_density(dw, dvp, dvm, a.grid, a.params.q());
    return std::sqrt(weighted_radial_integral(g, a.grid, a.params.d));
}

double hdot1_l2_norm(const FieldState& s) {
    const auto g = energy_norm_density(s.w, s.v_plus, s.v_minus, s.grid, s.params.q());
    return std::sqrt(weighted_radial_integral(g, s.grid, s.params.d));
}

}  // namespace nlwrad
