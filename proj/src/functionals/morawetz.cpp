#include "nlwrad/functionals/morawetz.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/quadrature.hpp"

namespace nlwrad {

namespace {

Eigen::Index sphere_node(const RadialGrid& grid, double R) {
    if (!(R > 0.0)) throw InvalidParameter("Morawetz radius must be positive");
    const Eigen::Index J = grid.nearest(R);
    if (J < 1 || J >= grid.n()) throw RangeError("Morawetz radius outside the grid interior");
    return J;
}

Eigen::ArrayXd power_density(const RadialFields& f, const ModelParams& params, SourceMode mode) {
    if (mode == SourceMode::linear) return Eigen::ArrayXd::Zero(f.u.size());
    return f.u.abs().pow(params.p + 1.0);
}

// 1/r on nodes, 0 at the origin (only ever used with r > 0 integrands).
Eigen::ArrayXd inverse_radius(const RadialGrid& grid) {
    Eigen::ArrayXd inv = grid.nodes().inverse();
    inv[0] = 0.0;
    return inv;
}

// Trapezoid in time over samples [i1, i2] of a per-sample value.
template <typename F>
double time_integral(const std::vector<MorawetzSample>& s, std::size_t i1, std::size_t i2, F value) {
    double acc = 0.0;
    for (std::size_t i = i1; i < i2; ++i) acc += 0.5 * (s[i + 1].t - s[i].t) * (value(s[i]) + value(s[i + 1]));
    return acc;
}

std::size_t sample_index(const std::vector<MorawetzSample>& s, double t) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (std::abs(s[i].t - t) <= 1e-9 * std::max(1.0, std::abs(t))) return i;
    throw RangeError("no Morawetz sample at t = " + std::to_string(t));
}

}  // namespace

double snapped_radius(const RadialGrid& grid, double R) { return grid.r(sphere_node(grid, R)); }

MorawetzSample morawetz_sample(const RadialFields& f, const ModelParams& params, const RadialGrid& grid,
                               double R_in, double t, SourceMode mode) {
    const Eigen::Index J = sphere_node(grid, R_in);
    const Eigen::Index n = grid.n();
    const double R = grid.r(J);
    const int d = params.d;
    const double p = params.p;
    const RadialQuadrature<double> quad(grid, d);

    const Eigen::ArrayXd r = grid.nodes();
    const Eigen::ArrayXd inv_r = inverse_radius(grid);
    const Eigen::ArrayXd up = power_density(f, params, mode);
    const Eigen::ArrayXd u2 = f.u.square();

    MorawetzSample s;
    s.t = t;
    s.interior_quadratic = quad.integrate(f.u_r.square() + f.u_t.square(), 0, J);
    s.interior_potential = quad.integrate(up, 0, J);
    s.sphere = quad.sphere() * std::pow(R, d - 1) * u2[J];

    const double a_pow = (d - 1) * (p - 1.0) / (2.0 * (p + 1.0));
    const double a_mass = 0.25 * (d - 3) * (d - 1);
    s.exterior = quad.integrate(a_pow * up * inv_r + a_mass * u2 * inv_r.cube(), J, n);

    const double half_dm1 = 0.5 * (d - 1);
    const Eigen::ArrayXd in_common = (R * R - r.square()) / (2.0 * R * R) * f.u_r.square() +
                                     (double(d) * d - 1.0) / (8.0 * R * R) * u2 + up / (p + 1.0);
    const Eigen::ArrayXd in_base = r / R * f.u_r + half_dm1 / R * f.u;
    s.boundary_interior_minus = quad.integrate(in_common + 0.5 * (in_base - f.u_t).square(), 0, J);
    s.boundary_interior_plus = quad.integrate(in_common + 0.5 * (in_base + f.u_t).square(), 0, J);

    const Eigen::ArrayXd ex_common = up / (p + 1.0) + 0.125 * (d - 1) * (d - 3) * u2 * inv_r.square();
    const Eigen::ArrayXd ex_base = f.u_r + half_dm1 * f.u * inv_r;
    s.boundary_exterior_minus = quad.integrate(ex_common + 0.5 * (ex_base - f.u_t).square(), J, n);
    s.boundary_exterior_plus = quad.integrate(ex_common + 0.5 * (ex_base + f.u_t).square(), J, n);
    return s;
}

double morawetz_multiplier(const FieldState& state, double R_in) {
    const auto f = reconstruct_u(state);
    const Eigen::Index J = sphere_node(state.grid, R_in);
    const double R = state.grid.r(J);
    const double half_dm1 = 0.5 * (state.params.d - 1);
    const Eigen::ArrayXd r = state.grid.nodes();
    Eigen::ArrayXd m(r.size());
    for (Eigen::Index j = 0; j < r.size(); ++j) m[j] = j <= J ? half_dm1 : R * half_dm1 / r[j];
    const Eigen::ArrayXd integrand = f.u_t * (r.min(R) * f.u_r + f.u * m);
    return RadialQuadrature<double>(state.grid, state.params.d).integrate(integrand);
}

double morawetz_rate(const FieldState& state, double R_in) {
    const auto f = reconstruct_u(state);
    const auto s = morawetz_sample(f, state.params, state.grid, R_in, state.t);
    const double R = snapped_radius(state.grid, R_in);
    const int d = state.params.d;
    const double p = state.params.p;
    return 0.5 * s.interior_quadratic + ((d - 1) * (p - 1.0) - 2.0) / (2.0 * (p + 1.0)) * s.interior_potential +
           (d - 1) / (4.0 * R) * s.sphere + R * s.exterior;
}

MorawetzRecorder::MorawetzRecorder(std::vector<double> radii, SourceMode mode)
    : radii_(std::move(radii)), mode_(mode), samples_(radii_.size()) {}

void MorawetzRecorder::record(const FieldState& state) {
    const auto f = reconstruct_u(state);
    for (std::size_t k = 0; k < radii_.size(); ++k)
        samples_[k].push_back(morawetz_sample(f, state.params, state.grid, radii_[k], state.t, mode_));
}

CheckpointObserver MorawetzRecorder::observer() {
    return [this](const FieldState& s) { record(s); };
}

MorawetzSeries stitch_morawetz(double R, const std::vector<MorawetzSample>& forward,
                               const std::vector<MorawetzSample>& backward, SourceMode mode) {
    MorawetzSeries out;
    out.R = R;
    out.mode = mode;
    for (auto it = backward.rbegin(); it != backward.rend(); ++it) {
        if (it->t == 0.0 && !forward.empty() && forward.front().t == 0.0) continue;
        MorawetzSample s = *it;
        s.t = -it->t;
        std::swap(s.boundary_interior_minus, s.boundary_interior_plus);
        std::swap(s.boundary_exterior_minus, s.boundary_exterior_plus);
        out.samples.push_back(s);
    }
    out.samples.insert(out.samples.end(), forward.begin(), forward.end());
    for (std::size_t i = 1; i < out.samples.size(); ++i)
        if (!(out.samples[i].t > out.samples[i - 1].t))
            throw InvalidParameter("Morawetz samples are not strictly increasing in time");
    return out;
}

MorawetzLedger morawetz_identity(const MorawetzSeries& series, const ModelParams& params, double energy,
                                 double t1, double t2) {
    if (!(t1 < t2)) throw InvalidParameter("Morawetz window needs t1 < t2");
    const auto& s = series.samples;
    const std::size_t i1 = sample_index(s, t1);
    const std::size_t i2 = sample_index(s, t2);
    const double R = series.R;
    const int d = params.d;
    const double p = params.p;
    const double k = ((d - 1) * (p - 1.0) - 2.0) / (p + 1.0);

    MorawetzLedger L;
    L.R = R;
    L.t1 = t1;
    L.t2 = t2;
    L.interior_bulk = time_integral(s, i1, i2, [&](const MorawetzSample& m) {
                          return m.interior_quadratic + k * m.interior_potential;
                      }) / (2.0 * R);
    L.sphere_trace =
        (d - 1) / (4.0 * R * R) * time_integral(s, i1, i2, [](const MorawetzSample& m) { return m.sphere; });
    L.exterior_bulk = time_integral(s, i1, i2, [](const MorawetzSample& m) { return m.exterior; });
    L.boundary_interior = {s[i1].boundary_interior_minus, s[i2].boundary_interior_plus};
    L.boundary_exterior = {s[i1].boundary_exterior_minus, s[i2].boundary_exterior_plus};
    L.sum = L.interior_bulk + L.sphere_trace + L.exterior_bulk + L.boundary_interior[0] +
            L.boundary_interior[1] + L.boundary_exterior[0] + L.boundary_exterior[1];
    L.two_energy = 2.0 * energy;
    L.residual = std::abs(L.sum - L.two_energy);
    return L;
}

double corollary_rhs(const RadialFields& f, const ModelParams& params, const RadialGrid& grid, double R,
                     SourceMode mode) {
    if (!(R > 0.0)) throw InvalidParameter("Morawetz radius must be positive");
    const Eigen::ArrayXd weight = (grid.nodes() / R).min(1.0);
    const Eigen::ArrayXd e2 =
        f.u_r.square() + f.u_t.square() + 2.0 / (params.p + 1.0) * power_density(f, params, mode);
    return RadialQuadrature<double>(grid, params.d).integrate(weight * e2);
}

CorollaryLedger corollary_inequality(const MorawetzSeries& series, const ModelParams& params,
                                     const RadialFields& initial, const RadialGrid& grid, double energy,
                                     double R_in, double r) {
    if (!(r >= 0.0)) throw InvalidParameter("corollary offset r must be nonnegative");
    const double R = series.R;
    if (std::abs(snapped_radius(grid, R_in) - R) > 0.5 * grid.dr())
        throw InvalidParameter("series radius does not match the requested R");
    const auto& s = series.samples;
    const double T = R + r;
    if (s.empty() || s.front().t > -T + 1e-9 || s.back().t < T - 1e-9)
        throw RangeError("trajectory does not span [-(R+r), R+r]");
    const std::size_t iTm = sample_index(s, -T), iRm = sample_index(s, -R);
    const std::size_t iRp = sample_index(s, R), iTp = sample_index(s, T);

    const int d = params.d;
    const double p = params.p;
    const double k = ((d - 1) * (p - 1.0) - 2.0) / (p + 1.0);
    auto bulk = [&](const MorawetzSample& m) { return m.interior_quadratic + k * m.interior_potential; };

    CorollaryLedger L;
    L.R = R;
    L.r = r;
    L.M[0] = (time_integral(s, iTm, iRm, bulk) + time_integral(s, iRp, iTp, bulk)) / (2.0 * R);
    L.M[1] = ((d - 1) * (p - 1.0) - 4.0) / (2.0 * (p + 1.0) * R) *
             time_integral(s, iRm, iRp, [](const MorawetzSample& m) { return m.interior_potential; });
    L.M[2] = (d - 1) / (4.0 * R * R) *
             time_integral(s, iTm, iTp, [](const MorawetzSample& m) { return m.sphere; });
    L.M[3] = time_integral(s, iTm, iTp, [](const MorawetzSample& m) { return m.exterior; });
    L.M[4] = s[iTp].boundary_interior_plus + s[iTm].boundary_interior_minus;
    L.M[5] = s[iTp].boundary_exterior_plus + s[iTm].boundary_exterior_minus;
    L.rhs = corollary_rhs(initial, params, grid, R, series.mode);
    L.slack = L.rhs - L.sum();
    L.inner_core = time_integral(s, iRm, iRp, [&](const MorawetzSample& m) {
                       return m.interior_quadratic + 2.0 / (p + 1.0) * m.interior_potential;
                   }) / (2.0 * R);
    L.balance_residual = L.inner_core + L.sum() - 2.0 * energy;
    return L;
}

}  // namespace nlwrad
