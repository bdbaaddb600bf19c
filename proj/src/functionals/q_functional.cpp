#include "nlwrad/functionals/q_functional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/quadrature.hpp"
#include "nlwrad/functionals/energy.hpp"

namespace nlwrad {

QConstants q_constants(int d) {
    if (d <= 4) return {0.125, 0.125};
    return {0.0625, 0.0625};
}

QHalf q_half(const RadialFields& f, const ModelParams& params, const RadialGrid& grid, double t) {
    if (t < 0.0) throw InvalidParameter("Q is sampled at |t|; pass t >= 0");
    const QConstants c = q_constants(params.d);
    const RadialQuadrature<double> quad(grid, params.d);
    const Eigen::ArrayXd r = grid.nodes();
    const Eigen::Index n = grid.n();

    QHalf h;
    h.t = t;
    h.potential = quad.integrate(f.u.abs().pow(params.p + 1.0)) / (params.p + 1.0);
    if (t > 0.0) {
        const Eigen::ArrayXd weight = ((t - r) / t).max(0.0);
        h.interior = c.c1 * quad.integrate(weight * (f.u_r.square() + f.u_t.square()));
    }
    const Eigen::ArrayXd inward = (f.u_r + f.u_t).square();
    if (params.d == 3) {
        Eigen::ArrayXd inv_r = r.inverse();
        inv_r[0] = 0.0;
        const Eigen::ArrayXd outer = (f.u_r + f.u * inv_r + f.u_t).square();
        const Eigen::Index J = std::min<Eigen::Index>(n, std::llround(t / grid.dr()));
        double flux = quad.integrate(inward, 0, J);
        if (J < n) flux += quad.integrate(outer, J, n);
        h.flux = c.c2 * flux;
    } else {
        h.flux = c.c2 * quad.integrate(inward);
    }
    return h;
}

double q_functional(const FieldState& forward, const FieldState& backward) {
    if (std::abs(forward.t - backward.t) > 0.5 * forward.grid.dr())
        throw InvalidParameter("Q needs u(t) and u(-t) at the same |t|");
    if (forward.grid.size() != backward.grid.size())
        throw InvalidParameter("states live on different grids");
    return q_half(reconstruct_u(forward), forward.params, forward.grid, forward.t).total() +
           q_half(reconstruct_u(backward), backward.params, backward.grid, backward.t).total();
}

void QRecorder::record(const FieldState& s) {
    halves_.push_back(q_half(reconstruct_u(s), s.params, s.grid, s.t));
}

CheckpointObserver QRecorder::observer() {
    return [this](const FieldState& s) { record(s); };
}

QSeries combine_q(const std::vector<QHalf>& forward, const std::vector<QHalf>& backward,
                  QConstants constants) {
    if (forward.size() != backward.size())
        throw InvalidParameter("forward and backward Q samples differ in number");
    QSeries out;
    out.constants = constants;
    for (std::size_t k = 0; k < forward.size(); ++k) {
        const auto& a = forward[k];
        const auto& b = backward[k];
        if (std::abs(a.t - b.t) > 1e-9 * std::max(1.0, a.t))
            throw InvalidParameter("forward and backward Q samples at different |t|");
        out.t.push_back(a.t);
        out.potential.push_back(a.potential + b.potential);
        out.interior.push_back(a.interior + b.interior);
        out.flux.push_back(a.flux + b.flux);
        out.q.push_back(a.total() + b.total());
    }
    return out;
}

RecurrenceCheck recurrence_check(const QSeries& series, const ModelParams& params,
                                 const RadialFields& initial, const RadialGrid& grid, double t_min) {
    const auto& t = series.t;
    const auto& q = series.q;
    if (t.empty() || t.front() != 0.0) throw InvalidParameter("Q series must start at t = 0");

    const RadialQuadrature<double> quad(grid, params.d);
    const Eigen::ArrayXd e0 = energy_density(initial, params) * quad.weight();
    const Eigen::ArrayXd r = grid.nodes();

    RecurrenceCheck out;
    out.worst_excess = -std::numeric_limits<double>::infinity();
    double integral = 0.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k > 0) integral += 0.5 * (t[k] - t[k - 1]) * (q[k] + q[k - 1]);
        if (t[k] < t_min) continue;
        const Eigen::ArrayXd weight = (r / t[k]).min(1.0);
        const double data = 2.0 * quad.integrate_weighted((weight * e0).eval(), 0, quad.last());
        const double rhs = params.lambda / t[k] * integral + data;
        out.t.push_back(t[k]);
        out.lhs.push_back(q[k]);
        out.rhs.push_back(rhs);
        out.worst_excess = std::max(out.worst_excess, q[k] - rhs);
    }
    return out;
}

}  // namespace nlwrad
