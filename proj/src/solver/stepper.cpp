#include "nlwrad/solver/stepper.hpp"

#include <array>
#include <cmath>
#include <string>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

namespace {

// 8-point Gauss-Legendre rule on [-1, 1].
constexpr std::array<double, 8> gl_nodes = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> gl_weights = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

// ∫_a^{a+h} r^γ φ dr against the hat functions of the interval, left and right.
// Closed form close to the origin, Gauss-Legendre where r^γ is smooth
// relative to h (the closed form cancels badly once a >> h).
std::array<double, 2> hat_moments(double a, double h, double gamma) {
    const double b = a + h;
    if (a < 16.0 * h) {
        const double m0 = (std::pow(b, gamma + 1.0) - std::pow(a, gamma + 1.0)) / (gamma + 1.0);
        const double m1 = (std::pow(b, gamma + 2.0) - std::pow(a, gamma + 2.0)) / (gamma + 2.0);
        return {(b * m0 - m1) / h, (m1 - a * m0) / h};
    }
    double left = 0.0, right = 0.0;
    for (std::size_t k = 0; k < gl_nodes.size(); ++k) {
        const double s = 0.5 * (1.0 + gl_nodes[k]);
        const double f = 0.5 * gl_weights[k] * std::pow(a + h * s, gamma);
        left += f * (1.0 - s);
        right += f * s;
    }
    return {h * left, h * right};
}

inline double origin_extrapolation(const Eigen::ArrayXd& f) {
    return 3.0 * f[1] - 3.0 * f[2] + f[3];
}

Eigen::Index support_front(const FieldState& s) {
    for (Eigen::Index j = s.grid.n(); j >= 0; --j)
        if (s.w[j] != 0.0 || s.v_plus[j] != 0.0 || s.v_minus[j] != 0.0) return j;
    return 0;
}

}  // namespace

Evolver::Evolver(FieldState initial, SourceMode mode) : state_(std::move(initial)), mode_(mode) {
    const auto& grid = state_.grid;
    const Eigen::Index n = grid.n();
    if (n < 3) throw InvalidParameter("grid needs at least four nodes");
    if (state_.w.size() != grid.size() || state_.v_plus.size() != grid.size() ||
        state_.v_minus.size() != grid.size())
        throw InvalidParameter("field arrays do not match the grid");

    const double h = grid.dr();
    const double q = state_.params.q();
    c_ = state_.params.potential_coefficient();
    p_ = state_.params.p;
    nonlinear_ = mode_ == SourceMode::nonlinear;

    rq_.resize(n + 1);
    inv_rq_.resize(n + 1);
    for (Eigen::Index j = 0; j <= n; ++j) {
        rq_[j] = std::pow(grid.r(j), q);
        inv_rq_[j] = j == 0 ? 0.0 : 1.0 / rq_[j];
    }

    pot_l_ = Eigen::ArrayXd::Zero(n);
    pot_r_ = Eigen::ArrayXd::Zero(n);
    pow_l_ = Eigen::ArrayXd::Zero(n);
    pow_r_ = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = grid.r(i);
        if (c_ != 0.0) {
            auto m = hat_moments(a, h, 0.5 * (state_.params.d - 5));
            pot_l_[i] = m[0];
            pot_r_[i] = m[1];
        }
        if (nonlinear_) {
            auto m = hat_moments(a, h, q);
            pow_l_[i] = m[0];
            pow_r_[i] = m[1];
        }
    }

    w_new_ = Eigen::ArrayXd::Zero(n + 1);
    vp_new_ = Eigen::ArrayXd::Zero(n + 1);
    vm_new_ = Eigen::ArrayXd::Zero(n + 1);
    u_new_ = Eigen::ArrayXd::Zero(n + 1);
    g_new_ = Eigen::ArrayXd::Zero(n + 1);

    front_ = support_front(state_);
    boundary_reached_ = front_ >= n;
    refresh_cache();
}

void Evolver::refresh_cache() {
    u_ = state_.w * inv_rq_;
    u_[0] = origin_extrapolation(u_);
    g_ = Eigen::ArrayXd::Zero(u_.size());
    if (nonlinear_)
        for (Eigen::Index j = 0; j <= front_; ++j) g_[j] = defocusing_power(u_[j], p_);
}

void Evolver::step() {
    const Eigen::Index n = state_.grid.n();
    const double h = state_.grid.dr();
    const double quarter_h = 0.25 * h;
    const Eigen::Index jmax = std::min(n, front_ + 1);

    const auto& w = state_.w;
    const auto& vp = state_.v_plus;
    const auto& vm = state_.v_minus;

    double max_abs = 0.0;
    bool finite = true;
    for (Eigen::Index j = 1; j <= jmax; ++j) {
        const bool outer = j == n;
        const double vp_l = vp[j - 1];
        const double vm_r = outer ? 0.0 : vm[j + 1];

        // Predictor for the power term at the new endpoint.
        double g_pred = 0.0;
        if (nonlinear_) {
            const double u_pred = (w[j] + 0.5 * h * (vp[j] + vm[j])) * inv_rq_[j];
            g_pred = defocusing_power(u_pred, p_);
        }

        // Parts of the two segment integrals that do not involve u_new[j].
        double sp_known = -c_ * pot_l_[j - 1] * u_[j - 1] -
                          (pow_l_[j - 1] * g_[j - 1] + pow_r_[j - 1] * g_pred);
        double sm_known = 0.0;
        double beta_p = pot_r_[j - 1];
        double beta_m = 0.0;
        if (!outer) {
            sm_known = -c_ * pot_r_[j] * u_[j + 1] - (pow_r_[j] * g_[j + 1] + pow_l_[j] * g_pred);
            beta_m = pot_l_[j];
        }

        const double rhs = w[j] + quarter_h * (vp[j] + vm[j] + vp_l + vm_r + sp_known + sm_known);
        const double denom = rq_[j] + quarter_h * c_ * (beta_p + beta_m);
        const double u = rhs / denom;

        vp_new_[j] = vp_l + sp_known - c_ * beta_p * u;
        vm_new_[j] = outer ? 0.0 : vm_r + sm_known - c_ * beta_m * u;
        w_new_[j] = rq_[j] * u;
        u_new_[j] = u;
        g_new_[j] = nonlinear_ ? defocusing_power(u, p_) : 0.0;

        const double a = std::abs(w_new_[j]);
        finite = finite && std::isfinite(a) && std::isfinite(vp_new_[j]) && std::isfinite(vm_new_[j]);
        max_abs = std::max(max_abs, a);
    }

    if (!finite || !(max_abs <= blowup_threshold))
        throw NumericAbort("evolution aborted at t = " + std::to_string(state_.t + h) +
                           ": max|w| = " + std::to_string(max_abs));

    // Origin: w = 0, reflection v+ = -v-, incoming segment from node 1.
    const double u0 = origin_extrapolation(u_new_);
    const double g0 = nonlinear_ ? defocusing_power(u0, p_) : 0.0;
    const double s0 = -c_ * (pot_r_[0] * u_[1] + pot_l_[0] * u0) - (pow_r_[0] * g_[1] + pow_l_[0] * g0);
    vm_new_[0] = vm[1] + s0;
    vp_new_[0] = -vm_new_[0];
    w_new_[0] = 0.0;
    u_new_[0] = u0;
    g_new_[0] = g0;

    std::swap(state_.w, w_new_);
    std::swap(state_.v_plus, vp_new_);
    std::swap(state_.v_minus, vm_new_);
    std::swap(u_, u_new_);
    std::swap(g_, g_new_);

    front_ = jmax;
    if (front_ >= n) boundary_reached_ = true;
    state_.t += h;
    ++steps_;
}

FieldState step(const FieldState& state, SourceMode mode) {
    Evolver e(state, mode);
    e.step();
    return e.state();
}

}  // namespace nlwrad
