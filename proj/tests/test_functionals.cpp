#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/quadrature.hpp"
#include "nlwrad/functionals/decay.hpp"
#include "nlwrad/functionals/diagnostics.hpp"
#include "nlwrad/functionals/energy.hpp"
#include "nlwrad/functionals/morawetz.hpp"
#include "nlwrad/functionals/q_functional.hpp"
#include "nlwrad/solver/evolve.hpp"
#include "support.hpp"

using namespace nlwrad;
using std::numbers::pi;

TEST_CASE("gaussian energy against closed form") {
    const double p = 3.0;
    const auto s = testing::gaussian_state(3, p, 1.0 / 128, 12.0);
    const auto e = energy(s);
    const double gradient = 0.5 * 4 * pi * 4 * 3 * std::sqrt(pi) / (8 * std::pow(2.0, 2.5));
    const double potential = std::pow(pi, 1.5) / std::pow(p + 1, 2.5);
    CHECK(e.kinetic == 0.0);
    CHECK(e.gradient == doctest::Approx(gradient).epsilon(1e-6));
    CHECK(e.potential == doctest::Approx(potential).epsilon(1e-6));
    CHECK(e.total == doctest::Approx(gradient + potential).epsilon(1e-6));
    CHECK(energy(s, 0.0, SourceMode::linear).total == doctest::Approx(gradient).epsilon(1e-6));
}

TEST_CASE("weighted interior energy of a unit density") {
    const auto P = make_params(3, 2.0);
    std::vector<double> err;
    for (double dr : {1.0 / 16, 1.0 / 32, 1.0 / 64}) {
        const auto G = RadialGrid::covering(dr, 5.0);
        RadialFields f{Eigen::ArrayXd::Zero(G.size()), Eigen::ArrayXd::Zero(G.size()),
                       Eigen::ArrayXd::Constant(G.size(), std::sqrt(2.0))};
        const double t = 3.0;
        const double exact = 4 * pi * t * t * t * (1.0 / 3 - 1.0 / 4);
        err.push_back(std::abs(weighted_interior_energy(f, P, G, t) - exact));
        CHECK(err.back() < 1e-2 * exact);
    }
    CHECK(err[0] / err[1] > 3.5);
    CHECK(err[1] / err[2] > 3.5);

    const auto z = testing::gaussian_state(3, 2.0, 1.0 / 16, 5.0, 0.0);
    CHECK(weighted_interior_energy(reconstruct_u(z), P, z.grid, 1.0) == 0.0);
    CHECK_THROWS_AS(weighted_interior_energy(reconstruct_u(z), P, z.grid, 0.0), InvalidParameter);
}

namespace {

struct ShortRun {
    MorawetzSeries series;
    double energy;
    ModelParams params;
    RadialGrid grid;
    RadialFields initial;
    QSeries q;
};

ShortRun short_run(double dr, double R) {
    const auto init = testing::gaussian_state(3, 2.5, dr, 14.0);
    MorawetzRecorder rec({R});
    QRecorder qr;
    EvolveOptions o;
    o.t_end = 6;
    o.checkpoint_every = 1.0 / 16;
    std::vector<CheckpointObserver> obs{rec.observer(), qr.observer()};
    const auto tr = evolve(init, o, obs);
    const double Rs = snapped_radius(init.grid, R);
    return {stitch_morawetz(Rs, rec.samples(0), rec.samples(0)), tr.energy.front().total, init.params, init.grid,
            reconstruct_u(init), combine_q(qr.halves(), qr.halves(), q_constants(3))};
}

}  // namespace

TEST_CASE("Morawetz identity closes and converges") {
    const auto a = short_run(1.0 / 64, 3.0);
    const auto b = short_run(1.0 / 128, 3.0);
    const auto la = morawetz_identity(a.series, a.params, a.energy, -5.0, 5.0);
    const auto lb = morawetz_identity(b.series, b.params, b.energy, -5.0, 5.0);
    CHECK(lb.relative_residual() < 1e-3);
    CHECK(la.residual / lb.residual > 3.5);
    CHECK(lb.two_energy == doctest::Approx(2 * b.energy));
    CHECK_THROWS_AS(morawetz_identity(b.series, b.params, b.energy, -5.0, 5.01), RangeError);
    CHECK_THROWS_AS(morawetz_identity(b.series, b.params, b.energy, -7.0, 5.0), RangeError);
}

TEST_CASE("Morawetz multiplier rate matches its time derivative") {
    const auto init = testing::gaussian_state(4, 2.2, 1.0 / 256, 12.0);
    EvolveOptions o;
    o.t_end = 2.0;
    o.checkpoint_every = 1.0 / 256;
    std::vector<double> m, rate;
    std::vector<CheckpointObserver> obs{[&](const FieldState& s) {
        m.push_back(morawetz_multiplier(s, 2.0));
        rate.push_back(morawetz_rate(s, 2.0));
    }};
    evolve(init, o, obs);
    const std::size_t k = 256;
    const double dm = (m[k + 1] - m[k - 1]) / (2.0 / 256);
    CHECK(dm == doctest::Approx(-rate[k]).epsilon(2e-3));
}

TEST_CASE("corollary bound holds with slack") {
    const auto b = short_run(1.0 / 128, 3.0);
    const auto c = corollary_inequality(b.series, b.params, b.initial, b.grid, b.energy, 3.0, 2.0);
    CHECK(c.slack >= 0.0);
    CHECK(std::abs(c.balance_residual) < 1e-3 * b.energy);
    CHECK(c.rhs == doctest::Approx(corollary_rhs(b.initial, b.params, b.grid, snapped_radius(b.grid, 3.0))));
    CHECK_THROWS_AS(corollary_inequality(b.series, b.params, b.initial, b.grid, b.energy, 3.0, 4.0), RangeError);
}

TEST_CASE("Q functional") {
    CHECK(q_constants(3).c1 == 0.125);
    CHECK(q_constants(4).c2 == 0.125);
    CHECK(q_constants(5).c1 == 0.0625);

    const auto z = testing::gaussian_state(3, 2.5, 1.0 / 32, 8.0, 0.0);
    CHECK(q_functional(z, z) == 0.0);

    const auto b = short_run(1.0 / 64, 3.0);
    for (std::size_t k = 0; k < b.q.t.size(); ++k) REQUIRE(b.q.q[k] >= 0.0);
    CHECK(b.q.interior.front() == 0.0);
    CHECK(b.q.q.front() == doctest::Approx(b.q.potential.front() + b.q.flux.front()));
    const auto rc = recurrence_check(b.q, b.params, b.initial, b.grid, 1.0);
    CHECK(rc.worst_excess <= 0.0);

    CHECK_THROWS_AS(combine_q({QHalf{}}, {}, q_constants(3)), InvalidParameter);
    CHECK_THROWS_AS(q_half(reconstruct_u(z), z.params, z.grid, -1.0), InvalidParameter);
}

TEST_CASE("decay report on a synthetic power law") {
    std::vector<double> t, q;
    for (int k = 0; k <= 200; ++k) {
        t.push_back(k);
        q.push_back(k == 0 ? 1.0 : 1.0 / k);
    }
    const auto rep = decay_report(t, q, 0.3, {});
    CHECK(rep.fit.slope == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(rep.tail_decreasing);
    CHECK(rep.final_ratio == doctest::Approx(std::pow(20.0, -0.7)));
    CHECK(rep.dropped);
    CHECK_FALSE(decay_report(t, q, 0.5, {}).dropped);

    const auto flat = decay_report(t, std::vector<double>(t.size(), 1.0), 0.5, {});
    CHECK_FALSE(flat.tail_decreasing);
    CHECK_FALSE(flat.dropped);

    std::vector<double> few_t{1, 2, 3}, few_q{1, 1, 1};
    CHECK_THROWS_AS(decay_report(few_t, few_q, 0.5, {}), InvalidParameter);
}

TEST_CASE("log-log fit recovers an exponent") {
    std::vector<double> t, y;
    for (double x = 1; x < 1000; x *= 1.3) {
        t.push_back(x);
        y.push_back(3.0 * std::pow(x, -0.37));
    }
    const auto fit = fit_loglog(t, y, 0, 1e9);
    CHECK(fit.slope == doctest::Approx(-0.37).epsilon(1e-12));
    CHECK(std::exp(fit.intercept) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog(t, y, 2000, 3000), InvalidParameter);
}

TEST_CASE("pointwise bound and its scale invariance") {
    for (int d : {3, 4, 5}) {
        const auto P = make_params(d, 2.0);
        const auto G = RadialGrid::covering(1.0 / 256, 20.0);
        const auto narrow = init_from_profile(testing::gaussian(1.0, 1.0), testing::zero_profile(), G, P);
        const auto wide = init_from_profile(testing::gaussian(1.0, 2.0), testing::zero_profile(), G, P);
        const double r_narrow = pointwise_bound_check(narrow).ratio1;
        const double r_wide = pointwise_bound_check(wide).ratio1;
        CHECK(r_narrow <= pointwise_sharp_constant(d));
        CHECK(r_narrow == doctest::Approx(r_wide).epsilon(1e-3));
    }
    CHECK(pointwise_sharp_constant(3) == doctest::Approx(1.0 / std::sqrt(4 * pi)));
    CHECK_THROWS_AS(pointwise_bound_check(testing::gaussian_state(3, 2.0, 0.1, 5.0, 0.0)), InvalidParameter);
}

TEST_CASE("flux and tail helpers") {
    const auto s = testing::gaussian_state(3, 2.5, 1.0 / 64, 10.0);
    CHECK(flux_energy(s, FluxSign::plus) == doctest::Approx(flux_energy(s, FluxSign::minus)));
    CHECK(exterior_tail_exponent(3.0, 0.5) == doctest::Approx(-0.75));
    CHECK_THROWS_AS(exterior_mass_tail(s), InvalidParameter);
    EvolveOptions o;
    o.t_end = 1.0;
    const auto later = evolve(s, o).final_state();
    CHECK(exterior_mass_tail(later) > 0.0);
    CHECK_THROWS_AS(exterior_mass_tail(testing::gaussian_state(4, 2.0, 0.1, 5.0)), NotApplicable);
}

TEST_CASE("time-symmetric data have no Morawetz multiplier") {
    const auto s = testing::gaussian_state(4, 2.2, 1.0 / 64, 10.0);
    CHECK(morawetz_multiplier(s, 3.0) == 0.0);
    CHECK(morawetz_multiplier(testing::gaussian_state(3, 2.5, 0.1, 5.0, 0.0), 1.0) == 0.0);
}

TEST_CASE("linear identity drops the power terms") {
    const auto init = testing::gaussian_state(5, 1.6, 1.0 / 128, 14.0);
    MorawetzRecorder rec({4.0}, SourceMode::linear);
    EvolveOptions o;
    o.t_end = 5;
    o.mode = SourceMode::linear;
    o.checkpoint_every = 1.0 / 16;
    std::vector<CheckpointObserver> obs{rec.observer()};
    const auto tr = evolve(init, o, obs);
    const auto series = stitch_morawetz(snapped_radius(init.grid, 4.0), rec.samples(0), rec.samples(0),
                                        SourceMode::linear);
    const auto L = morawetz_identity(series, init.params, tr.energy.front().total, -5.0, 5.0);
    CHECK(L.relative_residual() < 2e-3);
    CHECK(tr.energy.front().potential == 0.0);
}

TEST_CASE("corollary terms shrink for radii far beyond the support") {
    const auto P = make_params(3, 2.5);
    const auto G = RadialGrid::covering(1.0 / 64, 40.0);
    const RadialProfile bump{[](double r) { return r < 1 ? 2 * std::pow(1 - r * r, 4) : 0.0; }, {}};
    const auto init = init_from_profile(bump, testing::zero_profile(), G, P);
    MorawetzRecorder rec({4.0, 16.0});
    EvolveOptions o;
    o.t_end = 17;
    o.checkpoint_every = 1.0 / 16;
    std::vector<CheckpointObserver> obs{rec.observer()};
    const auto tr = evolve(init, o, obs);
    const double E = tr.energy.front().total;
    const auto f0 = reconstruct_u(init);
    double prev = INFINITY;
    for (std::size_t k = 0; k < 2; ++k) {
        const double R = rec.radii()[k];
        const auto series = stitch_morawetz(snapped_radius(G, R), rec.samples(k), rec.samples(k));
        const auto c = corollary_inequality(series, P, f0, G, E, R, 1.0);
        CHECK(c.rhs < 0.25 * E);
        CHECK(c.sum() <= c.rhs + 0.02 * E);
        CHECK(c.rhs < prev);
        prev = c.rhs;
    }
    const auto z = reconstruct_u(testing::gaussian_state(3, 2.5, 1.0 / 64, 40.0, 0.0));
    CHECK(corollary_rhs(z, P, G, 4.0) == 0.0);
}

TEST_CASE("Q is bounded by 8E") {
    for (double dr : {1.0 / 64}) {
        const auto b = short_run(dr, 3.0);
        for (double q : b.q.q) REQUIRE(q <= 8 * b.energy);
    }
}

TEST_CASE("flux of a free outgoing pulse") {
    const auto P = make_params(3, 2.5);
    auto F = [](double x) { return std::abs(x - 10) < 6 ? std::exp(-(x - 10) * (x - 10)) : 0.0; };
    auto dF = [&](double x) { return -2 * (x - 10) * F(x); };
    const RadialProfile u0{[&](double r) { return r > 0 ? F(r) / r : 0.0; },
                           [&](double r) { return r > 0 ? dF(r) / r - F(r) / (r * r) : 0.0; }};
    const RadialProfile u1{[&](double r) { return r > 0 ? -dF(r) / r : 0.0; }, {}};
    EvolveOptions o;
    o.t_end = 150;
    o.mode = SourceMode::linear;
    const auto tr = evolve(init_from_profile(u0, u1, RadialGrid::covering(1.0 / 32, 170.0), P), o);
    const auto& s = tr.final_state();
    const auto e = energy(s, 0.0, SourceMode::linear);
    const auto f = reconstruct_u(s);
    const double pot = RadialQuadrature<double>(s.grid, 3).integrate(f.u.abs().pow(P.p + 1));
    CHECK(flux_energy(s, FluxSign::plus) - pot <= 1e-3 * e.total);
    // u_r ≈ -u_t, so (u_r - u_t)² ≈ 2(u_r² + u_t²)
    CHECK(flux_energy(s, FluxSign::minus) - pot == doctest::Approx(4 * (e.gradient + e.kinetic)).epsilon(1e-3));
    CHECK(flux_energy(s, FluxSign::plus) + flux_energy(s, FluxSign::minus) >= 2 * pot);
}

TEST_CASE("exterior tail of an inverse-square profile") {
    const auto P = make_params(3, 2.8);
    const auto G = RadialGrid::covering(1.0 / 64, 200.0);
    const Eigen::ArrayXd r = G.nodes();
    Eigen::ArrayXd u = r.square().inverse();
    u[0] = 0;
    const RadialFields f{u, Eigen::ArrayXd::Zero(G.size()), Eigen::ArrayXd::Zero(G.size())};
    const double t = 5.0;
    const double exact = 4 * pi / 3 * (std::pow(t, -3) - std::pow(200.0, -3));
    CHECK(exterior_mass_tail(f, P, G, t) == doctest::Approx(exact).epsilon(1e-4));
}

TEST_CASE("near-extremizer of the pointwise bound") {
    for (int d : {3, 4}) {
        const auto P = make_params(d, 2.0);
        const auto G = RadialGrid::covering(1.0 / 64, 2000.0);
        const Eigen::ArrayXd r = G.nodes();
        // constant inside the unit ball, fundamental solution outside
        const Eigen::ArrayXd u = (r <= 1.0).select(Eigen::ArrayXd::Ones(G.size()), r.pow(2.0 - d));
        const Eigen::ArrayXd ur = (r <= 1.0).select(Eigen::ArrayXd::Zero(G.size()), (2.0 - d) * r.pow(1.0 - d));
        const RadialFields f{u, ur, Eigen::ArrayXd::Zero(G.size())};
        const double ratio = pointwise_bound_check(f, P, G).ratio1;
        CHECK(ratio == doctest::Approx(pointwise_sharp_constant(d)).epsilon(0.02));
    }
}
