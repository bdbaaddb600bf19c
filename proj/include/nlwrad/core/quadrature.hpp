#pragma once

#include <Eigen/Core>

#include <cmath>

#include "nlwrad/core/error.hpp"
#include "nlwrad/core/grid.hpp"
#include "nlwrad/core/params.hpp"

namespace nlwrad {

/// Composite trapezoid rule over nodes [begin, end] of an evenly spaced sample.
template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::ArrayBase<Derived>& f,
                                   typename Derived::Scalar h, Eigen::Index begin,
                                   Eigen::Index end) {
    using Scalar = typename Derived::Scalar;
    if (begin < 0 || end >= f.size() || begin > end)
        throw RangeError("trapezoid range outside sample");
    if (begin == end) return Scalar(0);
    Scalar inner = f.segment(begin, end - begin + 1).sum();
    return h * (inner - Scalar(0.5) * (f[begin] + f[end]));
}

template <typename Derived>
typename Derived::Scalar trapezoid(const Eigen::ArrayBase<Derived>& f,
                                   typename Derived::Scalar h) {
    return trapezoid(f, h, 0, f.size() - 1);
}

/// Weight r_j^{d-1} on every node.
template <typename Scalar>
typename BasicRadialGrid<Scalar>::Array radial_weight(const BasicRadialGrid<Scalar>& grid, int d) {
    typename BasicRadialGrid<Scalar>::Array w(grid.size());
    for (Eigen::Index j = 0; j < grid.size(); ++j) {
        Scalar r = grid.r(j), v = Scalar(1);
        for (int k = 1; k < d; ++k) v *= r;
        w[j] = v;
    }
    return w;
}

/// Precomputed trapezoid weights c_d r_j^{d-1} dr for repeated radial
/// integrals on one grid.
template <typename Scalar>
class RadialQuadrature {
public:
    using Array = typename BasicRadialGrid<Scalar>::Array;

    RadialQuadrature(const BasicRadialGrid<Scalar>& grid, int d)
        : h_(grid.dr()), cd_(Scalar(sphere_area(d))), weight_(radial_weight(grid, d)) {}

    /// c_d ∫ f r^{d-1} dr over nodes [begin, end].
    template <typename Derived>
    Scalar integrate(const Eigen::ArrayBase<Derived>& f, Eigen::Index begin, Eigen::Index end) const {
        if (f.size() != weight_.size()) throw InvalidParameter("sample size does not match grid");
        return cd_ * trapezoid((f * weight_).eval(), h_, begin, end);
    }
    template <typename Derived>
    Scalar integrate(const Eigen::ArrayBase<Derived>& f) const {
        return integrate(f, 0, weight_.size() - 1);
    }
    /// c_d ∫ g dr for a density that already includes r^{d-1}.
    template <typename Derived>
    Scalar integrate_weighted(const Eigen::ArrayBase<Derived>& g, Eigen::Index begin,
                              Eigen::Index end) const {
        return cd_ * trapezoid(g, h_, begin, end);
    }

    const Array& weight() const { return weight_; }
    Scalar sphere() const { return cd_; }
    Eigen::Index last() const { return weight_.size() - 1; }

private:
    Scalar h_;
    Scalar cd_;
    Array weight_;
};

/// ∫_{r_begin <= |x| <= r_end} f dx for radial f, as c_d ∫ f r^{d-1} dr by
/// the trapezoid rule on grid nodes.
template <typename Derived, typename Scalar>
Scalar radial_integral(const Eigen::ArrayBase<Derived>& f, const BasicRadialGrid<Scalar>& grid,
                       int d, Eigen::Index begin, Eigen::Index end) {
    if (f.size() != grid.size()) throw InvalidParameter("sample size does not match grid");
    auto weighted = (f * radial_weight(grid, d)).eval();
    return Scalar(sphere_area(d)) * trapezoid(weighted, grid.dr(), begin, end);
}

template <typename Derived, typename Scalar>
Scalar radial_integral(const Eigen::ArrayBase<Derived>& f, const BasicRadialGrid<Scalar>& grid,
                       int d) {
    return radial_integral(f, grid, d, 0, grid.n());
}

/// Integral of a density that already carries the r^{d-1} factor:
/// c_d ∫ g dr. Used where the weight is folded into w = r^{(d-1)/2} u.
template <typename Derived, typename Scalar>
Scalar weighted_radial_integral(const Eigen::ArrayBase<Derived>& g,
                                const BasicRadialGrid<Scalar>& grid, int d, Eigen::Index begin,
                                Eigen::Index end) {
    if (g.size() != grid.size()) throw InvalidParameter("sample size does not match grid");
    return Scalar(sphere_area(d)) * trapezoid(g, grid.dr(), begin, end);
}

template <typename Derived, typename Scalar>
Scalar weighted_radial_integral(const Eigen::ArrayBase<Derived>& g,
                                const BasicRadialGrid<Scalar>& grid, int d) {
    return weighted_radial_integral(g, grid, d, 0, grid.n());
}

template <typename Scalar>
struct CheckedIntegral {
    Scalar value;
    bool tail_warning;  ///< integrand not negligible near r_max
};

/// radial_integral plus a flag raised when the last nodes still carry more
/// than `tail_tol` of the total.
template <typename Derived, typename Scalar>
CheckedIntegral<Scalar> radial_integral_checked(const Eigen::ArrayBase<Derived>& f,
                                                const BasicRadialGrid<Scalar>& grid, int d,
                                                Scalar tail_tol = Scalar(1e-10)) {
    Scalar total = radial_integral(f, grid, d);
    Eigen::Index k = grid.n() < 8 ? 0 : grid.n() - 8;
    using std::abs;
    Scalar tail = abs(radial_integral(f.abs(), grid, d, k, grid.n()));
    Scalar scale = abs(radial_integral(f.abs(), grid, d));
    return {total, scale > Scalar(0) && tail > tail_tol * scale};
}

/// ‖u‖²_{Ḣ¹} of a radial function from its radial derivative.
template <typename Derived, typename Scalar>
Scalar hdot1_norm_sq(const Eigen::ArrayBase<Derived>& u_r, const BasicRadialGrid<Scalar>& grid,
                     int d) {
    return radial_integral(u_r.square(), grid, d);
}

template <typename Derived, typename Scalar>
Scalar l2_norm_sq(const Eigen::ArrayBase<Derived>& u, const BasicRadialGrid<Scalar>& grid, int d) {
    return radial_integral(u.square(), grid, d);
}

/// ‖u‖^{p+1}_{L^{p+1}}.
template <typename Derived, typename Scalar>
Scalar lp1_norm_pow(const Eigen::ArrayBase<Derived>& u, const BasicRadialGrid<Scalar>& grid, int d,
                    Scalar p) {
    return radial_integral(u.abs().pow(p + Scalar(1)), grid, d);
}

}  // namespace nlwrad
