#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstddef>

#include "nlwrad/core/error.hpp"

namespace nlwrad {

/// Uniform node-centred mesh r_j = j dr, j = 0..n, on [0, r_max].
/// The solver steps with dt = dr so characteristics connect nodes.
template <typename Scalar>
class BasicRadialGrid {
public:
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    BasicRadialGrid() = default;
    BasicRadialGrid(Scalar dr, Eigen::Index n) : dr_(dr), n_(n) {
        if (!(dr > Scalar(0)) || n < 1)
            throw InvalidParameter("radial grid needs dr > 0 and at least two nodes");
    }

    /// Smallest grid with spacing dr reaching at least r_max.
    static BasicRadialGrid covering(Scalar dr, Scalar r_max) {
        if (!(dr > Scalar(0)) || !(r_max > Scalar(0)))
            throw InvalidParameter("radial grid needs dr > 0 and r_max > 0");
        using std::ceil;
        auto n = static_cast<Eigen::Index>(ceil(r_max / dr - Scalar(1e-9)));
        return BasicRadialGrid(dr, n < 1 ? 1 : n);
    }

    Scalar dr() const { return dr_; }
    /// Index of the last node; there are n() + 1 nodes.
    Eigen::Index n() const { return n_; }
    Eigen::Index size() const { return n_ + 1; }
    Scalar r(Eigen::Index j) const { return Scalar(j) * dr_; }
    Scalar r_max() const { return Scalar(n_) * dr_; }

    Array nodes() const {
        Array r(size());
        for (Eigen::Index j = 0; j < size(); ++j) r[j] = Scalar(j) * dr_;
        return r;
    }

    /// Nearest node to radius r, clamped to the grid.
    Eigen::Index nearest(Scalar r) const {
        using std::llround;
        auto j = static_cast<Eigen::Index>(llround(r / dr_));
        if (j < 0) return 0;
        if (j > n_) return n_;
        return j;
    }

private:
    Scalar dr_ = Scalar(1);
    Eigen::Index n_ = 1;
};

using RadialGrid = BasicRadialGrid<double>;

}  // namespace nlwrad
