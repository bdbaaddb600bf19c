#pragma once

namespace nlwrad {

/// Dimension, exponent and the derived constants of the radial defocusing
/// equation u_tt - Δu = -|u|^{p-1} u.
struct ModelParams {
    int d = 3;
    double p = 3.0;

    double lambda = 0.0;         ///< (4 - (d-1)(p-1)) / 2
    double beta = 0.0;           ///< ((d-1)(p-1) - 2) / (p+1)
    double kappa_max = 0.0;      ///< ((d-1)(p-1) - 2) / 2
    double kappa_scatter = 0.0;  ///< ((2-d)p + (d+2)) / (p+1)
    double p_scatter_min = 0.0;  ///< (3 - d + 2 sqrt(d^2 - d + 1)) / (d-1)

    bool sub_conformal = false;        ///< p < 1 + 4/(d-1)
    bool in_theorem11_range = false;   ///< 1 + 2/(d-1) < p < 1 + 4/(d-1)
    bool in_scattering_range = false;  ///< p_scatter_min < p < 1 + 4/(d-1)

    /// Exponent of the 1D substitution w = r^q u, q = (d-1)/2.
    double q() const { return 0.5 * (d - 1); }
    /// Coefficient (d-1)(d-3)/4 of the inverse-square potential of the w equation.
    double potential_coefficient() const { return 0.25 * (d - 1) * (d - 3); }
    double sphere_area() const;
};

/// Builds the parameter set. Throws InvalidParameter for d < 3 or p <= 1;
/// the theorem ranges are recorded as flags only.
ModelParams make_params(int d, double p);

/// Area c_d of the unit sphere S^{d-1}.
double sphere_area(int d);

}  // namespace nlwrad
