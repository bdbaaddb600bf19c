#pragma once

#include <string>
#include <vector>

#include "nlwrad/core/params.hpp"
#include "nlwrad/solver/field_state.hpp"

namespace nlwrad {

enum class DataKind { gaussian, polynomial_tail, outgoing_pulse, compact_bump, file };

struct DataSpec {
    DataKind kind = DataKind::gaussian;
    double amplitude = 1.0;
    double width = 1.0;          ///< σ
    double center = 0.0;         ///< r₀ (gaussian, outgoing_pulse)
    double tail_exponent = 4.0;  ///< m (polynomial_tail)
    std::string file;            ///< two-column "r value" samples of u₀ (file)
    std::string velocity_file;   ///< optional samples of u₁ (file)
};

std::string to_string(DataKind kind);
/// Throws InvalidParameter for unknown names.
DataKind parse_data_kind(const std::string& name);

/// Initial data (u₀, u₁) for a family:
///   gaussian        u₀ = a e^{-(r-r₀)²/σ²}, cut where it falls below 1e-18 a
///   polynomial_tail u₀ = a (1+r²)^{-m/2}
///   outgoing_pulse  u₀ = F(r)/r^{(d-1)/2}, u₁ = -F'(r)/r^{(d-1)/2}, F a cut gaussian
///   compact_bump    u₀ = a (1 - r²/σ²)⁴ on r < σ
///   file            linear interpolation of tabulated samples, zero beyond
/// All families except outgoing_pulse and velocity-carrying files have u₁ = 0.
struct InitialData {
    RadialProfile u0;
    RadialProfile u1;
    double support = 0.0;  ///< radius beyond which both vanish (∞ for polynomial_tail)
    bool time_symmetric = true;  ///< u₁ ≡ 0
};

InitialData make_initial_data(const DataSpec& spec, const ModelParams& params);

/// Largest κ with E_κ < ∞ for polynomial_tail data: min(2m+2-d, m(p+1)-d).
double polynomial_tail_kappa_limit(double m, const ModelParams& params);
/// Whether E_κ(u₀, u₁) is finite for the family (always for compact support).
bool weighted_energy_finite(const DataSpec& spec, const ModelParams& params, double kappa);

/// Reads whitespace-separated (r, value) rows; '#' starts a comment.
/// Throws InvalidParameter on malformed or non-increasing input.
std::vector<std::pair<double, double>> read_samples(const std::string& path);

}  // namespace nlwrad
