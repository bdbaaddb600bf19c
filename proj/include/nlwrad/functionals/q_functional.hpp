#pragma once

#include <vector>

#include "nlwrad/solver/evolve.hpp"
#include "nlwrad/solver/field_state.hpp"

namespace nlwrad {

/// Weights of the weighted-interior and flux parts of Q(t).
struct QConstants {
    double c1 = 0.125;
    double c2 = 0.125;
};

/// 1/8 for d <= 4, 1/16 above; both keep the pointwise density bound
/// that turns the Morawetz inequality into the λ-recurrence.
QConstants q_constants(int d);

/// Contribution of one time direction to Q(t) at |t| = state time:
/// (1/(p+1))∫|u|^{p+1} + c₁∫_{|x|<t}(t-|x|)/t (|∇u|²+|u_t|²) + c₂·flux, the
/// flux being ∫|u_r + u_t|² (d ≥ 4) or, for d = 3, ∫_{|x|<t}|u_r+u_t|² +
/// ∫_{|x|>t}|u_r + u/|x| + u_t|². A backward run stores u(·,-t) with
/// reversed velocity, so the same formula serves both directions.
/// At t = 0 the interior region is empty.
struct QHalf {
    double t = 0.0;
    double potential = 0.0;  ///< already divided by p+1
    double interior = 0.0;   ///< already multiplied by c₁
    double flux = 0.0;       ///< already multiplied by c₂
    double total() const { return potential + interior + flux; }
};

QHalf q_half(const RadialFields& fields, const ModelParams& params, const RadialGrid& grid, double t);

/// Q(t) from u(·,t) (forward run) and u(·,-t) (backward run at the same |t|).
/// Throws InvalidParameter when the times differ.
double q_functional(const FieldState& forward, const FieldState& backward);

class QRecorder {
public:
    void record(const FieldState& s);
    CheckpointObserver observer();
    const std::vector<QHalf>& halves() const { return halves_; }

private:
    std::vector<QHalf> halves_;
};

struct QSeries {
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> potential;
    std::vector<double> interior;
    std::vector<double> flux;
    QConstants constants;
};

/// Pairs forward and backward halves by time.
QSeries combine_q(const std::vector<QHalf>& forward, const std::vector<QHalf>& backward,
                  QConstants constants);

struct RecurrenceCheck {
    std::vector<double> t, lhs, rhs;
    double worst_excess = 0.0;  ///< max (lhs - rhs), ≤ 0 when the recurrence holds
};

/// Q(t) against (λ/t)∫₀ᵗQ + 2∫min{|x|/t,1} e(x,0) dx at every sample with
/// t ≥ t_min. The series must start at t = 0.
RecurrenceCheck recurrence_check(const QSeries& series, const ModelParams& params,
                                 const RadialFields& initial, const RadialGrid& grid,
                                 double t_min = 1.0);

}  // namespace nlwrad
