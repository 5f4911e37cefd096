#pragma once

#include "dp3/grid.hpp"
#include "dp3/state.hpp"

namespace dp3 {

/// Closed-form blow-up bounds evaluated from initial data alone. All entries
/// are auditable separately; `verdict` is the conjunction of the four
/// sub-conditions.
struct BlowupCertificate {
    double x0 = 0.0;
    double v0_at_x0 = 0.0;
    double B = 0.0;   // ||eta0||_W11/2 + 1 + ||u0||_W11 + ||n0||_Linf
    double T1 = 0.0;  // 1/(40 B^2)
    double T2 = 0.0;  // v0(x0)/(40 B^3)
    double b1 = 0.0;  // B^4/(4 v0) + 6 B^3
    double a = 0.0;   // v0(x0)/4
    double f0 = 0.0;  // u0_x(x0)
    double rhs14 = 0.0;
    bool cond14_ok = false;
    bool cond14_indeterminate = false;  // overflow guard engaged
    bool lemma29_ok = false;            // f0 < -sqrt(b1/a)
    double T0 = 0.0;                    // divergence-time bound when lemma29_ok
    bool t0_within_t2 = false;
    bool t2_within_t1 = false;
    bool verdict = false;
    bool boundary_warning = false;  // field magnitude at the domain ends > 1e-10

    // provenance
    double grid_L = 0.0;
    std::size_t grid_n = 0;
    double eta_w11 = 0.0;
    double u_w11 = 0.0;
    double n_inf = 0.0;
};

/// B = ||eta0||_W11/2 + 1 + ||u0||_W11 + ||n0||_Linf.
double base_quantity(const FieldState& s0, const Grid& g);

/// (T1, T2) = (1/(40 B^2), v0/(40 B^3)).
std::pair<double, double> times_T1_T2(double B, double v0_at_x0);

/// b1 = B^4 / (4 v0) + 6 B^3.
double b1_of(double B, double v0_at_x0);

struct Condition14 {
    double rhs14 = 0.0;
    bool ok = false;
    bool indeterminate = false;
};

/// rhs14 = 2 ((1+E)/(1-E)) sqrt(b1/v0) with E = exp(sqrt(v0 b1) T2); the
/// exponent is guarded in log space and the ratio collapses to -1 past 700.
Condition14 condition14(double f0, double v0_at_x0, double b1, double T2);

/// Divergence-time bound for f' <= -a f^2 + b from f0 < -sqrt(b/a):
/// T0 = 1/(2 sqrt(ab)) * ln((f0 - sqrt(b/a)) / (f0 + sqrt(b/a))).
double lemma29_time(double a, double b, double f0);

/// Evaluate the full certificate at probe point x0 (throws hypothesis_error
/// when v0(x0) <= 0).
BlowupCertificate certify(const FieldState& s0, double x0, const Grid& g);

}  // namespace dp3
