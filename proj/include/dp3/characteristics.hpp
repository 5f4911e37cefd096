#pragma once

#include <vector>

#include "dp3/grid.hpp"
#include "dp3/state.hpp"

namespace dp3 {

/// Lagrangian record along dq/dt = (u v)(t, q), q(0) = x0. `q` holds the
/// unwrapped coordinate (order checks); `q_wrapped` stays in [-L/2, L/2).
struct CharTrace {
    double x0 = 0.0;
    std::vector<double> t;
    std::vector<double> q;
    std::vector<double> q_wrapped;
    std::vector<double> f;       // u_x along the trace
    std::vector<double> v_at_q;  // v along the trace

    static CharTrace start(double x0, const FieldState& s0, const Grid& g);
};

/// Advance one sample interval with RK4; inter-state fields are the spectral
/// midpoint of the two bracketing snapshots.
void advance_char(CharTrace& trace, const FieldState& at_t, const FieldState& at_t_dt, const Grid& g);

struct RiccatiCheck {
    std::vector<double> t;       // interior sample times (centered differences)
    std::vector<double> margin;  // -a f^2 + b - f'
    double min_margin = 0.0;
    bool ok = false;
};

/// Margin series -a f^2 + b - f' along the trace; ok when min margin >= -tol
/// (default tol = 1e-2 * (1 + b)).
RiccatiCheck riccati_check(const CharTrace& trace, double a, double b, double tol = -1.0);

/// True when traces preserve strict x0 ordering at every recorded time.
bool order_preserved(const std::vector<CharTrace>& traces);

/// Advance one trace per probe across the snapshot sequence and check that
/// q(t, .) preserves the probe order throughout.
bool monotone_diffeo_check(const std::vector<FieldState>& states, const std::vector<double>& probes,
                           const Grid& g);

/// Convenience: all probe traces advanced across a snapshot sequence.
std::vector<CharTrace> trace_probes(const std::vector<FieldState>& states,
                                    const std::vector<double>& probes, const Grid& g);

}  // namespace dp3
