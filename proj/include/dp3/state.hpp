#pragma once

#include <map>
#include <string>

#include "dp3/grid.hpp"

namespace dp3 {

/// Evolution state in field variables: eta = rho - 1 plus the two velocities.
struct FieldState {
    double t = 0.0;
    Field eta, u, v;

    std::size_t size() const { return eta.size(); }
};

/// Same state in momentum variables: rho = eta + 1, m = u - u_xx, n = v - v_xx.
struct MomentumState {
    double t = 0.0;
    Field rho, m, n;
};

FieldState make_zero_state(const Grid& g);

/// Validates lengths and finiteness; throws shape_error / numeric_error.
void validate(const FieldState& s, const Grid& g, const char* who);

MomentumState to_momentum(const FieldState& s, const Grid& g);
FieldState from_momentum(const MomentumState& ms, const Grid& g);

/// Max relative L2 deviation of from_momentum(to_momentum(s)) against s is the
/// round-trip residual used by consistency checks.
double momentum_roundtrip_residual(const FieldState& s, const Grid& g);

enum class InitKind {
    constant,
    gaussian,
    smooth_peakon,
    fourier_mode,
    blowup_candidate,
    algebraic_decay,
    log_decay,
};

InitKind parse_init_kind(const std::string& name);
std::string to_string(InitKind k);

/// Flat parameter bag; per-field parameters are keyed "u.amp", "eta.width", ...
/// Field blocks left out produce a zero field. blowup_candidate uses the keys
/// v0, slope, x0, width and optionally v_width.
using InitParams = std::map<std::string, double>;

FieldState make_initial(InitKind kind, const InitParams& params, const Grid& g);

/// Initial data with a per-field kind override (e.g. gaussian u over constant
/// v and eta, as the reduction runs need). Fields without an override use
/// `kind`; blowup_candidate is whole-state and accepts no overrides.
struct InitSpec {
    InitKind kind = InitKind::constant;
    InitParams params;
    std::map<std::string, InitKind> field_kinds;
};

FieldState make_initial(const InitSpec& spec, const Grid& g);

}  // namespace dp3
