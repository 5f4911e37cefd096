#pragma once

#include <string>

#include "dp3/grid.hpp"
#include "dp3/spectral.hpp"
#include "dp3/state.hpp"

namespace dp3 {

/// The three analytically equivalent right-hand-side formulations.
enum class RhsForm { convolution, flux, momentum };

RhsForm parse_rhs_form(const std::string& name);
std::string to_string(RhsForm f);

struct Derivatives {
    Field eta_t, u_t, v_t;
};

struct MomentumDerivatives {
    Field rho_t, m_t, n_t;
};

/// Green-function convolution form:
///   eta_t = -((eta+1) u v)_x
///   u_t   = -u v u_x - p*(3 u v u_x + 2 u v_x u_xx + 2 u_x^2 v_x + u v_xx u_x + (eta+1)^2 u)
///   v_t   = -v u v_x - p*(3 v u v_x + 2 v u_x v_xx + 2 v_x^2 u_x + v u_xx v_x - (eta+1)^2 v)
Derivatives rhs_convolution(const FieldState& s, const Grid& g);

/// Flux rewriting (p_x-convolutions carry the derivative):
///   u_t = -u v u_x - p*(3 v u u_x - u u_x v_xx + (eta+1)^2 u) - 2 p_x*(u v_x u_x)
/// and the mirrored v equation; eta_t as above.
Derivatives rhs_flux(const FieldState& s, const Grid& g);

/// Field-form dispatch for the two field formulations.
Derivatives rhs(const FieldState& s, const Grid& g, RhsForm form);

/// Momentum form:
///   rho_t = -(rho u v)_x,  m_t = -u v m_x - 3 v u_x m - rho^2 u,
///   n_t = -u v n_x - 3 v_x u n + rho^2 v.
/// Requires ms consistent with s (round-trip residual <= 1e-8).
MomentumDerivatives rhs_momentum(const MomentumState& ms, const FieldState& s, const Grid& g);

/// Max relative L2 deviation between ms and the momentum image of s.
double momentum_consistency_residual(const MomentumState& ms, const FieldState& s, const Grid& g);

enum class ReductionKind { dp, novikov, swap };

ReductionKind parse_reduction_kind(const std::string& name);
std::string to_string(ReductionKind k);

/// Distance of a state from the named invariant manifold: dp -> ||v-1||_inf,
/// novikov -> ||u-v||_inf, swap -> RHS mismatch under (u,v) exchange at eta=-1.
double reduction_residual(const FieldState& s, ReductionKind kind, const Grid& g);

// Shared internals, also used by the mollified system.
namespace rhs_detail {

/// Dealiased physical fields and spectral derivatives for one state.
struct Prepared {
    Field rho;  // eta + 1, dealiased
    Field u, v, ux, uxx, vx, vxx;
    Field rho_sq;  // (eta+1)^2 pointwise
    Field eta_x;   // = rho_x, used by the mollified transport
};

Prepared prepare(const FieldState& s, const Grid& g);

/// -(rho u v)_x with the final dealias mask (the eta/rho transport law).
Field transport_derivative(const Field& rho, const Field& u, const Field& v, const Grid& g);

/// Argument of the p-convolution in the convolution form; sign multiplies the
/// (eta+1)^2 c term (+1 for the u equation, -1 for the v equation).
Field conv_argument(const Field& c, const Field& d, const Field& cx, const Field& cxx,
                    const Field& dx, const Field& dxx, const Field& rho_sq, double sign);

/// p * conv_argument, dealiased (the nonlocal term F or G).
Field nonlocal_term(const Field& c, const Field& d, const Field& cx, const Field& cxx,
                    const Field& dx, const Field& dxx, const Field& rho_sq, double sign,
                    const Grid& g);

}  // namespace rhs_detail

}  // namespace dp3
