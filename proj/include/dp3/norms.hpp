#pragma once

#include "dp3/grid.hpp"
#include "dp3/spectral.hpp"
#include "dp3/state.hpp"

namespace dp3 {

/// Norm values for one grid field. Hs uses the configured Sobolev index;
/// B221 is the Besov B^2_{2,1} sum over dyadic blocks from j = -1.
struct NormReport {
    double L1 = 0.0;
    double L2 = 0.0;
    double Linf = 0.0;
    double W11 = 0.0;    // L1 + L1 of d/dx
    double W1inf = 0.0;  // Linf + Linf of d/dx
    double Hs = 0.0;
    double B221 = 0.0;
};

struct StateNorms {
    NormReport eta, u, v;
};

double l1_norm(const Field& f, const Grid& g);
double l2_norm(const Field& f, const Grid& g);
double linf_norm(const Field& f);
double w11_norm(const Field& f, const Grid& g);
double w1inf_norm(const Field& f, const Grid& g);
double hs_norm(const Field& f, const Grid& g, double s);
double besov_b221_norm(const Field& f, const LPPartition& partition, const Grid& g);

NormReport norm_report(const Field& f, const Grid& g, double sobolev_s, const LPPartition& partition);
StateNorms norm_suite(const FieldState& s, const Grid& g, double sobolev_s);

/// Largest |f| at the domain ends; the W^{1,1}/L^1 quadratures stand in for
/// line integrals only when this is tiny (callers warn above 1e-10).
double boundary_magnitude(const Field& f, const Grid& g);
double boundary_magnitude(const FieldState& s, const Grid& g);

}  // namespace dp3
