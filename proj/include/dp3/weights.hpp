#pragma once

#include <string>
#include <vector>

#include "dp3/grid.hpp"

namespace dp3 {

enum class WeightKind { log, algebraic };

WeightKind parse_weight_kind(const std::string& name);
std::string to_string(WeightKind k);

/// Capped even weight: (ln(e+beta+|x|))^beta or (1+beta+|x|)^beta, frozen at
/// |x| = N. The contraction constant bounds |w'|/w away from 1.
struct WeightProfile {
    WeightProfile(WeightKind kind, double beta, double cap);

    WeightKind kind;
    double beta;
    double cap;  // N

    /// gamma = beta/((e+beta) ln(e+beta)) for log, lambda = beta/(1+beta) for algebraic.
    double contraction() const;

    double operator()(double x) const;

    std::string label() const;
};

double weight_eval(const WeightProfile& p, double x);

/// sup over grid points of w(x) * trapezoid_y[ e^{-d(x,y)} / w(y) ], with the
/// periodic point distance d. Requires N < L/2.
double omega_bound(const WeightProfile& p, const Grid& g);

/// max over the listed fields and grid points of |f(x)| * w(x).
double weighted_sup(const std::vector<const Field*>& fields, const WeightProfile& p, const Grid& g);
double weighted_sup(const Field& f, const WeightProfile& p, const Grid& g);

/// Weight samples on the grid (cached by callers that loop over many fields).
Field weight_samples(const WeightProfile& p, const Grid& g);

}  // namespace dp3
