#pragma once

#include <vector>

#include "dp3/dynamics.hpp"
#include "dp3/evolution.hpp"
#include "dp3/spectral.hpp"

namespace dp3 {

/// Right side of the regularized system: transport terms fully mollified
/// (J applied to every factor and to the assembled product), nonlocal terms
/// exactly as in the convolution form.
Derivatives rhs_mollified(const FieldState& s, const MollifierSpec& spec, const Grid& g);

struct LadderRow {
    double eps_coarse = 0.0;
    double eps_fine = 0.0;
    double sup_distance = 0.0;  // sup over sampled t of relative L2 distance
    bool failed = false;
};

struct LadderTable {
    std::vector<double> epsilons;
    std::vector<LadderRow> rows;       // consecutive pairs
    std::vector<double> ratios;        // rows[i+1].sup_distance / rows[i].sup_distance
    std::vector<double> sample_times;  // common sampling window
};

/// Integrate the mollified system for each epsilon over one shared window
/// (fixed step = the CFL step of the initial data, so sample times match) and
/// measure Cauchy differences between consecutive members.
LadderTable epsilon_ladder(const FieldState& initial, const std::vector<double>& epsilons,
                           const StepControl& c, const Grid& g, std::size_t sample_every = 1);

struct SizeEstimateReport {
    double initial_hs = 0.0;   // ||eta0||_Hs + ||u0||_Hs + ||v0||_Hs
    double window = 0.0;       // min(t_end, 1/(4 C initial_hs^2))
    bool window_capped = false;
    double sup_ratio = 0.0;    // max over t <= window of hs(t)/hs(0)
    double bound = 0.0;        // sqrt(2)
    bool within_bound = false;
    double calibration = 1.0;
    double sobolev_s = 2.0;
};

/// Measure the norm-doubling window against the sqrt(2) size estimate with a
/// user-supplied calibration constant.
SizeEstimateReport size_estimate_check(const FieldState& initial, const StepControl& c,
                                       double calibration, const Grid& g, double sobolev_s = 2.0);

}  // namespace dp3
