#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dp3/dynamics.hpp"
#include "dp3/norms.hpp"
#include "dp3/state.hpp"
#include "dp3/weights.hpp"

namespace dp3 {

struct StepControl {
    double dt_max = 1e-2;
    double cfl = 0.3;
    double dt_min = 1e-9;
    double slope_threshold = 1e6;
    double t_end = 1.0;

    void validate() const;
};

enum class StopReason { none, slope_threshold, dt_underflow, non_finite };
std::string to_string(StopReason r);

struct BlowupReport {
    bool detected = false;
    double t_detect = 0.0;
    StopReason reason = StopReason::none;
    double final_min_slope = 0.0;
    double criterion_integral_at_detection = 0.0;
};

/// One diagnostics row; written at every sample time.
struct DiagnosticsSample {
    double t = 0.0;
    double eta_mass = 0.0;
    double min_ux = 0.0;
    double min_vx = 0.0;
    double criterion_integrand = 0.0;
    double criterion_integral = 0.0;
    StateNorms norms;
    std::vector<double> weighted_sups;  // one per configured profile
};

struct DiagnosticsSeries {
    std::vector<DiagnosticsSample> samples;
    std::vector<std::string> profile_labels;
};

struct RunResult {
    DiagnosticsSeries series;
    BlowupReport report;
    std::vector<FieldState> snapshots;  // one per sample time
};

/// ||u||_W1inf ||v||_W1inf + ||eta+1||_Linf^2 at one state.
double criterion_value(const FieldState& s, const Grid& g);

/// CFL-limited step: min(dt_max, cfl*dx / max(1e-12, max|u v|)).
double adaptive_dt(const FieldState& s, const StepControl& c, const Grid& g);

/// Classical four-stage explicit step; t advances by dt.
FieldState rk4_step(const FieldState& s, double dt, RhsForm form, const Grid& g);

struct RunOptions {
    std::size_t sample_every = 1;
    double sobolev_s = 2.0;
    std::vector<WeightProfile> profiles;
    bool keep_snapshots = true;
};

/// Integrate until t_end or a stop condition; deterministic for fixed inputs.
RunResult run(const FieldState& initial, const StepControl& c, RhsForm form, const Grid& g,
              const RunOptions& opts = {});

}  // namespace dp3
