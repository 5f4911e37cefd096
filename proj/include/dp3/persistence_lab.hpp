#pragma once

#include <string>
#include <vector>

#include "dp3/state.hpp"
#include "dp3/weights.hpp"

namespace dp3 {

/// Trackable quantities; rho means the decaying part eta = rho - 1 (far-field
/// reference 1), rho_x its spatial derivative.
enum class TrackField { rho, rho_x, u, u_x, u_xx, v, v_x, v_xx };

TrackField parse_track_field(const std::string& name);
std::string to_string(TrackField f);

struct WeightedSeries {
    std::string profile_label;
    std::vector<double> t;
    std::vector<double> sup;  // max over selected fields of the weighted sup
    double growth_rate = 0.0;  // measured kappa with sup(t) <= e^{kappa t} sup(0)
};

/// Weighted sups over the selected fields for each profile and sample time.
std::vector<WeightedSeries> persistence_track(const std::vector<FieldState>& snapshots,
                                              const std::vector<WeightProfile>& profiles,
                                              const std::vector<TrackField>& selector,
                                              const Grid& g);

enum class DecayClass { little_o, big_O, unbounded };
std::string to_string(DecayClass c);

struct DecayClassification {
    DecayClass cls = DecayClass::unbounded;
    std::vector<double> ladder;    // N values
    std::vector<double> s_values;  // s(N)
    double o_drop = 0.5;
    double O_factor = 2.0;
};

/// Tail decay of eta against the log weight: s(N) = sup_t sup_{|x|>=N}
/// |eta(t,x)| (ln(e+beta+|x|))^beta, classified by its trend along the ladder.
DecayClassification rho_decay_classify(const std::vector<FieldState>& snapshots, double beta,
                                       double gamma, const std::vector<double>& n_ladder,
                                       const Grid& g, double o_drop = 0.5, double O_factor = 2.0);

struct FluxDecayReport {
    double beta = 0.0;
    double gamma = 0.0;
    std::vector<double> sample_xs;
    std::vector<double> flux_transport;   // |int_0^T eta_x u v dt| at the sample points
    std::vector<double> flux_stretch;     // |int_0^T rho (u_x v + u v_x) dt|
    std::vector<double> envelope_transport;  // flux * (ln(e+beta+|x|))^{3 gamma}
    std::vector<double> envelope_stretch;
    double balance_residual = 0.0;  // sup |eta(T) - eta(0) + I1 + I2|
};

/// Time-integrated transport fluxes of the density equation measured against
/// the cubed single-field decay envelope.
FluxDecayReport flux_decay_audit(const std::vector<FieldState>& snapshots, double beta, double gamma,
                                 const std::vector<double>& sample_xs, const Grid& g);

}  // namespace dp3
