#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dp3/dynamics.hpp"
#include "dp3/evolution.hpp"
#include "dp3/state.hpp"
#include "dp3/weights.hpp"

namespace dp3 {

struct PersistConfig {
    double beta = 1.0;
    double gamma = 0.5;
    std::vector<double> n_ladder;
    std::vector<std::string> selector;
    std::vector<double> flux_sample_xs;
};

/// One JSON document drives every command; see README for the schema.
struct RunConfig {
    double L = 0.0;
    std::size_t n_points = 0;

    StepControl time;
    std::size_t sample_every = 1;

    RhsForm form = RhsForm::convolution;
    double sobolev_s = 2.0;

    InitSpec init;

    std::optional<double> certify_x0;
    std::vector<WeightProfile> weights;

    std::vector<double> mollify_epsilons;
    double mollify_calibration = 1.0;

    std::optional<PersistConfig> persist;
    double classify_o_drop = 0.5;
    double classify_O_factor = 2.0;

    std::optional<ReductionKind> reduction;

    nlohmann::json raw;  // full echo for the manifest
};

/// Parse and validate; every violation throws config_error.
RunConfig parse_config_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

}  // namespace dp3
