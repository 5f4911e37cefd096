#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "dp3/certificates.hpp"
#include "dp3/characteristics.hpp"
#include "dp3/evolution.hpp"
#include "dp3/mollifier_lab.hpp"
#include "dp3/persistence_lab.hpp"

namespace dp3 {

/// 17-significant-digit rendering shared by every CSV writer.
std::string format17(double x);

void write_text_file(const std::string& path, const std::string& body);
void write_json_file(const std::string& path, const nlohmann::json& j);

/// series.csv: t, eta_mass, min_ux, min_vx, criterion_integrand,
/// criterion_integral, per-field norms, per-profile weighted sups; an extra
/// trailing column is appended when `extra` is non-empty.
std::string render_series_csv(const DiagnosticsSeries& series,
                              const std::string& extra_name = {},
                              const std::vector<double>& extra = {});

/// One snapshot file per sample: columns x, eta, u, v.
void write_snapshots(const std::string& dir, const std::vector<FieldState>& snapshots, const Grid& g);

std::string render_trace_csv(const CharTrace& trace, const std::vector<double>& margin);

nlohmann::json to_json(const BlowupReport& r);
nlohmann::json to_json(const BlowupCertificate& c);
nlohmann::json to_json(const LadderTable& t);
nlohmann::json to_json(const SizeEstimateReport& r);
nlohmann::json to_json(const WeightedSeries& s);
nlohmann::json to_json(const DecayClassification& c);
nlohmann::json to_json(const FluxDecayReport& r);

/// manifest.json: config echo, grid, scheme and code version; the only file
/// that carries a timestamp.
nlohmann::json make_manifest(const nlohmann::json& config_echo, const Grid& g,
                             const std::vector<std::string>& outputs);

}  // namespace dp3
