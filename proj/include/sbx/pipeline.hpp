#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sbx/harness.hpp"
#include "sbx/metrics.hpp"

namespace sbx::pipeline {

struct RunSpec {
    std::vector<harness::ModelConfig> configs;
    std::size_t trials = 10000;
    int input_bits = 5;
    std::uint64_t seed = 0;
    std::size_t top_k = 1;
    int threads = 1;
};

struct ConfigResult {
    harness::ModelConfig config;
    double auc = 0.0;
    double exp = 0.0;
    long parameter_count = 0;
    long measurements_per_token = 0;
    metrics::ComplexityDistribution distribution;
};

/// Pipeline output: entries sorted by descending AUC (ties broken by label),
/// scored against one shared integration range.
struct RankedReport {
    double c_min = 0.0;
    double c_max = 0.0;
    std::size_t trials = 0;
    int input_bits = 0;
    std::uint64_t seed = 0;
    std::vector<ConfigResult> entries;
    std::vector<std::string> selected; // top-k labels
};

/// Harvests every config, computes AUC/EXP against the shared bounds
/// (c_min = input bit count, c_max = maximum complexity observed anywhere in
/// the run), ranks, and selects the top k. Any config failure is rethrown
/// with the failing label prefixed.
RankedReport run(const RunSpec& spec);

/// Scoring/ranking phase of `run`, separated so harvests can be supplied
/// directly. harvests[i] must correspond to spec.configs[i].
RankedReport rank_harvests(const RunSpec& spec,
                           const std::vector<harness::HarvestResult>& harvests);

nlohmann::json report_to_json(const RankedReport& report);
RankedReport report_from_json(const nlohmann::json& j);
std::string report_to_csv(const RankedReport& report);

/// Spearman rho/p between the report's AUC and EXP columns and each metric
/// column of the CSV (header `label,metric1,...`). Every CSV label must
/// exist in the report and at least 3 rows are required.
nlohmann::json correlate(const RankedReport& report, const std::string& csv_text);

/// Parses {"trials", "input_bits", "seed", "top_k", "configs": [...]}.
RunSpec parse_run_spec(const nlohmann::json& j);

harness::ModelConfig parse_model_config(const nlohmann::json& j, int input_bits);

nlohmann::json harvest_to_json(const harness::HarvestResult& result);

/// Machine-readable dump of both variant tables.
nlohmann::json variant_tables_json();

} // namespace sbx::pipeline
