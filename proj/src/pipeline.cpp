#include "sbx/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "sbx/qsam.hpp"

namespace sbx::pipeline {

using nlohmann::json;

namespace {

nn::InitKind parse_init(const std::string& name) {
    if (name == "Normal" || name == "N") return nn::InitKind::Normal;
    if (name == "XavierUniform" || name == "X") return nn::InitKind::XavierUniform;
    if (name == "XavierCustom" || name == "XB") return nn::InitKind::XavierCustom;
    throw std::invalid_argument("unknown init scheme '" + name +
                                "'; expected Normal, XavierUniform or XavierCustom");
}

const char* init_name(nn::InitKind kind) {
    switch (kind) {
        case nn::InitKind::Normal: return "Normal";
        case nn::InitKind::XavierUniform: return "XavierUniform";
        case nn::InitKind::XavierCustom: return "XavierCustom";
    }
    return "?";
}

qsam::ValueMeasurement parse_value_measurement(const std::string& name) {
    if (name == "AllZ") return qsam::ValueMeasurement::AllZ;
    if (name == "BasisProbs") return qsam::ValueMeasurement::BasisProbs;
    if (name == "PauliPanel") return qsam::ValueMeasurement::PauliPanel;
    throw std::invalid_argument("unknown value measurement '" + name +
                                "'; expected AllZ, BasisProbs or PauliPanel");
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

} // namespace

harness::ModelConfig parse_model_config(const json& j, int input_bits) {
    harness::ModelConfig config;
    config.label = j.at("label").get<std::string>();
    config.architecture = harness::parse_architecture(j.at("architecture").get<std::string>());
    config.sam_kind = j.at("sam_kind").get<std::string>();
    config.init = parse_init(j.at("init").get<std::string>());
    config.blocks = j.value("blocks", 1);
    config.d_model = j.value("d_model", 8);
    config.qubits = j.value("qubits", 4);
    config.input_bits = input_bits;
    if (j.contains("measurement"))
        config.value_measurement = parse_value_measurement(j.at("measurement").get<std::string>());

    const auto variant = harness::validate_config(config);

    // Optional declarative fields must agree with the resolved variant row.
    if (variant) {
        if (j.contains("encoding") &&
            j.at("encoding").get<std::string>() != qsam::to_string(variant->encoding))
            throw std::invalid_argument("config '" + config.label + "': encoding '" +
                                        j.at("encoding").get<std::string>() +
                                        "' conflicts with variant row (" +
                                        qsam::to_string(variant->encoding) + ")");
        if (j.contains("attention") &&
            j.at("attention").get<std::string>() != qsam::to_string(variant->attention))
            throw std::invalid_argument("config '" + config.label + "': attention '" +
                                        j.at("attention").get<std::string>() +
                                        "' conflicts with variant row (" +
                                        qsam::to_string(variant->attention) + ")");
    } else if (j.contains("encoding") || j.contains("attention")) {
        throw std::invalid_argument("config '" + config.label +
                                    "': encoding/attention do not apply to Classical");
    }
    return config;
}

RunSpec parse_run_spec(const json& j) {
    RunSpec spec;
    spec.trials = j.value("trials", std::size_t{10000});
    spec.input_bits = j.value("input_bits", 5);
    spec.seed = j.value("seed", std::uint64_t{0});
    spec.top_k = j.value("top_k", std::size_t{1});
    if (!j.contains("configs") || !j.at("configs").is_array() || j.at("configs").empty())
        throw std::invalid_argument("run spec: 'configs' must be a nonempty array");
    for (const auto& entry : j.at("configs"))
        spec.configs.push_back(parse_model_config(entry, spec.input_bits));
    return spec;
}

static void validate_spec(const RunSpec& spec) {
    if (spec.configs.empty()) throw std::invalid_argument("run spec: no configs");
    if (spec.trials < 1) throw std::invalid_argument("run spec: trials must be >= 1");
    if (spec.top_k < 1 || spec.top_k > spec.configs.size())
        throw std::invalid_argument("run spec: top_k must be in [1, config count]");
    std::set<std::string> labels;
    for (const auto& c : spec.configs) {
        if (!labels.insert(c.label).second)
            throw std::invalid_argument("run spec: duplicate label '" + c.label + "'");
    }
}

RankedReport rank_harvests(const RunSpec& spec,
                           const std::vector<harness::HarvestResult>& harvests) {
    if (harvests.size() != spec.configs.size())
        throw std::invalid_argument("rank_harvests: harvest/config count mismatch");

    RankedReport report;
    report.trials = spec.trials;
    report.input_bits = spec.input_bits;
    report.seed = spec.seed;
    // Shared integration range: the theoretical minimum for n-bit inputs and
    // the largest complexity seen anywhere in this run.
    report.c_min = static_cast<double>(spec.input_bits);
    report.c_max = report.c_min;
    for (const auto& h : harvests)
        for (double s : h.scores) report.c_max = std::max(report.c_max, s);

    for (std::size_t i = 0; i < harvests.size(); ++i) {
        ConfigResult entry;
        entry.config = spec.configs[i];
        entry.distribution = metrics::empirical_distribution(harvests[i].scores);
        entry.auc = metrics::auc(entry.distribution, report.c_min, report.c_max);
        entry.exp = metrics::expressivity(harvests[i].functions);
        entry.parameter_count = harness::sam_parameter_count(spec.configs[i]);
        entry.measurements_per_token = harness::measurements_per_token(spec.configs[i]);
        report.entries.push_back(std::move(entry));
    }

    std::sort(report.entries.begin(), report.entries.end(),
              [](const ConfigResult& a, const ConfigResult& b) {
                  if (a.auc != b.auc) return a.auc > b.auc;
                  return a.config.label < b.config.label;
              });
    for (std::size_t i = 0; i < spec.top_k; ++i)
        report.selected.push_back(report.entries[i].config.label);
    return report;
}

RankedReport run(const RunSpec& spec) {
    validate_spec(spec);

    std::vector<harness::HarvestResult> harvests;
    harvests.reserve(spec.configs.size());
    for (const auto& config : spec.configs) {
        try {
            harvests.push_back(harness::harvest(config, spec.trials, spec.seed, spec.threads));
        } catch (const std::exception& e) {
            throw std::runtime_error("config '" + config.label + "' failed: " + e.what());
        }
    }
    return rank_harvests(spec, harvests);
}

json report_to_json(const RankedReport& report) {
    json j;
    j["c_min"] = report.c_min;
    j["c_max"] = report.c_max;
    j["trials"] = report.trials;
    j["input_bits"] = report.input_bits;
    j["seed"] = report.seed;
    j["selected"] = report.selected;
    json entries = json::array();
    for (const auto& e : report.entries) {
        json item;
        item["label"] = e.config.label;
        item["auc"] = e.auc;
        item["exp"] = e.exp;
        item["parameter_count"] = e.parameter_count;
        item["measurements_per_token"] = e.measurements_per_token;
        item["histogram"] = {{"support", e.distribution.support},
                             {"mass", e.distribution.mass}};
        item["config"] = {{"architecture", harness::to_string(e.config.architecture)},
                          {"sam_kind", e.config.sam_kind},
                          {"init", init_name(e.config.init)},
                          {"blocks", e.config.blocks},
                          {"d_model", e.config.d_model},
                          {"qubits", e.config.qubits}};
        entries.push_back(std::move(item));
    }
    j["configs"] = std::move(entries);
    return j;
}

RankedReport report_from_json(const json& j) {
    RankedReport report;
    report.c_min = j.at("c_min").get<double>();
    report.c_max = j.at("c_max").get<double>();
    report.trials = j.at("trials").get<std::size_t>();
    report.input_bits = j.at("input_bits").get<int>();
    report.seed = j.at("seed").get<std::uint64_t>();
    report.selected = j.at("selected").get<std::vector<std::string>>();
    for (const auto& item : j.at("configs")) {
        ConfigResult e;
        e.config.label = item.at("label").get<std::string>();
        e.auc = item.at("auc").get<double>();
        e.exp = item.at("exp").get<double>();
        e.parameter_count = item.value("parameter_count", 0L);
        e.measurements_per_token = item.value("measurements_per_token", 0L);
        if (item.contains("histogram")) {
            e.distribution.support = item["histogram"].at("support").get<std::vector<double>>();
            e.distribution.mass = item["histogram"].at("mass").get<std::vector<double>>();
            e.distribution.trials = report.trials;
        }
        report.entries.push_back(std::move(e));
    }
    return report;
}

std::string report_to_csv(const RankedReport& report) {
    std::string out = "label,auc,exp,params\n";
    for (const auto& e : report.entries) {
        out += e.config.label;
        out += ',';
        out += format_double(e.auc);
        out += ',';
        out += format_double(e.exp);
        out += ',';
        out += std::to_string(e.parameter_count);
        out += '\n';
    }
    return out;
}

namespace {

struct PerformanceTable {
    std::vector<std::string> columns;
    std::vector<std::string> labels;
    std::vector<std::vector<double>> values; // per row, one value per column
};

PerformanceTable parse_performance_csv(const std::string& text) {
    PerformanceTable table;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream row(line);
        while (std::getline(row, cell, ',')) cells.push_back(cell);
        if (header) {
            if (cells.size() < 2 || cells[0] != "label")
                throw std::invalid_argument("performance CSV: header must be label,metric,...");
            table.columns.assign(cells.begin() + 1, cells.end());
            header = false;
            continue;
        }
        if (cells.size() != table.columns.size() + 1)
            throw std::invalid_argument("performance CSV: ragged row '" + line + "'");
        table.labels.push_back(cells[0]);
        std::vector<double> row_values;
        for (std::size_t i = 1; i < cells.size(); ++i) {
            std::size_t used = 0;
            const double v = std::stod(cells[i], &used);
            if (used != cells[i].size())
                throw std::invalid_argument("performance CSV: bad number '" + cells[i] + "'");
            row_values.push_back(v);
        }
        table.values.push_back(std::move(row_values));
    }
    if (table.columns.empty()) throw std::invalid_argument("performance CSV: empty file");
    return table;
}

json correlation_json(const metrics::CorrelationResult& r) {
    return {{"rho", r.rho}, {"p_value", r.p_value}, {"n", r.n}};
}

} // namespace

json correlate(const RankedReport& report, const std::string& csv_text) {
    const PerformanceTable table = parse_performance_csv(csv_text);

    std::map<std::string, std::pair<double, double>> by_label; // label -> (auc, exp)
    for (const auto& e : report.entries)
        by_label[e.config.label] = {e.auc, e.exp};

    std::vector<double> auc_col, exp_col;
    std::vector<std::vector<double>> metric_cols(table.columns.size());
    for (std::size_t r = 0; r < table.labels.size(); ++r) {
        auto it = by_label.find(table.labels[r]);
        if (it == by_label.end())
            throw std::invalid_argument("correlate: label '" + table.labels[r] +
                                        "' not present in report");
        auc_col.push_back(it->second.first);
        exp_col.push_back(it->second.second);
        for (std::size_t c = 0; c < table.columns.size(); ++c)
            metric_cols[c].push_back(table.values[r][c]);
    }
    if (auc_col.size() < 3)
        throw std::invalid_argument("correlate: need at least 3 overlapping labels");

    json cells;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        cells["auc"][table.columns[c]] = correlation_json(metrics::spearman(auc_col, metric_cols[c]));
        cells["exp"][table.columns[c]] = correlation_json(metrics::spearman(exp_col, metric_cols[c]));
    }
    json out;
    out["n"] = auc_col.size();
    out["cells"] = std::move(cells);
    return out;
}

json harvest_to_json(const harness::HarvestResult& result) {
    json j;
    j["label"] = result.config.label;
    j["seed"] = result.master_seed;
    j["n"] = result.config.input_bits;
    j["T"] = result.functions.size();
    json functions = json::array();
    for (const auto& f : result.functions) functions.push_back(f.to_hex());
    j["functions"] = std::move(functions);
    j["scores"] = result.scores;
    return j;
}

json variant_tables_json() {
    auto row_json = [](const qsam::QsamVariant& v) {
        return json{{"name", qsam::to_string(v.name)},
                    {"encoding", qsam::to_string(v.encoding)},
                    {"query_key_measurement", qsam::to_string(v.query_key_measurement)},
                    {"value_measurement", qsam::to_string(v.value_measurement)},
                    {"attention", qsam::to_string(v.attention)}};
    };
    json tables;
    tables["encoder_decoder"] = json::array();
    for (const auto& v : qsam::encoder_decoder_variants())
        tables["encoder_decoder"].push_back(row_json(v));
    tables["sam_gan"] = json::array();
    for (const auto& v : qsam::sam_gan_variants()) tables["sam_gan"].push_back(row_json(v));
    return tables;
}

} // namespace sbx::pipeline
