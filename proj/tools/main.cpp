#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbx/lz.hpp"
#include "sbx/pipeline.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << data;
}

struct CommonFlags {
    std::string config_path;
    std::optional<std::size_t> trials;
    std::optional<int> bits;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> top_k;
    std::string out_path;
    int threads = 0;
    std::string format = "json";
};

sbx::pipeline::RunSpec load_spec(const CommonFlags& flags) {
    if (flags.config_path.empty()) throw std::runtime_error("--config is required");
    json doc = json::parse(read_file(flags.config_path));
    if (flags.trials) doc["trials"] = *flags.trials;
    if (flags.bits) doc["input_bits"] = *flags.bits;
    if (flags.seed) doc["seed"] = *flags.seed;
    if (flags.top_k) doc["top_k"] = *flags.top_k;
    auto spec = sbx::pipeline::parse_run_spec(doc);
    spec.threads = flags.threads;
    return spec;
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty())
        std::cout << payload;
    else
        write_file(out_path, payload);
}

int cmd_run(const CommonFlags& flags) {
    const auto spec = load_spec(flags);
    const auto report = sbx::pipeline::run(spec);
    if (flags.format == "csv")
        emit(flags.out_path, sbx::pipeline::report_to_csv(report));
    else
        emit(flags.out_path, sbx::pipeline::report_to_json(report).dump(2) + "\n");
    return 0;
}

int cmd_lz(const std::string& input) {
    std::string text = input;
    if (text == "-") {
        std::ostringstream buf;
        buf << std::cin.rdbuf();
        text = buf.str();
        while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
    }
    const double score = sbx::lz::lz_complexity(sbx::BitString::from_string(text));
    std::printf("%.6f\n", score);
    return 0;
}

int cmd_harvest(const CommonFlags& flags, const std::string& label) {
    auto spec = load_spec(flags);
    const sbx::harness::ModelConfig* chosen = nullptr;
    if (label.empty()) {
        chosen = &spec.configs.front();
    } else {
        for (const auto& c : spec.configs)
            if (c.label == label) { chosen = &c; break; }
        if (!chosen) throw std::runtime_error("label '" + label + "' not found in config");
    }
    const auto result =
        sbx::harness::harvest(*chosen, spec.trials, spec.seed, spec.threads);
    emit(flags.out_path, sbx::pipeline::harvest_to_json(result).dump(2) + "\n");
    return 0;
}

int cmd_correlate(const std::string& report_path, const std::string& csv_path,
                  const std::string& out_path) {
    const auto report =
        sbx::pipeline::report_from_json(json::parse(read_file(report_path)));
    const auto result = sbx::pipeline::correlate(report, read_file(csv_path));
    emit(out_path, result.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Training-free ranking of attention architectures by simplicity bias"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string lz_input;
    std::string harvest_label;
    std::string report_path, csv_path;

    auto add_common = [&](CLI::App* cmd, bool with_format) {
        cmd->add_option("--config", flags.config_path, "Run spec JSON file");
        cmd->add_option("--trials", flags.trials, "Override trial count");
        cmd->add_option("--bits", flags.bits, "Override input bit length");
        cmd->add_option("--seed", flags.seed, "Override master seed");
        cmd->add_option("--top-k", flags.top_k, "Override top-k selection");
        cmd->add_option("--out", flags.out_path, "Output path (default stdout)");
        cmd->add_option("--threads", flags.threads, "Worker threads, 0 = auto");
        if (with_format)
            cmd->add_option("--format", flags.format, "json or csv")
                ->check(CLI::IsMember({"json", "csv"}));
    };

    CLI::App* run_cmd = app.add_subcommand("run", "Full pipeline: harvest, score, rank");
    add_common(run_cmd, true);

    CLI::App* lz_cmd = app.add_subcommand("lz", "Score one 0/1 string");
    lz_cmd->add_option("string", lz_input, "Bit string, or - for stdin")->required();

    CLI::App* harvest_cmd = app.add_subcommand("harvest", "Dump functions for one config");
    add_common(harvest_cmd, false);
    harvest_cmd->add_option("--label", harvest_label, "Config label (default: first)");

    CLI::App* correlate_cmd =
        app.add_subcommand("correlate", "Rank-correlate a report with a performance CSV");
    correlate_cmd->add_option("--report", report_path, "Report JSON from `run`")->required();
    correlate_cmd->add_option("--performance", csv_path, "CSV: label,metric1,...")->required();
    correlate_cmd->add_option("--out", flags.out_path, "Output path (default stdout)");

    CLI::App* variants_cmd =
        app.add_subcommand("variants", "Print the variant tables as JSON");
    variants_cmd->add_option("--out", flags.out_path, "Output path (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(flags);
        if (lz_cmd->parsed()) return cmd_lz(lz_input);
        if (harvest_cmd->parsed()) return cmd_harvest(flags, harvest_label);
        if (correlate_cmd->parsed()) return cmd_correlate(report_path, csv_path, flags.out_path);
        if (variants_cmd->parsed()) {
            emit(flags.out_path, sbx::pipeline::variant_tables_json().dump(2) + "\n");
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << nlohmann::json{{"error", e.what()}}.dump() << "\n";
        return 1;
    }
    return 0;
}
