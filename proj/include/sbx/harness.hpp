#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sbx/bitstring.hpp"
#include "sbx/nn.hpp"
#include "sbx/qsam.hpp"

namespace sbx::harness {

enum class Architecture { EncoderClassifier, DecoderCore, SamGanGeneratorCore };

const char* to_string(Architecture a);
Architecture parse_architecture(const std::string& name);

/// One candidate architecture. sam_kind is "Classical" or a variant name
/// from the family implied by the architecture (EncoderClassifier and
/// DecoderCore draw from the encoder/decoder table, SamGanGeneratorCore
/// from the SAM+GAN table).
struct ModelConfig {
    std::string label;
    Architecture architecture = Architecture::EncoderClassifier;
    std::string sam_kind = "Classical";
    nn::InitKind init = nn::InitKind::Normal;
    int blocks = 1;
    int d_model = 8;
    int input_bits = 5;
    int qubits = 4; // feature-map register size; other encodings fix their own
    std::optional<qsam::ValueMeasurement> value_measurement;

    bool is_classical() const { return sam_kind == "Classical"; }
    qsam::Family family() const;
};

/// Validates the (architecture, sam_kind) combination and all per-encoding
/// size constraints; returns the resolved variant row for quantum configs.
std::optional<qsam::QsamVariant> validate_config(const ModelConfig& config);

/// Trainable-parameter count of one self-attention block: 3*d*d for the
/// classical W^{Q,K,V}, or the three ansatz angle blocks plus projection
/// entries for quantum variants.
long sam_parameter_count(const ModelConfig& config);

/// Number of per-token measurement operators (query/key + value) for one
/// quantum SAM evaluation; 0 for classical configs. Surfaces the cost of
/// exponential panels in reports.
long measurements_per_token(const ModelConfig& config);

/// A fully initialized model mapping n input bits to one output bit: token
/// embedding + sinusoidal positions, `blocks` x (SAM, residual, layer norm,
/// FFN, residual, layer norm), then a single fully connected node. The
/// output bit is 1 iff the head pre-activation is strictly positive.
class BooleanClassifier {
public:
    BooleanClassifier(const ModelConfig& config, std::mt19937_64& rng);

    int operator()(const std::vector<std::uint8_t>& bits) const;

    const ModelConfig& config() const { return config_; }

private:
    struct Block {
        nn::Matrix wq, wk, wv;          // classical path
        qsam::QsamParams qparams;       // quantum path
        nn::Matrix ffn_w1, ffn_w2;
        std::vector<double> ffn_b1, ffn_b2;
    };

    nn::Matrix build_input(const std::vector<std::uint8_t>& bits) const;

    ModelConfig config_;
    std::optional<qsam::QsamVariant> variant_;
    nn::Matrix embedding_; // 2 x d_model
    std::vector<double> class_token_;
    nn::Matrix positions_;
    std::vector<Block> blocks_;
    std::vector<double> head_weights_;
    double head_bias_ = 0.0;
    std::vector<double> ln_gain_, ln_bias_;
};

struct HarvestResult {
    ModelConfig config;
    std::vector<BitString> functions; // T strings of length 2^n
    std::vector<double> scores;       // LZ complexity per function
    std::uint64_t master_seed = 0;
};

using ModelFn = std::function<int(const std::vector<std::uint8_t>&)>;
using ModelFactory = std::function<ModelFn(std::uint64_t trial_seed)>;

/// Runs `trials` independent initializations. Trial i seeds its generator
/// from (master_seed, config.label, i), evaluates all 2^n inputs in
/// ascending binary order (integer v maps to big-endian bits), and scores
/// the concatenated output string. Identical inputs give bit-identical
/// results for any thread count.
HarvestResult harvest(const ModelConfig& config, std::size_t trials,
                      std::uint64_t master_seed, int threads = 1);

/// Same enumeration and seeding contract, but the model for each trial
/// comes from `factory`. Lets callers drive the harvest loop with sentinel
/// models.
HarvestResult harvest_model(const std::string& label, int input_bits,
                            const ModelFactory& factory, std::size_t trials,
                            std::uint64_t master_seed, int threads = 1);

} // namespace sbx::harness
