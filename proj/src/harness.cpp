#include "sbx/harness.hpp"

#include <cmath>
#include <stdexcept>

#include "sbx/lz.hpp"
#include "sbx/parallel.hpp"
#include "sbx/rng.hpp"

namespace sbx::harness {

namespace {
constexpr int kAnsatzLayers = 1;
constexpr int kFfnExpansion = 4;
} // namespace

const char* to_string(Architecture a) {
    switch (a) {
        case Architecture::EncoderClassifier: return "EncoderClassifier";
        case Architecture::DecoderCore: return "DecoderCore";
        case Architecture::SamGanGeneratorCore: return "SamGanGeneratorCore";
    }
    return "?";
}

Architecture parse_architecture(const std::string& name) {
    if (name == "EncoderClassifier") return Architecture::EncoderClassifier;
    if (name == "DecoderCore") return Architecture::DecoderCore;
    if (name == "SamGanGeneratorCore") return Architecture::SamGanGeneratorCore;
    throw std::invalid_argument("unknown architecture '" + name +
                                "'; expected EncoderClassifier, DecoderCore or "
                                "SamGanGeneratorCore");
}

qsam::Family ModelConfig::family() const {
    return architecture == Architecture::SamGanGeneratorCore ? qsam::Family::SamGan
                                                             : qsam::Family::EncoderDecoder;
}

std::optional<qsam::QsamVariant> validate_config(const ModelConfig& config) {
    if (config.label.empty()) throw std::invalid_argument("config label must be nonempty");
    if (config.input_bits < 2 || config.input_bits > 8)
        throw std::invalid_argument("input_bits must be in [2, 8]");
    if (config.blocks < 1) throw std::invalid_argument("blocks must be >= 1");
    if (config.d_model < 2 || config.d_model % 2 != 0)
        throw std::invalid_argument("d_model must be even and >= 2");

    if (config.is_classical()) {
        if (config.value_measurement)
            throw std::invalid_argument("value measurement does not apply to Classical");
        return std::nullopt;
    }

    qsam::QsamVariant variant =
        qsam::lookup_variant(config.family(), config.sam_kind, config.value_measurement);
    const int q = qsam::register_size(variant.encoding, config.d_model, config.qubits);
    if (q < 1 || q > qsim::kMaxQubits)
        throw std::invalid_argument("register too large");
    if (variant.encoding == qsam::Encoding::FeatureMap &&
        config.d_model % (2 * config.qubits) != 0)
        throw std::invalid_argument("d must be a multiple of 2*n_q");
    if ((variant.query_key_measurement == qsam::QkMeasurement::PauliPanel ||
         variant.value_measurement == qsam::ValueMeasurement::PauliPanel) &&
        q > 6)
        throw std::invalid_argument("pauli panel measurement capped at 6 qubits");
    return variant;
}

long sam_parameter_count(const ModelConfig& config) {
    const long d = config.d_model;
    if (config.is_classical()) return 3 * d * d;
    const qsam::QsamVariant variant = *validate_config(config);
    const int q = qsam::register_size(variant.encoding, config.d_model, config.qubits);
    long count = 3L * 2 * q * kAnsatzLayers;
    const int f_v = qsam::value_feature_dim(variant.value_measurement, q);
    if (f_v != config.d_model) count += static_cast<long>(f_v) * config.d_model;
    return count;
}

long measurements_per_token(const ModelConfig& config) {
    if (config.is_classical()) return 0;
    const qsam::QsamVariant variant = *validate_config(config);
    const int q = qsam::register_size(variant.encoding, config.d_model, config.qubits);
    return 2L * qsam::qk_feature_dim(variant.query_key_measurement, q) +
           qsam::value_feature_dim(variant.value_measurement, q);
}

namespace {

nn::InitScheme scheme_for(const ModelConfig& config, int rows, int cols) {
    nn::InitScheme s;
    s.kind = config.init;
    // XavierCustom fans apply to circuit angle blocks; for ordinary matrices
    // the scheme falls back to the matrix's own shape.
    s.fan_in = rows;
    s.fan_out = cols;
    return s;
}

nn::InitScheme ansatz_scheme(const ModelConfig& config, int qubits, int measurement_ops) {
    nn::InitScheme s;
    s.kind = config.init;
    s.fan_in = qubits;
    s.fan_out = measurement_ops;
    return s;
}

qsim::AnsatzParams draw_ansatz(const ModelConfig& config, int qubits, int measurement_ops,
                               std::mt19937_64& rng) {
    const nn::Matrix angles =
        nn::init_matrix(2 * kAnsatzLayers, qubits, ansatz_scheme(config, qubits, measurement_ops), rng);
    qsim::AnsatzParams params;
    params.qubits = qubits;
    params.layers = kAnsatzLayers;
    params.thetas.resize(static_cast<std::size_t>(2) * qubits * kAnsatzLayers);
    for (int l = 0; l < kAnsatzLayers; ++l) {
        for (int j = 0; j < qubits; ++j) {
            params.thetas[static_cast<std::size_t>(l) * 2 * qubits + 2 * j] = angles.at(2 * l, j);
            params.thetas[static_cast<std::size_t>(l) * 2 * qubits + 2 * j + 1] =
                angles.at(2 * l + 1, j);
        }
    }
    return params;
}

} // namespace

BooleanClassifier::BooleanClassifier(const ModelConfig& config, std::mt19937_64& rng)
    : config_(config), variant_(validate_config(config)) {
    const int d = config.d_model;
    const int seq_len =
        config.input_bits + (config.architecture == Architecture::EncoderClassifier ? 1 : 0);

    // Parameter draw order is part of the determinism contract: embedding,
    // class token, then per block (SAM, FFN), then the head.
    embedding_ = nn::init_matrix(2, d, scheme_for(config, 2, d), rng);
    if (config.architecture == Architecture::EncoderClassifier) {
        const nn::Matrix token = nn::init_matrix(1, d, scheme_for(config, 1, d), rng);
        class_token_.assign(token.data.begin(), token.data.end());
    }
    positions_ = nn::positional_encoding(seq_len, d);

    blocks_.resize(config.blocks);
    for (Block& block : blocks_) {
        if (config.is_classical()) {
            block.wq = nn::init_matrix(d, d, scheme_for(config, d, d), rng);
            block.wk = nn::init_matrix(d, d, scheme_for(config, d, d), rng);
            block.wv = nn::init_matrix(d, d, scheme_for(config, d, d), rng);
        } else {
            const qsam::QsamVariant& variant = *variant_;
            const int q = qsam::register_size(variant.encoding, d, config.qubits);
            const int f_qk = qsam::qk_feature_dim(variant.query_key_measurement, q);
            const int f_v = qsam::value_feature_dim(variant.value_measurement, q);
            block.qparams.query = draw_ansatz(config, q, f_qk, rng);
            block.qparams.key = draw_ansatz(config, q, f_qk, rng);
            block.qparams.value = draw_ansatz(config, q, f_v, rng);
            if (f_v != d)
                block.qparams.projection =
                    nn::init_matrix(f_v, d, scheme_for(config, f_v, d), rng);
        }
        const int hidden = kFfnExpansion * d;
        block.ffn_w1 = nn::init_matrix(d, hidden, scheme_for(config, d, hidden), rng);
        block.ffn_w2 = nn::init_matrix(hidden, d, scheme_for(config, hidden, d), rng);
        block.ffn_b1.assign(hidden, 0.0);
        block.ffn_b2.assign(d, 0.0);
    }

    const nn::Matrix head = nn::init_matrix(d, 1, scheme_for(config, d, 1), rng);
    head_weights_.assign(head.data.begin(), head.data.end());
    head_bias_ = 0.0;
    ln_gain_.assign(d, 1.0);
    ln_bias_.assign(d, 0.0);
}

nn::Matrix BooleanClassifier::build_input(const std::vector<std::uint8_t>& bits) const {
    const int d = config_.d_model;
    const bool has_class = config_.architecture == Architecture::EncoderClassifier;
    const int seq_len = static_cast<int>(bits.size()) + (has_class ? 1 : 0);
    nn::Matrix x(seq_len, d);
    for (int t = 0; t < seq_len; ++t) {
        const double* src = nullptr;
        if (has_class && t == 0) {
            src = class_token_.data();
        } else {
            const int bit = bits[t - (has_class ? 1 : 0)];
            src = embedding_.data.data() + static_cast<std::size_t>(bit) * d;
        }
        for (int j = 0; j < d; ++j) x.at(t, j) = src[j] + positions_.at(t, j);
    }
    return x;
}

int BooleanClassifier::operator()(const std::vector<std::uint8_t>& bits) const {
    if (bits.size() != static_cast<std::size_t>(config_.input_bits))
        throw std::invalid_argument("input size mismatch");
    nn::Matrix x = build_input(bits);
    const int d = config_.d_model;

    for (const Block& block : blocks_) {
        const nn::Matrix attended =
            config_.is_classical()
                ? nn::classical_attention(x, block.wq, block.wk, block.wv)
                : qsam::qsam_forward(x, *variant_, block.qparams);
        for (int t = 0; t < x.rows; ++t) {
            std::vector<double> summed(d);
            for (int j = 0; j < d; ++j) summed[j] = x.at(t, j) + attended.at(t, j);
            const auto normed = nn::layer_norm(summed, ln_gain_, ln_bias_);
            for (int j = 0; j < d; ++j) x.at(t, j) = normed[j];
        }
        for (int t = 0; t < x.rows; ++t) {
            const auto f = nn::ffn(x.row(t), block.ffn_w1, block.ffn_b1,
                                   block.ffn_w2, block.ffn_b2);
            std::vector<double> summed(d);
            for (int j = 0; j < d; ++j) summed[j] = x.at(t, j) + f[j];
            const auto normed = nn::layer_norm(summed, ln_gain_, ln_bias_);
            for (int j = 0; j < d; ++j) x.at(t, j) = normed[j];
        }
    }

    std::vector<double> readout(d, 0.0);
    if (config_.architecture == Architecture::EncoderClassifier) {
        for (int j = 0; j < d; ++j) readout[j] = x.at(0, j);
    } else {
        for (int t = 0; t < x.rows; ++t)
            for (int j = 0; j < d; ++j) readout[j] += x.at(t, j);
        for (int j = 0; j < d; ++j) readout[j] /= x.rows;
    }
    double activation = head_bias_;
    for (int j = 0; j < d; ++j) activation += head_weights_[j] * readout[j];
    return activation > 0.0 ? 1 : 0;
}

namespace {

void harvest_into(HarvestResult& result, const std::string& label, int input_bits,
                  const ModelFactory& factory, std::size_t trials,
                  std::uint64_t master_seed, int threads) {
    if (trials < 1) throw std::invalid_argument("harvest: trials must be >= 1");
    const std::size_t inputs = std::size_t{1} << input_bits;
    result.master_seed = master_seed;
    result.functions.resize(trials);
    result.scores.resize(trials);
    parallel_for(trials, threads, [&](std::size_t trial) {
        const ModelFn model = factory(rng::trial_seed(master_seed, label, trial));
        std::vector<std::uint8_t> outputs(inputs);
        std::vector<std::uint8_t> bits(input_bits);
        for (std::size_t v = 0; v < inputs; ++v) {
            for (int t = 0; t < input_bits; ++t)
                bits[t] = static_cast<std::uint8_t>((v >> (input_bits - 1 - t)) & 1);
            outputs[v] = static_cast<std::uint8_t>(model(bits));
        }
        BitString function(std::move(outputs));
        result.scores[trial] = lz::lz_complexity(function);
        result.functions[trial] = std::move(function);
    });
}

} // namespace

HarvestResult harvest(const ModelConfig& config, std::size_t trials,
                      std::uint64_t master_seed, int threads) {
    validate_config(config);
    HarvestResult result;
    result.config = config;
    const ModelFactory factory = [&config](std::uint64_t seed) -> ModelFn {
        std::mt19937_64 rng(seed);
        return BooleanClassifier(config, rng);
    };
    harvest_into(result, config.label, config.input_bits, factory, trials, master_seed,
                 threads);
    return result;
}

HarvestResult harvest_model(const std::string& label, int input_bits,
                            const ModelFactory& factory, std::size_t trials,
                            std::uint64_t master_seed, int threads) {
    if (input_bits < 2 || input_bits > 8)
        throw std::invalid_argument("input_bits must be in [2, 8]");
    HarvestResult result;
    result.config.label = label;
    result.config.input_bits = input_bits;
    harvest_into(result, label, input_bits, factory, trials, master_seed, threads);
    return result;
}

} // namespace sbx::harness
