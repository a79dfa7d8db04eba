#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sbx/nn.hpp"
#include "sbx/qsim.hpp"

namespace sbx::qsam {

enum class Family { EncoderDecoder, SamGan };
enum class VariantName { Canonical, V1, V2, V3, V4 };
enum class Encoding { Angle, Amplitude, FeatureMap };
enum class QkMeasurement { SingleZ, AllZ, Anticommuting, PauliPanel };
enum class ValueMeasurement { AllZ, BasisProbs, PauliPanel };
enum class AttentionMethod { Gaussian, SoftmaxOuter, ClassicalDot };

/// One row of the variant tables: how tokens are encoded, what the query/key
/// and value circuits measure, and how scores are formed.
struct QsamVariant {
    Family family;
    VariantName name;
    Encoding encoding;
    QkMeasurement query_key_measurement;
    ValueMeasurement value_measurement;
    AttentionMethod attention;
};

/// Rows for the transformer encoder/decoder family: the canonical row uses
/// feature mapping, all others amplitude encoding.
const std::vector<QsamVariant>& encoder_decoder_variants();

/// Rows for the SAM+GAN family: angle encoding throughout.
const std::vector<QsamVariant>& sam_gan_variants();

/// Resolves (family, name); throws listing the allowed rows. The optional
/// value-measurement override is accepted only where the encoding admits it
/// (amplitude rows may switch BasisProbs <-> PauliPanel).
QsamVariant lookup_variant(Family family, const std::string& name,
                           std::optional<ValueMeasurement> value_override = {});

const char* to_string(Family f);
const char* to_string(Encoding e);
const char* to_string(QkMeasurement m);
const char* to_string(ValueMeasurement m);
const char* to_string(AttentionMethod a);
const char* to_string(VariantName v);

/// Qubit count of the per-token circuit implied by the encoding.
int register_size(Encoding encoding, int d_model, int configured_qubits);

int qk_feature_dim(QkMeasurement m, int qubits);
int value_feature_dim(ValueMeasurement m, int qubits);

/// Independent ansatz angles for the three roles plus the optional linear
/// map from the measured value dimension back to d_model (present exactly
/// when those dimensions differ).
struct QsamParams {
    qsim::AnsatzParams query;
    qsim::AnsatzParams key;
    qsim::AnsatzParams value;
    std::optional<nn::Matrix> projection;
};

enum class Role { Query, Key, Value };

/// Encode one token, run the role's ansatz, measure per the variant.
std::vector<double> token_features(std::span<const double> token,
                                   const QsamVariant& variant,
                                   const QsamParams& params, Role role);

/// a_ij = exp(-(zq_i - zk_j)^2), rows normalized by their sums.
nn::Matrix gaussian_attention(std::span<const double> zq, std::span<const double> zk);

/// Row softmax over the outer product zq_i * zk_j.
nn::Matrix softmax_outer_attention(std::span<const double> zq, std::span<const double> zk);

struct ForwardResult {
    nn::Matrix scores; // n x n, row-stochastic
    nn::Matrix output; // n x d_model
};

/// Full quantum self-attention pass over an n x d_model token matrix.
ForwardResult qsam_forward_detail(const nn::Matrix& x, const QsamVariant& variant,
                                  const QsamParams& params);

inline nn::Matrix qsam_forward(const nn::Matrix& x, const QsamVariant& variant,
                               const QsamParams& params) {
    return qsam_forward_detail(x, variant, params).output;
}

} // namespace sbx::qsam
