#include "sbx/qsam.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sbx::qsam {

const std::vector<QsamVariant>& encoder_decoder_variants() {
    static const std::vector<QsamVariant> rows = {
        {Family::EncoderDecoder, VariantName::Canonical, Encoding::FeatureMap,
         QkMeasurement::SingleZ, ValueMeasurement::AllZ, AttentionMethod::Gaussian},
        {Family::EncoderDecoder, VariantName::V1, Encoding::Amplitude,
         QkMeasurement::SingleZ, ValueMeasurement::BasisProbs, AttentionMethod::Gaussian},
        {Family::EncoderDecoder, VariantName::V2, Encoding::Amplitude,
         QkMeasurement::SingleZ, ValueMeasurement::BasisProbs, AttentionMethod::SoftmaxOuter},
        {Family::EncoderDecoder, VariantName::V3, Encoding::Amplitude,
         QkMeasurement::PauliPanel, ValueMeasurement::BasisProbs, AttentionMethod::ClassicalDot},
        {Family::EncoderDecoder, VariantName::V4, Encoding::Amplitude,
         QkMeasurement::Anticommuting, ValueMeasurement::BasisProbs, AttentionMethod::ClassicalDot},
    };
    return rows;
}

const std::vector<QsamVariant>& sam_gan_variants() {
    static const std::vector<QsamVariant> rows = {
        {Family::SamGan, VariantName::Canonical, Encoding::Angle,
         QkMeasurement::SingleZ, ValueMeasurement::AllZ, AttentionMethod::Gaussian},
        {Family::SamGan, VariantName::V1, Encoding::Angle,
         QkMeasurement::AllZ, ValueMeasurement::AllZ, AttentionMethod::ClassicalDot},
        {Family::SamGan, VariantName::V2, Encoding::Angle,
         QkMeasurement::Anticommuting, ValueMeasurement::AllZ, AttentionMethod::ClassicalDot},
        {Family::SamGan, VariantName::V3, Encoding::Angle,
         QkMeasurement::SingleZ, ValueMeasurement::AllZ, AttentionMethod::SoftmaxOuter},
    };
    return rows;
}

const char* to_string(Family f) {
    return f == Family::EncoderDecoder ? "EncoderDecoder" : "SamGan";
}
const char* to_string(Encoding e) {
    switch (e) {
        case Encoding::Angle: return "Angle";
        case Encoding::Amplitude: return "Amplitude";
        case Encoding::FeatureMap: return "FeatureMap";
    }
    return "?";
}
const char* to_string(QkMeasurement m) {
    switch (m) {
        case QkMeasurement::SingleZ: return "SingleZ";
        case QkMeasurement::AllZ: return "AllZ";
        case QkMeasurement::Anticommuting: return "Anticommuting";
        case QkMeasurement::PauliPanel: return "PauliPanel";
    }
    return "?";
}
const char* to_string(ValueMeasurement m) {
    switch (m) {
        case ValueMeasurement::AllZ: return "AllZ";
        case ValueMeasurement::BasisProbs: return "BasisProbs";
        case ValueMeasurement::PauliPanel: return "PauliPanel";
    }
    return "?";
}
const char* to_string(AttentionMethod a) {
    switch (a) {
        case AttentionMethod::Gaussian: return "Gaussian";
        case AttentionMethod::SoftmaxOuter: return "SoftmaxOuter";
        case AttentionMethod::ClassicalDot: return "ClassicalDot";
    }
    return "?";
}
const char* to_string(VariantName v) {
    switch (v) {
        case VariantName::Canonical: return "Canonical";
        case VariantName::V1: return "V1";
        case VariantName::V2: return "V2";
        case VariantName::V3: return "V3";
        case VariantName::V4: return "V4";
    }
    return "?";
}

QsamVariant lookup_variant(Family family, const std::string& name,
                           std::optional<ValueMeasurement> value_override) {
    const auto& rows = family == Family::EncoderDecoder ? encoder_decoder_variants()
                                                        : sam_gan_variants();
    for (const QsamVariant& row : rows) {
        if (name != to_string(row.name)) continue;
        QsamVariant v = row;
        if (value_override) {
            const bool amplitude_swap =
                v.encoding == Encoding::Amplitude &&
                (*value_override == ValueMeasurement::BasisProbs ||
                 *value_override == ValueMeasurement::PauliPanel);
            if (!amplitude_swap && *value_override != v.value_measurement)
                throw std::invalid_argument(
                    std::string("value measurement ") + to_string(*value_override) +
                    " not available for variant " + name + " (" + to_string(family) + ")");
            v.value_measurement = *value_override;
        }
        return v;
    }
    std::ostringstream msg;
    msg << "unknown variant '" << name << "' for family " << to_string(family)
        << "; allowed rows:";
    for (const QsamVariant& row : rows) msg << ' ' << to_string(row.name);
    throw std::invalid_argument(msg.str());
}

int register_size(Encoding encoding, int d_model, int configured_qubits) {
    switch (encoding) {
        case Encoding::Angle:
            return d_model;
        case Encoding::Amplitude: {
            int q = 1;
            while ((1 << q) < d_model) ++q;
            return q;
        }
        case Encoding::FeatureMap:
            return configured_qubits;
    }
    throw std::invalid_argument("register_size: bad encoding");
}

int qk_feature_dim(QkMeasurement m, int qubits) {
    switch (m) {
        case QkMeasurement::SingleZ: return 1;
        case QkMeasurement::AllZ: return qubits;
        case QkMeasurement::Anticommuting: return 2 * qubits + 1;
        case QkMeasurement::PauliPanel: return 1 << qubits;
    }
    throw std::invalid_argument("qk_feature_dim: bad measurement");
}

int value_feature_dim(ValueMeasurement m, int qubits) {
    switch (m) {
        case ValueMeasurement::AllZ: return qubits;
        case ValueMeasurement::BasisProbs: return 1 << qubits;
        case ValueMeasurement::PauliPanel: return 1 << qubits;
    }
    throw std::invalid_argument("value_feature_dim: bad measurement");
}

namespace {

qsim::PauliString single_z(int qubits, int at) {
    qsim::PauliString p;
    p.factors.assign(qubits, qsim::Pauli::I);
    p.factors[at] = qsim::Pauli::Z;
    return p;
}

std::vector<double> measure_qk(const qsim::StateVector& state, QkMeasurement m) {
    const int q = state.qubits;
    std::vector<double> out;
    switch (m) {
        case QkMeasurement::SingleZ:
            out.push_back(qsim::expect_pauli(state, single_z(q, 0)));
            break;
        case QkMeasurement::AllZ:
            out.reserve(q);
            for (int i = 0; i < q; ++i)
                out.push_back(qsim::expect_pauli(state, single_z(q, i)));
            break;
        case QkMeasurement::Anticommuting:
            for (const auto& p : qsim::anticommuting_set(q))
                out.push_back(qsim::expect_pauli(state, p));
            break;
        case QkMeasurement::PauliPanel:
            for (const auto& p : qsim::pauli_panel(q))
                out.push_back(qsim::expect_pauli(state, p));
            break;
    }
    return out;
}

std::vector<double> measure_value(const qsim::StateVector& state, ValueMeasurement m) {
    const int q = state.qubits;
    std::vector<double> out;
    switch (m) {
        case ValueMeasurement::AllZ:
            out.reserve(q);
            for (int i = 0; i < q; ++i)
                out.push_back(qsim::expect_pauli(state, single_z(q, i)));
            break;
        case ValueMeasurement::BasisProbs:
            return qsim::basis_probabilities(state);
        case ValueMeasurement::PauliPanel:
            for (const auto& p : qsim::pauli_panel(q))
                out.push_back(qsim::expect_pauli(state, p));
            break;
    }
    return out;
}

qsim::StateVector encode_token(std::span<const double> token, Encoding encoding,
                               int qubits) {
    switch (encoding) {
        case Encoding::Angle: return qsim::encode_angle(token);
        case Encoding::Amplitude: return qsim::encode_amplitude(token);
        case Encoding::FeatureMap: return qsim::encode_feature_map(token, qubits);
    }
    throw std::invalid_argument("encode_token: bad encoding");
}

} // namespace

std::vector<double> token_features(std::span<const double> token,
                                   const QsamVariant& variant,
                                   const QsamParams& params, Role role) {
    const qsim::AnsatzParams& ansatz = role == Role::Query ? params.query
                                       : role == Role::Key ? params.key
                                                           : params.value;
    qsim::StateVector state = encode_token(token, variant.encoding, ansatz.qubits);
    state = qsim::apply_yz_circular(std::move(state), ansatz);
    return role == Role::Value ? measure_value(state, variant.value_measurement)
                               : measure_qk(state, variant.query_key_measurement);
}

nn::Matrix gaussian_attention(std::span<const double> zq, std::span<const double> zk) {
    const int n = static_cast<int>(zq.size());
    if (zk.size() != zq.size()) throw std::invalid_argument("gaussian_attention: size mismatch");
    nn::Matrix scores(n, n);
    for (int i = 0; i < n; ++i) {
        double total = 0.0;
        for (int j = 0; j < n; ++j) {
            const double d = zq[i] - zk[j];
            const double a = std::exp(-d * d);
            scores.at(i, j) = a;
            total += a;
        }
        for (int j = 0; j < n; ++j) scores.at(i, j) /= total;
    }
    return scores;
}

nn::Matrix softmax_outer_attention(std::span<const double> zq, std::span<const double> zk) {
    const int n = static_cast<int>(zq.size());
    if (zk.size() != zq.size())
        throw std::invalid_argument("softmax_outer_attention: size mismatch");
    nn::Matrix logits(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) logits.at(i, j) = zq[i] * zk[j];
    return nn::softmax_rows(logits);
}

ForwardResult qsam_forward_detail(const nn::Matrix& x, const QsamVariant& variant,
                                  const QsamParams& params) {
    const int n = x.rows;
    const int d_model = x.cols;
    if (n < 1) throw std::invalid_argument("qsam_forward: empty input");

    const int f_qk = qk_feature_dim(variant.query_key_measurement, params.query.qubits);
    const int f_v = value_feature_dim(variant.value_measurement, params.value.qubits);

    nn::Matrix qf(n, f_qk), kf(n, f_qk), vf(n, f_v);
    for (int t = 0; t < n; ++t) {
        const auto zq = token_features(x.row(t), variant, params, Role::Query);
        const auto zk = token_features(x.row(t), variant, params, Role::Key);
        const auto zv = token_features(x.row(t), variant, params, Role::Value);
        for (int j = 0; j < f_qk; ++j) { qf.at(t, j) = zq[j]; kf.at(t, j) = zk[j]; }
        for (int j = 0; j < f_v; ++j) vf.at(t, j) = zv[j];
    }

    nn::Matrix scores;
    switch (variant.attention) {
        case AttentionMethod::Gaussian:
        case AttentionMethod::SoftmaxOuter: {
            if (f_qk != 1)
                throw std::invalid_argument(
                    "scalar attention methods require a single-value measurement");
            std::vector<double> zq(n), zk(n);
            for (int t = 0; t < n; ++t) { zq[t] = qf.at(t, 0); zk[t] = kf.at(t, 0); }
            scores = variant.attention == AttentionMethod::Gaussian
                         ? gaussian_attention(zq, zk)
                         : softmax_outer_attention(zq, zk);
            break;
        }
        case AttentionMethod::ClassicalDot: {
            nn::Matrix logits = nn::matmul(qf, nn::transposed(kf));
            const double scale = 1.0 / std::sqrt(static_cast<double>(f_qk));
            for (double& e : logits.data) e *= scale;
            scores = nn::softmax_rows(logits);
            break;
        }
    }

    nn::Matrix weighted = nn::matmul(scores, vf);
    ForwardResult result;
    result.scores = std::move(scores);
    if (params.projection) {
        if (params.projection->rows != f_v || params.projection->cols != d_model)
            throw std::invalid_argument("qsam_forward: projection shape mismatch");
        result.output = nn::matmul(weighted, *params.projection);
    } else {
        if (f_v != d_model)
            throw std::invalid_argument(
                "qsam_forward: value dimension differs from d_model and no projection given");
        result.output = std::move(weighted);
    }
    return result;
}

} // namespace sbx::qsam
