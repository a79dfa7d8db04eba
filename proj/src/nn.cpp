#include "sbx/nn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sbx::nn {

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: shape mismatch");
    Matrix out(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int k = 0; k < a.cols; ++k) {
            const double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) out.at(i, j) += aik * b.at(k, j);
        }
    }
    return out;
}

Matrix transposed(const Matrix& m) {
    Matrix out(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) out.at(j, i) = m.at(i, j);
    return out;
}

Matrix init_matrix(int rows, int cols, const InitScheme& scheme, std::mt19937_64& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("init_matrix: empty shape");
    Matrix m(rows, cols);
    switch (scheme.kind) {
        case InitKind::Normal: {
            std::normal_distribution<double> dist(0.0, 1.0);
            for (double& v : m.data) v = dist(rng);
            break;
        }
        case InitKind::XavierUniform: {
            const double bound = std::sqrt(6.0 / (rows + cols));
            std::uniform_real_distribution<double> dist(-bound, bound);
            for (double& v : m.data) v = dist(rng);
            break;
        }
        case InitKind::XavierCustom: {
            if (scheme.fan_in < 1 || scheme.fan_out < 1)
                throw std::invalid_argument("init_matrix: XavierCustom fans must be >= 1");
            const double bound = std::sqrt(6.0 / (scheme.fan_in + scheme.fan_out));
            std::uniform_real_distribution<double> dist(-bound, bound);
            for (double& v : m.data) v = dist(rng);
            break;
        }
    }
    return m;
}

Matrix softmax_rows(const Matrix& m) {
    Matrix out(m.rows, m.cols);
    for (int i = 0; i < m.rows; ++i) {
        double mx = m.at(i, 0);
        for (int j = 1; j < m.cols; ++j) mx = std::max(mx, m.at(i, j));
        double total = 0.0;
        for (int j = 0; j < m.cols; ++j) {
            const double e = std::exp(m.at(i, j) - mx);
            out.at(i, j) = e;
            total += e;
        }
        for (int j = 0; j < m.cols; ++j) out.at(i, j) /= total;
    }
    return out;
}

Matrix classical_attention(const Matrix& x, const Matrix& wq, const Matrix& wk,
                           const Matrix& wv) {
    if (wq.rows != x.cols || wk.rows != x.cols || wv.rows != x.cols ||
        wq.cols != wk.cols)
        throw std::invalid_argument("classical_attention: shape mismatch");
    const Matrix q = matmul(x, wq);
    const Matrix k = matmul(x, wk);
    const Matrix v = matmul(x, wv);
    Matrix logits = matmul(q, transposed(k));
    const double scale = 1.0 / std::sqrt(static_cast<double>(wq.cols));
    for (double& e : logits.data) e *= scale;
    return matmul(softmax_rows(logits), v);
}

std::vector<double> layer_norm(std::span<const double> x, std::span<const double> gain,
                               std::span<const double> bias) {
    const std::size_t d = x.size();
    if (d < 2) throw std::invalid_argument("layer_norm: dim must be >= 2");
    if (gain.size() != d || bias.size() != d)
        throw std::invalid_argument("layer_norm: gain/bias size mismatch");
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : x) var += (v - mean) * (v - mean);
    var /= static_cast<double>(d);
    const double inv = 1.0 / std::sqrt(var + 1e-5);
    std::vector<double> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = (x[i] - mean) * inv * gain[i] + bias[i];
    return out;
}

Matrix positional_encoding(int length, int dim) {
    if (dim < 2 || dim % 2 != 0)
        throw std::invalid_argument("positional_encoding: dim must be even");
    Matrix pe(length, dim);
    for (int t = 0; t < length; ++t) {
        for (int i = 0; i < dim / 2; ++i) {
            const double rate = std::pow(10000.0, 2.0 * i / dim);
            pe.at(t, 2 * i) = std::sin(t / rate);
            pe.at(t, 2 * i + 1) = std::cos(t / rate);
        }
    }
    return pe;
}

double gelu(double x) {
    const double c = std::sqrt(2.0 / std::numbers::pi);
    return 0.5 * x * (1.0 + std::tanh(c * (x + 0.044715 * x * x * x)));
}

std::vector<double> ffn(std::span<const double> x, const Matrix& w1,
                        std::span<const double> b1, const Matrix& w2,
                        std::span<const double> b2) {
    if (static_cast<int>(x.size()) != w1.rows || w1.cols != w2.rows ||
        b1.size() != static_cast<std::size_t>(w1.cols) ||
        b2.size() != static_cast<std::size_t>(w2.cols))
        throw std::invalid_argument("ffn: shape mismatch");
    std::vector<double> hidden(w1.cols);
    for (int j = 0; j < w1.cols; ++j) {
        double acc = b1[j];
        for (int i = 0; i < w1.rows; ++i) acc += x[i] * w1.at(i, j);
        hidden[j] = gelu(acc);
    }
    std::vector<double> out(w2.cols);
    for (int j = 0; j < w2.cols; ++j) {
        double acc = b2[j];
        for (int i = 0; i < w2.rows; ++i) acc += hidden[i] * w2.at(i, j);
        out[j] = acc;
    }
    return out;
}

} // namespace sbx::nn
