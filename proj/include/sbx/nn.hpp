#pragma once

#include <random>
#include <span>
#include <vector>

namespace sbx::nn {

/// Dense row-major matrix of doubles.
struct Matrix {
    int rows = 0;
    int cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c, 0.0) {}

    double& at(int r, int c) { return data[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return data[static_cast<std::size_t>(r) * cols + c]; }
    std::span<const double> row(int r) const {
        return {data.data() + static_cast<std::size_t>(r) * cols, static_cast<std::size_t>(cols)};
    }
};

Matrix matmul(const Matrix& a, const Matrix& b);
Matrix transposed(const Matrix& m);

enum class InitKind { Normal, XavierUniform, XavierCustom };

struct InitScheme {
    InitKind kind = InitKind::Normal;
    // XavierCustom only: fan_in = encoding-qubit count, fan_out = number of
    // measurement operators.
    int fan_in = 0;
    int fan_out = 0;
};

/// Normal -> i.i.d. N(0,1); XavierUniform -> U(+-sqrt(6/(rows+cols)));
/// XavierCustom -> U(+-sqrt(6/(fan_in+fan_out))) with the scheme's fans.
/// Entries are drawn row-major, so a given (seed, scheme, shape) always
/// produces the same matrix.
Matrix init_matrix(int rows, int cols, const InitScheme& scheme, std::mt19937_64& rng);

/// Row-wise softmax with max subtraction.
Matrix softmax_rows(const Matrix& m);

/// Scaled dot-product attention: softmax(Q K^T / sqrt(d_k)) V with
/// Q = x Wq, K = x Wk, V = x Wv.
Matrix classical_attention(const Matrix& x, const Matrix& wq, const Matrix& wk,
                           const Matrix& wv);

/// Normalize to mean 0 / variance 1 (epsilon 1e-5), then scale and shift.
std::vector<double> layer_norm(std::span<const double> x, std::span<const double> gain,
                               std::span<const double> bias);

/// Sinusoidal table: PE(t, 2i) = sin(t / 10000^(2i/d)), PE(t, 2i+1) = cos(...).
Matrix positional_encoding(int length, int dim);

double gelu(double x); // tanh approximation

/// gelu(x W1 + b1) W2 + b2 for a single row vector.
std::vector<double> ffn(std::span<const double> x, const Matrix& w1,
                        std::span<const double> b1, const Matrix& w2,
                        std::span<const double> b2);

} // namespace sbx::nn
