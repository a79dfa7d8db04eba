#include <doctest.h>

#include <cmath>
#include <random>

#include "sbx/nn.hpp"

using namespace sbx::nn;

TEST_CASE("init schemes") {
    std::mt19937_64 rng(101);

    SUBCASE("xavier uniform bound") {
        Matrix m = init_matrix(3, 3, {InitKind::XavierUniform}, rng);
        for (double v : m.data) CHECK(std::abs(v) <= 1.0); // sqrt(6/6) = 1
    }

    SUBCASE("seed determinism") {
        std::mt19937_64 a(7), b(7);
        const Matrix ma = init_matrix(4, 5, {InitKind::Normal}, a);
        const Matrix mb = init_matrix(4, 5, {InitKind::Normal}, b);
        CHECK(ma.data == mb.data);
    }

    SUBCASE("normal moments") {
        Matrix m = init_matrix(1000, 100, {InitKind::Normal}, rng);
        double mean = 0.0;
        for (double v : m.data) mean += v;
        mean /= m.data.size();
        double var = 0.0;
        for (double v : m.data) var += (v - mean) * (v - mean);
        var /= m.data.size();
        CHECK(std::abs(mean) < 0.02);
        CHECK(std::abs(var - 1.0) < 0.05);
    }

    SUBCASE("custom fans") {
        InitScheme scheme{InitKind::XavierCustom, 4, 8};
        Matrix m = init_matrix(10, 10, scheme, rng);
        const double bound = std::sqrt(6.0 / 12.0);
        for (double v : m.data) CHECK(std::abs(v) <= bound);
        CHECK_THROWS_AS(init_matrix(2, 2, {InitKind::XavierCustom, 0, 1}, rng),
                        std::invalid_argument);
    }
}

TEST_CASE("softmax rows") {
    Matrix m(1, 3);
    m.data = {2.0, 2.0, 2.0};
    auto s = softmax_rows(m);
    for (double v : s.data) CHECK(v == doctest::Approx(1.0 / 3).epsilon(1e-12));

    m.data = {0.0, 800.0, 0.0};
    s = softmax_rows(m);
    CHECK(s.data[1] == doctest::Approx(1.0).epsilon(1e-12));

    m.data = {1.0, 2.0, 3.0};
    s = softmax_rows(m);
    CHECK(s.data[0] == doctest::Approx(0.09003057317038046).epsilon(1e-10));
    CHECK(s.data[1] == doctest::Approx(0.24472847105479767).epsilon(1e-10));
    CHECK(s.data[2] == doctest::Approx(0.66524095577482186).epsilon(1e-10));
}

TEST_CASE("softmax rows sum to one and shift invariance") {
    std::mt19937_64 rng(102);
    std::normal_distribution<double> noise(0.0, 3.0);
    for (int trial = 0; trial < 50; ++trial) {
        Matrix m(4, 6), shifted(4, 6);
        for (int i = 0; i < 4; ++i) {
            const double offset = noise(rng);
            for (int j = 0; j < 6; ++j) {
                m.at(i, j) = noise(rng);
                shifted.at(i, j) = m.at(i, j) + offset;
            }
        }
        const auto a = softmax_rows(m);
        const auto b = softmax_rows(shifted);
        for (int i = 0; i < 4; ++i) {
            double total = 0.0;
            for (int j = 0; j < 6; ++j) {
                total += a.at(i, j);
                CHECK(a.at(i, j) == doctest::Approx(b.at(i, j)).epsilon(1e-9));
            }
            CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("classical attention") {
    SUBCASE("zero projections give uniform attention") {
        std::mt19937_64 rng(103);
        Matrix x = init_matrix(3, 4, {InitKind::Normal}, rng);
        Matrix zero(4, 2);
        Matrix wv = init_matrix(4, 2, {InitKind::Normal}, rng);
        const Matrix v = matmul(x, wv);
        const Matrix out = classical_attention(x, zero, zero, wv);
        for (int j = 0; j < 2; ++j) {
            double mean = 0.0;
            for (int i = 0; i < 3; ++i) mean += v.at(i, j);
            mean /= 3.0;
            for (int i = 0; i < 3; ++i)
                CHECK(out.at(i, j) == doctest::Approx(mean).epsilon(1e-12));
        }
    }

    SUBCASE("single token returns its value projection") {
        std::mt19937_64 rng(104);
        Matrix x = init_matrix(1, 4, {InitKind::Normal}, rng);
        Matrix wq = init_matrix(4, 3, {InitKind::Normal}, rng);
        Matrix wk = init_matrix(4, 3, {InitKind::Normal}, rng);
        Matrix wv = init_matrix(4, 3, {InitKind::Normal}, rng);
        const Matrix v = matmul(x, wv);
        const Matrix out = classical_attention(x, wq, wk, wv);
        for (int j = 0; j < 3; ++j) CHECK(out.at(0, j) == doctest::Approx(v.at(0, j)));
    }

    SUBCASE("2x2 worked instance") {
        Matrix x(2, 2), wq(2, 2), wk(2, 2), wv(2, 2);
        x.data = {1, 0, 0, 1};
        wq.data = {1, 0, 0, 1};
        wk.data = {1, 1, 0, 1};
        wv.data = {1, 2, 3, 4};
        const Matrix out = classical_attention(x, wq, wk, wv);
        CHECK(out.at(0, 0) == doctest::Approx(1.6604769013466862).epsilon(1e-12));
        CHECK(out.at(0, 1) == doctest::Approx(2.6604769013466862).epsilon(1e-12));
        CHECK(out.at(1, 0) == doctest::Approx(2.0).epsilon(1e-12));
        CHECK(out.at(1, 1) == doctest::Approx(3.0).epsilon(1e-12));
    }

    SUBCASE("shape mismatch") {
        Matrix x(2, 3), w(2, 2);
        CHECK_THROWS_AS(classical_attention(x, w, w, w), std::invalid_argument);
    }
}

TEST_CASE("layer norm") {
    const std::vector<double> gain{1, 1}, bias{0, 0};
    const std::vector<double> constant{3.0, 3.0};
    for (double v : layer_norm(constant, gain, bias)) CHECK(v == 0.0);

    const std::vector<double> pair{1.0, -1.0};
    const auto normed = layer_norm(pair, gain, bias);
    CHECK(normed[0] == doctest::Approx(0.9999950000374997).epsilon(1e-12));
    CHECK(normed[1] == doctest::Approx(-0.9999950000374997).epsilon(1e-12));

    const std::vector<double> zero_gain{0, 0}, some_bias{5.0, -2.0};
    const auto biased = layer_norm(pair, zero_gain, some_bias);
    CHECK(biased[0] == 5.0);
    CHECK(biased[1] == -2.0);
}

TEST_CASE("layer norm statistics on random rows") {
    std::mt19937_64 rng(105);
    std::normal_distribution<double> noise(2.0, 5.0);
    const std::vector<double> gain(16, 1.0), bias(16, 0.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> row(16);
        for (double& v : row) v = noise(rng);
        const auto normed = layer_norm(row, gain, bias);
        double mean = 0.0;
        for (double v : normed) mean += v;
        mean /= normed.size();
        double var = 0.0;
        for (double v : normed) var += (v - mean) * (v - mean);
        var /= normed.size();
        CHECK(std::abs(mean) < 1e-7);
        CHECK(std::abs(var - 1.0) < 1e-4);
    }
}

TEST_CASE("positional encoding") {
    const Matrix pe = positional_encoding(4, 6);
    for (int i = 0; i < 3; ++i) {
        CHECK(pe.at(0, 2 * i) == 0.0);
        CHECK(pe.at(0, 2 * i + 1) == 1.0);
    }
    CHECK(pe.at(1, 0) == doctest::Approx(std::sin(1.0)).epsilon(1e-14));
    for (double v : pe.data) {
        CHECK(v >= -1.0);
        CHECK(v <= 1.0);
    }
    CHECK_THROWS_AS(positional_encoding(4, 5), std::invalid_argument);
}

TEST_CASE("gelu and ffn") {
    CHECK(gelu(0.0) == 0.0);
    CHECK(gelu(1.0) == doctest::Approx(0.8411919906082768).epsilon(1e-12));
    CHECK(gelu(20.0) == doctest::Approx(20.0).epsilon(1e-9));

    Matrix w1(2, 3), w2(3, 2);
    const std::vector<double> b1{0, 0, 0}, b2{0, 0};
    const std::vector<double> zero_in{0, 0};
    std::mt19937_64 rng(106);
    w1 = init_matrix(2, 3, {InitKind::Normal}, rng);
    w2 = init_matrix(3, 2, {InitKind::Normal}, rng);
    for (double v : ffn(zero_in, w1, b1, w2, b2)) CHECK(v == 0.0);

    const std::vector<double> bad{0, 0, 0};
    CHECK_THROWS_AS(ffn(bad, w1, b1, w2, b2), std::invalid_argument);
}
