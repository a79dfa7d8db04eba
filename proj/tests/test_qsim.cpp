#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "sbx/qsim.hpp"

using namespace sbx::qsim;
using oracle::CVec;

namespace {

constexpr double kPi = std::numbers::pi;

StateVector random_state(int qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    StateVector s;
    s.qubits = qubits;
    s.amplitudes.resize(std::size_t{1} << qubits);
    double norm2 = 0.0;
    for (auto& a : s.amplitudes) {
        a = {gauss(rng), gauss(rng)};
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& a : s.amplitudes) a *= inv;
    return s;
}

void check_close(const StateVector& got, const CVec& want, double tol = 1e-10) {
    REQUIRE(got.amplitudes.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(std::abs(got.amplitudes[i] - want[i]) < tol);
    }
}

double expect_z0(const StateVector& s) {
    PauliString z;
    z.factors.assign(s.qubits, Pauli::I);
    z.factors[0] = Pauli::Z;
    return expect_pauli(s, z);
}

} // namespace

TEST_CASE("rotations against closed forms") {
    auto s = StateVector::zero_state(1);
    auto rotated = apply_rx(s, 0, 0.0);
    check_close(rotated, s.amplitudes, 1e-15);

    rotated = apply_rx(s, 0, kPi);
    CHECK(expect_z0(rotated) == doctest::Approx(-1.0).epsilon(1e-12));
    for (double theta : {0.1, 0.9, 2.4}) {
        CHECK(expect_z0(apply_rx(s, 0, theta)) ==
              doctest::Approx(std::cos(theta)).epsilon(1e-12));
    }

    rotated = apply_rx(s, 0, kPi / 2);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    check_close(rotated, {oracle::cplx{inv_sqrt2, 0}, oracle::cplx{0, -inv_sqrt2}});

    CHECK_THROWS_AS(apply_rx(s, 1, 0.5), std::invalid_argument);
}

TEST_CASE("gates match the dense matrix oracle for q <= 3") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int q = 1; q <= 3; ++q) {
        for (int rep = 0; rep < 20; ++rep) {
            const StateVector s = random_state(q, rng);
            const int target = static_cast<int>(rng() % q);
            const double theta = angle(rng);
            check_close(apply_rx(s, target, theta),
                        oracle::matvec(oracle::gate_at(q, target, oracle::rx2(theta)),
                                       s.amplitudes));
            check_close(apply_ry(s, target, theta),
                        oracle::matvec(oracle::gate_at(q, target, oracle::ry2(theta)),
                                       s.amplitudes));
            check_close(apply_rz(s, target, theta),
                        oracle::matvec(oracle::gate_at(q, target, oracle::rz2(theta)),
                                       s.amplitudes));
            if (q >= 2) {
                const int c = static_cast<int>(rng() % q);
                int t = static_cast<int>(rng() % q);
                if (t == c) t = (t + 1) % q;
                check_close(apply_cnot(s, c, t),
                            oracle::matvec(oracle::cnot_matrix(q, c, t), s.amplitudes));
            }
        }
    }
}

TEST_CASE("cnot on basis states") {
    auto s = StateVector::zero_state(2);
    s.amplitudes = {0, 0, 1, 0}; // |10>
    auto flipped = apply_cnot(s, 0, 1);
    check_close(flipped, {0, 0, 0, 1}, 1e-15); // |11>

    s.amplitudes = {1, 0, 0, 0}; // |00>
    check_close(apply_cnot(s, 0, 1), {1, 0, 0, 0}, 1e-15);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    s.amplitudes = {inv_sqrt2, 0, inv_sqrt2, 0}; // (|00> + |10>)/sqrt2
    check_close(apply_cnot(s, 0, 1), {inv_sqrt2, 0, 0, inv_sqrt2});

    CHECK_THROWS_AS(apply_cnot(s, 1, 1), std::invalid_argument);
}

TEST_CASE("cnot squares to identity") {
    std::mt19937_64 rng(42);
    const StateVector s = random_state(3, rng);
    const auto twice = apply_cnot(apply_cnot(s, 1, 2), 1, 2);
    check_close(twice, s.amplitudes, 1e-14);
}

TEST_CASE("angle encoding") {
    const std::vector<double> zeros{0.0, 0.0, 0.0};
    auto s = encode_angle(zeros);
    CHECK(std::abs(s.amplitudes[0] - oracle::cplx{1, 0}) < 1e-15);

    const std::vector<double> pi_only{kPi};
    CHECK(expect_z0(encode_angle(pi_only)) == doctest::Approx(-1.0).epsilon(1e-12));

    const std::vector<double> pair{kPi / 3, kPi / 5};
    s = encode_angle(pair);
    PauliString z0 = PauliString::parse("ZI"), z1 = PauliString::parse("IZ");
    CHECK(expect_pauli(s, z0) == doctest::Approx(std::cos(kPi / 3)).epsilon(1e-12));
    CHECK(expect_pauli(s, z1) == doctest::Approx(std::cos(kPi / 5)).epsilon(1e-12));

    const std::vector<double> too_big(13, 0.0);
    CHECK_THROWS_WITH_AS(encode_angle(too_big), "register too large", std::invalid_argument);
}

TEST_CASE("amplitude encoding") {
    const std::vector<double> x34{3.0, 4.0};
    auto s = encode_amplitude(x34);
    check_close(s, {oracle::cplx{0.6, 0}, oracle::cplx{0.8, 0}}, 1e-14);

    const std::vector<double> e2{0.0, 0.0, 1.0, 0.0};
    s = encode_amplitude(e2);
    check_close(s, {0, 0, 1, 0}, 1e-15);

    const std::vector<double> ones{1.0, 1.0, 1.0};
    s = encode_amplitude(ones);
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    check_close(s, {oracle::cplx{inv_sqrt3, 0}, oracle::cplx{inv_sqrt3, 0},
                    oracle::cplx{inv_sqrt3, 0}, oracle::cplx{0, 0}},
                1e-14);

    const std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_WITH_AS(encode_amplitude(zero), "cannot normalize", std::invalid_argument);
}

TEST_CASE("feature map encoding") {
    const std::vector<double> zeros(8, 0.0);
    auto s = encode_feature_map(zeros, 2);
    CHECK(std::abs(s.amplitudes[0] - oracle::cplx{1, 0}) < 1e-14);

    std::mt19937_64 rng(43);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::vector<double> x(12);
    for (double& v : x) v = angle(rng);
    s = encode_feature_map(x, 3);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

    // Hand-traced: Rx(pi) on qubit 0 gives -i|10>, the chain CNOT maps it to -i|11>.
    const std::vector<double> pulse{kPi, 0.0, 0.0, 0.0};
    s = encode_feature_map(pulse, 2);
    check_close(s, {0, 0, 0, oracle::cplx{0, -1}}, 1e-14);

    const std::vector<double> five(5, 0.0);
    CHECK_THROWS_WITH_AS(encode_feature_map(five, 2), "d must be a multiple of 2*n_q",
                         std::invalid_argument);
}

TEST_CASE("feature map matches the dense oracle") {
    std::mt19937_64 rng(44);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int rep = 0; rep < 10; ++rep) {
        const int q = 2 + static_cast<int>(rng() % 2);
        const int layers = 1 + static_cast<int>(rng() % 2);
        std::vector<double> x(2 * q * layers);
        for (double& v : x) v = angle(rng);

        CVec psi(std::size_t{1} << q, oracle::cplx{0, 0});
        psi[0] = {1, 0};
        for (int l = 0; l < layers; ++l) {
            const int base = l * 2 * q;
            for (int j = 0; j < q; ++j)
                psi = oracle::matvec(oracle::gate_at(q, j, oracle::rx2(x[base + j])), psi);
            for (int j = 0; j < q; ++j)
                psi = oracle::matvec(oracle::gate_at(q, j, oracle::ry2(x[base + q + j])), psi);
            for (int j = 0; j + 1 < q; ++j)
                psi = oracle::matvec(oracle::cnot_matrix(q, j, j + 1), psi);
        }
        check_close(encode_feature_map(x, q), psi);
    }
}

TEST_CASE("yz circular ansatz") {
    AnsatzParams zero;
    zero.qubits = 2;
    zero.layers = 1;
    zero.thetas.assign(4, 0.0);
    auto s = apply_yz_circular(StateVector::zero_state(2), zero);
    CHECK(std::abs(s.amplitudes[0] - oracle::cplx{1, 0}) < 1e-14);

    // Hand product: Ry(pi/2) on qubit 0, then CNOT 0->1, then CNOT 1->0.
    AnsatzParams quarter = zero;
    quarter.thetas = {kPi / 2, 0.0, 0.0, 0.0};
    s = apply_yz_circular(StateVector::zero_state(2), quarter);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    check_close(s, {oracle::cplx{inv_sqrt2, 0}, oracle::cplx{inv_sqrt2, 0}, 0, 0}, 1e-14);

    std::mt19937_64 rng(45);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    AnsatzParams deep;
    deep.qubits = 3;
    deep.layers = 4;
    deep.thetas.resize(24);
    for (double& v : deep.thetas) v = angle(rng);
    s = apply_yz_circular(random_state(3, rng), deep);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));

    AnsatzParams bad = zero;
    bad.thetas.resize(3);
    CHECK_THROWS_AS(apply_yz_circular(StateVector::zero_state(2), bad),
                    std::invalid_argument);
}

TEST_CASE("yz circular ansatz matches the dense oracle") {
    std::mt19937_64 rng(46);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int q = 1; q <= 3; ++q) {
        AnsatzParams params;
        params.qubits = q;
        params.layers = 2;
        params.thetas.resize(static_cast<std::size_t>(4) * q);
        for (double& v : params.thetas) v = angle(rng);
        const StateVector s = random_state(q, rng);

        CVec psi = s.amplitudes;
        for (int l = 0; l < 2; ++l) {
            const int base = l * 2 * q;
            for (int j = 0; j < q; ++j) {
                psi = oracle::matvec(oracle::gate_at(q, j, oracle::ry2(params.thetas[base + 2 * j])), psi);
                psi = oracle::matvec(oracle::gate_at(q, j, oracle::rz2(params.thetas[base + 2 * j + 1])), psi);
            }
            if (q > 1) {
                for (int j = 0; j + 1 < q; ++j)
                    psi = oracle::matvec(oracle::cnot_matrix(q, j, j + 1), psi);
                psi = oracle::matvec(oracle::cnot_matrix(q, q - 1, 0), psi);
            }
        }
        check_close(apply_yz_circular(s, params), psi);
    }
}

TEST_CASE("pauli expectations") {
    auto zero1 = StateVector::zero_state(1);
    CHECK(expect_pauli(zero1, PauliString::parse("Z")) == doctest::Approx(1.0));

    StateVector plus;
    plus.qubits = 1;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    plus.amplitudes = {oracle::cplx{inv_sqrt2, 0}, oracle::cplx{inv_sqrt2, 0}};
    CHECK(expect_pauli(plus, PauliString::parse("X")) == doctest::Approx(1.0).epsilon(1e-14));

    StateVector bell;
    bell.qubits = 2;
    bell.amplitudes = {oracle::cplx{inv_sqrt2, 0}, 0, 0, oracle::cplx{inv_sqrt2, 0}};
    CHECK(expect_pauli(bell, PauliString::parse("ZZ")) == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(expect_pauli(bell, PauliString::parse("Z")), std::invalid_argument);
}

TEST_CASE("pauli expectations match the dense oracle and stay bounded") {
    std::mt19937_64 rng(47);
    const char symbols[4] = {'I', 'X', 'Y', 'Z'};
    for (int q = 1; q <= 3; ++q) {
        for (int rep = 0; rep < 40; ++rep) {
            const StateVector s = random_state(q, rng);
            std::string text;
            for (int k = 0; k < q; ++k) text.push_back(symbols[rng() % 4]);
            const PauliString p = PauliString::parse(text);
            const double got = expect_pauli(s, p);
            CHECK(std::abs(got - oracle::expectation(s.amplitudes, oracle::pauli_string_matrix(p))) < 1e-10);
            CHECK(std::abs(got) <= 1.0 + 1e-12);
        }
    }
}

TEST_CASE("rz commutes with z expectation") {
    std::mt19937_64 rng(48);
    const StateVector s = random_state(2, rng);
    const auto rotated = apply_rz(s, 0, 1.234);
    CHECK(expect_z0(rotated) == doctest::Approx(expect_z0(s)).epsilon(1e-12));
}

TEST_CASE("basis probabilities") {
    auto s = StateVector::zero_state(3);
    auto p = basis_probabilities(s);
    CHECK(p[0] == 1.0);
    for (std::size_t i = 1; i < p.size(); ++i) CHECK(p[i] == 0.0);

    StateVector uniform;
    uniform.qubits = 2;
    uniform.amplitudes.assign(4, oracle::cplx{0.5, 0});
    for (double v : basis_probabilities(uniform)) CHECK(v == doctest::Approx(0.25));

    const std::vector<double> x34{3.0, 4.0};
    p = basis_probabilities(encode_amplitude(x34));
    CHECK(p[0] == doctest::Approx(0.36).epsilon(1e-14));
    CHECK(p[1] == doctest::Approx(0.64).epsilon(1e-14));
}

namespace {

bool anticommutes(const PauliString& a, const PauliString& b) {
    int differing = 0;
    for (std::size_t k = 0; k < a.factors.size(); ++k) {
        const Pauli pa = a.factors[k], pb = b.factors[k];
        if (pa != Pauli::I && pb != Pauli::I && pa != pb) ++differing;
    }
    return differing % 2 == 1;
}

} // namespace

TEST_CASE("anticommuting set construction") {
    auto one = anticommuting_set(1);
    REQUIRE(one.size() == 3);
    CHECK(one[0].to_string() == "X");
    CHECK(one[1].to_string() == "Y");
    CHECK(one[2].to_string() == "Z");

    auto two = anticommuting_set(2);
    REQUIRE(two.size() == 5);
    CHECK(two[0].to_string() == "XI");
    CHECK(two[1].to_string() == "YI");
    CHECK(two[2].to_string() == "ZX");
    CHECK(two[3].to_string() == "ZY");
    CHECK(two[4].to_string() == "ZZ");

    for (int q = 1; q <= 6; ++q) {
        auto set = anticommuting_set(q);
        REQUIRE(set.size() == static_cast<std::size_t>(2 * q + 1));
        for (std::size_t i = 0; i < set.size(); ++i)
            for (std::size_t j = i + 1; j < set.size(); ++j) {
                CAPTURE(set[i].to_string());
                CAPTURE(set[j].to_string());
                CHECK(anticommutes(set[i], set[j]));
            }
    }
}

TEST_CASE("pauli panel ordering and size") {
    auto one = pauli_panel(1);
    REQUIRE(one.size() == 2);
    CHECK(one[0].to_string() == "Z");
    CHECK(one[1].to_string() == "X");

    auto two = pauli_panel(2);
    REQUIRE(two.size() == 4);
    CHECK(two[0].to_string() == "ZI");
    CHECK(two[1].to_string() == "IZ");
    CHECK(two[2].to_string() == "XI");
    CHECK(two[3].to_string() == "IX");

    auto three = pauli_panel(3);
    REQUIRE(three.size() == 8);
    const char* expected[8] = {"ZII", "IZI", "IIZ", "XII", "IXI", "IIX", "ZZI", "IZZ"};
    for (int i = 0; i < 8; ++i) CHECK(three[i].to_string() == expected[i]);

    for (int q = 1; q <= 6; ++q) {
        auto panel = pauli_panel(q);
        CHECK(panel.size() == (std::size_t{1} << q));
        std::set<std::string> seen;
        const std::string identity(q, 'I');
        for (const auto& p : panel) {
            CHECK(p.to_string() != identity);
            CHECK(seen.insert(p.to_string()).second);
        }
    }
    CHECK_THROWS_AS(pauli_panel(7), std::invalid_argument);
}

TEST_CASE("norm preserved across stacked random operations") {
    std::mt19937_64 rng(49);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    StateVector s = StateVector::zero_state(4);
    for (int step = 0; step < 200; ++step) {
        const int qb = static_cast<int>(rng() % 4);
        switch (rng() % 4) {
            case 0: s = apply_rx(s, qb, angle(rng)); break;
            case 1: s = apply_ry(s, qb, angle(rng)); break;
            case 2: s = apply_rz(s, qb, angle(rng)); break;
            default: s = apply_cnot(s, qb, (qb + 1) % 4); break;
        }
    }
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
}
