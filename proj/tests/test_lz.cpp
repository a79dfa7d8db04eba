#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "oracles.hpp"
#include "sbx/lz.hpp"

using sbx::BitString;
using sbx::lz::lz76_phrase_count;
using sbx::lz::lz_complexity;

namespace {

std::string random_bits(std::mt19937_64& rng, std::size_t length) {
    std::string s(length, '0');
    for (char& c : s)
        if (rng() & 1) c = '1';
    return s;
}

} // namespace

TEST_CASE("phrase count on pinned strings") {
    CHECK(lz76_phrase_count(BitString::from_string("0")) == 1);
    CHECK(lz76_phrase_count(BitString::from_string("01")) == 2);
    // Value recorded from the reference transcription before the main build.
    CHECK(lz76_phrase_count(BitString::from_string("0001101001000101")) == 6);
    CHECK(oracle::lz76_phrase_count_reference("0001101001000101") == 6);
}

TEST_CASE("phrase count rejects empty input") {
    CHECK_THROWS_WITH_AS(lz76_phrase_count(BitString{}), "empty input",
                         std::invalid_argument);
}

TEST_CASE("complexity of constant and alternating strings") {
    CHECK(lz_complexity(BitString::from_string(std::string(32, '0'))) == 5.0);
    CHECK(lz_complexity(BitString::from_string(std::string(32, '1'))) == 5.0);
    for (std::size_t n : {2, 3, 7, 100, 1024}) {
        const double expected = std::log2(static_cast<double>(n));
        CHECK(lz_complexity(BitString::from_string(std::string(n, '0'))) == expected);
        CHECK(lz_complexity(BitString::from_string(std::string(n, '1'))) == expected);
    }
    std::string alternating;
    for (int i = 0; i < 16; ++i) alternating += "01";
    CHECK(lz_complexity(BitString::from_string(alternating)) == 15.0);
}

TEST_CASE("complexity rejects short strings") {
    CHECK_THROWS_WITH_AS(lz_complexity(BitString::from_string("0")),
                         "string too short for log2 scaling", std::invalid_argument);
}

TEST_CASE("direction symmetry") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 500; ++i) {
        const std::size_t len = 2 + rng() % 200;
        const BitString s = BitString::from_string(random_bits(rng, len));
        CHECK(lz_complexity(s) == lz_complexity(s.reversed()));
    }
}

TEST_CASE("only constant strings attain the minimum") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 300; ++i) {
        const std::size_t len = 4 + rng() % 300;
        std::string text = random_bits(rng, len);
        const BitString s = BitString::from_string(text);
        const double floor = std::log2(static_cast<double>(len));
        const bool constant =
            text.find('0') == std::string::npos || text.find('1') == std::string::npos;
        if (constant)
            CHECK(lz_complexity(s) == floor);
        else
            CHECK(lz_complexity(s) > floor);
    }
}

TEST_CASE("phrase counts match the reference on exhaustive short strings") {
    for (int len = 1; len <= 10; ++len) {
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << len); ++v) {
            std::string s(len, '0');
            for (int b = 0; b < len; ++b)
                if ((v >> (len - 1 - b)) & 1) s[b] = '1';
            CAPTURE(s);
            CHECK(lz76_phrase_count(BitString::from_string(s)) ==
                  oracle::lz76_phrase_count_reference(s));
        }
    }
}

TEST_CASE("phrase counts match the reference on random long strings") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 60; ++i) {
        const std::size_t len = 32 + rng() % 1024;
        const std::string s = random_bits(rng, len);
        CHECK(lz76_phrase_count(BitString::from_string(s)) ==
              oracle::lz76_phrase_count_reference(s));
    }
}
