#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sbx {

/// Ordered sequence of binary symbols. Values are stored as 0/1 bytes;
/// construction validates the alphabet.
class BitString {
public:
    BitString() = default;

    explicit BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
        for (std::uint8_t b : bits_) {
            if (b > 1) throw std::invalid_argument("BitString: symbol outside {0,1}");
        }
    }

    static BitString from_string(std::string_view text) {
        std::vector<std::uint8_t> bits;
        bits.reserve(text.size());
        for (char c : text) {
            if (c == '0') bits.push_back(0);
            else if (c == '1') bits.push_back(1);
            else throw std::invalid_argument("BitString: character outside {0,1}");
        }
        return BitString(std::move(bits));
    }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    std::uint8_t operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    BitString reversed() const {
        std::vector<std::uint8_t> r(bits_.rbegin(), bits_.rend());
        return BitString(std::move(r));
    }

    std::string to_string() const {
        std::string s;
        s.reserve(bits_.size());
        for (std::uint8_t b : bits_) s.push_back(b ? '1' : '0');
        return s;
    }

    /// Bits packed MSB-first into bytes, trailing zero padding in the final
    /// byte, rendered as lowercase hex.
    std::string to_hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out;
        out.reserve((bits_.size() + 7) / 8 * 2);
        for (std::size_t i = 0; i < bits_.size(); i += 8) {
            unsigned byte = 0;
            for (std::size_t j = 0; j < 8; ++j) {
                byte <<= 1;
                if (i + j < bits_.size()) byte |= bits_[i + j];
            }
            out.push_back(digits[byte >> 4]);
            out.push_back(digits[byte & 0xf]);
        }
        return out;
    }

    /// Packed-byte form; injective for a fixed length, used as a set key.
    std::string packed_key() const {
        std::string out;
        out.reserve((bits_.size() + 7) / 8);
        for (std::size_t i = 0; i < bits_.size(); i += 8) {
            unsigned byte = 0;
            for (std::size_t j = 0; j < 8; ++j) {
                byte <<= 1;
                if (i + j < bits_.size()) byte |= bits_[i + j];
            }
            out.push_back(static_cast<char>(byte));
        }
        return out;
    }

    friend bool operator==(const BitString& a, const BitString& b) {
        return a.bits_ == b.bits_;
    }

private:
    std::vector<std::uint8_t> bits_;
};

} // namespace sbx
