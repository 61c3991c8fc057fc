/*
Copyright 2026 The holotape Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "holotape/errors.hpp"

namespace holotape {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

// Unsigned little-endian base-128, high bit = continuation.

constexpr std::size_t varint_size(std::uint64_t value) {
    std::size_t n = 1;
    while (value > 127) {
        ++n;
        value >>= 7;
    }
    return n;
}

constexpr std::uint64_t zigzag(std::int64_t v) {
    return (static_cast<std::uint64_t>(v) << 1) ^ static_cast<std::uint64_t>(v >> 63);
}

constexpr std::int64_t unzigzag(std::uint64_t v) {
    return static_cast<std::int64_t>(v >> 1) ^ -static_cast<std::int64_t>(v & 1);
}

class ByteWriter {
  public:
    void byte(std::uint8_t b) { out_.push_back(b); }

    void varint(std::uint64_t value) {
        while (value > 127) {
            out_.push_back(static_cast<std::uint8_t>((value & 0x7F) | 0x80));
            value >>= 7;
        }
        out_.push_back(static_cast<std::uint8_t>(value));
    }

    void svarint(std::int64_t value) { varint(zigzag(value)); }

    void string(std::string_view s) {
        varint(s.size());
        out_.insert(out_.end(), s.begin(), s.end());
    }

    void raw(ByteView bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }

    /// Length-prefixed nested record.
    void block(ByteView bytes) {
        varint(bytes.size());
        raw(bytes);
    }

    const Bytes &bytes() const & { return out_; }
    Bytes bytes() && { return std::move(out_); }

  private:
    Bytes out_;
};

/// Cursor over a byte string. Every read advances; running past the end throws DecodeError.
class ByteReader {
  public:
    explicit ByteReader(ByteView in) : in_(in) {}

    std::uint8_t byte() {
        need(1);
        return in_[pos_++];
    }

    std::uint64_t varint() {
        std::uint64_t value = 0;
        for (unsigned shift = 0;; shift += 7) {
            if (shift >= 64) {
                throw DecodeError("varint longer than 64 bits");
            }
            std::uint8_t b = byte();
            std::uint64_t group = b & 0x7F;
            if (shift == 63 && group > 1) {
                throw DecodeError("varint overflows 64 bits");
            }
            value |= group << shift;
            if ((b & 0x80) == 0) {
                // a zero final group after the first byte is a non-canonical encoding
                if (shift > 0 && group == 0) {
                    throw DecodeError("non-canonical varint");
                }
                return value;
            }
        }
    }

    std::int64_t svarint() { return unzigzag(varint()); }

    /// Varint bounded above, for counts that size allocations.
    std::uint64_t count(std::uint64_t max) {
        auto v = varint();
        if (v > max) {
            throw DecodeError("count " + std::to_string(v) + " exceeds bound " +
                              std::to_string(max));
        }
        return v;
    }

    std::string string() {
        auto n = count(remaining());
        std::string s(reinterpret_cast<const char *>(in_.data() + pos_), n);
        pos_ += n;
        return s;
    }

    ByteView take(std::size_t n) {
        need(n);
        auto v = in_.subspan(pos_, n);
        pos_ += n;
        return v;
    }

    ByteView block() { return take(count(remaining())); }

    void expect(std::uint8_t value, const char *what) {
        auto b = byte();
        if (b != value) {
            throw DecodeError(std::string("bad ") + what);
        }
    }

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return in_.size() - pos_; }
    bool done() const noexcept { return pos_ == in_.size(); }

    void expect_end() const {
        if (!done()) {
            throw DecodeError("trailing bytes: " + std::to_string(remaining()));
        }
    }

  private:
    void need(std::size_t n) const {
        if (remaining() < n) {
            throw DecodeError("truncated input");
        }
    }

    ByteView in_;
    std::size_t pos_ = 0;
};

inline std::string to_hex(ByteView bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        s.push_back(digits[b >> 4]);
        s.push_back(digits[b & 0xF]);
    }
    return s;
}

inline Bytes from_hex(std::string_view hex) {
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw DecodeError("bad hex digit");
    };
    if (hex.size() % 2 != 0) {
        throw DecodeError("odd-length hex string");
    }
    Bytes out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    }
    return out;
}

/// 64-bit FNV-1a, used for printing short fingerprints of encodings.
inline std::uint64_t fnv1a(ByteView bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (auto b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace holotape
