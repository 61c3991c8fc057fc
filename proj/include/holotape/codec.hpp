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

#include <cstdint>
#include <stdexcept>
#include <limits>
#include <vector>

#include "holotape/configuration.hpp"
#include "holotape/summary.hpp"
#include "holotape/varint.hpp"

// Binary records: one magic byte, one version byte, then fields in order.
// Every record is self-delimiting, so records can be concatenated.

namespace holotape {

inline constexpr std::uint8_t kSummaryMagic = 0x53;
inline constexpr std::uint8_t kConfigurationMagic = 0x43;
inline constexpr std::uint8_t kHistoryMagic = 0x48;

namespace detail {

inline void put_symbols(ByteWriter &w, const std::vector<Symbol> &syms) {
    for (auto s : syms) w.varint(s);
}

inline std::vector<Symbol> get_symbols(ByteReader &r, std::size_t n) {
    std::vector<Symbol> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto v = r.varint();
        if (v > std::numeric_limits<Symbol>::max()) throw DecodeError("symbol index out of range");
        out.push_back(static_cast<Symbol>(v));
    }
    return out;
}

inline StateId get_state(ByteReader &r) {
    auto v = r.varint();
    if (v > std::numeric_limits<StateId>::max()) throw DecodeError("state index out of range");
    return static_cast<StateId>(v);
}

// Empty spans are written as (0, 0) so equal summaries encode identically.
inline void put_window(ByteWriter &w, const Span &span, const std::vector<Symbol> &syms) {
    w.svarint(span.empty() ? 0 : span.lo);
    w.varint(span.length());
    put_symbols(w, syms);
}

inline Span get_window(ByteReader &r, std::vector<Symbol> &syms) {
    auto lo = r.svarint();
    // every symbol takes at least one byte
    auto len = r.count(r.remaining());
    if (len == 0) {
        syms.clear();
        return Span{};
    }
    syms = get_symbols(r, len);
    return Span{lo, lo + static_cast<std::int64_t>(len) - 1};
}

} // namespace detail

inline void encode_summary(ByteWriter &w, const IntervalSummary &s) {
    w.byte(kSummaryMagic);
    w.byte(kFormatVersion);
    w.varint(s.L);
    w.varint(s.R);
    w.varint(s.q_in);
    w.varint(s.q_out);
    w.varint(s.tapes.size());
    for (const auto &t : s.tapes) {
        w.svarint(t.head_in);
        w.svarint(t.head_out);
        detail::put_window(w, t.entry_span, t.entry);
        detail::put_window(w, t.exit_span, t.exit);
    }
    w.byte(static_cast<std::uint8_t>(s.policy));
}

inline Bytes encode_summary(const IntervalSummary &s) {
    ByteWriter w;
    encode_summary(w, s);
    return std::move(w).bytes();
}

/// Reads one summary and leaves the reader just past it.
inline IntervalSummary decode_summary(ByteReader &r) {
    r.expect(kSummaryMagic, "summary magic");
    r.expect(kFormatVersion, "summary version");
    IntervalSummary s;
    s.L = r.varint();
    s.R = r.varint();
    s.q_in = detail::get_state(r);
    s.q_out = detail::get_state(r);
    auto k = r.count(r.remaining());
    s.tapes.resize(k);
    for (auto &t : s.tapes) {
        t.head_in = r.svarint();
        t.head_out = r.svarint();
        t.entry_span = detail::get_window(r, t.entry);
        t.exit_span = detail::get_window(r, t.exit);
    }
    auto tag = r.byte();
    if (tag > 1) throw DecodeError("bad summary policy tag");
    s.policy = static_cast<WindowPolicy>(tag);
    return s;
}

/// Decodes exactly one summary; trailing bytes are an error.
inline IntervalSummary decode_summary(ByteView bytes) {
    ByteReader r(bytes);
    auto s = decode_summary(r);
    r.expect_end();
    return s;
}

inline void encode_configuration(ByteWriter &w, const Configuration &c) {
    w.byte(kConfigurationMagic);
    w.byte(kFormatVersion);
    w.varint(c.time);
    w.varint(c.state);
    w.varint(c.tapes.size());
    for (const auto &t : c.tapes) {
        w.svarint(t.head);
        w.svarint(t.lo);
        w.varint(t.cells.size());
        detail::put_symbols(w, t.cells);
    }
}

inline Bytes encode_configuration(const Configuration &c) {
    ByteWriter w;
    encode_configuration(w, c);
    return std::move(w).bytes();
}

inline Configuration decode_configuration(ByteReader &r) {
    r.expect(kConfigurationMagic, "configuration magic");
    r.expect(kFormatVersion, "configuration version");
    Configuration c;
    c.time = r.varint();
    c.state = detail::get_state(r);
    c.tapes.resize(r.count(r.remaining()));
    for (auto &t : c.tapes) {
        t.head = r.svarint();
        t.lo = r.svarint();
        t.cells = detail::get_symbols(r, r.count(r.remaining()));
    }
    return c;
}

inline Configuration decode_configuration(ByteView bytes) {
    ByteReader r(bytes);
    auto c = decode_configuration(r);
    r.expect_end();
    return c;
}

/// Count, then one length-prefixed configuration record per entry.
class HistoryWriter {
  public:
    explicit HistoryWriter(std::uint64_t count) {
        w_.byte(kHistoryMagic);
        w_.byte(kFormatVersion);
        w_.varint(count);
        remaining_ = count;
    }

    void add(const Configuration &c) {
        if (remaining_ == 0) throw std::logic_error("history: more entries than declared");
        --remaining_;
        w_.block(encode_configuration(c));
    }

    Bytes finish() && {
        if (remaining_ != 0) throw std::logic_error("history: fewer entries than declared");
        return std::move(w_).bytes();
    }

  private:
    ByteWriter w_;
    std::uint64_t remaining_ = 0;
};

inline Bytes encode_history(const std::vector<Configuration> &history) {
    HistoryWriter w(history.size());
    for (const auto &c : history) w.add(c);
    return std::move(w).finish();
}

inline std::vector<Configuration> decode_history(ByteReader &r) {
    r.expect(kHistoryMagic, "history magic");
    r.expect(kFormatVersion, "history version");
    auto n = r.count(r.remaining());
    std::vector<Configuration> out;
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) out.push_back(decode_configuration(r.block()));
    return out;
}

inline std::vector<Configuration> decode_history(ByteView bytes) {
    ByteReader r(bytes);
    auto h = decode_history(r);
    r.expect_end();
    return h;
}

} // namespace holotape
