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

#include "holotape/codec.hpp"
#include "holotape/machine.hpp"
#include "holotape/replay.hpp"
#include "holotape/varint.hpp"

// A witness program is plain data: a driver tag plus the machine encoding.
// run_witness is the one fixed interpreter for it. Program length therefore
// depends on the machine only, never on the interval, time or input.

namespace holotape {

inline constexpr std::uint8_t kWitnessMagic = 0x57;

enum class WitnessKind : std::uint8_t { Pointwise = 0x2A, History = 0x2B };

inline const char *to_string(WitnessKind k) { return k == WitnessKind::History ? "history" : "pointwise"; }

struct WitnessProgram {
    WitnessKind kind = WitnessKind::Pointwise;
    Bytes bytes;
};

inline WitnessProgram build_witness(const MachineSpec &m, WitnessKind kind) {
    ByteWriter w;
    w.byte(kWitnessMagic);
    w.byte(kFormatVersion);
    w.byte(static_cast<std::uint8_t>(kind));
    encode_machine(w, m);
    return {kind, std::move(w).bytes()};
}

/// Conditional input of a pointwise witness: a full summary followed by tau.
inline Bytes pointwise_conditional(const IntervalSummary &s, std::uint64_t tau) {
    ByteWriter w;
    encode_summary(w, s);
    w.varint(tau);
    return std::move(w).bytes();
}

/**
 * Pointwise: conditional = summary, tau; output = encoded C_tau.
 * History: conditional = summary; output = encoded C_{L-1}, ..., C_R, each
 * replayed from the summary independently.
 */
inline Bytes run_witness(ByteView program, ByteView conditional) {
    ByteReader p(program);
    p.expect(kWitnessMagic, "witness magic");
    p.expect(kFormatVersion, "witness version");
    auto tag = p.byte();
    if (tag != static_cast<std::uint8_t>(WitnessKind::Pointwise) &&
        tag != static_cast<std::uint8_t>(WitnessKind::History)) {
        throw DecodeError("bad witness kind");
    }
    auto m = decode_machine(p);
    p.expect_end();

    ByteReader c(conditional);
    auto s = decode_summary(c);
    if (s.policy != WindowPolicy::Full) throw DecodeError("witness needs a full-policy summary");
    if (s.tapes.size() != m.tapes()) throw DecodeError("summary tape count does not match machine");
    if (s.L == 0 || s.R < s.L) throw DecodeError("summary interval is empty");
    if (s.q_in >= m.state_count() || s.q_out >= m.state_count()) {
        throw DecodeError("summary state outside the machine");
    }
    for (const auto &t : s.tapes) {
        for (auto sym : t.entry) {
            if (sym >= m.alphabet_size()) throw DecodeError("summary symbol outside the machine");
        }
    }

    if (tag == static_cast<std::uint8_t>(WitnessKind::Pointwise)) {
        auto tau = c.varint();
        c.expect_end();
        return encode_configuration(replay_from_summary(m, s, tau));
    }
    c.expect_end();
    HistoryWriter out(s.R - s.L + 2);
    for (auto tau = s.L - 1; tau <= s.R; ++tau) out.add(replay_from_summary(m, s, tau));
    return std::move(out).finish();
}

inline Bytes run_witness(const WitnessProgram &w, ByteView conditional) {
    return run_witness(ByteView(w.bytes), conditional);
}

} // namespace holotape
