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

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holotape/machine.hpp"

namespace holotape::samples {

/// One tape: write 1 and step right, then write 1 in place and accept. Two steps on any input.
inline MachineSpec writer2() {
    return MachineBuilder("writer2", 1)
        .work_alphabet({"_", "1"})
        .input_alphabet({"1"})
        .blank("_")
        .states({"q0", "q1", "accept", "reject"})
        .start("q0")
        .accept("accept")
        .reject("reject")
        .on("q0", {"_"}, "q1", {"1"}, {Move::Right})
        .on("q0", {"1"}, "q1", {"1"}, {Move::Right})
        .on("q1", {"_"}, "accept", {"1"}, {Move::Stay})
        .on("q1", {"1"}, "accept", {"1"}, {Move::Stay})
        .build();
}

/// One tape, n+2 states: the head sweeps right n cells writing 1s, then accepts at cell n.
inline MachineSpec sweep(std::size_t n) {
    std::vector<std::string> states;
    for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
    states.push_back("accept");
    states.push_back("reject");
    MachineBuilder b("sweep" + std::to_string(n), 1);
    b.work_alphabet({"_", "1"}).input_alphabet({"1"}).blank("_").states(states);
    b.start(n ? "s0" : "accept").accept("accept").reject("reject");
    for (std::size_t i = 0; i < n; ++i) {
        auto next = i + 1 < n ? "s" + std::to_string(i + 1) : std::string("accept");
        b.on(states[i], {"_"}, next, {"1"}, {Move::Right});
        b.on(states[i], {"1"}, next, {"1"}, {Move::Right});
    }
    return b.build();
}

/**
 * Binary counter on tape 0, least significant bit at cell 0. Repeatedly
 * increments in place and walks back to cell 0; when the carry runs off the
 * input (value 2^n for an n-bit input) it writes the new top bit and accepts.
 */
inline MachineSpec counter() {
    return MachineBuilder("counter", 1)
        .work_alphabet({"_", "0", "1"})
        .input_alphabet({"0", "1"})
        .blank("_")
        .states({"inc", "back", "accept", "reject"})
        .start("inc")
        .accept("accept")
        .reject("reject")
        .on("inc", {"1"}, "inc", {"0"}, {Move::Right})
        .on("inc", {"0"}, "back", {"1"}, {Move::Left})
        .on("inc", {"_"}, "accept", {"1"}, {Move::Stay})
        .on("back", {"0"}, "back", {"0"}, {Move::Left})
        .on("back", {"1"}, "back", {"1"}, {Move::Left})
        .on("back", {"_"}, "inc", {"_"}, {Move::Right})
        .build();
}

/**
 * Two-tape palindrome checker over {a,b}. Tape 0 (the input) is only read;
 * tape 1 moves in lockstep with it and marks checked positions with `x`.
 * Each round carries the leftmost unchecked symbol to the rightmost
 * unchecked position, so the run takes about n^2/2 steps on n input symbols.
 */
inline MachineSpec palin() {
    MachineBuilder b("palin", 2);
    b.work_alphabet({"_", "a", "b", "x"}).input_alphabet({"a", "b"}).blank("_");
    b.states({"seek", "carry_a", "carry_b", "cmp_a", "cmp_b", "home", "accept", "reject"});
    b.start("seek").accept("accept").reject("reject");
    const std::vector<std::string> letters = {"a", "b"};

    // seek: at the leftmost unchecked cell
    b.on("seek", {"_", "_"}, "accept", {"_", "_"}, {Move::Stay, Move::Stay});
    for (const auto &s : letters) {
        b.on("seek", {s, "x"}, "accept", {s, "x"}, {Move::Stay, Move::Stay});
        b.on("seek", {s, "_"}, "carry_" + s, {s, "x"}, {Move::Right, Move::Right});
    }
    for (const auto &c : letters) {
        // carry_c: run right to the end of the unchecked region
        b.on("carry_" + c, {"_", "_"}, "cmp_" + c, {"_", "_"}, {Move::Left, Move::Left});
        for (const auto &s : letters) {
            b.on("carry_" + c, {s, "_"}, "carry_" + c, {s, "_"}, {Move::Right, Move::Right});
            b.on("carry_" + c, {s, "x"}, "cmp_" + c, {s, "x"}, {Move::Left, Move::Left});
        }
        // cmp_c: rightmost unchecked cell, or the lone middle cell already marked
        for (const auto &s : letters) {
            b.on("cmp_" + c, {s, "x"}, "accept", {s, "x"}, {Move::Stay, Move::Stay});
            b.on("cmp_" + c, {s, "_"}, s == c ? "home" : "reject", {s, s == c ? "x" : "_"},
                 {s == c ? Move::Left : Move::Stay, s == c ? Move::Left : Move::Stay});
        }
    }
    // home: back to the left boundary of the unchecked region
    for (const auto &s : letters) {
        b.on("home", {s, "_"}, "home", {s, "_"}, {Move::Left, Move::Left});
        b.on("home", {s, "x"}, "seek", {s, "x"}, {Move::Right, Move::Right});
    }
    // unreachable combinations: leave the tapes untouched and reject
    b.otherwise([](const std::string &, const std::vector<std::string> &read) {
        MachineBuilder::Rule r;
        r.next = "reject";
        r.write = read;
        r.moves.assign(read.size(), Move::Stay);
        return r;
    });
    return b.build();
}

/// Bundled machine by name: writer2, counter, palin, sweep<n>.
inline std::optional<MachineSpec> by_name(const std::string &name) {
    if (name == "writer2") return writer2();
    if (name == "counter") return counter();
    if (name == "palin") return palin();
    if (name.rfind("sweep", 0) == 0 && name.size() > 5 &&
        name.find_first_not_of("0123456789", 5) == std::string::npos) {
        return sweep(std::stoul(name.substr(5)));
    }
    return std::nullopt;
}

/// Smallest n with n^2 >= x.
inline std::uint64_t isqrt_ceil(std::uint64_t x) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(x)));
    while (r * r > x) --r;
    while (r * r < x) ++r;
    return r;
}

inline std::uint64_t ceil_log2(std::uint64_t x) {
    std::uint64_t d = 0;
    while ((std::uint64_t{1} << d) < x) ++d;
    return d;
}

/// n zero bits: long enough that the counter never overflows within t steps.
inline std::string counter_input(std::uint64_t t) {
    return std::string(ceil_log2(t + 1) + 2, '0');
}

/// Palindrome long enough that the checker runs at least t steps.
inline std::string palin_input(std::uint64_t t) {
    auto n = isqrt_ceil(2 * t) + 4;
    std::string half;
    for (std::uint64_t i = 0; i < (n + 1) / 2; ++i) half.push_back((i * 7 / 3) % 2 ? 'b' : 'a');
    std::string s = half;
    for (auto i = n / 2; i-- > 0;) s.push_back(half[i]);
    return s;
}

/// Default input family used by studies: picks a length that keeps the machine busy for t steps.
inline std::string default_input(const MachineSpec &m, std::uint64_t t) {
    if (m.name() == "counter") return counter_input(t);
    if (m.name() == "palin") return palin_input(t);
    return "";
}

} // namespace holotape::samples
