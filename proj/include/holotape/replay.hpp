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
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holotape/configuration.hpp"
#include "holotape/machine.hpp"
#include "holotape/summary.hpp"

namespace holotape {

using ConfigurationSink = std::function<void(const Configuration &)>;

/**
 * Steps a windowed configuration forward `steps` times without ever touching
 * a cell outside its tape windows. Each intermediate configuration is passed
 * to `emit`. A head leaving its window raises WindowEscape.
 */
inline Configuration replay_block(const MachineSpec &m, Configuration c, std::uint64_t steps,
                                  const ConfigurationSink &emit = {}) {
    const auto k = m.tapes();
    if (c.tapes.size() != k) throw std::invalid_argument("configuration has the wrong number of tapes");
    for (std::size_t i = 0; i < k; ++i) {
        if (!c.tapes[i].covers(c.tapes[i].head)) throw WindowEscape(i, c.tapes[i].head);
    }
    for (std::uint64_t s = 0; s < steps; ++s) {
        std::size_t tuple = 0;
        for (const auto &t : c.tapes) tuple = tuple * m.alphabet_size() + t.at(t.head);
        auto tr = m.row(c.state, tuple);
        for (std::size_t i = 0; i < k; ++i) {
            auto &t = c.tapes[i];
            t.at(t.head) = tr.writes[i];
            t.head += static_cast<int>(tr.moves[i]);
            if (!t.covers(t.head)) throw WindowEscape(i, t.head);
        }
        c.state = tr.next;
        ++c.time;
        if (emit) emit(c);
    }
    return c;
}

/// Configuration at time L-1 rebuilt from a full-policy summary's entry data.
inline Configuration entry_configuration(const IntervalSummary &s) {
    Configuration c;
    c.time = s.L - 1;
    c.state = s.q_in;
    for (const auto &t : s.tapes) c.tapes.push_back(Tape{t.head_in, t.entry_span.lo, t.entry});
    return c;
}

/**
 * C_tau for tau in [L-1, R] from a full-policy summary alone. The returned
 * tape windows are the cells visited by the heads during times L-1..tau, so
 * for L = 1 the result equals the oracle configuration exactly.
 */
inline Configuration replay_from_summary(const MachineSpec &m, const IntervalSummary &s,
                                         std::uint64_t tau) {
    if (s.policy != WindowPolicy::Full) {
        throw std::invalid_argument("replay needs a full-policy summary");
    }
    if (s.L == 0 || tau + 1 < s.L || tau > s.R) {
        throw std::out_of_range("time " + std::to_string(tau) + " outside [" +
                                std::to_string(s.L - 1) + "," + std::to_string(s.R) + "]");
    }
    auto entry = entry_configuration(s);
    std::vector<Span> seen;
    for (const auto &t : entry.tapes) seen.push_back(Span::point(t.head));
    auto c = replay_block(m, std::move(entry), tau - (s.L - 1), [&](const Configuration &x) {
        for (std::size_t i = 0; i < seen.size(); ++i) seen[i].include(x.tapes[i].head);
    });
    Configuration out;
    out.time = c.time;
    out.state = c.state;
    for (std::size_t i = 0; i < c.tapes.size(); ++i) {
        const auto &t = c.tapes[i];
        Tape trimmed{t.head, seen[i].lo, {}};
        for (auto cell = seen[i].lo; cell <= seen[i].hi; ++cell) trimmed.cells.push_back(t.at(cell));
        out.tapes.push_back(std::move(trimmed));
    }
    return out;
}

} // namespace holotape
