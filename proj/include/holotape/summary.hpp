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
#include <string>
#include <vector>

#include "holotape/blocks.hpp"
#include "holotape/configuration.hpp"
#include "holotape/run.hpp"

namespace holotape {

/**
 * Which cells an interval summary keeps.
 *
 * Full: every cell any head visits during the interval, with contents before
 * and after. Enough to replay the interval on its own.
 *
 * Boundary: the entry window of the leftmost block and the exit window of the
 * rightmost block only, so merged summaries stay O(b) in size. Leaves are the
 * same under both policies.
 */
enum class WindowPolicy : std::uint8_t { Boundary = 0, Full = 1 };

inline const char *to_string(WindowPolicy p) { return p == WindowPolicy::Full ? "full" : "boundary"; }

/// Per-tape interface of an interval: heads plus entry and exit windows.
struct TapeInterface {
    std::int64_t head_in = 0;
    std::int64_t head_out = 0;
    Span entry_span;
    std::vector<Symbol> entry; // contents over entry_span at time L-1
    Span exit_span;
    std::vector<Symbol> exit; // contents over exit_span at time R

    bool operator==(const TapeInterface &) const = default;
};

/**
 * Boundary record of the steps [L, R]. Entry data describe C_{L-1} (the
 * configuration before step L), exit data describe C_R, so adjacent intervals
 * meet at exactly one shared configuration.
 */
struct IntervalSummary {
    std::uint64_t L = 1;
    std::uint64_t R = 0;
    StateId q_in = 0;
    StateId q_out = 0;
    std::vector<TapeInterface> tapes;
    WindowPolicy policy = WindowPolicy::Full;

    StepInterval steps() const noexcept { return {L, R}; }

    bool operator==(const IntervalSummary &) const = default;
};

namespace detail {

inline TapeInterface interface_from(const Configuration &before, const Configuration &after,
                                    std::size_t tape, const Span &entry_span,
                                    const Span &exit_span, const InitialTape &init) {
    TapeInterface ti;
    ti.head_in = before.tapes[tape].head;
    ti.head_out = after.tapes[tape].head;
    ti.entry_span = entry_span;
    ti.entry = read_span(before, tape, entry_span, init);
    ti.exit_span = exit_span;
    ti.exit = read_span(after, tape, exit_span, init);
    return ti;
}

inline void check_interval(const RunRecord &run, const StepInterval &steps) {
    if (steps.first == 0 || steps.last < steps.first || steps.last > run.steps()) {
        throw std::invalid_argument("interval [" + std::to_string(steps.first) + "," +
                                    std::to_string(steps.last) + "] is not a non-empty range of 1.." +
                                    std::to_string(run.steps()));
    }
}

} // namespace detail

/// Full-policy summary of any step range, read straight off the oracle.
inline IntervalSummary full_summary(const RunRecord &run, const StepInterval &steps) {
    detail::check_interval(run, steps);
    auto before = run.at(steps.first - 1);
    auto after = run.at(steps.last);
    IntervalSummary s;
    s.L = steps.first;
    s.R = steps.last;
    s.q_in = before.state;
    s.q_out = after.state;
    s.policy = WindowPolicy::Full;
    for (std::size_t i = 0; i < run.machine().tapes(); ++i) {
        auto span = visited_span(run, steps, i);
        s.tapes.push_back(detail::interface_from(before, after, i, span, span, run.initial()));
    }
    return s;
}

/// Summary of block k (1-based). Fails if any tape's visited span exceeds c_int * b.
inline IntervalSummary leaf_summary(const RunRecord &run, const BlockDecomposition &blocks,
                                    std::uint64_t k, std::uint64_t c_int) {
    auto steps = blocks.block(k);
    auto s = full_summary(run, steps);
    auto limit = static_cast<std::int64_t>(c_int * blocks.block_size());
    for (std::size_t i = 0; i < s.tapes.size(); ++i) {
        const auto &span = s.tapes[i].entry_span;
        if (static_cast<std::int64_t>(span.length()) > limit) {
            throw NonBlockRespecting(k, i, span.lo, span.hi, limit);
        }
    }
    return s;
}

/// Boundary-policy summary of blocks k1..k2 computed directly from the oracle.
inline IntervalSummary boundary_summary(const RunRecord &run, const BlockDecomposition &blocks,
                                        std::uint64_t k1, std::uint64_t k2) {
    auto steps = blocks.blocks(k1, k2);
    detail::check_interval(run, steps);
    auto before = run.at(steps.first - 1);
    auto after = run.at(steps.last);
    IntervalSummary s;
    s.L = steps.first;
    s.R = steps.last;
    s.q_in = before.state;
    s.q_out = after.state;
    s.policy = WindowPolicy::Boundary;
    for (std::size_t i = 0; i < run.machine().tapes(); ++i) {
        auto entry = visited_span(run, blocks.block(k1), i);
        auto exit = visited_span(run, blocks.block(k2), i);
        s.tapes.push_back(detail::interface_from(before, after, i, entry, exit, run.initial()));
    }
    return s;
}

/// Cells held by the summary's windows; a tape whose entry and exit spans coincide counts once.
inline std::size_t screen_area(const IntervalSummary &s) {
    std::size_t area = 0;
    for (const auto &t : s.tapes) {
        area += t.entry_span == t.exit_span ? t.entry_span.length()
                                            : t.entry_span.length() + t.exit_span.length();
    }
    return area;
}

/**
 * Composes σ([L,M]) and σ([M+1,R]) into σ([L,R]).
 *
 * Compatibility: left's exit state, heads and exit window contents must agree
 * with right's entry data wherever the windows overlap. Under the full policy
 * the result window is the union of both windows; a cell only the right half
 * visits was untouched during the left half, so its contents at L-1 are the
 * right half's entry contents (and symmetrically for exit contents).
 */
inline IntervalSummary merge(const IntervalSummary &left, const IntervalSummary &right) {
    if (left.R + 1 != right.L) {
        throw std::invalid_argument("merge needs adjacent intervals, got [" + std::to_string(left.L) +
                                    "," + std::to_string(left.R) + "] and [" +
                                    std::to_string(right.L) + "," + std::to_string(right.R) + "]");
    }
    if (left.policy != right.policy) throw Incompatible("policy");
    if (left.tapes.size() != right.tapes.size()) throw Incompatible("tape count");
    if (left.q_out != right.q_in) throw Incompatible("state");
    for (std::size_t i = 0; i < left.tapes.size(); ++i) {
        const auto &a = left.tapes[i];
        const auto &b = right.tapes[i];
        if (a.head_out != b.head_in) throw Incompatible("heads");
        auto lo = std::max(a.exit_span.lo, b.entry_span.lo);
        auto hi = std::min(a.exit_span.hi, b.entry_span.hi);
        for (auto cell = lo; cell <= hi; ++cell) {
            if (a.exit[static_cast<std::size_t>(cell - a.exit_span.lo)] !=
                b.entry[static_cast<std::size_t>(cell - b.entry_span.lo)]) {
                throw Incompatible("window");
            }
        }
    }

    IntervalSummary out;
    out.L = left.L;
    out.R = right.R;
    out.q_in = left.q_in;
    out.q_out = right.q_out;
    out.policy = left.policy;
    for (std::size_t i = 0; i < left.tapes.size(); ++i) {
        const auto &a = left.tapes[i];
        const auto &b = right.tapes[i];
        TapeInterface t;
        t.head_in = a.head_in;
        t.head_out = b.head_out;
        if (out.policy == WindowPolicy::Boundary) {
            t.entry_span = a.entry_span;
            t.entry = a.entry;
            t.exit_span = b.exit_span;
            t.exit = b.exit;
        } else {
            if (a.entry_span.hi + 1 < b.entry_span.lo || b.entry_span.hi + 1 < a.entry_span.lo) {
                throw Incompatible("window gap");
            }
            auto span = Span::hull(a.entry_span, b.entry_span);
            t.entry_span = t.exit_span = span;
            for (auto cell = span.lo; cell <= span.hi; ++cell) {
                t.entry.push_back(a.entry_span.contains(cell)
                                      ? a.entry[static_cast<std::size_t>(cell - a.entry_span.lo)]
                                      : b.entry[static_cast<std::size_t>(cell - b.entry_span.lo)]);
                t.exit.push_back(b.exit_span.contains(cell)
                                     ? b.exit[static_cast<std::size_t>(cell - b.exit_span.lo)]
                                     : a.exit[static_cast<std::size_t>(cell - a.exit_span.lo)]);
            }
        }
        out.tapes.push_back(std::move(t));
    }
    return out;
}

} // namespace holotape
