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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "holotape/machine.hpp"

namespace holotape {

/// Closed cell interval [lo, hi]; empty when hi < lo.
struct Span {
    std::int64_t lo = 0;
    std::int64_t hi = -1;

    static Span point(std::int64_t cell) { return {cell, cell}; }

    bool empty() const noexcept { return hi < lo; }
    std::size_t length() const noexcept { return empty() ? 0 : static_cast<std::size_t>(hi - lo + 1); }
    bool contains(std::int64_t cell) const noexcept { return lo <= cell && cell <= hi; }
    bool contains(const Span &o) const noexcept { return o.empty() || (lo <= o.lo && o.hi <= hi); }

    void include(std::int64_t cell) noexcept {
        if (empty()) {
            lo = hi = cell;
        } else {
            lo = std::min(lo, cell);
            hi = std::max(hi, cell);
        }
    }

    static Span hull(const Span &a, const Span &b) {
        if (a.empty()) return b;
        if (b.empty()) return a;
        return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    }

    bool operator==(const Span &o) const noexcept {
        return (empty() && o.empty()) || (lo == o.lo && hi == o.hi);
    }
};

/// One tape of a configuration: head plus a dense window of cells.
/// Outside the window the tape still holds its initial contents.
struct Tape {
    std::int64_t head = 0;
    std::int64_t lo = 0;
    std::vector<Symbol> cells;

    Span span() const noexcept {
        return {lo, lo + static_cast<std::int64_t>(cells.size()) - 1};
    }
    bool covers(std::int64_t cell) const noexcept { return span().contains(cell); }
    Symbol at(std::int64_t cell) const { return cells[static_cast<std::size_t>(cell - lo)]; }
    Symbol &at(std::int64_t cell) { return cells[static_cast<std::size_t>(cell - lo)]; }

    bool operator==(const Tape &) const = default;
};

/**
 * Instantaneous description at time `time`. For oracle configurations each
 * tape window is exactly the span of cells visited up to `time`; configurations
 * rebuilt from summaries carry the summary's window instead.
 */
struct Configuration {
    std::uint64_t time = 0;
    StateId state = 0;
    std::vector<Tape> tapes;

    std::vector<Span> spans() const {
        std::vector<Span> out;
        for (const auto &t : tapes) out.push_back(t.span());
        return out;
    }

    bool operator==(const Configuration &) const = default;
};

/// Tape contents at time 0: the input on tape 0 from cell 0, blanks everywhere else.
class InitialTape {
  public:
    InitialTape(Symbol blank, std::vector<Symbol> input) : blank_(blank), input_(std::move(input)) {}

    Symbol at(std::size_t tape, std::int64_t cell) const noexcept {
        if (tape == 0 && cell >= 0 && cell < static_cast<std::int64_t>(input_.size())) {
            return input_[static_cast<std::size_t>(cell)];
        }
        return blank_;
    }

    Symbol blank() const noexcept { return blank_; }
    const std::vector<Symbol> &input() const noexcept { return input_; }

    bool operator==(const InitialTape &) const = default;

  private:
    Symbol blank_;
    std::vector<Symbol> input_;
};

inline Configuration initial_configuration(const MachineSpec &m, const InitialTape &init) {
    Configuration c;
    c.time = 0;
    c.state = m.start();
    c.tapes.resize(m.tapes());
    for (std::size_t i = 0; i < m.tapes(); ++i) {
        c.tapes[i].head = 0;
        c.tapes[i].lo = 0;
        c.tapes[i].cells = {init.at(i, 0)};
    }
    return c;
}

namespace detail {

inline void cover_head(Tape &tape, std::size_t index, const InitialTape &init) {
    if (tape.head < tape.lo) {
        tape.cells.insert(tape.cells.begin(), init.at(index, tape.head));
        tape.lo = tape.head;
    } else if (tape.head > tape.span().hi) {
        tape.cells.push_back(init.at(index, tape.head));
    }
}

} // namespace detail

/// In-place δ-step: C_τ becomes C_{τ+1}. Windows grow by at most one cell per side.
inline void advance(const MachineSpec &m, const InitialTape &init, Configuration &c) {
    const std::size_t k = m.tapes();
    std::size_t tuple = 0;
    for (const auto &t : c.tapes) tuple = tuple * m.alphabet_size() + t.at(t.head);
    auto tr = m.row(c.state, tuple);
    for (std::size_t i = 0; i < k; ++i) {
        auto &t = c.tapes[i];
        t.at(t.head) = tr.writes[i];
        t.head += static_cast<int>(tr.moves[i]);
        detail::cover_head(t, i, init);
    }
    c.state = tr.next;
    ++c.time;
}

/// Pure single step. Throws HaltedError from accept/reject.
inline Configuration step(const MachineSpec &m, const InitialTape &init, Configuration c) {
    advance(m, init, c);
    return c;
}

/// Contents of `span` on one tape of c; cells outside c's window read as initial contents.
inline std::vector<Symbol> read_span(const Configuration &c, std::size_t tape, const Span &span,
                                     const InitialTape &init) {
    std::vector<Symbol> out;
    out.reserve(span.length());
    const auto &t = c.tapes[tape];
    for (auto cell = span.lo; cell <= span.hi; ++cell) {
        out.push_back(t.covers(cell) ? t.at(cell) : init.at(tape, cell));
    }
    return out;
}

/// Same time, state and heads as c, with each tape window replaced by `spans`.
inline Configuration restrict_to(const Configuration &c, std::span<const Span> spans,
                                 const InitialTape &init) {
    Configuration out;
    out.time = c.time;
    out.state = c.state;
    out.tapes.resize(c.tapes.size());
    for (std::size_t i = 0; i < c.tapes.size(); ++i) {
        out.tapes[i].head = c.tapes[i].head;
        out.tapes[i].lo = spans[i].lo;
        out.tapes[i].cells = read_span(c, i, spans[i], init);
    }
    return out;
}

} // namespace holotape
