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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "holotape/blocks.hpp"
#include "holotape/causal_tree.hpp"
#include "holotape/configuration.hpp"
#include "holotape/ledger.hpp"
#include "holotape/machine.hpp"
#include "holotape/run.hpp"
#include "holotape/summary.hpp"

namespace holotape {

namespace detail {

/**
 * Live window of one tape: a ring buffer of fixed capacity holding a
 * contiguous run of cells around the head. It grows towards newly visited
 * cells and, once full, drops cells from the far side. Cells entering the
 * window come from the initial tape unless they lie inside the hull of cells
 * ever changed, in which case their contents are unknown (StaleCell).
 */
class TapeBuffer {
  public:
    TapeBuffer(std::size_t index, std::uint64_t capacity, const InitialTape &init)
        : index_(index), cap_(static_cast<std::int64_t>(capacity)), ring_(capacity) {
        ring_[0] = init.at(index_, 0);
        block_ = Span::point(0);
    }

    std::int64_t head() const noexcept { return head_; }
    std::int64_t capacity() const noexcept { return cap_; }
    Span window() const noexcept { return {lo_, lo_ + len_ - 1}; }
    const Span &block_span() const noexcept { return block_; }

    Symbol at(std::int64_t cell) const { return ring_[slot(cell)]; }
    Symbol read() const { return at(head_); }

    void write(Symbol s) {
        auto &c = ring_[slot(head_)];
        if (c != s) dirty_.include(head_);
        c = s;
    }

    void begin_block() { block_ = Span::point(head_); }

    void move(int delta, std::uint64_t block, const InitialTape &init) {
        if (delta == 0) return;
        head_ += delta;
        block_.include(head_);
        if (window().contains(head_)) return;
        if (len_ == cap_) {
            auto evicted = delta > 0 ? lo_ : lo_ + len_ - 1;
            if (block_.contains(evicted)) {
                throw NonBlockRespecting(block, index_, block_.lo, block_.hi, cap_);
            }
            if (delta > 0) {
                ++lo_;
                start_ = (start_ + 1) % cap_;
            }
            --len_;
        }
        if (dirty_.contains(head_)) throw StaleCell(block, index_, head_);
        if (delta > 0) {
            ++len_;
        } else {
            start_ = (start_ + cap_ - 1) % cap_;
            --lo_;
            ++len_;
        }
        ring_[slot(head_)] = init.at(index_, head_);
    }

    Tape materialize() const {
        Tape t{head_, lo_, {}};
        t.cells.reserve(static_cast<std::size_t>(len_));
        for (auto cell = lo_; cell < lo_ + len_; ++cell) t.cells.push_back(at(cell));
        return t;
    }

    std::vector<Symbol> read_span(const Span &s) const {
        std::vector<Symbol> out;
        for (auto cell = s.lo; cell <= s.hi; ++cell) out.push_back(at(cell));
        return out;
    }

  private:
    std::size_t slot(std::int64_t cell) const {
        return static_cast<std::size_t>((start_ + (cell - lo_)) % cap_);
    }

    std::size_t index_;
    std::int64_t cap_;
    std::vector<Symbol> ring_;
    std::int64_t head_ = 0;
    std::int64_t lo_ = 0;
    std::int64_t len_ = 1;
    std::int64_t start_ = 0;
    Span dirty_;
    Span block_;
};

class Frontier {
  public:
    Frontier(const MachineSpec &m, const InitialTape &init, std::uint64_t capacity)
        : m_(&m), init_(&init), state_(m.start()) {
        for (std::size_t i = 0; i < m.tapes(); ++i) tapes_.emplace_back(i, capacity, init);
    }

    std::uint64_t time() const noexcept { return time_; }
    StateId state() const noexcept { return state_; }
    const std::vector<TapeBuffer> &tapes() const noexcept { return tapes_; }

    void begin_block() {
        for (auto &t : tapes_) t.begin_block();
    }

    void step(std::uint64_t block) {
        std::size_t tuple = 0;
        for (const auto &t : tapes_) tuple = tuple * m_->alphabet_size() + t.read();
        auto tr = m_->row(state_, tuple);
        for (std::size_t i = 0; i < tapes_.size(); ++i) {
            tapes_[i].write(tr.writes[i]);
            tapes_[i].move(static_cast<int>(tr.moves[i]), block, *init_);
        }
        state_ = tr.next;
        ++time_;
    }

    Configuration materialize() const {
        Configuration c;
        c.time = time_;
        c.state = state_;
        for (const auto &t : tapes_) c.tapes.push_back(t.materialize());
        return c;
    }

  private:
    const MachineSpec *m_;
    const InitialTape *init_;
    std::vector<TapeBuffer> tapes_;
    StateId state_;
    std::uint64_t time_ = 0;
};

struct TapeDigest {
    std::int64_t head_in = 0;
    std::int64_t head_out = 0;
    Span entry;
    Span exit;
};

// Interface of a finished subtree without symbol payloads.
struct Digest {
    std::uint64_t L = 0;
    std::uint64_t R = 0;
    StateId q_in = 0;
    StateId q_out = 0;
    std::vector<TapeDigest> tapes;
    MeterHandle charge;
};

} // namespace detail

/// One leaf_emit visit: C_tau produced at (leaf, offset). The configuration is built on request.
class Emission {
  public:
    Emission(std::uint64_t leaf, std::uint64_t offset, std::uint64_t tau, const detail::Frontier &f)
        : leaf(leaf), offset(offset), tau(tau), frontier_(&f) {}

    std::uint64_t leaf;
    std::uint64_t offset;
    std::uint64_t tau;

    /// Live window contents; cells outside the window are not held by the simulator.
    Configuration configuration() const { return frontier_->materialize(); }

  private:
    const detail::Frontier *frontier_;
};

using EmissionSink = std::function<void(const Emission &)>;

struct HoloOptions {
    std::uint64_t b = 1;
    std::uint64_t c_int = 2;
    ScreenLedger *ledger = nullptr;
};

struct HoloResult {
    std::optional<IntervalSummary> root; // absent when no step ran
    std::uint64_t steps = 0;
    std::uint64_t blocks = 0;
    std::uint32_t depth = 0;
    std::uint64_t max_pending = 0;
    HaltReason halted = HaltReason::StepBudget;
};

namespace detail {

inline std::uint64_t simulated_length(const MachineSpec &m, const InitialTape &init, std::uint64_t t,
                                      std::uint64_t b, std::uint64_t cap) {
    Frontier f(m, init, cap);
    while (f.time() < t && !m.halting(f.state())) {
        if (f.time() % b == 0) f.begin_block();
        f.step(f.time() / b + 1);
    }
    return f.time();
}

} // namespace detail

/**
 * Streaming simulation over the implicit balanced tree of blocks. Only one
 * replay window per tape, the open tree frames, one digest per pending left
 * sibling and block 1's entry window are held at any time. Every C_tau,
 * 1 <= tau <= t, is handed to `sink` in order. Returns the root summary under
 * the boundary policy.
 */
inline HoloResult holo_run(const MachineSpec &m, const std::vector<Symbol> &input, std::uint64_t t,
                           const HoloOptions &opt, const EmissionSink &sink = {}) {
    if (opt.b == 0) throw std::invalid_argument("block size must be positive");
    if (opt.c_int == 0) throw std::invalid_argument("c_int must be at least 1");
    for (auto s : input) {
        if (!m.in_input_alphabet(s)) throw MachineError("input symbol outside the input alphabet");
    }
    const InitialTape init(m.blank(), input);
    const std::uint64_t cap = opt.c_int * opt.b;
    const std::size_t k = m.tapes();

    HoloResult result;
    result.steps = detail::simulated_length(m, init, t, opt.b, cap);
    const auto blocks = decompose(result.steps, opt.b);
    result.blocks = blocks.count();
    if (result.steps == 0) {
        auto s = m.start();
        result.halted = s == m.accept() ? HaltReason::Accept
                        : s == m.reject() ? HaltReason::Reject
                                          : HaltReason::StepBudget;
        return result;
    }
    const auto T = blocks.count();
    result.depth = tree_depth(T);

    Meter meter;
    const std::uint64_t cpw = cells_per_word(m.alphabet_size());
    const std::uint64_t fixed_words = 9 + 11 * k;
    const std::uint64_t frame_words = 4;
    const std::uint64_t digest_words = 4 + 6 * k;
    MeterHandle fixed_charge(meter, static_cast<std::int64_t>(fixed_words * cpw));

    detail::Frontier f(m, init, cap);
    std::vector<MeterHandle> buffer_charge;
    for (std::size_t i = 0; i < k; ++i) buffer_charge.emplace_back(meter, static_cast<std::int64_t>(cap));

    struct Frame {
        std::uint64_t id, lo, hi;
        std::uint8_t phase;
        MeterHandle charge;
    };
    std::vector<Frame> frames;
    std::vector<detail::Digest> pending;
    std::optional<detail::Digest> done;

    std::vector<Span> retained_span;
    std::vector<std::vector<Symbol>> retained;
    MeterHandle retained_charge(meter, 0);
    std::uint64_t retained_cells = 0;
    std::vector<std::vector<Symbol>> last_exit;

    auto account = [&](std::uint64_t tau) {
        if (!opt.ledger) return;
        std::uint64_t screen = k * cap + retained_cells;
        std::uint64_t book =
            cpw * (fixed_words + frame_words * frames.size() + digest_words * pending.size());
        opt.ledger->record(tau, screen, book);
        opt.ledger->audit(meter.live() == static_cast<std::int64_t>(screen + book));
    };

    auto run_leaf = [&](std::uint64_t leaf) {
        auto steps = blocks.block(leaf);
        detail::Digest d;
        d.L = steps.first;
        d.R = steps.last;
        d.q_in = f.state();
        d.tapes.resize(k);
        for (std::size_t i = 0; i < k; ++i) d.tapes[i].head_in = f.tapes()[i].head();
        f.begin_block();
        for (std::uint64_t off = 0; off < steps.length(); ++off) {
            f.step(leaf);
            account(f.time());
            if (sink) sink(Emission(leaf, off, f.time(), f));
        }
        d.q_out = f.state();
        for (std::size_t i = 0; i < k; ++i) {
            const auto &tb = f.tapes()[i];
            d.tapes[i].head_out = tb.head();
            d.tapes[i].entry = d.tapes[i].exit = tb.block_span();
        }
        if (leaf == 1) {
            for (std::size_t i = 0; i < k; ++i) {
                const auto &span = f.tapes()[i].block_span();
                retained_span.push_back(span);
                std::vector<Symbol> syms;
                for (auto cell = span.lo; cell <= span.hi; ++cell) syms.push_back(init.at(i, cell));
                retained_cells += syms.size();
                retained.push_back(std::move(syms));
            }
            retained_charge.resize(static_cast<std::int64_t>(retained_cells));
        }
        if (leaf == T) {
            for (std::size_t i = 0; i < k; ++i) {
                last_exit.push_back(f.tapes()[i].read_span(f.tapes()[i].block_span()));
            }
        }
        d.charge = MeterHandle(meter, static_cast<std::int64_t>(digest_words * cpw));
        return d;
    };

    auto combine = [&](detail::Digest left, detail::Digest right) {
        if (left.R + 1 != right.L) throw Incompatible("digest adjacency");
        if (left.q_out != right.q_in) throw Incompatible("state");
        for (std::size_t i = 0; i < k; ++i) {
            if (left.tapes[i].head_out != right.tapes[i].head_in) throw Incompatible("heads");
        }
        detail::Digest out;
        out.L = left.L;
        out.R = right.R;
        out.q_in = left.q_in;
        out.q_out = right.q_out;
        out.tapes.resize(k);
        for (std::size_t i = 0; i < k; ++i) {
            out.tapes[i].head_in = left.tapes[i].head_in;
            out.tapes[i].entry = left.tapes[i].entry;
            out.tapes[i].head_out = right.tapes[i].head_out;
            out.tapes[i].exit = right.tapes[i].exit;
        }
        out.charge = std::move(left.charge);
        return out;
    };

    frames.push_back({0, 1, T, 0, MeterHandle(meter, static_cast<std::int64_t>(frame_words * cpw))});
    while (!frames.empty()) {
        auto &fr = frames.back();
        if (fr.lo == fr.hi) {
            done = run_leaf(fr.lo);
            frames.pop_back();
            continue;
        }
        const auto n = fr.hi - fr.lo + 1;
        const auto l = left_leaves(n);
        if (fr.phase == 0) {
            fr.phase = 1;
            Frame child{left_child_id(fr.id), fr.lo, fr.lo + l - 1, 0,
                        MeterHandle(meter, static_cast<std::int64_t>(frame_words * cpw))};
            frames.push_back(std::move(child));
        } else if (fr.phase == 1) {
            fr.phase = 2;
            pending.push_back(std::move(*done));
            done.reset();
            result.max_pending = std::max<std::uint64_t>(result.max_pending, pending.size());
            Frame child{right_child_id(fr.id, n), fr.lo + l, fr.hi, 0,
                        MeterHandle(meter, static_cast<std::int64_t>(frame_words * cpw))};
            frames.push_back(std::move(child));
        } else {
            auto left = std::move(pending.back());
            pending.pop_back();
            done = combine(std::move(left), std::move(*done));
            frames.pop_back();
        }
    }

    const auto &d = *done;
    if (d.L != 1 || d.R != result.steps || d.q_out != f.state()) throw Incompatible("root digest");
    IntervalSummary root;
    root.L = 1;
    root.R = result.steps;
    root.q_in = d.q_in;
    root.q_out = d.q_out;
    root.policy = WindowPolicy::Boundary;
    for (std::size_t i = 0; i < k; ++i) {
        TapeInterface ti;
        ti.head_in = d.tapes[i].head_in;
        ti.head_out = d.tapes[i].head_out;
        ti.entry_span = retained_span[i];
        ti.entry = retained[i];
        ti.exit_span = d.tapes[i].exit;
        ti.exit = last_exit[i];
        if (!(ti.entry_span == d.tapes[i].entry)) throw Incompatible("root entry window");
        root.tapes.push_back(std::move(ti));
    }
    result.root = std::move(root);
    result.halted = f.state() == m.accept()   ? HaltReason::Accept
                    : f.state() == m.reject() ? HaltReason::Reject
                                              : HaltReason::StepBudget;
    return result;
}

/// C_tau captured at its unique (leaf, offset) visit during a streaming run.
inline Configuration reconstruct_at(const MachineSpec &m, const std::vector<Symbol> &input,
                                    std::uint64_t t, const HoloOptions &opt, std::uint64_t tau) {
    if (tau == 0 || tau > t) {
        throw std::out_of_range("step " + std::to_string(tau) + " outside 1.." + std::to_string(t));
    }
    const auto want = time_to_leaf(tau, opt.b);
    std::optional<Configuration> hit;
    std::uint64_t captures = 0;
    auto res = holo_run(m, input, t, opt, [&](const Emission &e) {
        if (e.leaf == want.leaf && e.offset == want.offset) {
            ++captures;
            hit = e.configuration();
        }
    });
    if (tau > res.steps) {
        throw std::out_of_range("step " + std::to_string(tau) + " beyond halt at " +
                                std::to_string(res.steps));
    }
    if (captures != 1) {
        throw std::logic_error("leaf " + std::to_string(want.leaf) + " offset " +
                               std::to_string(want.offset) + " visited " + std::to_string(captures) +
                               " times");
    }
    return *hit;
}

} // namespace holotape
