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

#include "holotape/configuration.hpp"
#include "holotape/run.hpp"

namespace holotape {

/// Closed range of step indices [first, last]; step tau is the transition C_{tau-1} -> C_tau.
struct StepInterval {
    std::uint64_t first = 1;
    std::uint64_t last = 0;

    std::uint64_t length() const noexcept { return last >= first ? last - first + 1 : 0; }
    bool contains(std::uint64_t tau) const noexcept { return first <= tau && tau <= last; }
    bool operator==(const StepInterval &) const = default;
};

/// Partition of steps 1..t into T = ceil(t/b) blocks I_k = [(k-1)b+1, min(kb, t)], k = 1..T.
class BlockDecomposition {
  public:
    BlockDecomposition(std::uint64_t t, std::uint64_t b) : t_(t), b_(b) {
        if (b == 0) throw std::invalid_argument("block size must be positive");
    }

    std::uint64_t steps() const noexcept { return t_; }
    std::uint64_t block_size() const noexcept { return b_; }
    std::uint64_t count() const noexcept { return (t_ + b_ - 1) / b_; }

    /// Block k, 1-based.
    StepInterval block(std::uint64_t k) const {
        if (k == 0 || k > count()) {
            throw std::out_of_range("block " + std::to_string(k) + " outside 1.." +
                                    std::to_string(count()));
        }
        return {(k - 1) * b_ + 1, std::min(k * b_, t_)};
    }

    /// Steps covered by blocks k1..k2.
    StepInterval blocks(std::uint64_t k1, std::uint64_t k2) const {
        return {block(k1).first, block(k2).last};
    }

    std::vector<StepInterval> all() const {
        std::vector<StepInterval> out;
        for (std::uint64_t k = 1; k <= count(); ++k) out.push_back(block(k));
        return out;
    }

  private:
    std::uint64_t t_;
    std::uint64_t b_;
};

/// t = 0 yields the empty decomposition (T = 0); b must be positive.
inline BlockDecomposition decompose(std::uint64_t t, std::uint64_t b) { return {t, b}; }

/// Cells visited on `tape` by the head at times first-1 .. last.
inline Span visited_span(const RunRecord &run, const StepInterval &steps, std::size_t tape) {
    Span s;
    for (auto tau = steps.first - 1; tau <= steps.last; ++tau) s.include(run.head(tau, tape));
    return s;
}

struct BlockCheck {
    std::uint64_t block = 0;
    StepInterval steps;
    std::vector<Span> spans; // one per tape
    bool pass = false;
};

struct BlockReport {
    std::uint64_t block_size = 0;
    std::uint64_t c_int = 0;
    std::uint64_t limit = 0;
    std::vector<BlockCheck> blocks;

    bool verdict() const {
        for (const auto &b : blocks) {
            if (!b.pass) return false;
        }
        return true;
    }
};

/// Measures every block's per-tape visited span against the window limit c_int * b.
inline BlockReport check_block_respecting(const RunRecord &run, std::uint64_t b, std::uint64_t c_int) {
    if (c_int == 0) throw std::invalid_argument("c_int must be at least 1");
    auto dec = decompose(run.steps(), b);
    BlockReport report{b, c_int, c_int * b, {}};
    const auto k = run.machine().tapes();
    for (std::uint64_t blk = 1; blk <= dec.count(); ++blk) {
        BlockCheck c;
        c.block = blk;
        c.steps = dec.block(blk);
        c.pass = true;
        // single pass over the block's head trace, all tapes at once
        c.spans.assign(k, Span{});
        for (auto tau = c.steps.first - 1; tau <= c.steps.last; ++tau) {
            for (std::size_t i = 0; i < k; ++i) c.spans[i].include(run.head(tau, i));
        }
        for (const auto &s : c.spans) c.pass = c.pass && s.length() <= report.limit;
        report.blocks.push_back(std::move(c));
    }
    return report;
}

} // namespace holotape
