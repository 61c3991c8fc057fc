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
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace holotape {

/**
 * Unit convention: a cell holds one work-alphabet symbol. An integer field is
 * a 64-bit word and costs ceil(64 / log2|Γ|) cells (|Γ| taken as at least 2).
 */
inline std::uint64_t cells_per_word(std::size_t alphabet_size) {
    auto bits = std::log2(static_cast<double>(std::max<std::size_t>(alphabet_size, 2)));
    return static_cast<std::uint64_t>(std::ceil(64.0 / bits - 1e-9));
}

/// Running count of cells held by live metered objects.
class Meter {
  public:
    std::int64_t live() const noexcept { return live_; }
    std::int64_t peak() const noexcept { return peak_; }

  private:
    friend class MeterHandle;
    void add(std::int64_t n) noexcept {
        live_ += n;
        peak_ = std::max(peak_, live_);
    }
    std::int64_t live_ = 0;
    std::int64_t peak_ = 0;
};

/// Charges `cells` to a meter for as long as the handle lives.
class MeterHandle {
  public:
    MeterHandle() = default;
    MeterHandle(Meter &m, std::int64_t cells) : meter_(&m), cells_(cells) { meter_->add(cells_); }
    MeterHandle(MeterHandle &&o) noexcept : meter_(std::exchange(o.meter_, nullptr)), cells_(o.cells_) {}
    MeterHandle &operator=(MeterHandle &&o) noexcept {
        if (this != &o) {
            release();
            meter_ = std::exchange(o.meter_, nullptr);
            cells_ = o.cells_;
        }
        return *this;
    }
    MeterHandle(const MeterHandle &) = delete;
    MeterHandle &operator=(const MeterHandle &) = delete;
    ~MeterHandle() { release(); }

    void resize(std::int64_t cells) {
        if (meter_) meter_->add(cells - cells_);
        cells_ = cells;
    }

  private:
    void release() noexcept {
        if (meter_) meter_->add(-cells_);
        meter_ = nullptr;
    }
    Meter *meter_ = nullptr;
    std::int64_t cells_ = 0;
};

struct LedgerRow {
    std::uint64_t tau = 0;
    std::uint64_t s_screen = 0;
    std::uint64_t s_book = 0;
    std::uint64_t s_total() const noexcept { return s_screen + s_book; }
};

/**
 * Per-step memory account of the simulator. Screen: window and summary
 * symbol payloads. Bookkeeping: integer fields (ids, counters, digests).
 * Maxima are always kept; per-step rows only when asked.
 */
class ScreenLedger {
  public:
    explicit ScreenLedger(bool keep_rows = false) : keep_rows_(keep_rows) {}

    void record(std::uint64_t tau, std::uint64_t screen, std::uint64_t book) {
        LedgerRow r{tau, screen, book};
        ++steps_;
        max_screen_ = std::max(max_screen_, screen);
        max_book_ = std::max(max_book_, book);
        max_total_ = std::max(max_total_, r.s_total());
        chain_ok_ = chain_ok_ && r.s_screen <= r.s_total();
        if (keep_rows_) rows_.push_back(r);
    }

    /// Result of comparing the formula total against the meter at a sampled step.
    void audit(bool agrees) noexcept {
        ++audits_;
        audit_ok_ = audit_ok_ && agrees;
    }

    std::uint64_t steps() const noexcept { return steps_; }
    std::uint64_t max_screen() const noexcept { return max_screen_; }
    std::uint64_t max_book() const noexcept { return max_book_; }
    std::uint64_t max_total() const noexcept { return max_total_; }
    bool chain_holds() const noexcept { return chain_ok_; }
    std::uint64_t audits() const noexcept { return audits_; }
    bool audits_agree() const noexcept { return audit_ok_; }
    const std::vector<LedgerRow> &rows() const noexcept { return rows_; }

  private:
    bool keep_rows_;
    std::uint64_t steps_ = 0;
    std::uint64_t max_screen_ = 0;
    std::uint64_t max_book_ = 0;
    std::uint64_t max_total_ = 0;
    bool chain_ok_ = true;
    std::uint64_t audits_ = 0;
    bool audit_ok_ = true;
    std::vector<LedgerRow> rows_;
};

} // namespace holotape
