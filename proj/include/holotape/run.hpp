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
#include <stdexcept>
#include <string>
#include <vector>

#include "holotape/configuration.hpp"
#include "holotape/machine.hpp"

namespace holotape {

enum class HaltReason { Accept, Reject, StepBudget };

inline const char *to_string(HaltReason h) {
    switch (h) {
    case HaltReason::Accept: return "accept";
    case HaltReason::Reject: return "reject";
    case HaltReason::StepBudget: return "budget";
    }
    return "?";
}

/**
 * A complete run C_0..C_t kept in linear space: the per-step log (state, head
 * positions, symbols written) plus periodic checkpoints. This is the oracle
 * every other component is checked against.
 */
class RunRecord {
  public:
    const MachineSpec &machine() const noexcept { return machine_; }
    const InitialTape &initial() const noexcept { return initial_; }
    std::uint64_t steps() const noexcept { return t_; }
    HaltReason halted() const noexcept { return halt_; }

    StateId state_at(std::uint64_t tau) const { return states_.at(tau); }

    std::int64_t head(std::uint64_t tau, std::size_t tape) const {
        check(tau);
        return heads_[tau * k() + tape];
    }

    /// Symbol written on `tape` by step `tau` (the transition C_{tau-1} -> C_tau), tau >= 1.
    Symbol written(std::uint64_t tau, std::size_t tape) const {
        if (tau == 0 || tau > t_) throw std::out_of_range("step index out of range");
        return written_[(tau - 1) * k() + tape];
    }

    const Configuration &final_configuration() const noexcept { return final_; }

    /// C_tau, recomputed from the nearest checkpoint.
    Configuration at(std::uint64_t tau) const {
        check(tau);
        auto c = checkpoints_[tau / kStride];
        while (c.time < tau) apply(c);
        return c;
    }

    /// Forward iterator over C_0, C_1, ..., C_t.
    class Cursor {
      public:
        explicit Cursor(const RunRecord &r) : run_(&r), c_(r.checkpoints_.front()) {}

        const Configuration &current() const noexcept { return c_; }
        bool done() const noexcept { return c_.time >= run_->t_; }
        void next() { run_->apply(c_); }

      private:
        const RunRecord *run_;
        Configuration c_;
    };

    Cursor cursor() const { return Cursor(*this); }

    std::vector<Configuration> history() const {
        std::vector<Configuration> out;
        out.reserve(t_ + 1);
        for (auto cur = cursor();; cur.next()) {
            out.push_back(cur.current());
            if (cur.done()) break;
        }
        return out;
    }

  private:
    friend RunRecord run(MachineSpec machine, std::vector<Symbol> input, std::uint64_t max_steps);

    static constexpr std::uint64_t kStride = 256;

    RunRecord(MachineSpec m, InitialTape init) : machine_(std::move(m)), initial_(std::move(init)) {}

    std::size_t k() const noexcept { return machine_.tapes(); }

    void check(std::uint64_t tau) const {
        if (tau > t_) {
            throw std::out_of_range("time " + std::to_string(tau) + " beyond run length " +
                                    std::to_string(t_));
        }
    }

    // Replays one logged step without consulting delta.
    void apply(Configuration &c) const {
        auto tau = c.time + 1;
        check(tau);
        for (std::size_t i = 0; i < k(); ++i) {
            auto &tape = c.tapes[i];
            tape.at(tape.head) = written_[(tau - 1) * k() + i];
            tape.head = heads_[tau * k() + i];
            detail::cover_head(tape, i, initial_);
        }
        c.state = states_[tau];
        c.time = tau;
    }

    MachineSpec machine_;
    InitialTape initial_;
    std::uint64_t t_ = 0;
    HaltReason halt_ = HaltReason::StepBudget;
    std::vector<StateId> states_;
    std::vector<std::int64_t> heads_;
    std::vector<Symbol> written_;
    std::vector<Configuration> checkpoints_;
    Configuration final_;
};

/// Direct linear-space execution: steps until accept/reject or `max_steps` transitions.
inline RunRecord run(MachineSpec machine, std::vector<Symbol> input, std::uint64_t max_steps) {
    for (auto s : input) {
        if (!machine.in_input_alphabet(s)) {
            throw MachineError("input symbol outside the input alphabet");
        }
    }
    InitialTape init(machine.blank(), std::move(input));
    RunRecord r(std::move(machine), std::move(init));
    const auto &m = r.machine_;
    const std::size_t k = m.tapes();

    auto c = initial_configuration(m, r.initial_);
    r.checkpoints_.push_back(c);
    r.states_.push_back(c.state);
    for (const auto &t : c.tapes) r.heads_.push_back(t.head);

    while (c.time < max_steps && !m.halting(c.state)) {
        std::size_t tuple = 0;
        for (const auto &t : c.tapes) tuple = tuple * m.alphabet_size() + t.at(t.head);
        auto tr = m.row(c.state, tuple);
        for (std::size_t i = 0; i < k; ++i) r.written_.push_back(tr.writes[i]);
        advance(m, r.initial_, c);
        r.states_.push_back(c.state);
        for (const auto &t : c.tapes) r.heads_.push_back(t.head);
        if (c.time % RunRecord::kStride == 0) r.checkpoints_.push_back(c);
    }
    r.t_ = c.time;
    if (c.state == m.accept()) {
        r.halt_ = HaltReason::Accept;
    } else if (c.state == m.reject()) {
        r.halt_ = HaltReason::Reject;
    } else {
        r.halt_ = HaltReason::StepBudget;
    }
    r.final_ = std::move(c);
    return r;
}

inline RunRecord run(const MachineSpec &machine, std::string_view input, std::uint64_t max_steps) {
    return run(MachineSpec(machine), parse_input(machine, input), max_steps);
}

} // namespace holotape
